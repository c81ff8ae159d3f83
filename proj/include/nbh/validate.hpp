#pragma once

#include "nbh/classify.hpp"
#include "nbh/distribution.hpp"
#include "nbh/graph.hpp"
#include "nbh/nishimori.hpp"
#include "nbh/nonbacktracking.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nbh {

enum class Topology { erdos_renyi, power_law };

/// Gaussian planted model: weights N(J0, nu^2) on an ER or Chung-Lu topology,
/// then J~ = J o sigma sigma^T with balanced sigma.
struct PlantedParams {
  Index n = 10000;
  double c = 5.0;
  double J0 = 1.0;
  double nu = 1.0;
  Topology topology = Topology::erdos_renyi;
  double exponent = 3.0;
};

LabeledInstance planted_gaussian(const PlantedParams& p, std::uint64_t seed);

/// J0 with (J0 / nu^2) / beta_SG(Gaussian(J0, nu), c) = ratio.
double j0_for_ratio(double ratio, double c, double nu);

/// Sample moments of the stored weights taken as omega.
struct SpectrumMoments {
  double c = 0.0;
  double mean_w = 0.0;
  double mean_w2 = 0.0;
  double lambda1() const { return c * mean_w; }
  double lambda_inner() const { return mean_w2 / mean_w; }
  double radius() const { return std::sqrt(c * mean_w2); }
};
SpectrumMoments spectrum_moments(const WeightedGraph& W);

/// Positions of the isolated eigenvalues of B and the share of complex
/// eigenvalues inside 1.05 R. Dense when 2|E| fits the cap; otherwise real
/// eigenvalues come from inertia scans of H(x) on both half-axes and the count
/// outside the circle from the argument principle.
struct Claim1Report {
  SpectrumMoments theory;
  bool dense = false;
  double lambda1 = 0.0;
  std::optional<double> lambda_inner;
  /// Dense: empirical bulk radius. Sparse: theoretical radius.
  double bulk_radius = 0.0;
  Index complex_outside = 0;
  Index complex_total = 0;  // sparse route: lower bound, only computed when complex_outside > 0
  double fraction_inside = 1.0;
  std::vector<double> real_eigs;  // sparse route
  std::vector<Complex> eigs;      // dense route
};
Claim1Report claim1_report(const WeightedGraph& W, Index dense_cap = kDenseDirectedCap);

/// omega = tanh(beta J).
WeightedGraph tanh_weights(const WeightedGraph& J, double beta);

struct EstimatorCell {
  double J0 = 0.0;
  std::uint64_t seed = 0;
  double beta_n = 0.0;
  double beta_sg_model = 0.0;
  NishimoriEstimate estimate;
  double seconds = 0.0;
};
EstimatorCell run_estimator_cell(const PlantedParams& p, std::uint64_t seed,
                                 const NishimoriOptions& opts = {});

struct OverlapCell {
  PlantedParams params;
  double ratio = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::pair<Method, double>> overlaps;
  double seconds = 0.0;
};
OverlapCell run_overlap_cell(const PlantedParams& p, double ratio, std::uint64_t seed,
                             const std::vector<Method>& methods);

/// Runs fn(k) for k in [0, count) on `threads` workers. Results must be
/// written to per-k slots; the first exception is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// Mean and sample standard deviation.
std::pair<double, double> mean_std(const std::vector<double>& v);

/// Figure reproductions. `config` holds overrides (see README); files are
/// written under config["output_dir"]. Returns the manifest, which is also
/// written to manifest.json and echoes the fully resolved configuration.
nlohmann::json reproduce(const std::string& figure, nlohmann::json config);

/// Figure ids accepted by reproduce().
const std::vector<std::string>& figure_ids();

}  // namespace nbh
