#pragma once

#include "nbh/eigensolver.hpp"
#include "nbh/graph.hpp"
#include "nbh/nishimori.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace nbh {

enum class Method { nishimori_bh, spinglass_bh, mean_field, signed_laplacian, belief_propagation };

const char* method_name(Method m);
/// Accepts the canonical names plus the short forms nishimori, spinglass,
/// laplacian and bp. Throws InvalidParameter otherwise.
Method parse_method(const std::string& s);

struct ClassificationResult {
  Method method = Method::nishimori_bh;
  LabelVector labels_hat;
  double beta_used = 0.0;
  /// Informative eigenvector (BP: marginals).
  Eigen::VectorXd eigvec;
  std::optional<double> overlap;
  /// Numeric diagnostics (eigenvalue, iterations, flags as 0/1).
  std::map<std::string, double> diagnostics;
  /// Set when the result should be read with caution (undetectable, BP not converged).
  bool warning = false;
};

/// Exact 1-D 2-means: sort and scan every split point. The side with the
/// larger mean gets +1; all-equal input yields all +1.
LabelVector kmeans_1d(const Eigen::VectorXd& values);

/// |2 (fraction of agreeing entries - 1/2)|.
double overlap(const LabelVector& sigma, const LabelVector& sigma_hat);

/// Subtracts mean(nonzero weights) from every nonzero weight.
WeightedGraph shift_weights(const WeightedGraph& Jt);

/// Shift, estimate beta_N, take the smallest eigenvector of H at beta_N-hat,
/// threshold with kmeans_1d.
ClassificationResult classify_nishimori(const WeightedGraph& Jt, const NishimoriOptions& opts = {});

ClassificationResult baseline_mean_field(const WeightedGraph& Jt, const EigenOptions& eig = {});
ClassificationResult baseline_signed_laplacian(const WeightedGraph& Jt, const EigenOptions& eig = {});
ClassificationResult baseline_spinglass_bh(const WeightedGraph& Jt, const EigenOptions& eig = {});

struct BpOptions {
  int max_sweeps = 1000;
  double damping = 0.2;
  double tol = 1e-6;
  std::uint64_t seed = 0;
};

/// m_{i->j} = tanh(sum_{k in di \ j} atanh(tanh(beta J_ik) m_{k->i})), updated
/// in parallel with m <- (1 - damping) new + damping old. Labels are the signs
/// of the full marginals (0 maps to +1).
ClassificationResult belief_propagation(const WeightedGraph& Jt, double beta, const BpOptions& opts = {});

/// Runs `m` with default settings; BP uses beta_N-hat of the shifted graph.
ClassificationResult run_method(Method m, const WeightedGraph& Jt, const NishimoriOptions& opts = {},
                                const BpOptions& bp = {});

}  // namespace nbh
