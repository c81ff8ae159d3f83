#include "nbh/generators.hpp"

#include "nbh/errors.hpp"
#include "nbh/random.hpp"

#include <cmath>
#include <numeric>

namespace nbh {

namespace {

/// Appends j in (i, n) with P(j) = prob(j), prob non-increasing in j
/// (Miller-Hagberg skipping with thinning).
template <class Prob>
void sample_row(int i, Index n, Prob prob, CounterRng& rng, std::vector<Edge>& out) {
  Index j = i + 1;
  if (j >= n) return;
  double p = std::min(1.0, prob(j));
  while (j < n && p > 0.0) {
    if (p < 1.0) {
      const double r = rng.uniform_open0();
      const double skip = std::floor(std::log(r) / std::log1p(-p));
      if (skip >= static_cast<double>(n - j)) return;
      j += static_cast<Index>(skip);
    }
    const double q = std::min(1.0, prob(j));
    if (rng.uniform() < q / p) out.push_back({i, static_cast<int>(j), 1.0});
    p = q;
    ++j;
  }
}

void check_size(Index n, double c) {
  if (n < 2) throw InvalidParameter("n must be at least 2");
  if (n > (Index{1} << 31) - 1) throw InvalidParameter("n exceeds 32-bit node ids");
  if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidParameter("c must be non-negative");
  if (c >= static_cast<double>(n)) throw InvalidParameter("c must be smaller than n");
}

}  // namespace

WeightedGraph generate_er(Index n, double c, std::uint64_t seed) {
  check_size(n, c);
  const double p = c / static_cast<double>(n);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(0.5 * c * n * 1.1) + 16);
  if (p > 0.0) {
    for (Index i = 0; i < n; ++i) {
      CounterRng rng(seed, stream::topology, static_cast<std::uint64_t>(i));
      sample_row(static_cast<int>(i), n, [p](Index) { return p; }, rng, edges);
    }
  }
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph generate_powerlaw(Index n, double c, double exponent, std::uint64_t seed) {
  if (!(exponent > 2.0)) throw InvalidParameter("power-law exponent must exceed 2");
  check_size(n, c);
  std::vector<double> theta(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) theta[i] = std::pow(static_cast<double>(i + 1), -1.0 / (exponent - 1.0));
  const double scale = static_cast<double>(n) / std::accumulate(theta.begin(), theta.end(), 0.0);
  for (double& t : theta) t *= scale;

  std::vector<Edge> edges;
  if (c > 0.0) {
    const double cn = c / static_cast<double>(n);
    for (Index i = 0; i < n; ++i) {
      CounterRng rng(seed, stream::topology, static_cast<std::uint64_t>(i));
      const double ti = theta[i];
      sample_row(static_cast<int>(i), n, [&](Index j) { return cn * ti * theta[j]; }, rng, edges);
    }
  }
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph sample_weights(const WeightedGraph& topology, const WeightDistribution& dist,
                             double beta_n, std::uint64_t seed) {
  if (!(beta_n > 0.0)) throw InvalidParameter("beta_N must be > 0");
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(topology.num_edges()));
  if (const auto* g = std::get_if<Gaussian>(&dist.variant())) {
    const double mean = beta_n * g->nu * g->nu;
    for (const auto& e : topology.edges()) {
      CounterRng rng(seed, stream::weights, pair_key(e.i, e.j));
      double x = 0.0;
      while (x == 0.0) x = mean + g->nu * rng.normal();
      w.push_back(x);
    }
  } else if (const auto* pm = std::get_if<PlusMinusJ>(&dist.variant())) {
    // e^{bJ}/(2 cosh bJ) = 1/(1 + e^{-2bJ}), stable for large bJ.
    const double p = 1.0 / (1.0 + std::exp(-2.0 * beta_n * pm->J0));
    for (const auto& e : topology.edges()) {
      CounterRng rng(seed, stream::weights, pair_key(e.i, e.j));
      w.push_back(rng.uniform() < p ? pm->J0 : -pm->J0);
    }
  } else {
    throw UnsupportedDistribution("cannot sample weights from an empirical law");
  }
  return topology.with_weights(w);
}

LabeledInstance plant_labels(const WeightedGraph& J, const LabelVector& sigma) {
  if (sigma.size() != J.num_nodes())
    throw DimensionError("label vector length " + std::to_string(sigma.size()) +
                         " does not match n=" + std::to_string(J.num_nodes()));
  check_labels(sigma, J.num_nodes());
  auto g = J.map_weights([&](const Edge& e) { return e.w * sigma[e.i] * sigma[e.j]; });
  return {std::move(g), sigma, std::nullopt};
}

LabelVector random_labels(Index n, std::uint64_t seed) {
  LabelVector s(n);
  for (Index i = 0; i < n; ++i) s[i] = i < (n + 1) / 2 ? 1 : -1;
  CounterRng rng(seed, stream::labels);
  for (Index i = n - 1; i > 0; --i) {
    const auto k = static_cast<Index>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(s[i], s[k]);
  }
  return s;
}

WeightedGraph sparsify_kernel(const FeatureDataset& data, double kappa, double c,
                              std::uint64_t seed) {
  const Index n = data.n();
  const Index p = data.p();
  if (p < 1) throw InvalidParameter("feature dimension must be >= 1");
  if (!(kappa > 0.0) || kappa > static_cast<double>(p))
    throw InvalidParameter("kappa must lie in (0, p]");
  check_size(n, c);

  const double keep = std::sqrt(kappa / static_cast<double>(p));
  Eigen::MatrixXd Z = data.vectors;
  if (keep < 1.0) {
    for (Index i = 0; i < n; ++i) {
      CounterRng rng(seed, stream::feature_mask, static_cast<std::uint64_t>(i));
      for (Index k = 0; k < p; ++k)
        if (!(rng.uniform() < keep)) Z(i, k) = 0.0;
    }
  }

  const double pc = c / static_cast<double>(n);
  std::vector<Edge> pairs;
  if (pc > 0.0) {
    for (Index i = 0; i < n; ++i) {
      CounterRng rng(seed, stream::pair_mask, static_cast<std::uint64_t>(i));
      sample_row(static_cast<int>(i), n, [pc](Index) { return pc; }, rng, pairs);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  const double inv_p = 1.0 / static_cast<double>(p);
  for (const auto& e : pairs) {
    const double w = inv_p * Z.row(e.i).dot(Z.row(e.j));
    if (w != 0.0) edges.push_back({e.i, e.j, w});
  }
  return WeightedGraph(n, std::move(edges));
}

FeatureDataset gaussian_mixture(Index n, Index p, double separation, std::uint64_t seed) {
  if (n < 2 || p < 1) throw InvalidParameter("need n >= 2 and p >= 1");
  LabelVector sigma = random_labels(n, seed);
  const double m = separation / std::sqrt(static_cast<double>(p));
  Eigen::MatrixXd Z(n, p);
  for (Index i = 0; i < n; ++i) {
    CounterRng rng(seed, stream::features, static_cast<std::uint64_t>(i));
    for (Index k = 0; k < p; ++k) Z(i, k) = sigma[i] * m + rng.normal();
  }
  return {std::move(Z), std::move(sigma)};
}

}  // namespace nbh
