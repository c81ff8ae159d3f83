#include "nbh/classify.hpp"
#include "nbh/errors.hpp"
#include "nbh/generators.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <random>

using namespace nbh;

namespace {

double sse(const Eigen::VectorXd& v, const LabelVector& lab) {
  double out = 0.0;
  for (int s : {-1, 1}) {
    double m = 0.0;
    int k = 0;
    for (Index i = 0; i < v.size(); ++i)
      if (lab[i] == s) m += v[i], ++k;
    if (k == 0) continue;
    m /= k;
    for (Index i = 0; i < v.size(); ++i)
      if (lab[i] == s) out += (v[i] - m) * (v[i] - m);
  }
  return out;
}

// Exhaustive 2-partition oracle.
double best_sse(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  double best = INFINITY;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    LabelVector lab(n);
    for (int i = 0; i < n; ++i) lab[i] = (mask >> i) & 1 ? 1 : -1;
    best = std::min(best, sse(v, lab));
  }
  return best;
}

LabeledInstance gaussian_instance(Index n, double c, double J0, double nu, std::uint64_t seed) {
  const auto d = WeightDistribution::gaussian(J0, nu);
  return plant_labels(sample_weights(generate_er(n, c, seed), d, analytic_beta_n(d), seed), random_labels(n, seed));
}

}  // namespace

TEST_CASE("1-D k-means matches the exhaustive oracle") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 15;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = z(rng) + (i % 2 ? 2.0 : 0.0) * (trial % 3);
    const LabelVector lab = kmeans_1d(v);
    CHECK(sse(v, lab) == doctest::Approx(best_sse(v)).epsilon(1e-12));
    double mp = 0, mm = 0;
    int kp = 0, km = 0;
    for (int i = 0; i < n; ++i) (lab[i] > 0 ? (mp += v[i], kp++) : (mm += v[i], km++));
    if (kp && km) CHECK(mp / kp > mm / km);
  }
  CHECK(kmeans_1d(Eigen::VectorXd::Constant(5, 2.0)) == LabelVector::Ones(5));
}

TEST_CASE("overlap symmetries") {
  const LabelVector s = testing::random_signs(101, 2);
  const LabelVector t = testing::random_signs(101, 3);
  CHECK(overlap(s, s) == 1.0);
  CHECK(overlap(s, -s) == 1.0);
  CHECK(overlap(s, t) == doctest::Approx(overlap(t, s)));
  CHECK(overlap(s, t) == doctest::Approx(overlap(-s, t)));
  LabelVector half = LabelVector::Ones(100), alt(100);
  for (int i = 0; i < 100; ++i) alt[i] = i % 2 ? 1 : -1;
  CHECK(overlap(half, alt) == 0.0);
  CHECK_THROWS_AS(overlap(s, LabelVector::Ones(5)), DimensionError);
}

TEST_CASE("weight shift centres the nonzero weights") {
  const WeightedGraph J = testing::random_graph(60, 0.2, 1.3, 0.7, 4);
  const WeightedGraph S = shift_weights(J);
  double m = 0.0;
  for (const auto& e : S.edges()) m += e.w;
  CHECK(std::abs(m / S.num_edges()) < 1e-12);
  CHECK(S.num_edges() == J.num_edges());
}

TEST_CASE("method names round-trip") {
  for (Method m : {Method::nishimori_bh, Method::spinglass_bh, Method::mean_field, Method::signed_laplacian,
                   Method::belief_propagation})
    CHECK(parse_method(method_name(m)) == m);
  CHECK(parse_method("bp") == Method::belief_propagation);
  CHECK_THROWS_AS(parse_method("spectral"), InvalidParameter);
}

TEST_CASE("spectral methods and BP recover labels on an easy instance") {
  const LabeledInstance inst = gaussian_instance(3000, 8.0, 3.0, 1.5, 5);
  const ClassificationResult nb = classify_nishimori(inst.graph);
  CHECK_FALSE(nb.warning);
  CHECK(overlap(inst.labels, nb.labels_hat) > 0.85);
  // Easy regime: the estimate stops at the cap below beta_N.
  CHECK(nb.diagnostics.at("capped") == 1.0);
  CHECK(nb.beta_used == nb.diagnostics.at("beta_th"));
  CHECK(overlap(inst.labels, baseline_spinglass_bh(inst.graph).labels_hat) > 0.7);
  CHECK(overlap(inst.labels, belief_propagation(inst.graph, nb.beta_used).labels_hat) > 0.85);
}

TEST_CASE("undetectable instance raises the warning flag") {
  const LabeledInstance inst = gaussian_instance(2000, 3.0, 0.2, 1.0, 6);
  const ClassificationResult r = classify_nishimori(inst.graph);
  CHECK(r.warning);
  CHECK(r.diagnostics.at("detectable") == 0.0);
  CHECK(overlap(inst.labels, r.labels_hat) < 0.15);
}

TEST_CASE("classifiers refuse empty graphs") {
  const WeightedGraph empty(10, {});
  CHECK_THROWS_AS(classify_nishimori(empty), InvalidParameter);
  CHECK_THROWS_AS(belief_propagation(empty, 1.0), InvalidParameter);
}
