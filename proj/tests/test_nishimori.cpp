#include "nbh/distribution.hpp"
#include "nbh/errors.hpp"
#include "nbh/generators.hpp"
#include "nbh/matrices.hpp"
#include "nbh/nishimori.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace nbh;

// Reference roots below come from adaptive quadrature plus Brent's method to
// 1e-13 relative, computed outside this library.
TEST_CASE("model transition temperatures of the Gaussian law") {
  const auto g = WeightDistribution::gaussian(1.0, 1.0);
  CHECK(analytic_beta_n(g) == 1.0);
  CHECK(model_beta_sg(g, 5.0) == doctest::Approx(0.379288020165705).epsilon(1e-10));
  CHECK(model_beta_f(g, 5.0) == doctest::Approx(0.211317859118493).epsilon(1e-8));
  const auto h = WeightDistribution::gaussian(2.5, 3.5);
  CHECK(model_beta_sg(h, 5.0) == doctest::Approx(0.126951632307387).epsilon(1e-10));
  const auto k = WeightDistribution::gaussian(1.0, 1.5);
  CHECK(model_beta_sg(k, 10.0) == doctest::Approx(0.193237740118135).epsilon(1e-10));
  CHECK(model_beta_f(k, 10.0) == doctest::Approx(0.102653887641764).epsilon(1e-8));
  CHECK_THROWS_AS(model_beta_sg(g, 1.0), UndetectableDegree);
}

TEST_CASE("+-J transition temperatures in closed form") {
  const auto d = WeightDistribution::plus_minus_j(0.9, 2.0);
  CHECK(analytic_beta_n(d) == doctest::Approx(std::atanh(0.8) / 2.0).epsilon(1e-14));
  CHECK(model_beta_sg(d, 4.0) == doctest::Approx(std::atanh(0.5) / 2.0).epsilon(1e-11));
  CHECK(model_beta_f(d, 4.0) == doctest::Approx(std::atanh(1.0 / 3.2) / 2.0).epsilon(1e-9));
}

TEST_CASE("Nishimori identity E tanh(beta_N X) = E tanh^2(beta_N X)") {
  for (auto [J0, nu] : {std::pair{1.5, 1.5}, {0.3, 2.0}, {4.0, 3.5}}) {
    const auto d = WeightDistribution::gaussian(J0, nu);
    const double b = analytic_beta_n(d);
    const double t1 = d.expectation([b](double x) { return std::tanh(b * x); });
    const double t2 = d.expectation([b](double x) { return std::pow(std::tanh(b * x), 2); });
    CHECK(std::abs(t1 - t2) < 1e-8);
  }
  const double b = 2.0 / 3.0;
  CHECK(WeightDistribution::gaussian(1.5, 1.5).expectation([b](double x) { return std::tanh(b * x); }) ==
        doctest::Approx(0.550400490793327).epsilon(1e-10));
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
  const QuadratureRule q = gauss_legendre(10);
  double s = 0.0;
  for (std::size_t k = 0; k < q.nodes.size(); ++k) s += q.weights[k] * std::pow(q.nodes[k], 18);
  CHECK(s == doctest::Approx(2.0 / 19.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("empirical beta_SG on constant-magnitude weights") {
  std::vector<Edge> e;
  const WeightedGraph top = generate_er(2000, 4.0, 3);
  for (const auto& x : top.edges()) e.push_back({x.i, x.j, (x.i + x.j) % 3 ? 0.5 : -0.5});
  const WeightedGraph J(2000, e);
  const double c = J.average_degree();
  CHECK(estimate_beta_sg(J) == doctest::Approx(std::atanh(1.0 / std::sqrt(c)) / 0.5).epsilon(1e-11));
  CHECK_THROWS_AS(estimate_beta_sg(WeightedGraph(10, {{0, 1, 1.0}})), UndetectableDegree);
  CHECK_THROWS_AS(estimate_beta_sg(WeightedGraph(10, {})), InvalidParameter);
}

TEST_CASE("quadratic forms match the assembled matrices") {
  const WeightedGraph J = testing::random_graph(80, 0.08, 0.3, 1.2, 4);
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(80, -1.0, 2.0).array().sin();
  for (double beta : {0.1, 0.7, 2.0}) {
    const double h = x.dot(bethe_hessian(J, beta) * x);
    CHECK(quadratic_form(J, beta, x, Route::bethe_hessian) == doctest::Approx(h).epsilon(1e-11));
    const double l = x.dot(regularized_laplacian(J, beta).L * x);
    CHECK(quadratic_form(J, beta, x, Route::regularized_laplacian) == doctest::Approx(l).epsilon(1e-11));
  }
  CHECK_THROWS_AS(quadratic_form(J, 1.0, Eigen::VectorXd::Ones(3), Route::bethe_hessian), DimensionError);
}

TEST_CASE("Courant-Fischer root brackets and bisects") {
  const WeightedGraph J = testing::random_graph(200, 0.03, 0.8, 1.0, 5);
  const double bsg = estimate_beta_sg(J);
  const RegularizedLaplacian R = regularized_laplacian(J, bsg);
  const EigenPair p = smallest_eigpair(R.L);
  REQUIRE(p.value < 0.0);
  const RootResult r = courant_fischer_root(p.vector, J, bsg, 20.0 * bsg);
  CHECK_FALSE(r.capped);
  CHECK(r.beta > bsg);
  CHECK(std::abs(quadratic_form(J, r.beta, p.vector, Route::regularized_laplacian)) < 1e-9);
  const RootResult capped = courant_fischer_root(p.vector, J, bsg, bsg * (1 + 1e-6));
  CHECK(capped.capped);
}

TEST_CASE("estimator recovers beta_N on a detectable Gaussian instance") {
  // beta_N / beta_SG ~ 1.6, below the cap.
  const auto dist = WeightDistribution::gaussian(2.5, 3.5);
  const double bn = analytic_beta_n(dist);
  const LabeledInstance inst =
      plant_labels(sample_weights(generate_er(6000, 5.0, 1), dist, bn, 1), random_labels(6000, 1));
  const NishimoriEstimate e = estimate_beta_nishimori(inst.graph);
  CHECK(e.detectable);
  CHECK_FALSE(e.capped);
  CHECK_FALSE(e.signed_route);
  CHECK(e.beta_n_hat / bn == doctest::Approx(1.0).epsilon(0.1));
  CHECK(e.iterations.size() <= 10);
  CHECK(std::abs(e.iterations.back().gamma_min) <= 1e-5);
  for (std::size_t t = 1; t < e.iterations.size(); ++t) CHECK(e.iterations[t].beta > e.iterations[t - 1].beta);
}

TEST_CASE("easy instances stop at the cap") {
  const auto dist = WeightDistribution::gaussian(3.0, 1.5);
  const double bn = analytic_beta_n(dist);
  const LabeledInstance inst =
      plant_labels(sample_weights(generate_er(3000, 8.0, 5), dist, bn, 5), random_labels(3000, 5));
  const NishimoriEstimate e = estimate_beta_nishimori(inst.graph);
  REQUIRE(e.beta_th < bn);
  CHECK(e.capped);
  CHECK(e.beta_n_hat == e.beta_th);
  CHECK(e.beta_th == doctest::Approx(2.0 * std::sqrt(inst.graph.average_degree()) * e.beta_sg_hat));
  NishimoriOptions wide;
  wide.cap_factor = 20.0;
  const NishimoriEstimate f = estimate_beta_nishimori(inst.graph, wide);
  CHECK_FALSE(f.capped);
  CHECK(f.beta_n_hat > e.beta_th);
}

TEST_CASE("estimator on +-J weights uses the signed route") {
  const auto dist = WeightDistribution::plus_minus_j(0.9, 1.0);
  const double bn = analytic_beta_n(dist);
  const LabeledInstance inst =
      plant_labels(sample_weights(generate_er(4000, 5.0, 2), dist, bn, 2), random_labels(4000, 2));
  const NishimoriEstimate e = estimate_beta_nishimori(inst.graph);
  CHECK(e.signed_route);
  CHECK(e.detectable);
  CHECK(e.beta_n_hat / bn == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("undetectable instance stops at beta_SG") {
  const auto dist = WeightDistribution::gaussian(0.3, 3.5);
  const LabeledInstance inst = plant_labels(
      sample_weights(generate_er(3000, 5.0, 3), dist, analytic_beta_n(dist), 3), random_labels(3000, 3));
  const NishimoriEstimate e = estimate_beta_nishimori(inst.graph);
  CHECK_FALSE(e.detectable);
  CHECK(e.beta_n_hat == e.beta_sg_hat);
  CHECK(e.iterations.size() == 1);
  CHECK(e.iterations[0].gamma_min >= 0.0);
}

TEST_CASE("estimator input validation") {
  NishimoriOptions bad;
  bad.epsilon = 0.0;
  const WeightedGraph J = testing::random_graph(100, 0.05, 0.5, 1.0, 6);
  CHECK_THROWS_AS(estimate_beta_nishimori(J, bad), InvalidParameter);
  CHECK_THROWS_AS(estimate_beta_nishimori(WeightedGraph(5, {})), InvalidParameter);
}

TEST_CASE("estimate does not depend on the gauge") {
  const auto dist = WeightDistribution::gaussian(2.5, 3.5);
  const LabeledInstance inst = plant_labels(
      sample_weights(generate_er(3000, 5.0, 7), dist, analytic_beta_n(dist), 7), random_labels(3000, 7));
  const WeightedGraph moved = plant_labels(inst.graph, random_labels(3000, 8)).graph;
  NishimoriOptions opts;
  opts.eig.tol = 1e-10;
  const NishimoriEstimate a = estimate_beta_nishimori(inst.graph, opts);
  const NishimoriEstimate b = estimate_beta_nishimori(moved, opts);
  CHECK(a.beta_n_hat == doctest::Approx(b.beta_n_hat).epsilon(2e-8));
  CHECK(a.beta_sg_hat == doctest::Approx(b.beta_sg_hat).epsilon(1e-14));
}

TEST_CASE("all-positive signed graph runs into the cap") {
  std::vector<Edge> e;
  for (const auto& x : generate_er(2000, 5.0, 9).edges()) e.push_back({x.i, x.j, 1.0});
  const NishimoriEstimate est = estimate_beta_nishimori(WeightedGraph(2000, e));
  CHECK(est.signed_route);
  CHECK(est.detectable);
  CHECK(est.capped);
  CHECK(est.beta_n_hat == doctest::Approx(est.beta_th).epsilon(1e-12));
}
