#include "nbh/eigensolver.hpp"
#include "nbh/errors.hpp"
#include "nbh/matrices.hpp"
#include "nbh/nonbacktracking.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>

using namespace nbh;
using testing::dense;

namespace {

Eigen::VectorXd sorted_eigs(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::vector<Complex> b_spectrum(const WeightedGraph& W) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(nonbacktracking(W), false);
  std::vector<Complex> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return v;
}

}  // namespace

TEST_CASE("Bethe-Hessian entries") {
  const WeightedGraph J(3, {{0, 1, 0.7}, {1, 2, -1.2}});
  const Eigen::MatrixXd H = dense(bethe_hessian(J, 0.9));
  CHECK(H(0, 0) == doctest::Approx(1 + std::pow(std::sinh(0.63), 2)));
  CHECK(H(1, 1) == doctest::Approx(1 + std::pow(std::sinh(0.63), 2) + std::pow(std::sinh(1.08), 2)));
  CHECK(H(1, 2) == doctest::Approx(std::sinh(2 * 1.08) / 2));
  CHECK(H(0, 2) == 0.0);
  CHECK_THROWS_AS(bethe_hessian(J, 20.0), OverflowError);
}

TEST_CASE("H(x) at x = 1 with tanh weights equals H_beta") {
  const WeightedGraph J = testing::random_graph(40, 0.15, 0.5, 1.0, 1);
  const double beta = 0.8;
  const WeightedGraph W = J.map_weights([&](const Edge& e) { return std::tanh(beta * e.w); });
  const Eigen::MatrixXd A = dense(bethe_hessian_generic<double>(W, 1.0));
  const Eigen::MatrixXd B = dense(bethe_hessian(J, beta));
  CHECK((A - B).norm() < 1e-10 * B.norm());
  CHECK_THROWS_AS(bethe_hessian_generic<double>(W, std::abs(W.edges()[0].w)), PoleError);
}

TEST_CASE("regularized Laplacian has the inertia of H and maps null vectors back") {
  const WeightedGraph J = testing::random_graph(60, 0.1, 0.3, 1.5, 2);
  for (double beta : {0.2, 0.6, 1.5}) {
    const Eigen::VectorXd h = sorted_eigs(dense(bethe_hessian(J, beta)));
    const RegularizedLaplacian R = regularized_laplacian(J, beta);
    const Eigen::VectorXd l = sorted_eigs(dense(R.L));
    CHECK((h.array() < 0).count() == (l.array() < 0).count());
    // L = Lambda'^{-1/2} H Lambda'^{-1/2}.
    const Eigen::VectorXd s = (-R.log_sqrt_lambda.array()).exp();
    const Eigen::MatrixXd back = s.asDiagonal() * dense(bethe_hessian(J, beta)) * s.asDiagonal();
    CHECK((back - dense(R.L)).norm() < 1e-10 * dense(R.L).norm());
  }
  // Stays finite where the hyperbolic form overflows.
  const RegularizedLaplacian big = regularized_laplacian(J, 200.0);
  CHECK(dense(big.L).allFinite());
}

TEST_CASE("signed Bethe-Hessian is H_beta divided by cosh^2 for +-J0 weights") {
  std::vector<Edge> e;
  const WeightedGraph base = testing::random_graph(50, 0.1, 0.0, 1.0, 3);
  for (const auto& x : base.edges()) e.push_back({x.i, x.j, x.w > 0 ? 0.7 : -0.7});
  const WeightedGraph J(50, e);
  REQUIRE(signed_magnitude(J).has_value());
  CHECK(*signed_magnitude(J) == doctest::Approx(0.7));
  const double beta = 1.3, t = std::tanh(beta * 0.7);
  const Eigen::MatrixXd H = dense(bethe_hessian(J, beta));
  const Eigen::MatrixXd S = dense(signed_bethe_hessian(J, beta));
  CHECK((H * (1 - t * t) - S).norm() < 1e-10 * S.norm());
  CHECK_THROWS_AS(signed_bethe_hessian(testing::random_graph(10, 0.5, 0, 1, 1), 1.0), NotSignedGraph);
}

TEST_CASE("signed Laplacian is positive semidefinite") {
  const WeightedGraph J = testing::random_graph(50, 0.1, 0.0, 1.0, 4);
  CHECK(sorted_eigs(dense(signed_laplacian(J)))[0] > -1e-10);
}

TEST_CASE("Lanczos agrees with a dense solve") {
  const WeightedGraph J = testing::random_graph(1200, 0.004, 0.2, 1.0, 5);
  const SparseMatrix H = bethe_hessian(J, 0.7);
  const Eigen::VectorXd ref = sorted_eigs(dense(H));
  EigenOptions opts;
  opts.dense_threshold = 0;
  opts.tol = 1e-10;
  const auto lo = extremal_eigpairs(H, 4, Which::smallest, opts);
  for (int k = 0; k < 4; ++k) {
    CHECK(lo[k].value == doctest::Approx(ref[k]).epsilon(1e-8));
    CHECK((H * lo[k].vector - lo[k].value * lo[k].vector).norm() < 1e-7);
  }
  const auto hi = extremal_eigpairs(H, 2, Which::largest, opts);
  CHECK(hi[0].value == doctest::Approx(ref[ref.size() - 1]).epsilon(1e-8));
  CHECK(hi[1].value == doctest::Approx(ref[ref.size() - 2]).epsilon(1e-8));

  // Same answer on the dense path.
  const EigenPair d = smallest_eigpair(H, EigenOptions{});
  CHECK(d.value == doctest::Approx(ref[0]).epsilon(1e-10));
}

TEST_CASE("Lanczos honours warm starts and the matvec budget") {
  const WeightedGraph J = testing::random_graph(800, 0.006, 0.0, 1.0, 6);
  const SparseMatrix A = signed_laplacian(J);
  EigenOptions opts;
  opts.dense_threshold = 0;
  const EigenPair cold = smallest_eigpair(A, opts);
  opts.start = cold.vector;
  const EigenPair warm = smallest_eigpair(A, opts);
  CHECK(warm.iterations <= cold.iterations);
  CHECK(warm.value == doctest::Approx(cold.value).epsilon(1e-8));
  EigenOptions tiny;
  tiny.dense_threshold = 0;
  tiny.max_matvecs = 5;
  tiny.tol = 1e-14;
  CHECK_THROWS_AS(extremal_eigpairs(A, 3, Which::smallest, tiny), ConvergenceError);
}

TEST_CASE("non-backtracking matrix structure") {
  const WeightedGraph W(3, {{0, 1, 0.5}, {1, 2, -0.25}, {0, 2, 2.0}});
  const Eigen::MatrixXd B = nonbacktracking(W);
  REQUIRE(B.rows() == 6);
  // Every row has deg(target) - 1 nonzeros on a triangle.
  for (Index r = 0; r < 6; ++r) CHECK((B.row(r).array() != 0).count() == 1);
  CHECK_THROWS_AS(nonbacktracking(testing::random_graph(200, 0.5, 0, 1, 1), 100), TooLargeError);
}

TEST_CASE("Watanabe-Fukumizu determinant identity") {
  const WeightedGraph W = testing::random_graph(15, 0.3, 0.1, 0.6, 7);
  for (Complex x : {Complex(1.7, 0.3), Complex(-0.4, 1.1), Complex(2.5, 0.0)})
    CHECK(watanabe_fukumizu_residual(W, x) < 1e-10);
}

TEST_CASE("sparse complex LDL log-determinant matches dense LU") {
  const WeightedGraph W = testing::random_graph(120, 0.05, 0.2, 0.5, 8);
  for (Complex x : {Complex(1.3, 0.7), Complex(0.2, 2.0)}) {
    const Eigen::MatrixXcd H = Eigen::MatrixXcd(bethe_hessian_generic<Complex>(W, x));
    const Complex ref = log_det(H);
    const Complex got = log_det_bethe_hessian(W, x);
    CHECK(std::abs(got.real() - ref.real()) < 1e-9 * std::max(1.0, std::abs(ref.real())));
    CHECK(std::abs(std::exp(Complex(0, got.imag() - ref.imag())) - 1.0) < 1e-9);
  }
}

TEST_CASE("inertia scan and winding count reproduce the dense spectrum of B") {
  const WeightedGraph W = testing::random_graph(60, 0.08, 0.4, 0.5, 9);
  const auto eigs = b_spectrum(W);
  const double wmax = W.max_abs_weight();

  std::vector<double> dense_real;
  for (const auto& z : eigs)
    if (std::abs(z.imag()) < 1e-9 && std::abs(z.real()) > wmax * 1.001) dense_real.push_back(z.real());
  std::sort(dense_real.begin(), dense_real.end());
  std::vector<double> found = real_eigenvalues_B(W, wmax * 1.001, 10.0);
  for (double x : real_eigenvalues_B(W, -10.0, -wmax * 1.001)) found.push_back(x);
  std::sort(found.begin(), found.end());
  REQUIRE(found.size() == dense_real.size());
  for (std::size_t k = 0; k < found.size(); ++k) CHECK(found[k] == doctest::Approx(dense_real[k]).epsilon(1e-8));

  for (double r : {wmax * 1.1, wmax * 1.5, wmax * 2.0}) {
    Index out = 0;
    for (const auto& z : eigs) out += std::abs(z) > r;
    CHECK(count_outside_radius(W, r) == out);
  }
}

TEST_CASE("spectrum classification picks the leading and inner real eigenvalues") {
  const WeightedGraph W = testing::random_graph(150, 0.04, 0.5, 0.2, 10);
  const SpectrumReport s = full_spectrum_B(W);
  CHECK(std::abs(s.leading.imag()) < 1e-9);
  for (const auto& z : s.all_eigs) CHECK(std::abs(z) <= std::abs(s.leading) + 1e-9);
  const auto kinds = classify_spectrum(s);
  CHECK(std::count_if(kinds.begin(), kinds.end(), [](const char* k) { return std::string(k) == "leading"; }) == 1);
}

TEST_CASE("M0 closed-form eigenvalues match a dense solve") {
  const WeightedGraph W = testing::random_graph(50, 0.1, 0.3, 0.4, 11);
  const double s = 1.7;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(build_M0(W, s).cast<Complex>(), false);
  std::vector<Complex> a(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::vector<Complex> b = eigs_M0(W, s);
  REQUIRE(a.size() == b.size());
  for (const auto& z : b) {
    double best = INFINITY;
    for (const auto& y : a) best = std::min(best, std::abs(y - z));
    CHECK(best < 1e-8);
  }
}
