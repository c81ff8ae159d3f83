#include "nbh/matrices.hpp"

#include <numbers>

namespace nbh {

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidParameter("beta must be > 0");
}

// log sinh^2(y) and log(sinh(2y)/2) for y > 0.
double log_sinh2(double y) { return 2.0 * y + 2.0 * std::log1p(-std::exp(-2.0 * y)) - std::log(4.0); }
double log_half_sinh_2y(double y) { return 2.0 * y + std::log1p(-std::exp(-4.0 * y)) - std::log(4.0); }

}  // namespace

SparseMatrix bethe_hessian(const WeightedGraph& J, double beta) {
  check_beta(beta);
  if (beta * J.max_abs_weight() > kMaxCoupling)
    throw OverflowError("beta max|J| = " + std::to_string(beta * J.max_abs_weight()) +
                        " exceeds " + std::to_string(kMaxCoupling) +
                        "; use the regularized Laplacian");
  const Index n = J.num_nodes();
  Eigen::VectorXd diag = Eigen::VectorXd::Ones(n);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * static_cast<std::size_t>(J.num_edges()) + static_cast<std::size_t>(n));
  for (const auto& e : J.edges()) {
    const double y = beta * e.w;
    const double off = -0.5 * std::sinh(2.0 * y);
    trip.emplace_back(e.i, e.j, off);
    trip.emplace_back(e.j, e.i, off);
    const double s = std::sinh(y);
    diag[e.i] += s * s;
    diag[e.j] += s * s;
  }
  for (Index i = 0; i < n; ++i) trip.emplace_back(i, i, diag[i]);
  SparseMatrix H(n, n);
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

std::optional<double> signed_magnitude(const WeightedGraph& g) {
  if (g.empty()) return std::nullopt;
  const double J0 = std::abs(g.edges()[0].w);
  for (const auto& e : g.edges())
    if (std::abs(std::abs(e.w) - J0) > 1e-12 * J0) return std::nullopt;
  return J0;
}

SparseMatrix signed_bethe_hessian(const WeightedGraph& Jt, double beta) {
  check_beta(beta);
  const auto J0 = signed_magnitude(Jt);
  if (!J0) throw NotSignedGraph("weights do not share a common magnitude J0");
  const double t = std::tanh(beta * *J0);
  const Index n = Jt.num_nodes();
  const Eigen::VectorXd d = Jt.degrees();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * static_cast<std::size_t>(Jt.num_edges()) + static_cast<std::size_t>(n));
  for (const auto& e : Jt.edges()) {
    const double off = -t * (e.w > 0 ? 1.0 : -1.0);
    trip.emplace_back(e.i, e.j, off);
    trip.emplace_back(e.j, e.i, off);
  }
  // 1 - t^2 computed as 1/cosh^2 to keep digits for large beta.
  const double ch = std::cosh(beta * *J0);
  const double one_minus_t2 = std::isfinite(ch) ? 1.0 / (ch * ch) : 0.0;
  for (Index i = 0; i < n; ++i) trip.emplace_back(i, i, one_minus_t2 + t * t * d[i]);
  SparseMatrix H(n, n);
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

Eigen::VectorXd RegularizedLaplacian::map_back(const Eigen::VectorXd& v) const {
  const double m = log_sqrt_lambda.size() ? log_sqrt_lambda.minCoeff() : 0.0;
  Eigen::VectorXd x = v.array() * (-(log_sqrt_lambda.array() - m)).exp();
  const double nx = x.norm();
  return nx > 0.0 ? Eigen::VectorXd(x / nx) : x;
}

RegularizedLaplacian regularized_laplacian(const WeightedGraph& Jt, double beta) {
  check_beta(beta);
  const Index n = Jt.num_nodes();
  // log(1 + sum_k sinh^2) by a running log-sum-exp.
  Eigen::VectorXd loglam = Eigen::VectorXd::Zero(n);
  for (const auto& e : Jt.edges()) {
    const double y = beta * std::abs(e.w);
    const double ls = log_sinh2(y);
    for (int v : {e.i, e.j}) {
      const double a = loglam[v];
      loglam[v] = std::max(a, ls) + std::log1p(std::exp(-std::abs(a - ls)));
    }
  }
  RegularizedLaplacian out;
  out.log_sqrt_lambda = 0.5 * loglam;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * static_cast<std::size_t>(Jt.num_edges()) + static_cast<std::size_t>(n));
  for (const auto& e : Jt.edges()) {
    const double y = beta * std::abs(e.w);
    const double mag = std::exp(log_half_sinh_2y(y) - out.log_sqrt_lambda[e.i] - out.log_sqrt_lambda[e.j]);
    const double off = e.w > 0 ? -mag : mag;
    trip.emplace_back(e.i, e.j, off);
    trip.emplace_back(e.j, e.i, off);
  }
  for (Index i = 0; i < n; ++i) trip.emplace_back(i, i, 1.0);
  out.L.resize(n, n);
  out.L.setFromTriplets(trip.begin(), trip.end());
  return out;
}

SparseMatrix signed_laplacian(const WeightedGraph& Jt) {
  const Index n = Jt.num_nodes();
  const Eigen::VectorXd d = Jt.abs_strengths();
  std::vector<Eigen::Triplet<double>> trip;
  for (const auto& e : Jt.edges()) {
    trip.emplace_back(e.i, e.j, -e.w);
    trip.emplace_back(e.j, e.i, -e.w);
  }
  for (Index i = 0; i < n; ++i) trip.emplace_back(i, i, d[i]);
  SparseMatrix L(n, n);
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

}  // namespace nbh
