#include "nbh/nishimori.hpp"

#include "nbh/distribution.hpp"
#include "nbh/errors.hpp"
#include "nbh/matrices.hpp"

#include <cmath>

namespace nbh {

namespace {

double mean_over_edges(const WeightedGraph& g, auto&& f) {
  double s = 0.0;
  for (const auto& e : g.edges()) s += f(e.w);
  return s / static_cast<double>(g.num_edges());
}

// log sinh^2(y), log(sinh(2y)/2) for y > 0; mirrors the Laplacian assembly.
double log_sinh2(double y) { return 2.0 * y + 2.0 * std::log1p(-std::exp(-2.0 * y)) - std::log(4.0); }
double log_half_sinh_2y(double y) { return 2.0 * y + std::log1p(-std::exp(-4.0 * y)) - std::log(4.0); }

void require_edges(const WeightedGraph& g) {
  if (g.empty()) throw InvalidParameter("graph has no edges");
}

}  // namespace

double estimate_beta_sg(const WeightedGraph& Jt) {
  require_edges(Jt);
  const double c = Jt.average_degree();
  if (!(c > 1.0))
    throw UndetectableDegree("average degree " + std::to_string(c) + " <= 1: no spin-glass transition");
  const double scale = 1.0 / std::sqrt(mean_over_edges(Jt, [](double w) { return w * w; }));
  return increasing_root(
      [&](double b) {
        return c * mean_over_edges(Jt, [b](double w) { return std::pow(std::tanh(b * w), 2); }) - 1.0;
      },
      0.1 * scale, 1e-12);
}

double estimate_beta_f(const WeightedGraph& J) {
  require_edges(J);
  const double c = J.average_degree();
  auto g = [&](double b) { return c * mean_over_edges(J, [b](double w) { return std::tanh(b * w); }) - 1.0; };
  const double scale = 1.0 / std::sqrt(mean_over_edges(J, [](double w) { return w * w; }));
  double prev = 1e-6 * scale;
  if (g(prev) > 0.0) return prev;
  for (double b = 1.25 * prev; b < 1e8 * scale; b *= 1.25) {
    if (g(b) > 0.0) {
      double lo = prev, hi = b;
      while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev = b;
  }
  throw NoFerromagneticTransition("c mean(tanh(beta J)) never exceeds 1");
}

double quadratic_form(const WeightedGraph& Jt, double beta, const Eigen::VectorXd& x, Route route) {
  if (x.size() != Jt.num_nodes()) throw DimensionError("vector length does not match n");
  if (route == Route::bethe_hessian) {
    double s = x.squaredNorm();
    for (const auto& e : Jt.edges()) {
      const double y = beta * e.w;
      const double sh = std::sinh(y);
      s += sh * sh * (x[e.i] * x[e.i] + x[e.j] * x[e.j]) - std::sinh(2.0 * y) * x[e.i] * x[e.j];
    }
    return s;
  }
  const Index n = Jt.num_nodes();
  Eigen::VectorXd loglam = Eigen::VectorXd::Zero(n);
  for (const auto& e : Jt.edges()) {
    const double ls = log_sinh2(beta * std::abs(e.w));
    for (int v : {e.i, e.j}) {
      const double a = loglam[v];
      loglam[v] = std::max(a, ls) + std::log1p(std::exp(-std::abs(a - ls)));
    }
  }
  double s = x.squaredNorm();
  for (const auto& e : Jt.edges()) {
    const double mag = std::exp(log_half_sinh_2y(beta * std::abs(e.w)) - 0.5 * (loglam[e.i] + loglam[e.j]));
    s -= 2.0 * (e.w > 0 ? mag : -mag) * x[e.i] * x[e.j];
  }
  return s;
}

RootResult courant_fischer_root(const Eigen::VectorXd& x, const WeightedGraph& Jt, double lo,
                                double beta_th, Route route) {
  if (!(lo > 0.0) || !(beta_th > lo)) throw InvalidParameter("need 0 < lo < beta_th");
  auto f = [&](double b) { return quadratic_form(Jt, b, x, route); };
  double hi = std::min(2.0 * lo, beta_th);
  double f_hi = f(hi);
  while (f_hi <= 0.0) {
    if (hi >= beta_th) return {beta_th, true};
    lo = hi;
    hi = std::min(2.0 * hi, beta_th);
    f_hi = f(hi);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) < 1e-10 || hi - lo <= 4e-16 * hi) return {mid, false};
    (fm > 0.0 ? hi : lo) = mid;
  }
  return {0.5 * (lo + hi), false};
}

SparseMatrix signed_bethe_hessian_r(const WeightedGraph& Jt, double r) {
  const auto J0 = signed_magnitude(Jt);
  if (!J0) throw NotSignedGraph("weights do not share a common magnitude J0");
  const Index n = Jt.num_nodes();
  const Eigen::VectorXd d = Jt.degrees();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * static_cast<std::size_t>(Jt.num_edges()) + static_cast<std::size_t>(n));
  for (const auto& e : Jt.edges()) {
    const double off = e.w > 0 ? -r : r;
    trip.emplace_back(e.i, e.j, off);
    trip.emplace_back(e.j, e.i, off);
  }
  for (Index i = 0; i < n; ++i) trip.emplace_back(i, i, r * r - 1.0 + d[i]);
  SparseMatrix H(n, n);
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

EigenPair bethe_hessian_smallest(const WeightedGraph& Jt, double beta, const EigenOptions& eig) {
  if (const auto J0 = signed_magnitude(Jt)) {
    return smallest_eigpair(signed_bethe_hessian_r(Jt, 1.0 / std::tanh(beta * *J0)), eig);
  }
  const RegularizedLaplacian R = regularized_laplacian(Jt, beta);
  EigenPair p = smallest_eigpair(R.L, eig);
  p.vector = R.map_back(p.vector);
  return p;
}

NishimoriEstimate estimate_beta_nishimori(const WeightedGraph& Jt, const NishimoriOptions& opts) {
  require_edges(Jt);
  if (!(opts.epsilon > 0.0)) throw InvalidParameter("epsilon must be > 0");
  if (!(opts.cap_factor > 0.0)) throw InvalidParameter("cap factor must be > 0");

  NishimoriEstimate est;
  est.beta_sg_hat = estimate_beta_sg(Jt);
  est.beta_th = std::max(opts.cap_factor * std::sqrt(Jt.average_degree()), 1.0 + 1e-9) * est.beta_sg_hat;
  EigenOptions eig = opts.eig;

  const auto J0 = signed_magnitude(Jt);
  est.signed_route = J0.has_value();

  if (est.signed_route) {
    auto r_of = [&](double b) { return 1.0 / std::tanh(b * *J0); };
    auto beta_of = [&](double r) { return std::atanh(1.0 / r) / *J0; };
    const SparseMatrix A = Jt.adjacency() / *J0;
    const Eigen::VectorXd D = Jt.degrees();
    const double r_th = r_of(est.beta_th);
    double r = r_of(est.beta_sg_hat);
    for (int t = 0;; ++t) {
      EigenPair p = smallest_eigpair(signed_bethe_hessian_r(Jt, r), eig);
      const double beta = beta_of(r);
      est.iterations.push_back({beta, p.value});
      est.beta_n_hat = beta;
      est.eigvec = p.vector;
      if (t == 0 && p.value >= 0.0) return est;
      est.detectable = true;
      if (std::abs(p.value) <= opts.epsilon || est.capped) return est;
      if (t >= opts.max_iterations)
        throw ConvergenceError("Nishimori iteration did not converge", std::abs(p.value));
      const Eigen::VectorXd& x = p.vector;
      const double d = x.dot(D.cwiseProduct(x));
      const double j = x.dot(A * x);
      // Smaller root: r_{t+1} < r_t approaches r_N from above.
      const double disc = std::max(0.0, j * j - 4.0 * (d - 1.0));
      double r_next = 0.5 * (j - std::sqrt(disc));
      if (!(r_next > r_th)) {
        r_next = r_th;
        est.capped = true;
      }
      eig.start = x;
      r = r_next;
    }
  }

  double beta = est.beta_sg_hat;
  for (int t = 0;; ++t) {
    EigenPair p;
    RegularizedLaplacian R = regularized_laplacian(Jt, beta);
    p = smallest_eigpair(R.L, eig);
    est.iterations.push_back({beta, p.value});
    est.beta_n_hat = beta;
    est.eigvec = R.map_back(p.vector);
    if (t == 0 && p.value >= 0.0) return est;
    est.detectable = true;
    if (std::abs(p.value) <= opts.epsilon || est.capped) return est;
    if (t >= opts.max_iterations)
      throw ConvergenceError("Nishimori iteration did not converge", std::abs(p.value));
    const RootResult root = courant_fischer_root(p.vector, Jt, beta, est.beta_th);
    est.capped = root.capped;
    eig.start = p.vector;
    beta = root.beta;
  }
}

}  // namespace nbh
