#include "nbh/distribution.hpp"

#include "nbh/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace nbh {

WeightDistribution WeightDistribution::gaussian(double J0, double nu) {
  if (!std::isfinite(J0)) throw InvalidParameter("Gaussian J0 must be finite");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw InvalidParameter("Gaussian nu must be > 0");
  return WeightDistribution(Gaussian{J0, nu});
}

WeightDistribution WeightDistribution::plus_minus_j(double p, double J0) {
  if (!(p >= 0.5 && p <= 1.0)) throw InvalidParameter("PlusMinusJ p must lie in [1/2, 1]");
  if (!(J0 > 0.0) || !std::isfinite(J0)) throw InvalidParameter("PlusMinusJ J0 must be > 0");
  return WeightDistribution(PlusMinusJ{p, J0});
}

WeightDistribution WeightDistribution::empirical(std::vector<double> samples) {
  if (samples.empty()) throw InvalidParameter("Empirical distribution needs samples");
  for (double s : samples)
    if (!std::isfinite(s)) throw InvalidParameter("Empirical samples must be finite");
  return WeightDistribution(Empirical{std::move(samples)});
}

double WeightDistribution::expectation(const std::function<double(double)>& f) const {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          const double norm = 1.0 / (d.nu * std::sqrt(2.0 * std::numbers::pi));
          auto g = [&](double x) {
            const double z = (x - d.J0) / d.nu;
            return f(x) * norm * std::exp(-0.5 * z * z);
          };
          return integrate(g, d.J0 - 12.0 * d.nu, d.J0 + 12.0 * d.nu, 96, 20);
        } else if constexpr (std::is_same_v<T, PlusMinusJ>) {
          return d.p * f(d.J0) + (1.0 - d.p) * f(-d.J0);
        } else {
          double s = 0.0;
          for (double x : d.samples) s += f(x);
          return s / static_cast<double>(d.samples.size());
        }
      },
      v_);
}

double analytic_beta_n(const WeightDistribution& dist) {
  if (const auto* g = std::get_if<Gaussian>(&dist.variant())) return g->J0 / (g->nu * g->nu);
  if (const auto* pm = std::get_if<PlusMinusJ>(&dist.variant())) {
    if (pm->p >= 1.0) return std::numeric_limits<double>::infinity();
    return std::log(pm->p / (1.0 - pm->p)) / (2.0 * pm->J0);
  }
  throw UnsupportedDistribution("no closed-form Nishimori temperature for an empirical law");
}

double increasing_root(const std::function<double(double)>& g, double hi0, double rtol,
                       double beta_max) {
  double lo = 0.0;
  double hi = hi0;
  while (g(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > beta_max) throw BracketError("no sign change below beta = " + std::to_string(beta_max));
  }
  while (hi - lo > rtol * hi) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double model_beta_sg(const WeightDistribution& dist, double c) {
  if (!(c > 1.0)) throw UndetectableDegree("c E[tanh^2] = 1 has no root for c <= 1");
  const double sat = dist.expectation([](double x) { return x == 0.0 ? 0.0 : 1.0; });
  if (c * sat <= 1.0) throw UndetectableDegree("c P(X != 0) <= 1: no spin-glass transition");
  return increasing_root(
      [&](double b) { return c * dist.expectation([b](double x) { return std::pow(std::tanh(b * x), 2); }) - 1.0; },
      0.1);
}

double model_beta_f(const WeightDistribution& dist, double c) {
  auto g = [&](double b) {
    return c * dist.expectation([b](double x) { return std::tanh(b * x); }) - 1.0;
  };
  // c E[tanh(bX)] is not monotone in general; scan a log grid for the first crossing.
  double prev = 1e-6;
  if (g(prev) > 0.0) return prev;
  for (double b = 2e-6; b < 1e6; b *= 1.25) {
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
  throw NoFerromagneticTransition("c E[tanh(beta X)] never exceeds 1");
}

QuadratureRule gauss_legendre(int order) {
  if (order < 1) throw InvalidParameter("quadrature order must be >= 1");
  static std::mutex mu;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(order); it != cache.end()) return it->second;

  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    T(k, k - 1) = T(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  QuadratureRule r;
  for (int k = 0; k < order; ++k) {
    r.nodes.push_back(es.eigenvalues()[k]);
    r.weights.push_back(2.0 * std::pow(es.eigenvectors()(0, k), 2));
  }
  return cache.emplace(order, std::move(r)).first->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels,
                 int order) {
  const QuadratureRule rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
      s += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
    total += 0.5 * h * s;
  }
  return total;
}

}  // namespace nbh
