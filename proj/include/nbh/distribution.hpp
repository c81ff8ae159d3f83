#pragma once

#include <functional>
#include <variant>
#include <vector>

namespace nbh {

struct Gaussian {
  double J0 = 0.0;
  double nu = 1.0;
};

struct PlusMinusJ {
  double p = 0.5;
  double J0 = 1.0;
};

/// Raw multiset of observed nonzero weights; expectations are sample means.
struct Empirical {
  std::vector<double> samples;
};

/// Edge-weight law P(x). Construct through the factories, which validate.
class WeightDistribution {
 public:
  using Variant = std::variant<Gaussian, PlusMinusJ, Empirical>;

  static WeightDistribution gaussian(double J0, double nu);
  static WeightDistribution plus_minus_j(double p, double J0);
  static WeightDistribution empirical(std::vector<double> samples);

  const Variant& variant() const noexcept { return v_; }
  bool is_gaussian() const noexcept { return std::holds_alternative<Gaussian>(v_); }
  bool is_plus_minus_j() const noexcept { return std::holds_alternative<PlusMinusJ>(v_); }
  bool is_empirical() const noexcept { return std::holds_alternative<Empirical>(v_); }

  /// E[f(X)]. Gaussian: composite Gauss-Legendre on J0 +- 12 nu, relative
  /// accuracy around 1e-13 for smooth bounded f.
  double expectation(const std::function<double(double)>& f) const;

 private:
  explicit WeightDistribution(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Closed-form Nishimori temperature. Throws UnsupportedDistribution for
/// Empirical.
double analytic_beta_n(const WeightDistribution& dist);

/// Roots of c E[tanh^2(beta X)] = 1 and c E[tanh(beta X)] = 1 under the law.
/// Throw UndetectableDegree / NoFerromagneticTransition when no root exists.
double model_beta_sg(const WeightDistribution& dist, double c);
double model_beta_f(const WeightDistribution& dist, double c);

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int order);

/// Integral of f over [a, b] with `panels` panels of a Gauss-Legendre rule.
double integrate(const std::function<double(double)>& f, double a, double b, int panels = 64,
                 int order = 20);

/// Bisection for the root of an increasing function g on (0, inf): expands
/// the upper end by doubling from `hi0`, then bisects to relative tolerance
/// `rtol`. Throws BracketError if g never becomes positive before `beta_max`.
double increasing_root(const std::function<double(double)>& g, double hi0, double rtol = 1e-12,
                       double beta_max = 1e12);

}  // namespace nbh
