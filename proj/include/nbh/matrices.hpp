#pragma once

#include "nbh/errors.hpp"
#include "nbh/graph.hpp"

#include <Eigen/SparseCore>

#include <cmath>
#include <complex>
#include <vector>

namespace nbh {

/// beta |J_ij| above this makes 1 - tanh^2 lose all digits.
inline constexpr double kMaxCoupling = 18.0;

/// H_{beta,J}: diagonal 1 + sum_k sinh^2(beta J_ik), off-diagonal
/// -sinh(2 beta J_ij) / 2. Throws OverflowError when beta max|J| > kMaxCoupling.
SparseMatrix bethe_hessian(const WeightedGraph& J, double beta);

/// H(x) with the stored weights taken as omega. Scalar may be real or complex.
/// Throws PoleError when x^2 matches some omega^2 to 1e-14 relative.
template <class Scalar = double>
Eigen::SparseMatrix<Scalar> bethe_hessian_generic(const WeightedGraph& W, Scalar x) {
  using std::abs;
  const Index n = W.num_nodes();
  const Scalar x2 = x * x;
  std::vector<Scalar> diag(static_cast<std::size_t>(n), Scalar(1));
  std::vector<Eigen::Triplet<Scalar>> trip;
  trip.reserve(2 * static_cast<std::size_t>(W.num_edges()) + static_cast<std::size_t>(n));
  for (const auto& e : W.edges()) {
    const double w2 = e.w * e.w;
    const Scalar den = x2 - Scalar(w2);
    if (abs(den) <= 1e-14 * std::max<double>(abs(x2), w2))
      throw PoleError("x^2 coincides with omega^2 on edge (" + std::to_string(e.i) + ", " +
                      std::to_string(e.j) + ")");
    const Scalar off = -x * Scalar(e.w) / den;
    trip.emplace_back(e.i, e.j, off);
    trip.emplace_back(e.j, e.i, off);
    const Scalar d = Scalar(w2) / den;
    diag[e.i] += d;
    diag[e.j] += d;
  }
  for (Index i = 0; i < n; ++i) trip.emplace_back(i, i, diag[i]);
  Eigen::SparseMatrix<Scalar> H(n, n);
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

/// (1 - t^2) I + t^2 D - t J~/J0 with t = tanh(beta J0). Throws NotSignedGraph
/// unless every |weight| equals a common J0.
SparseMatrix signed_bethe_hessian(const WeightedGraph& Jt, double beta);

/// Common magnitude J0 when all |weights| agree to 1e-12 relative.
std::optional<double> signed_magnitude(const WeightedGraph& g);

/// L = I - Lambda'^{-1/2} W~ Lambda'^{-1/2} with Lambda' = I + Lambda, assembled
/// in the log domain so entries stay O(1) for any beta.
struct RegularizedLaplacian {
  SparseMatrix L;
  /// log of the diagonal of Lambda'^{1/2}; H x = 0 iff L (Lambda'^{1/2} x) = 0.
  Eigen::VectorXd log_sqrt_lambda;

  /// x = Lambda'^{-1/2} v, rescaled to unit norm.
  Eigen::VectorXd map_back(const Eigen::VectorXd& v) const;
};
RegularizedLaplacian regularized_laplacian(const WeightedGraph& Jt, double beta);

/// D-bar - J~ with D-bar = diag(|J~| 1).
SparseMatrix signed_laplacian(const WeightedGraph& Jt);

}  // namespace nbh
