#pragma once

#include "nbh/graph.hpp"

#include <Eigen/Core>

#include <complex>
#include <optional>
#include <vector>

namespace nbh {

using Complex = std::complex<double>;

inline constexpr Index kDenseDirectedCap = 5000;

/// Directed edges (i, j) and (j, i) of every undirected edge, in
/// lexicographic order. Row/column k of B refers to entry k of this list.
std::vector<Edge> directed_edges(const WeightedGraph& W);

/// B_{(ij),(kl)} = delta_jk (1 - delta_il) omega_kl. Throws TooLargeError above
/// `cap` directed edges.
Eigen::MatrixXd nonbacktracking(const WeightedGraph& W, Index cap = kDenseDirectedCap);

struct SpectrumReport {
  Complex leading;
  /// Real eigenvalue of largest modulus below 0.95 bulk_radius_empirical.
  std::optional<Complex> inner_real;
  /// Max modulus over eigenvalues with |Im| > 1e-8.
  double bulk_radius_empirical = 0.0;
  std::vector<Complex> all_eigs;
};

/// Dense eigendecomposition of B.
SpectrumReport full_spectrum_B(const WeightedGraph& W, Index cap = kDenseDirectedCap);

/// Kind of each eigenvalue for spectrum dumps: "leading", "inner" or "bulk".
std::vector<const char*> classify_spectrum(const SpectrumReport& r);

/// M0 = [[W, -I], [s I, 0]] with s = c E[omega^2].
Eigen::MatrixXd build_M0(const WeightedGraph& W, double second_moment_times_c,
                         Index cap = 2000);
/// (mu +- sqrt(mu^2 - 4 s)) / 2 for every eigenvalue mu of W.
std::vector<Complex> eigs_M0(const WeightedGraph& W, double second_moment_times_c);

/// F_ii = -sum_k omega_ik^4 / (l^2 - omega_ik^2), F_ij = l omega_ij^3 / (l^2 - omega_ij^2).
Eigen::MatrixXcd build_F(const WeightedGraph& W, Complex lambda);
/// M(l) = [[W, -I], [D_W - F(l), 0]].
Eigen::MatrixXcd build_M_of_lambda(const WeightedGraph& W, Complex lambda, Index cap = 2000);

/// log det of a square complex matrix (any branch of the imaginary part).
Complex log_det(const Eigen::MatrixXcd& A);
/// log det of H(x) by sparse LU, imaginary part modulo 2 pi.
Complex log_det_bethe_hessian(const WeightedGraph& W, Complex x);

/// |lhs - rhs| / max(|lhs|, |rhs|, 1) for det[xI - B] = det H(x) prod(x^2 - omega^2),
/// evaluated in log space.
double watanabe_fukumizu_residual(const WeightedGraph& W, Complex x,
                                  Index cap = kDenseDirectedCap);

/// Number of negative eigenvalues of H(x) for real x (sparse LDL^T).
Index bethe_hessian_inertia(const WeightedGraph& W, double x);

/// Real eigenvalues of B in [lo, hi] located as sign changes of det H(x).
/// Requires every omega^2 outside [lo^2, hi^2]; scans `grid` points then
/// bisects to relative width `rtol`. Multiplicities are repeated.
std::vector<double> real_eigenvalues_B(const WeightedGraph& W, double lo, double hi,
                                       Index grid = 64, double rtol = 1e-10);

/// Number of eigenvalues of B with modulus > r, by the winding number of
/// det H(z) prod(1 - omega^2/z^2) on |z| = r. Requires r > max|omega|.
Index count_outside_radius(const WeightedGraph& W, double r, Index min_points = 256);

}  // namespace nbh
