#pragma once

#include "nbh/eigensolver.hpp"
#include "nbh/graph.hpp"

#include <optional>
#include <vector>

namespace nbh {

/// Root of c mean(tanh^2(beta J)) = 1 over the stored weights, c = 2|E|/n.
/// Throws UndetectableDegree when c <= 1.
double estimate_beta_sg(const WeightedGraph& Jt);

/// Smallest positive root of c mean(tanh(beta J)) = 1. Meaningful on the
/// un-gauged J only. Throws NoFerromagneticTransition without a crossing.
double estimate_beta_f(const WeightedGraph& J);

/// Quadratic form used by the root step.
enum class Route {
  bethe_hessian,           // x^T H_beta x
  regularized_laplacian,   // v^T L_beta v
};

/// x^T H_{beta,J} x or v^T L_{beta,J} v in O(|E|) without assembling a matrix.
double quadratic_form(const WeightedGraph& Jt, double beta, const Eigen::VectorXd& x, Route route);

struct RootResult {
  double beta = 0.0;
  bool capped = false;
};

/// Smallest beta in (lo, beta_th] with f(beta) = x^T M_beta x = 0, for
/// f(lo) < 0: the bracket (lo, min(2 lo, beta_th)] is doubled until f > 0,
/// then bisected to |f| < 1e-10. Returns beta_th with capped = true when f
/// stays non-positive.
RootResult courant_fischer_root(const Eigen::VectorXd& x, const WeightedGraph& Jt, double lo,
                                double beta_th, Route route = Route::regularized_laplacian);

struct NishimoriOptions {
  double epsilon = 1e-5;
  /// beta_th = cap_factor sqrt(c) beta_SG.
  double cap_factor = 2.0;
  int max_iterations = 100;
  EigenOptions eig;
};

struct NishimoriIteration {
  double beta = 0.0;
  double gamma_min = 0.0;
};

struct NishimoriEstimate {
  double beta_n_hat = 0.0;
  double beta_sg_hat = 0.0;
  double beta_th = 0.0;
  bool detectable = false;
  bool capped = false;
  /// True when the +-J0 closed-form route was used.
  bool signed_route = false;
  std::vector<NishimoriIteration> iterations;
  /// Smallest eigenvector of H at beta_n_hat (unit norm, mapped back from L
  /// on the general route).
  Eigen::VectorXd eigvec;
};

/// Algorithm for beta_N-hat: iterate smallest-eigenvector / Courant-Fischer
/// root steps from beta_SG until |gamma_min| <= epsilon.
NishimoriEstimate estimate_beta_nishimori(const WeightedGraph& Jt, const NishimoriOptions& opts = {});

/// Smallest eigenpair of H_beta, computed through L and mapped back when the
/// weights are not +-J0. The returned value is the eigenvalue of the matrix
/// actually solved (L or H_r), which shares its sign with gamma_min(H_beta).
EigenPair bethe_hessian_smallest(const WeightedGraph& Jt, double beta, const EigenOptions& eig = {});

/// H_r = (r^2 - 1) I + D - r J~/J0.
SparseMatrix signed_bethe_hessian_r(const WeightedGraph& Jt, double r);

}  // namespace nbh
