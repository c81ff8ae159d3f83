#pragma once

#include "nbh/graph.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace nbh {

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;  // unit norm
  double residual = 0.0;   // ||A x - value x||
  Index iterations = 0;    // matrix-vector products (0 on the dense path)
};

enum class Which { smallest, largest };

struct EigenOptions {
  double tol = 1e-8;
  Index max_matvecs = 60000;
  Index subspace = 48;
  std::uint64_t seed = 0;
  /// Dense SelfAdjointEigenSolver below or at this size.
  Index dense_threshold = 500;
  /// Optional starting vector (warm start); random from (seed, solver) otherwise.
  std::optional<Eigen::VectorXd> start;
};

using MatVec = std::function<void(const Eigen::VectorXd& in, Eigen::VectorXd& out)>;

/// The `nev` algebraically smallest or largest eigenpairs of a symmetric
/// operator by thick-restart Lanczos with full reorthogonalization. Ordered
/// from the extreme inwards. Throws ConvergenceError past max_matvecs.
std::vector<EigenPair> lanczos(const MatVec& op, Index n, Index nev, Which which,
                               const EigenOptions& opts = {});

/// Dispatches to the dense solver for small n and to lanczos otherwise.
std::vector<EigenPair> extremal_eigpairs(const SparseMatrix& A, Index nev, Which which,
                                         const EigenOptions& opts = {});

EigenPair smallest_eigpair(const SparseMatrix& A, const EigenOptions& opts = {});
EigenPair largest_eigpair(const SparseMatrix& A, const EigenOptions& opts = {});

/// Full sorted spectrum of a (small) symmetric sparse matrix.
Eigen::VectorXd dense_eigenvalues(const SparseMatrix& A);

}  // namespace nbh
