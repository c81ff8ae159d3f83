#include "nbh/eigensolver.hpp"

#include "nbh/errors.hpp"
#include "nbh/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nbh {

namespace {

Eigen::VectorXd random_unit(Index n, CounterRng& rng) {
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v / v.norm();
}

/// Two passes of classical Gram-Schmidt against the first k columns of V.
/// Returns the accumulated coefficients.
Eigen::VectorXd orthogonalize(const Eigen::MatrixXd& V, Index k, Eigen::VectorXd& w) {
  Eigen::VectorXd h = Eigen::VectorXd::Zero(k);
  if (k == 0) return h;
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd c = V.leftCols(k).transpose() * w;
    w.noalias() -= V.leftCols(k) * c;
    h += c;
  }
  return h;
}

std::vector<EigenPair> dense_pairs(const SparseMatrix& A, Index nev, Which which) {
  const Eigen::MatrixXd M(A);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", INFINITY);
  const Index n = M.rows();
  std::vector<EigenPair> out;
  for (Index t = 0; t < nev; ++t) {
    const Index k = which == Which::smallest ? t : n - 1 - t;
    EigenPair p;
    p.value = es.eigenvalues()[k];
    p.vector = es.eigenvectors().col(k);
    p.residual = (A * p.vector - p.value * p.vector).norm();
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<EigenPair> lanczos(const MatVec& op, Index n, Index nev, Which which,
                               const EigenOptions& opts) {
  if (n < 1) throw InvalidParameter("empty operator");
  if (nev < 1 || nev > n) throw InvalidParameter("nev must lie in [1, n]");
  if (!(opts.tol > 0.0)) throw InvalidParameter("eigen tolerance must be > 0");

  const Index m = std::min(n, std::max(opts.subspace, 2 * nev + 8));
  const Index keep = std::min(m - 1, std::max(nev + 2, m / 2));
  CounterRng rng(opts.seed, stream::solver);

  Eigen::MatrixXd V(n, m + 1);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  if (opts.start && opts.start->size() == n && opts.start->norm() > 0.0)
    V.col(0) = *opts.start / opts.start->norm();
  else
    V.col(0) = random_unit(n, rng);

  // Largest problems are solved as smallest of -A.
  const double sgn = which == Which::smallest ? 1.0 : -1.0;
  Eigen::VectorXd w(n);
  Index matvecs = 0;
  Index k = 0;  // columns carried over from the previous restart
  double best = INFINITY;
  double anorm = 0.0;

  while (true) {
    for (Index j = k; j < m; ++j) {
      op(V.col(j), w);
      ++matvecs;
      if (sgn < 0) w = -w;
      Eigen::VectorXd h = orthogonalize(V, j + 1, w);
      T.col(j).head(j + 1) = h;
      T.row(j).head(j + 1) = h.transpose();
      double b = w.norm();
      anorm = std::max(anorm, std::abs(h[j]) + b);
      if (b <= 1e-13 * std::max(anorm, 1.0)) {
        // Invariant subspace: continue from a fresh orthogonal direction.
        b = 0.0;
        w = random_unit(n, rng);
        orthogonalize(V, j + 1, w);
        w /= w.norm();
      } else {
        w /= b;
      }
      V.col(j + 1) = w;
      if (j + 1 < m)
        T(j + 1, j) = T(j, j + 1) = b;
      else
        best = b;
    }
    const double bm = best;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const Eigen::VectorXd& theta = es.eigenvalues();
    const Eigen::MatrixXd& S = es.eigenvectors();

    bool all = true;
    double worst = 0.0;
    for (Index t = 0; t < nev; ++t) {
      const double est = std::abs(bm * S(m - 1, t));
      worst = std::max(worst, est);
      if (est > opts.tol) all = false;
    }
    if (all) {
      std::vector<EigenPair> out;
      double true_worst = 0.0;
      for (Index t = 0; t < nev; ++t) {
        EigenPair p;
        p.vector = V.leftCols(m) * S.col(t);
        p.vector.normalize();
        Eigen::VectorXd Ax(n);
        op(p.vector, Ax);
        ++matvecs;
        p.value = p.vector.dot(Ax);
        p.residual = (Ax - p.value * p.vector).norm();
        p.iterations = matvecs;
        true_worst = std::max(true_worst, p.residual);
        out.push_back(std::move(p));
      }
      if (true_worst <= opts.tol) return out;
      worst = true_worst;
    }
    if (matvecs >= opts.max_matvecs)
      throw ConvergenceError("Lanczos did not converge within " + std::to_string(opts.max_matvecs) +
                                 " matrix-vector products",
                             worst);

    // Thick restart on the `keep` wanted Ritz vectors.
    const Eigen::MatrixXd Vk = V.leftCols(m) * S.leftCols(keep);
    V.leftCols(keep) = Vk;
    V.col(keep) = V.col(m);
    T.setZero();
    for (Index t = 0; t < keep; ++t) {
      T(t, t) = theta[t];
      T(keep, t) = T(t, keep) = bm * S(m - 1, t);
    }
    // Column `keep` is rebuilt by the next expansion; its coupling to the kept
    // Ritz vectors is recovered by orthogonalize().
    k = keep;
  }
}

std::vector<EigenPair> extremal_eigpairs(const SparseMatrix& A, Index nev, Which which,
                                         const EigenOptions& opts) {
  if (A.rows() != A.cols()) throw DimensionError("matrix must be square");
  const Index n = A.rows();
  if (n == 0) throw InvalidParameter("empty matrix");
  if (nev < 1 || nev > n) throw InvalidParameter("nev must lie in [1, n]");
  if (n <= opts.dense_threshold || n <= 2 * nev + 8) return dense_pairs(A, nev, which);
  return lanczos([&A](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y.noalias() = A * x; }, n,
                 nev, which, opts);
}

EigenPair smallest_eigpair(const SparseMatrix& A, const EigenOptions& opts) {
  return extremal_eigpairs(A, 1, Which::smallest, opts).front();
}

EigenPair largest_eigpair(const SparseMatrix& A, const EigenOptions& opts) {
  return extremal_eigpairs(A, 1, Which::largest, opts).front();
}

Eigen::VectorXd dense_eigenvalues(const SparseMatrix& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(A), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace nbh
