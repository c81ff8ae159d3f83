#include "nbh/nonbacktracking.hpp"

#include "nbh/errors.hpp"
#include "nbh/matrices.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/OrderingMethods>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nbh {

namespace {

/// Sparse LDL^T without pivoting or conjugation (valid for real symmetric and
/// complex symmetric matrices), on a fill-reducing AMD permutation.
template <class Scalar>
class SymmetricLdl {
 public:
  explicit SymmetricLdl(const Eigen::SparseMatrix<Scalar>& A) {
    const Index n = A.rows();
    Eigen::AMDOrdering<int> amd;
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm;
    amd(A.template selfadjointView<Eigen::Lower>(), perm);
    // perm maps new -> old; A is stored with both triangles.
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) pos[perm.indices()[k]] = static_cast<int>(k);
    std::vector<Eigen::Triplet<Scalar>> trip;
    trip.reserve(static_cast<std::size_t>(A.nonZeros()));
    for (Index c = 0; c < A.outerSize(); ++c)
      for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(A, c); it; ++it) {
        const int r = pos[it.row()], q = pos[it.col()];
        if (r <= q) trip.emplace_back(r, q, it.value());
      }
    Eigen::SparseMatrix<Scalar> U(n, n);
    U.setFromTriplets(trip.begin(), trip.end());
    U.makeCompressed();
    const int* Ap = U.outerIndexPtr();
    const int* Ai = U.innerIndexPtr();
    const Scalar* Ax = U.valuePtr();

    std::vector<Index> parent(n), lnz(n, 0), flag(n), lp(n + 1, 0);
    for (Index k = 0; k < n; ++k) {
      parent[k] = -1;
      flag[k] = k;
      for (Index p = Ap[k]; p < Ap[k + 1]; ++p) {
        for (Index i = Ai[p]; i < k && flag[i] != k; i = parent[i]) {
          if (parent[i] == -1) parent[i] = k;
          ++lnz[i];
          flag[i] = k;
        }
      }
    }
    for (Index k = 0; k < n; ++k) lp[k + 1] = lp[k] + lnz[k];
    std::vector<Index> li(static_cast<std::size_t>(lp[n])), pattern(n);
    std::vector<Scalar> lx(static_cast<std::size_t>(lp[n])), y(n, Scalar(0));
    d_.assign(n, Scalar(0));
    std::fill(lnz.begin(), lnz.end(), 0);
    for (Index k = 0; k < n; ++k) {
      Index top = n;
      flag[k] = k;
      for (Index p = Ap[k]; p < Ap[k + 1]; ++p) {
        Index i = Ai[p];
        if (i > k) continue;
        y[i] += Ax[p];
        Index len = 0;
        for (; flag[i] != k; i = parent[i]) {
          pattern[len++] = i;
          flag[i] = k;
        }
        while (len > 0) pattern[--top] = pattern[--len];
      }
      d_[k] = y[k];
      y[k] = Scalar(0);
      for (; top < n; ++top) {
        const Index i = pattern[top];
        const Scalar yi = y[i];
        y[i] = Scalar(0);
        const Index p2 = lp[i] + lnz[i];
        for (Index p = lp[i]; p < p2; ++p) y[li[p]] -= lx[p] * yi;
        const Scalar l_ki = yi / d_[i];
        d_[k] -= l_ki * yi;
        li[p2] = k;
        lx[p2] = l_ki;
        ++lnz[i];
      }
      if (d_[k] == Scalar(0)) ok_ = false;
    }
  }

  bool ok() const noexcept { return ok_; }
  const std::vector<Scalar>& diagonal() const noexcept { return d_; }

 private:
  std::vector<Scalar> d_;
  bool ok_ = true;
};

double wrap(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

}  // namespace

std::vector<Edge> directed_edges(const WeightedGraph& W) {
  std::vector<Edge> d;
  d.reserve(2 * static_cast<std::size_t>(W.num_edges()));
  for (const auto& e : W.edges()) {
    d.push_back(e);
    d.push_back({e.j, e.i, e.w});
  }
  std::sort(d.begin(), d.end(),
            [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  return d;
}

Eigen::MatrixXd nonbacktracking(const WeightedGraph& W, Index cap) {
  const Index m2 = 2 * W.num_edges();
  if (m2 > cap)
    throw TooLargeError(std::to_string(m2) + " directed edges exceed the dense cap of " +
                        std::to_string(cap));
  const auto d = directed_edges(W);
  // Directed edges leaving node k occupy a contiguous block.
  std::vector<Index> first(static_cast<std::size_t>(W.num_nodes()) + 1, 0);
  for (const auto& e : d) ++first[e.i + 1];
  for (Index v = 0; v < W.num_nodes(); ++v) first[v + 1] += first[v];

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m2, m2);
  for (Index a = 0; a < m2; ++a) {
    const int i = d[a].i, j = d[a].j;
    for (Index b = first[j]; b < first[j + 1]; ++b)
      if (d[b].j != i) B(a, b) = d[b].w;
  }
  return B;
}

SpectrumReport full_spectrum_B(const WeightedGraph& W, Index cap) {
  SpectrumReport r;
  const Eigen::MatrixXd B = nonbacktracking(W, cap);
  if (B.rows() == 0) return r;
  Eigen::EigenSolver<Eigen::MatrixXd> es(B, false);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolve of B failed", INFINITY);
  r.all_eigs.assign(es.eigenvalues().data(), es.eigenvalues().data() + B.rows());
  r.leading = *std::max_element(r.all_eigs.begin(), r.all_eigs.end(),
                                [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  for (const auto& z : r.all_eigs)
    if (std::abs(z.imag()) > 1e-8) r.bulk_radius_empirical = std::max(r.bulk_radius_empirical, std::abs(z));
  const double cut = 0.95 * r.bulk_radius_empirical;
  for (const auto& z : r.all_eigs) {
    if (std::abs(z.imag()) >= 1e-8 * std::abs(z) || !(std::abs(z) < cut)) continue;
    if (!r.inner_real || std::abs(z) > std::abs(*r.inner_real)) r.inner_real = z;
  }
  return r;
}

std::vector<const char*> classify_spectrum(const SpectrumReport& r) {
  std::vector<const char*> kinds;
  bool leading_done = false, inner_done = false;
  for (const auto& z : r.all_eigs) {
    if (!leading_done && z == r.leading) {
      kinds.push_back("leading");
      leading_done = true;
    } else if (!inner_done && r.inner_real && z == *r.inner_real) {
      kinds.push_back("inner");
      inner_done = true;
    } else {
      kinds.push_back("bulk");
    }
  }
  return kinds;
}

Eigen::MatrixXd build_M0(const WeightedGraph& W, double s, Index cap) {
  const Index n = W.num_nodes();
  if (n > cap) throw TooLargeError("M0 is limited to n <= " + std::to_string(cap));
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  M.topLeftCorner(n, n) = Eigen::MatrixXd(W.adjacency());
  M.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  M.bottomLeftCorner(n, n) = s * Eigen::MatrixXd::Identity(n, n);
  return M;
}

std::vector<Complex> eigs_M0(const WeightedGraph& W, double s) {
  const Eigen::VectorXd mu = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                                 Eigen::MatrixXd(W.adjacency()), Eigen::EigenvaluesOnly)
                                 .eigenvalues();
  std::vector<Complex> out;
  for (double m : mu) {
    const Complex root = std::sqrt(Complex(m * m - 4.0 * s, 0.0));
    out.push_back(0.5 * (m + root));
    out.push_back(0.5 * (m - root));
  }
  return out;
}

Eigen::MatrixXcd build_F(const WeightedGraph& W, Complex lambda) {
  const Index n = W.num_nodes();
  const Complex l2 = lambda * lambda;
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& e : W.edges()) {
    const double w2 = e.w * e.w;
    const Complex den = l2 - w2;
    if (std::abs(den) <= 1e-14 * std::max(std::abs(l2), w2))
      throw PoleError("lambda^2 coincides with omega^2");
    const Complex off = lambda * (w2 * e.w) / den;
    F(e.i, e.j) += off;
    F(e.j, e.i) += off;
    F(e.i, e.i) -= w2 * w2 / den;
    F(e.j, e.j) -= w2 * w2 / den;
  }
  return F;
}

Eigen::MatrixXcd build_M_of_lambda(const WeightedGraph& W, Complex lambda, Index cap) {
  const Index n = W.num_nodes();
  if (n > cap) throw TooLargeError("M(lambda) is limited to n <= " + std::to_string(cap));
  if (std::abs(lambda) < 1.0) throw InvalidParameter("M(lambda) requires |lambda| >= 1");
  Eigen::VectorXd dw = Eigen::VectorXd::Zero(n);
  for (const auto& e : W.edges()) {
    dw[e.i] += e.w * e.w;
    dw[e.j] += e.w * e.w;
  }
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  M.topLeftCorner(n, n) = Eigen::MatrixXd(W.adjacency()).cast<Complex>();
  M.topRightCorner(n, n) = -Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd lower = -build_F(W, lambda);
  lower.diagonal() += dw.cast<Complex>();
  M.bottomLeftCorner(n, n) = lower;
  return M;
}

Complex log_det(const Eigen::MatrixXcd& A) {
  if (A.rows() == 0) return {0.0, 0.0};
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  Complex s(0.0, 0.0);
  for (Index i = 0; i < A.rows(); ++i) s += std::log(lu.matrixLU()(i, i));
  if (lu.permutationP().determinant() < 0) s += Complex(0.0, std::numbers::pi);
  return s;
}

Complex log_det_bethe_hessian(const WeightedGraph& W, Complex x) {
  if (W.num_nodes() == 0) return {0.0, 0.0};
  const SymmetricLdl<Complex> ldl(bethe_hessian_generic<Complex>(W, x));
  if (!ldl.ok()) return {-INFINITY, 0.0};
  Complex s(0.0, 0.0);
  for (const Complex& d : ldl.diagonal()) s += std::log(d);
  return s;
}

double watanabe_fukumizu_residual(const WeightedGraph& W, Complex x, Index cap) {
  const Eigen::MatrixXd B = nonbacktracking(W, cap);
  Eigen::MatrixXcd A = -B.cast<Complex>();
  A.diagonal().array() += x;
  const Complex ll = log_det(A);
  Complex lr = log_det(Eigen::MatrixXcd(bethe_hessian_generic<Complex>(W, x)));
  for (const auto& e : W.edges()) lr += std::log(x * x - e.w * e.w);
  const double L = std::max({ll.real(), lr.real(), 0.0});
  if (!std::isfinite(L)) return std::isinf(ll.real()) && std::isinf(lr.real()) ? 0.0 : 1.0;
  const Complex a = std::exp(ll - L), b = std::exp(lr - L);
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), std::exp(-L)});
}

Index bethe_hessian_inertia(const WeightedGraph& W, double x) {
  if (W.num_nodes() == 0) return 0;
  const SymmetricLdl<double> ldl(bethe_hessian_generic<double>(W, x));
  if (!ldl.ok()) throw PoleError("H(x) is exactly singular at x = " + std::to_string(x));
  return std::count_if(ldl.diagonal().begin(), ldl.diagonal().end(), [](double d) { return d < 0.0; });
}

std::vector<double> real_eigenvalues_B(const WeightedGraph& W, double lo, double hi, Index grid,
                                       double rtol) {
  if (!(lo < hi) || grid < 2) throw InvalidParameter("need lo < hi and grid >= 2");
  const double wmax = W.max_abs_weight();
  if (!(lo > wmax || hi < -wmax))
    throw PoleError("interval must stay outside [-max|omega|, max|omega|]");
  std::vector<double> out;
  std::vector<double> xs(static_cast<std::size_t>(grid));
  std::vector<Index> counts(xs.size());
  for (Index k = 0; k < grid; ++k) {
    xs[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid - 1);
    counts[k] = bethe_hessian_inertia(W, xs[k]);
  }
  // Recursive split of every interval whose endpoint inertia differs.
  auto refine = [&](auto&& self, double a, Index na, double b, Index nb) -> void {
    if (na == nb) return;
    if (b - a <= rtol * std::max(std::abs(a), std::abs(b))) {
      for (Index t = 0; t < std::abs(na - nb); ++t) out.push_back(0.5 * (a + b));
      return;
    }
    const double m = 0.5 * (a + b);
    const Index nm = bethe_hessian_inertia(W, m);
    self(self, a, na, m, nm);
    self(self, m, nm, b, nb);
  };
  for (Index k = 0; k + 1 < grid; ++k) refine(refine, xs[k], counts[k], xs[k + 1], counts[k + 1]);
  return out;
}

Index count_outside_radius(const WeightedGraph& W, double r, Index min_points) {
  if (!(r > W.max_abs_weight())) throw InvalidParameter("radius must exceed max|omega|");
  // Upper half circle; the lower half contributes the same winding by
  // conjugate symmetry. The phase of prod(1 - omega^2/z^2) winds 0 times.
  auto phase = [&](double t) {
    const Complex z = std::polar(r, t);
    Complex s = log_det_bethe_hessian(W, z);
    for (const auto& e : W.edges()) s += std::log(1.0 - e.w * e.w / (z * z));
    return s.imag();
  };
  const double pi = std::numbers::pi;
  double total = 0.0;
  auto segment = [&](auto&& self, double t0, double p0, double t1, double p1, int depth) -> void {
    const double d = wrap(p1 - p0);
    if (std::abs(d) < pi / 3.0 || depth > 40) {
      total += d;
      return;
    }
    const double tm = 0.5 * (t0 + t1);
    const double pm = phase(tm);
    self(self, t0, p0, tm, pm, depth + 1);
    self(self, tm, pm, t1, p1, depth + 1);
  };
  double t_prev = 0.0, p_prev = phase(0.0);
  for (Index k = 1; k <= min_points; ++k) {
    const double t = pi * static_cast<double>(k) / static_cast<double>(min_points);
    const double p = phase(t);
    segment(segment, t_prev, p_prev, t, p, 0);
    t_prev = t;
    p_prev = p;
  }
  const double winding = 2.0 * total / (2.0 * pi);
  return -static_cast<Index>(std::lround(winding));
}

}  // namespace nbh
