#include "nbh/classify.hpp"

#include "nbh/errors.hpp"
#include "nbh/matrices.hpp"
#include "nbh/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nbh {

const char* method_name(Method m) {
  switch (m) {
    case Method::nishimori_bh: return "nishimori_bh";
    case Method::spinglass_bh: return "spinglass_bh";
    case Method::mean_field: return "mean_field";
    case Method::signed_laplacian: return "signed_laplacian";
    case Method::belief_propagation: return "belief_propagation";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "nishimori" || s == "nishimori_bh") return Method::nishimori_bh;
  if (s == "spinglass" || s == "spinglass_bh") return Method::spinglass_bh;
  if (s == "mean_field") return Method::mean_field;
  if (s == "laplacian" || s == "signed_laplacian") return Method::signed_laplacian;
  if (s == "bp" || s == "belief_propagation") return Method::belief_propagation;
  throw InvalidParameter("unknown method '" + s + "'");
}

LabelVector kmeans_1d(const Eigen::VectorXd& values) {
  const Index n = values.size();
  if (n < 2) throw InvalidParameter("kmeans_1d needs at least 2 values");
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return values[a] < values[b]; });
  LabelVector out = LabelVector::Ones(n);
  if (values[order.front()] == values[order.back()]) return out;

  // Prefix sums over centred values keep the cost differences well conditioned.
  const double mean = values.mean();
  std::vector<double> s(static_cast<std::size_t>(n) + 1, 0.0), q(s.size(), 0.0);
  for (Index k = 0; k < n; ++k) {
    const double v = values[order[k]] - mean;
    s[k + 1] = s[k] + v;
    q[k + 1] = q[k] + v * v;
  }
  auto sse = [&](Index a, Index b) {  // cost of sorted range [a, b)
    const double m = static_cast<double>(b - a);
    const double sum = s[b] - s[a];
    return (q[b] - q[a]) - sum * sum / m;
  };
  Index best = 1;
  double best_cost = INFINITY;
  for (Index k = 1; k < n; ++k) {
    if (values[order[k]] == values[order[k - 1]]) continue;  // splits only between distinct values
    const double cost = sse(0, k) + sse(k, n);
    if (cost < best_cost) {
      best_cost = cost;
      best = k;
    }
  }
  for (Index k = 0; k < best; ++k) out[order[k]] = -1;
  return out;
}

double overlap(const LabelVector& sigma, const LabelVector& sigma_hat) {
  if (sigma.size() != sigma_hat.size())
    throw DimensionError("label vectors have lengths " + std::to_string(sigma.size()) + " and " +
                         std::to_string(sigma_hat.size()));
  if (sigma.size() == 0) throw InvalidParameter("empty label vectors");
  const double agree = static_cast<double>((sigma.array() == sigma_hat.array()).count());
  return std::abs(2.0 * (agree / static_cast<double>(sigma.size()) - 0.5));
}

WeightedGraph shift_weights(const WeightedGraph& Jt) {
  if (Jt.empty()) return Jt;
  // 1^T J 1 / (2|E|) equals the mean over undirected edges.
  double total = 0.0;
  for (const auto& e : Jt.edges()) total += 2.0 * e.w;
  const double shift = total / (2.0 * static_cast<double>(Jt.num_edges()));
  return Jt.map_weights([shift](const Edge& e) { return e.w - shift; });
}

namespace {

ClassificationResult from_vector(Method m, Eigen::VectorXd x, double beta, const EigenPair* p) {
  ClassificationResult r;
  r.method = m;
  r.beta_used = beta;
  r.labels_hat = kmeans_1d(x);
  r.eigvec = std::move(x);
  if (p) {
    r.diagnostics["eigenvalue"] = p->value;
    r.diagnostics["residual"] = p->residual;
    r.diagnostics["matvecs"] = static_cast<double>(p->iterations);
  }
  return r;
}

void require_edges(const WeightedGraph& g) {
  if (g.empty()) throw InvalidParameter("cannot classify a graph without edges");
}

}  // namespace

ClassificationResult classify_nishimori(const WeightedGraph& Jt, const NishimoriOptions& opts) {
  require_edges(Jt);
  const WeightedGraph shifted = shift_weights(Jt);
  const NishimoriEstimate est = estimate_beta_nishimori(shifted, opts);
  ClassificationResult r = from_vector(Method::nishimori_bh, est.eigvec, est.beta_n_hat, nullptr);
  r.diagnostics["beta_sg_hat"] = est.beta_sg_hat;
  r.diagnostics["beta_th"] = est.beta_th;
  r.diagnostics["detectable"] = est.detectable;
  r.diagnostics["capped"] = est.capped;
  r.diagnostics["iterations"] = static_cast<double>(est.iterations.size());
  r.diagnostics["gamma_min"] = est.iterations.back().gamma_min;
  r.warning = !est.detectable;
  return r;
}

ClassificationResult baseline_mean_field(const WeightedGraph& Jt, const EigenOptions& eig) {
  require_edges(Jt);
  const EigenPair p = largest_eigpair(Jt.adjacency(), eig);
  return from_vector(Method::mean_field, p.vector, 0.0, &p);
}

ClassificationResult baseline_signed_laplacian(const WeightedGraph& Jt, const EigenOptions& eig) {
  require_edges(Jt);
  const EigenPair p = smallest_eigpair(signed_laplacian(Jt), eig);
  return from_vector(Method::signed_laplacian, p.vector, 0.0, &p);
}

ClassificationResult baseline_spinglass_bh(const WeightedGraph& Jt, const EigenOptions& eig) {
  require_edges(Jt);
  const double beta = estimate_beta_sg(Jt);
  const EigenPair p = bethe_hessian_smallest(Jt, beta, eig);
  return from_vector(Method::spinglass_bh, p.vector, beta, &p);
}

ClassificationResult belief_propagation(const WeightedGraph& Jt, double beta, const BpOptions& opts) {
  if (Jt.empty()) throw InvalidParameter("graph has no edges");
  if (!(beta > 0.0)) throw InvalidParameter("beta must be > 0");
  if (!(opts.damping >= 0.0 && opts.damping < 1.0)) throw InvalidParameter("damping must lie in [0, 1)");
  const Index n = Jt.num_nodes();
  const auto& g = Jt.csr();
  const std::size_t m2 = g.neighbours.size();

  // msg[p] is m_{i -> neighbours[p]} for p in row i; rev[p] indexes m_{neighbours[p] -> i}.
  std::vector<std::size_t> rev(m2);
  {
    std::vector<std::size_t> slot_of_edge_from_low(static_cast<std::size_t>(Jt.num_edges()));
    for (Index i = 0; i < n; ++i)
      for (Index p = g.offsets[i]; p < g.offsets[i + 1]; ++p)
        if (g.neighbours[p] > i) slot_of_edge_from_low[g.edge_ids[p]] = static_cast<std::size_t>(p);
    for (Index i = 0; i < n; ++i)
      for (Index p = g.offsets[i]; p < g.offsets[i + 1]; ++p)
        if (g.neighbours[p] < i) {
          const std::size_t q = slot_of_edge_from_low[g.edge_ids[p]];
          rev[p] = q;
          rev[q] = static_cast<std::size_t>(p);
        }
  }
  std::vector<double> t(m2);
  for (Index i = 0; i < n; ++i)
    for (Index p = g.offsets[i]; p < g.offsets[i + 1]; ++p)
      t[p] = std::tanh(beta * Jt.edges()[g.edge_ids[p]].w);

  CounterRng rng(opts.seed, stream::bp);
  std::vector<double> msg(m2), next(m2), u(m2);
  for (auto& v : msg) v = -0.1 + 0.2 * rng.uniform();

  auto cavity_field = [](double tm) { return std::atanh(std::clamp(tm, -1.0 + 1e-15, 1.0 - 1e-15)); };
  int sweeps = 0;
  double delta = INFINITY;
  for (; sweeps < opts.max_sweeps && delta >= opts.tol; ++sweeps) {
    for (std::size_t p = 0; p < m2; ++p) u[p] = cavity_field(t[p] * msg[rev[p]]);  // k -> i seen from row i
    delta = 0.0;
    for (Index i = 0; i < n; ++i) {
      double h = 0.0;
      for (Index p = g.offsets[i]; p < g.offsets[i + 1]; ++p) h += u[p];
      for (Index p = g.offsets[i]; p < g.offsets[i + 1]; ++p) {
        const double fresh = std::tanh(h - u[p]);
        next[p] = (1.0 - opts.damping) * fresh + opts.damping * msg[p];
        delta = std::max(delta, std::abs(next[p] - msg[p]));
      }
    }
    msg.swap(next);
  }

  Eigen::VectorXd marg(n);
  for (Index i = 0; i < n; ++i) {
    double h = 0.0;
    for (Index p = g.offsets[i]; p < g.offsets[i + 1]; ++p) h += cavity_field(t[p] * msg[rev[p]]);
    marg[i] = std::tanh(h);
  }
  ClassificationResult r;
  r.method = Method::belief_propagation;
  r.beta_used = beta;
  r.labels_hat = LabelVector(n);
  for (Index i = 0; i < n; ++i) r.labels_hat[i] = marg[i] < 0.0 ? -1 : 1;
  r.eigvec = std::move(marg);
  const bool converged = delta < opts.tol;
  r.diagnostics["sweeps"] = sweeps;
  r.diagnostics["converged"] = converged;
  r.diagnostics["max_change"] = delta;
  r.warning = !converged;
  return r;
}

ClassificationResult run_method(Method m, const WeightedGraph& Jt, const NishimoriOptions& opts,
                                const BpOptions& bp) {
  switch (m) {
    case Method::nishimori_bh: return classify_nishimori(Jt, opts);
    case Method::spinglass_bh: return baseline_spinglass_bh(Jt, opts.eig);
    case Method::mean_field: return baseline_mean_field(Jt, opts.eig);
    case Method::signed_laplacian: return baseline_signed_laplacian(Jt, opts.eig);
    case Method::belief_propagation: {
      require_edges(Jt);
      const NishimoriEstimate est = estimate_beta_nishimori(shift_weights(Jt), opts);
      ClassificationResult r = belief_propagation(Jt, est.beta_n_hat, bp);
      r.diagnostics["detectable"] = est.detectable;
      return r;
    }
  }
  throw InvalidParameter("unknown method");
}

}  // namespace nbh
