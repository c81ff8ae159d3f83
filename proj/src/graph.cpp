#include "nbh/graph.hpp"

#include "nbh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nbh {

WeightedGraph::WeightedGraph(Index n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) throw InvalidParameter("node count must be non-negative");
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (auto e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n)
      throw InvalidParameter("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                             ") out of range for n=" + std::to_string(n));
    if (e.i == e.j) throw InvalidParameter("self-loop at node " + std::to_string(e.i));
    if (!std::isfinite(e.w)) throw InvalidParameter("non-finite edge weight");
    if (e.w == 0.0) continue;
    if (e.i > e.j) std::swap(e.i, e.j);
    kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  for (std::size_t k = 1; k < kept.size(); ++k) {
    if (kept[k].i == kept[k - 1].i && kept[k].j == kept[k - 1].j)
      throw InvalidParameter("duplicate edge (" + std::to_string(kept[k].i) + ", " +
                             std::to_string(kept[k].j) + ")");
  }
  edges_ = std::move(kept);
  build();
}

void WeightedGraph::build() {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * edges_.size());
  std::vector<Index> deg(static_cast<std::size_t>(n_), 0);
  for (const auto& e : edges_) {
    trip.emplace_back(e.i, e.j, e.w);
    trip.emplace_back(e.j, e.i, e.w);
    ++deg[e.i];
    ++deg[e.j];
  }
  adjacency_.resize(n_, n_);
  adjacency_.setFromTriplets(trip.begin(), trip.end());
  adjacency_.makeCompressed();

  csr_.offsets.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (Index v = 0; v < n_; ++v) csr_.offsets[v + 1] = csr_.offsets[v] + deg[v];
  csr_.neighbours.resize(2 * edges_.size());
  csr_.edge_ids.resize(2 * edges_.size());
  std::vector<Index> fill(csr_.offsets.begin(), csr_.offsets.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    csr_.neighbours[fill[e.i]] = e.j;
    csr_.edge_ids[fill[e.i]++] = static_cast<Index>(k);
    csr_.neighbours[fill[e.j]] = e.i;
    csr_.edge_ids[fill[e.j]++] = static_cast<Index>(k);
  }
}

double WeightedGraph::average_degree() const noexcept {
  return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(n_);
}

Eigen::VectorXd WeightedGraph::degrees() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n_);
  for (const auto& e : edges_) {
    d[e.i] += 1.0;
    d[e.j] += 1.0;
  }
  return d;
}

Eigen::VectorXd WeightedGraph::abs_strengths() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n_);
  for (const auto& e : edges_) {
    d[e.i] += std::abs(e.w);
    d[e.j] += std::abs(e.w);
  }
  return d;
}

std::vector<double> WeightedGraph::weights() const {
  std::vector<double> w;
  w.reserve(edges_.size());
  for (const auto& e : edges_) w.push_back(e.w);
  return w;
}

double WeightedGraph::max_abs_weight() const noexcept {
  double m = 0.0;
  for (const auto& e : edges_) m = std::max(m, std::abs(e.w));
  return m;
}

WeightedGraph WeightedGraph::with_weights(std::span<const double> w) const {
  if (w.size() != edges_.size())
    throw DimensionError("weight vector has " + std::to_string(w.size()) + " entries, graph has " +
                         std::to_string(edges_.size()) + " edges");
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    if (!std::isfinite(w[k])) throw InvalidParameter("non-finite edge weight");
    if (w[k] != 0.0) out.push_back({edges_[k].i, edges_[k].j, w[k]});
  }
  WeightedGraph g;
  g.n_ = n_;
  g.edges_ = std::move(out);
  g.build();
  return g;
}

void check_labels(const LabelVector& labels, Index n) {
  if (labels.size() != n)
    throw DimensionError("label vector has length " + std::to_string(labels.size()) +
                         ", expected " + std::to_string(n));
  for (Index i = 0; i < labels.size(); ++i)
    if (labels[i] != 1 && labels[i] != -1)
      throw InvalidParameter("labels must be +1 or -1 (entry " + std::to_string(i) + ")");
}

}  // namespace nbh
