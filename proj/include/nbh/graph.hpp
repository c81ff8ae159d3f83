#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <optional>
#include <span>
#include <vector>

namespace nbh {

using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double>;
using LabelVector = Eigen::VectorXi;

/// Undirected edge with i < j.
struct Edge {
  int i = 0;
  int j = 0;
  double w = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph without self-loops or explicit zero weights.
///
/// Edges are kept in lexicographic (i, j) order with i < j. A symmetric
/// compressed-column adjacency matrix is built on construction and shared by
/// all matrix builders. Instances are immutable.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Canonicalizes (i, j) so that i < j and sorts. Throws InvalidParameter on
  /// self-loops, duplicate pairs, out-of-range ids or non-finite weights.
  /// Zero-weight edges are dropped.
  WeightedGraph(Index n, std::vector<Edge> edges);

  Index num_nodes() const noexcept { return n_; }
  Index num_edges() const noexcept { return static_cast<Index>(edges_.size()); }
  bool empty() const noexcept { return edges_.empty(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const SparseMatrix& adjacency() const noexcept { return adjacency_; }

  /// 2|E| / n.
  double average_degree() const noexcept;
  /// Unweighted degree of each node.
  Eigen::VectorXd degrees() const;
  /// Row sums of |weights| (the D-bar of the signed Laplacian).
  Eigen::VectorXd abs_strengths() const;
  std::vector<double> weights() const;
  double max_abs_weight() const noexcept;

  /// Same topology, new weights in edge order. Zeros are dropped.
  WeightedGraph with_weights(std::span<const double> w) const;

  template <class F>
  WeightedGraph map_weights(F&& f) const {
    std::vector<double> w;
    w.reserve(edges_.size());
    for (const auto& e : edges_) w.push_back(f(e));
    return with_weights(w);
  }

  /// Neighbour lists in CSR form (offsets of size n+1), each entry carrying the
  /// undirected edge index.
  struct Csr {
    std::vector<Index> offsets;
    std::vector<int> neighbours;
    std::vector<Index> edge_ids;
  };
  const Csr& csr() const noexcept { return csr_; }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void build();

  Index n_ = 0;
  std::vector<Edge> edges_;
  SparseMatrix adjacency_;
  Csr csr_;
};

/// Observed graph J~ together with its planted labels.
struct LabeledInstance {
  WeightedGraph graph;
  LabelVector labels;
  std::optional<double> true_beta_n;
};

/// n feature vectors of dimension p, stored row-wise.
struct FeatureDataset {
  Eigen::MatrixXd vectors;
  std::optional<LabelVector> labels;

  Index n() const noexcept { return vectors.rows(); }
  Index p() const noexcept { return vectors.cols(); }
};

/// Throws DimensionError / InvalidParameter unless `labels` is a +-1 vector of
/// length n.
void check_labels(const LabelVector& labels, Index n);

}  // namespace nbh
