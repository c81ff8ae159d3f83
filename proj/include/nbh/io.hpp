#pragma once

#include "nbh/graph.hpp"

#include <iosfwd>
#include <string>

namespace nbh {

/// Edge list: header "#n=<count>", then "i\tj\tw" per edge with 0-based ids.
/// Weights are written with 17 significant digits so reading back is exact.
void write_edge_list(std::ostream& os, const WeightedGraph& g);
void write_edge_list(const std::string& path, const WeightedGraph& g);
/// Throws InvalidParameter on malformed input (with the line number).
WeightedGraph read_edge_list(std::istream& is);
WeightedGraph read_edge_list(const std::string& path);

/// One +-1 per line.
void write_labels(const std::string& path, const LabelVector& labels);
LabelVector read_labels(const std::string& path);

/// One row per item, whitespace-separated floats; all rows of equal length.
void write_features(const std::string& path, const Eigen::MatrixXd& vectors);
Eigen::MatrixXd read_features(const std::string& path);

/// Coordinate dump "i j value", one stored entry per line.
void write_coo(std::ostream& os, const SparseMatrix& m);

}  // namespace nbh
