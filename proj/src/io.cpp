#include "nbh/io.hpp"

#include "nbh/errors.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace nbh {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidParameter("cannot open '" + path + "' for reading");
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InvalidParameter("cannot open '" + path + "' for writing");
  return f;
}

[[noreturn]] void bad_line(std::size_t line, const std::string& msg) {
  throw InvalidParameter("line " + std::to_string(line) + ": " + msg);
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

void write_edge_list(std::ostream& os, const WeightedGraph& g) {
  os << "#n=" << g.num_nodes() << '\n' << std::setprecision(17);
  for (const auto& e : g.edges()) os << e.i << '\t' << e.j << '\t' << e.w << '\n';
}

void write_edge_list(const std::string& path, const WeightedGraph& g) {
  auto f = open_out(path);
  write_edge_list(f, g);
}

WeightedGraph read_edge_list(std::istream& is) {
  std::string line;
  std::size_t ln = 0;
  Index n = -1;
  std::vector<Edge> edges;
  while (std::getline(is, line)) {
    ++ln;
    if (blank(line)) continue;
    if (line[0] == '#') {
      if (line.rfind("#n=", 0) == 0) {
        try {
          std::size_t pos = 0;
          n = std::stoll(line.substr(3), &pos);
          if (!blank(line.substr(3 + pos))) bad_line(ln, "malformed header");
        } catch (const std::logic_error&) {
          bad_line(ln, "malformed header");
        }
      }
      continue;
    }
    if (n < 0) bad_line(ln, "edge before '#n=' header");
    std::istringstream ss(line);
    long long i = 0, j = 0;
    double w = 0.0;
    if (!(ss >> i >> j >> w)) bad_line(ln, "expected 'i j w'");
    std::string rest;
    if (ss >> rest) bad_line(ln, "trailing characters");
    if (i < 0 || j < 0 || i >= n || j >= n) bad_line(ln, "node id out of range");
    edges.push_back({static_cast<int>(i), static_cast<int>(j), w});
  }
  if (n < 0) throw InvalidParameter("missing '#n=<count>' header");
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph read_edge_list(const std::string& path) {
  auto f = open_in(path);
  return read_edge_list(f);
}

void write_labels(const std::string& path, const LabelVector& labels) {
  auto f = open_out(path);
  for (Index i = 0; i < labels.size(); ++i) f << labels[i] << '\n';
}

LabelVector read_labels(const std::string& path) {
  auto f = open_in(path);
  std::vector<int> v;
  std::string line;
  std::size_t ln = 0;
  while (std::getline(f, line)) {
    ++ln;
    if (blank(line)) continue;
    std::istringstream ss(line);
    int s = 0;
    std::string rest;
    if (!(ss >> s) || (ss >> rest) || (s != 1 && s != -1)) bad_line(ln, "label must be +1 or -1");
    v.push_back(s);
  }
  return Eigen::Map<LabelVector>(v.data(), static_cast<Index>(v.size()));
}

void write_features(const std::string& path, const Eigen::MatrixXd& vectors) {
  auto f = open_out(path);
  f << std::setprecision(17);
  for (Index i = 0; i < vectors.rows(); ++i) {
    for (Index k = 0; k < vectors.cols(); ++k) f << (k ? " " : "") << vectors(i, k);
    f << '\n';
  }
}

Eigen::MatrixXd read_features(const std::string& path) {
  auto f = open_in(path);
  std::vector<double> data;
  Index p = -1;
  Index rows = 0;
  std::string line;
  std::size_t ln = 0;
  while (std::getline(f, line)) {
    ++ln;
    if (blank(line)) continue;
    std::istringstream ss(line);
    Index k = 0;
    double x = 0.0;
    while (ss >> x) {
      data.push_back(x);
      ++k;
    }
    if (!ss.eof()) bad_line(ln, "non-numeric feature");
    if (p < 0) p = k;
    if (k != p) bad_line(ln, "row has " + std::to_string(k) + " features, expected " + std::to_string(p));
    ++rows;
  }
  if (rows == 0) throw InvalidParameter("feature file '" + path + "' is empty");
  Eigen::MatrixXd out(rows, p);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < p; ++k) out(i, k) = data[static_cast<std::size_t>(i * p + k)];
  return out;
}

void write_coo(std::ostream& os, const SparseMatrix& m) {
  os << std::setprecision(17);
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

}  // namespace nbh
