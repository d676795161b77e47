#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <unordered_map>
#include <vector>

#include "gssl/evaluation.hpp"
#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/matrix.hpp"

namespace gssl {

// Shortest round-trip decimal rendering; stable across runs, so emitted
// files are byte-reproducible.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Dense first-appearance-order renumbering of arbitrary string node ids.
struct NodeTable {
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;

  int intern(const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(names.size());
    names.push_back(name);
    index.emplace(name, id);
    return id;
  }

  int require(const std::string& name, const std::string& context) const {
    auto it = index.find(name);
    if (it == index.end())
      throw IoError(context + ": unknown node id '" + name + "'");
    return it->second;
  }

  int size() const { return static_cast<int>(names.size()); }
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

inline bool skippable(const std::string& line) {
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') continue;
    return c == '#';
  }
  return true;  // blank
}

inline double parse_weight(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    const double w = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("trailing characters");
    return w;
  } catch (const std::exception&) {
    throw IoError("edge list line " + std::to_string(line_no) + ": bad weight '" + tok + "'");
  }
}

}  // namespace detail

struct LoadedGraph {
  Graph graph;
  NodeTable nodes;
};

// Edge-list text format: one edge per line, whitespace-separated
// `u v [w]`; `#` starts a comment line; blank lines are ignored; the
// weight defaults to 1. Node ids are arbitrary strings, renumbered densely
// in order of first appearance.
inline LoadedGraph read_edge_list(std::istream& in, bool allow_self_loops = false) {
  NodeTable table;
  std::vector<EdgeEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skippable(line)) continue;
    const std::vector<std::string> tok = detail::tokenize(line);
    if (tok.size() != 2 && tok.size() != 3)
      throw IoError("edge list line " + std::to_string(line_no) +
                    ": expected 'u v [w]', got " + std::to_string(tok.size()) + " fields");
    EdgeEntry e;
    e.u = table.intern(tok[0]);
    e.v = table.intern(tok[1]);
    if (tok.size() == 3) e.weight = detail::parse_weight(tok[2], line_no);
    if (!(e.weight > 0.0))
      throw IoError("edge list line " + std::to_string(line_no) +
                    ": weight must be strictly positive");
    if (e.u == e.v && !allow_self_loops)
      throw IoError("edge list line " + std::to_string(line_no) + ": self-loop '" + tok[0] +
                    "' not allowed");
    entries.push_back(e);
  }
  if (entries.empty()) throw IoError("edge list: no edges found");
  LoadedGraph out{Graph::from_edge_list(entries, table.size(), allow_self_loops),
                  std::move(table)};
  return out;
}

inline LoadedGraph read_edge_list_file(const std::string& path, bool allow_self_loops = false) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list file: " + path);
  try {
    return read_edge_list(in, allow_self_loops);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

inline void write_edge_list(std::ostream& out, const Graph& g,
                            const NodeTable* names = nullptr) {
  for (int i = 0; i < g.node_count(); ++i)
    for (const Neighbor& nb : g.neighbors(i)) {
      if (nb.node < i) continue;
      if (names) {
        out << names->names[i] << ' ' << names->names[nb.node];
      } else {
        out << i << ' ' << nb.node;
      }
      if (nb.weight != 1.0) out << ' ' << format_double(nb.weight);
      out << '\n';
    }
}

struct LoadedLabels {
  LabelSet labels;
  std::vector<std::string> class_names;  // densely renumbered, first appearance
};

// Labels file: lines `node_id class_name`; class names are renumbered
// densely in first-appearance order.
inline LoadedLabels read_labels(std::istream& in, const NodeTable& nodes) {
  LoadedLabels out;
  std::unordered_map<std::string, int> classes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skippable(line)) continue;
    const std::vector<std::string> tok = detail::tokenize(line);
    if (tok.size() != 2)
      throw IoError("labels line " + std::to_string(line_no) + ": expected 'node_id class_name'");
    const int node = nodes.require(tok[0], "labels line " + std::to_string(line_no));
    auto it = classes.find(tok[1]);
    int cls;
    if (it == classes.end()) {
      cls = static_cast<int>(out.class_names.size());
      classes.emplace(tok[1], cls);
      out.class_names.push_back(tok[1]);
    } else {
      cls = it->second;
    }
    out.labels.assignments[node] = cls;
  }
  if (out.class_names.empty()) throw IoError("labels file: no labeled nodes found");
  out.labels.k = static_cast<int>(out.class_names.size());
  return out;
}

inline LoadedLabels read_labels_file(const std::string& path, const NodeTable& nodes) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open labels file: " + path);
  try {
    return read_labels(in, nodes);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

// Partition file: lines `node_id class_index`; every node of the graph
// must be assigned.
inline Partition read_partition(std::istream& in, const NodeTable& nodes) {
  std::vector<int> assignment(static_cast<std::size_t>(nodes.size()), -1);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skippable(line)) continue;
    const std::vector<std::string> tok = detail::tokenize(line);
    if (tok.size() != 2)
      throw IoError("partition line " + std::to_string(line_no) +
                    ": expected 'node_id class_index'");
    const int node = nodes.require(tok[0], "partition line " + std::to_string(line_no));
    int cls = -1;
    auto res = std::from_chars(tok[1].data(), tok[1].data() + tok[1].size(), cls);
    if (res.ec != std::errc() || res.ptr != tok[1].data() + tok[1].size() || cls < 0)
      throw IoError("partition line " + std::to_string(line_no) + ": bad class index '" +
                    tok[1] + "'");
    assignment[node] = cls;
  }
  for (int i = 0; i < nodes.size(); ++i)
    if (assignment[i] < 0)
      throw IoError("partition: node '" + nodes.names[i] + "' has no class");
  return Partition::from_assignment(std::move(assignment));
}

inline Partition read_partition_file(const std::string& path, const NodeTable& nodes) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open partition file: " + path);
  try {
    return read_partition(in, nodes);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

inline void write_partition(std::ostream& out, const Partition& p,
                            const NodeTable* names = nullptr) {
  for (int i = 0; i < p.size(); ++i) {
    if (names) {
      out << names->names[i];
    } else {
      out << i;
    }
    out << ' ' << p.assignment[i] << '\n';
  }
}

// Feature file: one instance per line, whitespace-separated reals.
inline FeatureSet read_features(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skippable(line)) continue;
    std::vector<double> row;
    for (const std::string& tok : detail::tokenize(line))
      row.push_back(detail::parse_weight(tok, line_no));
    rows.push_back(std::move(row));
  }
  return FeatureSet::from_rows(std::move(rows));
}

// Scores export: `node,label,score_0,...,score_{K-1}`.
inline void write_scores_csv(std::ostream& out, const Matrix& scores,
                             const std::vector<int>& labels,
                             const std::vector<std::string>& node_names,
                             const std::vector<std::string>& class_names) {
  out << "node,label";
  for (int k = 0; k < scores.cols(); ++k) out << ",score_" << k;
  out << '\n';
  for (int i = 0; i < scores.rows(); ++i) {
    out << node_names[i] << ',' << class_names[labels[i]];
    for (int k = 0; k < scores.cols(); ++k) out << ',' << format_double(scores(i, k));
    out << '\n';
  }
}

// EvalReport as long-format CSV: one precision and one recall row per
// class, then summary rows.
inline void write_eval_csv(std::ostream& out, const EvalReport& r) {
  out << "metric,class,value\n";
  for (std::size_t c = 0; c < r.precision.size(); ++c)
    out << "precision," << c << ',' << format_double(r.precision[c]) << '\n';
  for (std::size_t c = 0; c < r.recall.size(); ++c)
    out << "recall," << c << ',' << format_double(r.recall[c]) << '\n';
  out << "micro_precision,," << format_double(r.micro_precision) << '\n';
  out << "macro_precision,," << format_double(r.macro_precision) << '\n';
  if (!std::isnan(r.modularity))
    out << "modularity,," << format_double(r.modularity) << '\n';
  out << "evaluated_nodes,," << r.evaluated_count << '\n';
  for (int c : r.undefined_precision) out << "undefined_precision," << c << ",0\n";
}

}  // namespace gssl
