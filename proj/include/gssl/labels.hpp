#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gssl/matrix.hpp"

namespace gssl {

// raw: Y_ik is the 0/1 indicator of node i carrying label k.
// per_class: each indicator column is divided by its labeled count, so
// every class distributes one unit of mass over its labeled nodes.
enum class LabelMode { kRaw, kPerClass };

// Partial assignment of nodes to classes.
struct LabelSet {
  int k = 0;                        // number of classes, >= 2 for classification
  std::map<int, int> assignments;   // node index -> class index in [0, k)
  LabelMode mode = LabelMode::kRaw;

  void add(int node, int cls) {
    if (cls < 0 || cls >= k)
      throw std::invalid_argument("LabelSet: class index out of range");
    assignments[node] = cls;
  }

  std::vector<int> class_counts() const {
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (const auto& [node, cls] : assignments) ++counts[cls];
    return counts;
  }

  std::vector<int> labeled_nodes() const {
    std::vector<int> nodes;
    nodes.reserve(assignments.size());
    for (const auto& [node, cls] : assignments) nodes.push_back(node);
    return nodes;
  }
};

// N x K labeling matrix Y. In per-class mode a class with no labeled
// nodes is rejected (its column would need division by zero).
inline Matrix build_label_matrix(const LabelSet& labels, int n) {
  if (labels.k < 1) throw std::invalid_argument("build_label_matrix: class count must be >= 1");
  for (const auto& [node, cls] : labels.assignments) {
    if (node < 0 || node >= n)
      throw std::invalid_argument("build_label_matrix: labeled node " +
                                  std::to_string(node) + " out of range");
    if (cls < 0 || cls >= labels.k)
      throw std::invalid_argument("build_label_matrix: class index out of range");
  }
  std::vector<double> value(static_cast<std::size_t>(labels.k), 1.0);
  if (labels.mode == LabelMode::kPerClass) {
    const std::vector<int> counts = labels.class_counts();
    for (int c = 0; c < labels.k; ++c) {
      if (counts[c] == 0)
        throw std::invalid_argument("build_label_matrix: class " + std::to_string(c) +
                                    " has no labeled nodes in per-class mode");
      value[c] = 1.0 / counts[c];
    }
  }
  Matrix y(n, labels.k, 0.0);
  for (const auto& [node, cls] : labels.assignments) y(node, cls) = value[cls];
  return y;
}

}  // namespace gssl
