#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "gssl/graph.hpp"

namespace gssl {

// Total assignment of nodes to classes/clusters. Empty classes are legal;
// they are reported rather than rejected.
struct Partition {
  std::vector<int> assignment;
  int k = 0;

  static Partition from_assignment(std::vector<int> assignment, int k = -1) {
    int max_c = -1;
    for (int c : assignment) {
      if (c < 0) throw std::invalid_argument("Partition: negative class index");
      max_c = std::max(max_c, c);
    }
    Partition p;
    p.k = k < 0 ? max_c + 1 : k;
    if (max_c >= p.k) throw std::invalid_argument("Partition: class index out of range");
    p.assignment = std::move(assignment);
    return p;
  }

  int size() const { return static_cast<int>(assignment.size()); }

  std::vector<std::vector<int>> members() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(k));
    for (int i = 0; i < size(); ++i) out[assignment[i]].push_back(i);
    return out;
  }

  std::vector<int> empty_classes() const {
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int c : assignment) ++counts[c];
    std::vector<int> empties;
    for (int c = 0; c < k; ++c)
      if (counts[c] == 0) empties.push_back(c);
    return empties;
  }
};

// Weighted Newman modularity
//   Q = (1/m2) sum_ij (w_ij - d_i d_j / m2) [c_i = c_j]
// over ordered pairs, including the i = j degree-product term; equivalently
// Q = sum_c (intra_c / m2 - (vol_c / m2)^2). For 0/1 weights this reduces
// to the edge-count form.
inline double modularity(const Graph& g, const Partition& p) {
  if (p.size() != g.node_count())
    throw std::invalid_argument("modularity: partition length does not match graph");
  const double m2 = g.total_weight();
  if (!(m2 > 0.0)) throw std::invalid_argument("modularity: graph has no edge weight");

  std::vector<double> intra(static_cast<std::size_t>(p.k), 0.0);
  std::vector<double> vol(static_cast<std::size_t>(p.k), 0.0);
  for (int i = 0; i < g.node_count(); ++i) {
    vol[p.assignment[i]] += g.degree(i);
    for (const Neighbor& nb : g.neighbors(i)) {
      if (nb.node < i) continue;
      if (p.assignment[i] != p.assignment[nb.node]) continue;
      // each off-diagonal undirected edge appears twice in the ordered sum
      intra[p.assignment[i]] += (nb.node == i) ? nb.weight : 2.0 * nb.weight;
    }
  }
  double q = 0.0;
  for (int c = 0; c < p.k; ++c) {
    const double a = vol[c] / m2;
    q += intra[c] / m2 - a * a;
  }
  return q;
}

struct EvalReport {
  double modularity = std::numeric_limits<double>::quiet_NaN();  // filled by callers that hold the graph
  std::vector<double> precision;             // per class: correct-in-k / predicted-k
  std::vector<double> recall;                // per class: correct-in-k / true-k
  std::vector<int> undefined_precision;      // classes with no predictions (0/0 reported as 0)
  std::vector<int> undefined_recall;         // classes with no true members
  double micro_precision = 0.0;              // trace(confusion) / evaluated
  double macro_precision = 0.0;              // mean of per-class precision
  std::vector<std::vector<std::int64_t>> confusion;  // [truth][pred]
  int evaluated_count = 0;
};

// Compares a predicted partition against a reference on the given node
// subset (all nodes when none is given). Class ids must already align --
// semi-supervised output classes inherit the ids of their labeled seeds --
// so differing class counts are an error, not a matching problem.
inline EvalReport score_against(const Partition& pred, const Partition& truth,
                                const std::vector<int>* evaluated = nullptr) {
  if (pred.size() != truth.size())
    throw std::invalid_argument("score_against: partition lengths differ");
  if (pred.k != truth.k)
    throw std::invalid_argument("score_against: class counts differ (" +
                                std::to_string(pred.k) + " vs " + std::to_string(truth.k) +
                                "); no automatic alignment is performed");
  const int kk = pred.k;
  EvalReport r;
  r.confusion.assign(kk, std::vector<std::int64_t>(kk, 0));

  auto tally = [&](int i) {
    if (i < 0 || i >= pred.size())
      throw std::invalid_argument("score_against: evaluated node out of range");
    ++r.confusion[truth.assignment[i]][pred.assignment[i]];
    ++r.evaluated_count;
  };
  if (evaluated) {
    for (int i : *evaluated) tally(i);
  } else {
    for (int i = 0; i < pred.size(); ++i) tally(i);
  }

  std::int64_t correct = 0;
  r.precision.assign(kk, 0.0);
  r.recall.assign(kk, 0.0);
  for (int c = 0; c < kk; ++c) {
    std::int64_t pred_c = 0, true_c = 0;
    for (int t = 0; t < kk; ++t) {
      pred_c += r.confusion[t][c];
      true_c += r.confusion[c][t];
    }
    const std::int64_t diag = r.confusion[c][c];
    correct += diag;
    if (pred_c > 0) {
      r.precision[c] = static_cast<double>(diag) / static_cast<double>(pred_c);
    } else {
      r.undefined_precision.push_back(c);  // 0/0 convention: report 0, flag the class
    }
    if (true_c > 0) {
      r.recall[c] = static_cast<double>(diag) / static_cast<double>(true_c);
    } else {
      r.undefined_recall.push_back(c);
    }
  }
  r.micro_precision = r.evaluated_count > 0
                          ? static_cast<double>(correct) / static_cast<double>(r.evaluated_count)
                          : 0.0;
  double macro = 0.0;
  for (double v : r.precision) macro += v;
  r.macro_precision = kk > 0 ? macro / kk : 0.0;
  return r;
}

}  // namespace gssl
