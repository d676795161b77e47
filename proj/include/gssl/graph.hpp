#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gssl {

struct Neighbor {
  int node;
  double weight;
};

struct EdgeEntry {
  int u;
  int v;
  double weight = 1.0;
};

// Undirected weighted similarity graph. Immutable after construction;
// safe to share across concurrent readers.
//
// Invariants maintained by every constructor path:
//   - adjacency is symmetric: (j, w) in list of i iff (i, w) in list of j
//   - all stored weights are strictly positive
//   - degree(i) == sum of incident weights (a self-loop counts once)
//   - total_weight() == sum of all degrees
// Neighbor lists are sorted by node index.
class Graph {
 public:
  // Builds a graph from (u, v, w) entries. Node ids must be nonnegative;
  // when node_count < 0 it is inferred as max id + 1. Duplicate pairs,
  // in either orientation, have their weights summed. Weights must be
  // strictly positive. Self-loops are rejected unless allowed.
  static Graph from_edge_list(const std::vector<EdgeEntry>& entries,
                              int node_count = -1,
                              bool allow_self_loops = false) {
    int max_id = -1;
    for (const EdgeEntry& e : entries) {
      if (e.u < 0 || e.v < 0)
        throw std::invalid_argument("Graph: negative node id");
      max_id = std::max(max_id, std::max(e.u, e.v));
    }
    int n = node_count < 0 ? max_id + 1 : node_count;
    if (n <= 0) throw std::invalid_argument("Graph: node count must be positive");
    if (max_id >= n)
      throw std::invalid_argument("Graph: node id out of range");

    std::map<std::pair<int, int>, double> accum;
    for (const EdgeEntry& e : entries) {
      if (!(e.weight > 0.0))
        throw std::invalid_argument("Graph: edge weight must be strictly positive");
      if (e.u == e.v && !allow_self_loops)
        throw std::invalid_argument("Graph: self-loop rejected (node " +
                                    std::to_string(e.u) + ")");
      auto key = std::minmax(e.u, e.v);
      accum[{key.first, key.second}] += e.weight;
    }

    Graph g;
    g.n_ = n;
    g.adj_.assign(static_cast<std::size_t>(n), {});
    for (const auto& [pair, w] : accum) {
      auto [u, v] = pair;
      g.adj_[u].push_back({v, w});
      if (u != v) g.adj_[v].push_back({u, w});
      ++g.edge_count_;
    }
    g.finalize();
    return g;
  }

  int node_count() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }

  const std::vector<Neighbor>& neighbors(int i) const { return adj_[check(i)]; }
  double degree(int i) const { return degrees_[check(i)]; }
  const std::vector<double>& degrees() const { return degrees_; }

  // Sum of all weighted degrees; equals twice the total undirected edge
  // weight when there are no self-loops.
  double total_weight() const { return total_weight_; }

  double min_degree() const {
    double m = degrees_.empty() ? 0.0 : degrees_[0];
    for (double d : degrees_) m = std::min(m, d);
    return m;
  }

  bool has_isolated_node() const {
    for (double d : degrees_) if (d == 0.0) return true;
    return false;
  }

 private:
  friend Graph graph_from_sorted_adjacency(int n, std::vector<std::vector<Neighbor>> adj,
                                           std::size_t edge_count);

  void finalize() {
    degrees_.assign(static_cast<std::size_t>(n_), 0.0);
    total_weight_ = 0.0;
    for (int i = 0; i < n_; ++i) {
      std::sort(adj_[i].begin(), adj_[i].end(),
                [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
      double d = 0.0;
      for (const Neighbor& nb : adj_[i]) d += nb.weight;
      degrees_[i] = d;
      total_weight_ += d;
    }
  }

  int check(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("Graph: node index out of range");
    return i;
  }

  int n_ = 0;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<double> degrees_;
  double total_weight_ = 0.0;
  std::size_t edge_count_ = 0;
};

// Internal fast path for generators that already hold a symmetric
// adjacency; entries per node need not be sorted yet.
inline Graph graph_from_sorted_adjacency(int n, std::vector<std::vector<Neighbor>> adj,
                                         std::size_t edge_count) {
  Graph g;
  g.n_ = n;
  g.adj_ = std::move(adj);
  g.edge_count_ = edge_count;
  g.finalize();
  return g;
}

// Instances described by fixed-length real attribute vectors. Rows are
// assumed to be pre-normalized by the caller.
struct FeatureSet {
  int dim = 0;
  std::vector<std::vector<double>> values;

  int size() const { return static_cast<int>(values.size()); }

  static FeatureSet from_rows(std::vector<std::vector<double>> rows) {
    if (rows.empty()) throw std::invalid_argument("FeatureSet: no rows");
    FeatureSet fs;
    fs.dim = static_cast<int>(rows.front().size());
    if (fs.dim < 1) throw std::invalid_argument("FeatureSet: dim must be >= 1");
    for (const auto& r : rows)
      if (static_cast<int>(r.size()) != fs.dim)
        throw std::invalid_argument("FeatureSet: rows have unequal lengths");
    fs.values = std::move(rows);
    return fs;
  }
};

inline double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double d = a[t] - b[t];
    s += d * d;
  }
  return s;
}

// Complete similarity graph with w_ij = exp(-||x_i - x_j||^2 / gamma) for
// i != j. Pairs whose weight underflows to zero are omitted (weights must
// stay strictly positive).
inline Graph rbf_similarity(const FeatureSet& features, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("rbf_similarity: gamma must be positive");
  const int n = features.size();
  if (n < 2) throw std::invalid_argument("rbf_similarity: need at least two instances");
  std::vector<std::vector<Neighbor>> adj(static_cast<std::size_t>(n));
  std::size_t edges = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w = std::exp(-squared_distance(features.values[i], features.values[j]) / gamma);
      if (w > 0.0) {
        adj[i].push_back({j, w});
        adj[j].push_back({i, w});
        ++edges;
      }
    }
  }
  return graph_from_sorted_adjacency(n, std::move(adj), edges);
}

// Symmetrized k-nearest-neighbor graph: builds the directed 0/1 kNN
// relation under Euclidean distance (ties broken by lower node index),
// then returns (A + A^T) / 2, so weights are 0.5 or 1.0.
inline Graph knn_similarity(const FeatureSet& features, int k) {
  const int n = features.size();
  if (n < 2) throw std::invalid_argument("knn_similarity: need at least two instances");
  if (k < 1 || k >= n)
    throw std::invalid_argument("knn_similarity: require 1 <= k < n");

  std::vector<std::vector<int>> nearest(static_cast<std::size_t>(n));
  std::vector<std::pair<double, int>> cand;
  for (int i = 0; i < n; ++i) {
    cand.clear();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      cand.emplace_back(squared_distance(features.values[i], features.values[j]), j);
    }
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    for (int t = 0; t < k; ++t) nearest[i].push_back(cand[t].second);
  }

  std::map<std::pair<int, int>, double> weights;
  for (int i = 0; i < n; ++i)
    for (int j : nearest[i]) {
      auto key = std::minmax(i, j);
      weights[{key.first, key.second}] += 0.5;
    }

  std::vector<std::vector<Neighbor>> adj(static_cast<std::size_t>(n));
  std::size_t edges = 0;
  for (const auto& [pair, w] : weights) {
    adj[pair.first].push_back({pair.second, w});
    adj[pair.second].push_back({pair.first, w});
    ++edges;
  }
  return graph_from_sorted_adjacency(n, std::move(adj), edges);
}

// True iff the graph has a single connected component (breadth-first
// traversal; a one-node graph is connected).
inline bool is_connected(const Graph& g) {
  const int n = g.node_count();
  if (n == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  std::size_t head = 0;
  int reached = 1;
  while (head < queue.size()) {
    const int u = queue[head++];
    for (const Neighbor& nb : g.neighbors(u)) {
      if (!seen[nb.node]) {
        seen[nb.node] = 1;
        ++reached;
        queue.push_back(nb.node);
      }
    }
  }
  return reached == n;
}

}  // namespace gssl
