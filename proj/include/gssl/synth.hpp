#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gssl/evaluation.hpp"
#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/rng.hpp"

namespace gssl {

struct PlantedPartitionSpec {
  std::vector<int> sizes;      // nodes per class, consecutive blocks
  std::vector<double> p_in;    // intra-class link probability, one per class
  double p_out = 0.0;          // inter-class link probability
  std::uint64_t seed = 0;

  void validate() const {
    if (sizes.size() < 2)
      throw std::invalid_argument("PlantedPartitionSpec: need at least two classes");
    if (p_in.size() != sizes.size())
      throw std::invalid_argument("PlantedPartitionSpec: one p_in per class required");
    for (int s : sizes)
      if (s < 1) throw std::invalid_argument("PlantedPartitionSpec: class sizes must be >= 1");
    for (double p : p_in)
      if (!(p >= 0.0) || !(p <= 1.0))
        throw std::invalid_argument("PlantedPartitionSpec: p_in must lie in [0, 1]");
    if (!(p_out >= 0.0) || !(p_out <= 1.0))
      throw std::invalid_argument("PlantedPartitionSpec: p_out must lie in [0, 1]");
  }
};

// Planted-partition sample: class c occupies a consecutive block of node
// ids; every unordered pair receives one independent unit-weight coin flip
// (probability p_in[c] inside class c, p_out across classes). Coins are
// drawn in lexicographic pair order from Rng(seed), one draw per pair
// regardless of outcome, so the byte-exact edge list is a function of the
// seed alone. Returns the graph and the ground-truth partition.
inline std::pair<Graph, Partition> planted_partition(const PlantedPartitionSpec& spec) {
  spec.validate();
  int n = 0;
  for (int s : spec.sizes) n += s;
  std::vector<int> cls(static_cast<std::size_t>(n));
  {
    int at = 0;
    for (std::size_t c = 0; c < spec.sizes.size(); ++c)
      for (int t = 0; t < spec.sizes[c]; ++t) cls[at++] = static_cast<int>(c);
  }

  Rng rng(spec.seed);
  std::vector<std::vector<Neighbor>> adj(static_cast<std::size_t>(n));
  std::size_t edges = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = (cls[i] == cls[j]) ? spec.p_in[cls[i]] : spec.p_out;
      const double coin = rng.next_double();
      if (coin < p) {
        adj[i].push_back({j, 1.0});
        adj[j].push_back({i, 1.0});
        ++edges;
      }
    }
  }
  Graph g = graph_from_sorted_adjacency(n, std::move(adj), edges);
  Partition truth;
  truth.assignment = std::move(cls);
  truth.k = static_cast<int>(spec.sizes.size());
  return {std::move(g), std::move(truth)};
}

enum class LabelRule { kMinDegree, kMaxDegree, kUniformRandom };

// Picks one labeled node per class. Degree ties break toward the lower
// node index; the uniform-random rule draws from Rng(seed), classes in
// ascending order.
inline LabelSet extreme_degree_labels(const Graph& g, const Partition& truth,
                                      const std::vector<LabelRule>& rules,
                                      std::uint64_t seed = 0) {
  if (truth.size() != g.node_count())
    throw std::invalid_argument("extreme_degree_labels: partition does not match graph");
  if (static_cast<int>(rules.size()) != truth.k)
    throw std::invalid_argument("extreme_degree_labels: one rule per class required");
  const std::vector<std::vector<int>> members = truth.members();
  for (int c = 0; c < truth.k; ++c)
    if (members[c].empty())
      throw std::invalid_argument("extreme_degree_labels: class " + std::to_string(c) +
                                  " is empty");
  Rng rng(seed);
  LabelSet labels;
  labels.k = truth.k;
  labels.mode = LabelMode::kRaw;
  for (int c = 0; c < truth.k; ++c) {
    const std::vector<int>& mem = members[c];  // ascending node index
    int pick = mem.front();
    switch (rules[c]) {
      case LabelRule::kMinDegree:
        for (int i : mem)
          if (g.degree(i) < g.degree(pick)) pick = i;
        break;
      case LabelRule::kMaxDegree:
        for (int i : mem)
          if (g.degree(i) > g.degree(pick)) pick = i;
        break;
      case LabelRule::kUniformRandom:
        pick = mem[static_cast<std::size_t>(rng.next_below(mem.size()))];
        break;
    }
    labels.add(pick, c);
  }
  return labels;
}

// Convenience overload: the same rule for every class.
inline LabelSet extreme_degree_labels(const Graph& g, const Partition& truth, LabelRule rule,
                                      std::uint64_t seed = 0) {
  return extreme_degree_labels(g, truth, std::vector<LabelRule>(truth.k, rule), seed);
}

}  // namespace gssl
