#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/matrix.hpp"
#include "gssl/rng.hpp"

namespace gssl {

namespace detail {

inline void require_positive_degrees(const Graph& g, const char* who) {
  for (int i = 0; i < g.node_count(); ++i)
    if (!(g.degree(i) > 0.0))
      throw std::invalid_argument(std::string(who) + ": isolated node " + std::to_string(i));
}

}  // namespace detail

// Stationary distribution of the walk with transition matrix D^-1 W on a
// symmetric-weight graph: pi_i = d_i / sum_j d_j (the walk is
// time-reversible). Requires a connected graph.
inline std::vector<double> stationary_distribution(const Graph& g) {
  detail::require_positive_degrees(g, "stationary_distribution");
  if (!is_connected(g))
    throw std::invalid_argument("stationary_distribution: graph is not connected");
  std::vector<double> pi(g.node_count());
  const double total = g.total_weight();
  for (int i = 0; i < g.node_count(); ++i) pi[i] = g.degree(i) / total;
  return pi;
}

// (I - alpha D^-1 W)^-1. Entry (i, j) is the expected number of visits to
// node j of a walk started at i that restarts with probability 1 - alpha
// at each step; the starting node counts as one visit. Dense solve only,
// capped for desk-scale diagnostics; larger graphs go through
// monte_carlo_visits.
inline Matrix expected_visits(const Graph& g, double alpha, int dense_cap = 2000) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("expected_visits: alpha must lie in (0, 1)");
  detail::require_positive_degrees(g, "expected_visits");
  const int n = g.node_count();
  if (n > dense_cap)
    throw std::invalid_argument("expected_visits: graph exceeds the dense cap of " +
                                std::to_string(dense_cap) +
                                " nodes; use monte_carlo_visits instead");
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    const double inv_d = 1.0 / g.degree(i);
    for (const Neighbor& nb : g.neighbors(i)) a(i, nb.node) -= alpha * nb.weight * inv_d;
  }
  Eigen::MatrixXd inv = Eigen::PartialPivLU<Eigen::MatrixXd>(a).solve(
      Eigen::MatrixXd::Identity(n, n));
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = inv(i, j);
  return out;
}

// Empirical mean visit counts over independent restart walks from `start`.
// Each walk counts its starting node, then at every step stops with
// probability 1 - alpha or moves to a neighbor drawn proportionally to the
// edge weight. Walk w uses the (seed, w) substream, so the estimate is
// reproducible and independent of evaluation order.
inline std::vector<double> monte_carlo_visits(const Graph& g, int start, double alpha,
                                              std::int64_t walks, std::uint64_t seed) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("monte_carlo_visits: alpha must lie in (0, 1)");
  if (start < 0 || start >= g.node_count())
    throw std::invalid_argument("monte_carlo_visits: start node out of range");
  if (walks < 1) throw std::invalid_argument("monte_carlo_visits: need at least one walk");
  detail::require_positive_degrees(g, "monte_carlo_visits");

  std::vector<double> total(g.node_count(), 0.0);
  for (std::int64_t w = 0; w < walks; ++w) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(w));
    int cur = start;
    total[cur] += 1.0;
    for (;;) {
      if (rng.next_double() >= alpha) break;  // restart
      const double r = rng.next_double() * g.degree(cur);
      const std::vector<Neighbor>& nbs = g.neighbors(cur);
      double cum = 0.0;
      int nxt = nbs.back().node;
      for (const Neighbor& nb : nbs) {
        cum += nb.weight;
        if (r < cum) {
          nxt = nb.node;
          break;
        }
      }
      cur = nxt;
      total[cur] += 1.0;
    }
  }
  for (double& v : total) v /= static_cast<double>(walks);
  return total;
}

struct LimitClassWeights {
  std::vector<double> weights;      // per class: sum of d_i^sigma over its labeled nodes
  std::optional<int> dominating;    // set iff one weight strictly exceeds all others
};

// As alpha approaches 1, the class maximizing sum_{i labeled k} d_i^sigma
// attracts every node; near-ties (relative gap <= 1e-12) report no
// dominating class. Requires raw labeling and at least one labeled node
// per class.
inline LimitClassWeights limit_class_weights(const Graph& g, const LabelSet& labels,
                                             double sigma) {
  if (labels.mode != LabelMode::kRaw)
    throw std::invalid_argument("limit_class_weights: raw labeling mode required");
  if (labels.k < 1) throw std::invalid_argument("limit_class_weights: no classes");
  detail::require_positive_degrees(g, "limit_class_weights");

  LimitClassWeights out;
  out.weights.assign(static_cast<std::size_t>(labels.k), 0.0);
  std::vector<int> counts(static_cast<std::size_t>(labels.k), 0);
  for (const auto& [node, cls] : labels.assignments) {
    if (node < 0 || node >= g.node_count())
      throw std::invalid_argument("limit_class_weights: labeled node out of range");
    out.weights[cls] += std::pow(g.degree(node), sigma);
    ++counts[cls];
  }
  for (int c = 0; c < labels.k; ++c)
    if (counts[c] == 0)
      throw std::invalid_argument("limit_class_weights: class " + std::to_string(c) +
                                  " has no labeled nodes");

  int best = 0;
  for (int c = 1; c < labels.k; ++c)
    if (out.weights[c] > out.weights[best]) best = c;
  bool strict = true;
  for (int c = 0; c < labels.k; ++c) {
    if (c == best) continue;
    if (!(out.weights[best] - out.weights[c] > 1e-12 * std::max(1.0, out.weights[best]))) {
      strict = false;
      break;
    }
  }
  if (strict) out.dominating = best;
  return out;
}

struct WalkDiagnostics {
  std::vector<double> stationary;
  double alpha = 0.0;
  std::optional<Matrix> visits;  // (I - alpha D^-1 W)^-1 when requested and small
};

inline WalkDiagnostics walk_diagnostics(const Graph& g, double alpha,
                                        bool include_visits = false, int dense_cap = 2000) {
  WalkDiagnostics d;
  d.stationary = stationary_distribution(g);
  d.alpha = alpha;
  if (include_visits) d.visits = expected_visits(g, alpha, dense_cap);
  return d;
}

}  // namespace gssl
