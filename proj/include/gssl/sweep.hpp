#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gssl/evaluation.hpp"
#include "gssl/graph.hpp"
#include "gssl/io.hpp"
#include "gssl/labels.hpp"
#include "gssl/rng.hpp"
#include "gssl/ssl.hpp"

namespace gssl {

enum class EvalSet { kUnlabeled, kAll };

struct SweepSpec {
  std::vector<double> sigmas;
  std::vector<double> alphas;
  int trials = 100;
  int labels_per_class = 1;
  std::uint64_t seed = 0;
  EvalSet eval_set = EvalSet::kUnlabeled;
  double tolerance = 1e-10;
  int max_iterations = 10000;
  int dense_cap = 2000;
  std::optional<SolveMode> mode;  // unset: dense when the graph fits, else iterative

  void validate() const {
    if (sigmas.empty() || alphas.empty())
      throw std::invalid_argument("SweepSpec: sigma and alpha grids must be nonempty");
    for (double a : alphas)
      if (!(a > 0.0) || !(a < 1.0))
        throw std::invalid_argument("SweepSpec: alphas must lie in (0, 1)");
    if (trials < 1) throw std::invalid_argument("SweepSpec: trials must be >= 1");
    if (labels_per_class < 1)
      throw std::invalid_argument("SweepSpec: labels_per_class must be >= 1");
  }
};

// The alpha grid the experiments default to; dense near 1 where behavior
// changes fastest, capped at 0.999 to stay numerically comfortable.
inline std::vector<double> default_alpha_grid() {
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 0.999};
}

struct SweepRow {
  double sigma = 0.0;
  double alpha = 0.0;
  int trial = 0;
  double modularity = 0.0;
  double precision = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
};

struct SweepAggRow {
  double sigma = 0.0;
  double alpha = 0.0;
  int trials = 0;
  double modularity_mean = 0.0;
  double modularity_std = 0.0;
  double precision_mean = std::numeric_limits<double>::quiet_NaN();
  double precision_std = std::numeric_limits<double>::quiet_NaN();
};

struct SweepResult {
  std::vector<SweepRow> rows;       // ordered by sigma grid, alpha grid, trial
  std::vector<SweepAggRow> aggregates;
  bool has_precision = false;
  EvalSet eval_set = EvalSet::kUnlabeled;
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> trial_labeled_nodes;  // telemetry: labeled set per trial
};

namespace detail {

inline SolveMode pick_mode(const Graph& g, const SweepSpec& spec) {
  if (spec.mode) return *spec.mode;
  return g.node_count() <= spec.dense_cap ? SolveMode::kDenseDirect : SolveMode::kIterative;
}

inline MethodParams cell_params(const SweepSpec& spec, double sigma, double alpha) {
  MethodParams p;
  p.sigma = sigma;
  p.alpha = alpha;
  p.tolerance = spec.tolerance;
  p.max_iterations = spec.max_iterations;
  p.dense_cap = spec.dense_cap;
  return p;
}

// Sample `count` distinct members per class, ascending classes, partial
// Fisher-Yates over the class's ascending member list.
inline LabelSet sample_labels(const std::vector<std::vector<int>>& members, int k, int count,
                              Rng& rng) {
  LabelSet labels;
  labels.k = k;
  labels.mode = LabelMode::kRaw;
  for (int c = 0; c < k; ++c) {
    std::vector<int> pool = members[c];
    for (int s = 0; s < count; ++s) {
      const std::size_t pick =
          s + static_cast<std::size_t>(rng.next_below(pool.size() - static_cast<std::size_t>(s)));
      std::swap(pool[s], pool[pick]);
      labels.add(pool[s], c);
    }
  }
  return labels;
}

inline void append_aggregates(SweepResult& result, const SweepSpec& spec) {
  for (double sigma : spec.sigmas)
    for (double alpha : spec.alphas) {
      SweepAggRow agg;
      agg.sigma = sigma;
      agg.alpha = alpha;
      double msum = 0.0, psum = 0.0;
      std::vector<double> ms, ps;
      for (const SweepRow& row : result.rows) {
        if (row.sigma != sigma || row.alpha != alpha) continue;
        ms.push_back(row.modularity);
        msum += row.modularity;
        if (result.has_precision) {
          ps.push_back(row.precision);
          psum += row.precision;
        }
      }
      agg.trials = static_cast<int>(ms.size());
      if (agg.trials == 0) continue;
      agg.modularity_mean = msum / agg.trials;
      double mvar = 0.0;
      for (double v : ms) mvar += (v - agg.modularity_mean) * (v - agg.modularity_mean);
      agg.modularity_std = agg.trials > 1 ? std::sqrt(mvar / (agg.trials - 1)) : 0.0;
      if (result.has_precision) {
        agg.precision_mean = psum / agg.trials;
        double pvar = 0.0;
        for (double v : ps) pvar += (v - agg.precision_mean) * (v - agg.precision_mean);
        agg.precision_std = agg.trials > 1 ? std::sqrt(pvar / (agg.trials - 1)) : 0.0;
      }
      result.aggregates.push_back(agg);
    }
}

}  // namespace detail

// One evaluation cell: solve, classify, score. Returns the data row.
inline SweepRow evaluate_cell(const Graph& g, const LabelSet& labels,
                              const Partition* truth, const SweepSpec& spec, double sigma,
                              double alpha, int trial) {
  const MethodParams params = detail::cell_params(spec, sigma, alpha);
  const Matrix y = build_label_matrix(labels, g.node_count());
  const ClassificationResult res = solve(g, y, params, detail::pick_mode(g, spec));
  const Partition pred = Partition::from_assignment(res.labels, labels.k);

  SweepRow row;
  row.sigma = sigma;
  row.alpha = alpha;
  row.trial = trial;
  row.iterations = res.iterations;
  row.modularity = modularity(g, pred);
  if (truth) {
    std::vector<int> evaluated;
    if (spec.eval_set == EvalSet::kUnlabeled) {
      for (int i = 0; i < g.node_count(); ++i)
        if (!labels.assignments.count(i)) evaluated.push_back(i);
      row.precision = score_against(pred, *truth, &evaluated).micro_precision;
    } else {
      row.precision = score_against(pred, *truth, nullptr).micro_precision;
    }
  }
  return row;
}

// Repeated-random-labeled-points protocol: per trial, labels_per_class
// nodes are drawn per class (without replacement, from the (seed, trial)
// substream) and the whole (sigma, alpha) grid is evaluated against that
// same labeled set, so cells are paired across the grid.
inline SweepResult random_label_trials(const Graph& g, const Partition& truth,
                                       const SweepSpec& spec) {
  spec.validate();
  if (truth.size() != g.node_count())
    throw std::invalid_argument("random_label_trials: partition does not match graph");
  const std::vector<std::vector<int>> members = truth.members();
  for (int c = 0; c < truth.k; ++c) {
    if (members[c].empty())
      throw std::invalid_argument("random_label_trials: class " + std::to_string(c) +
                                  " is empty");
    if (spec.labels_per_class > static_cast<int>(members[c].size()))
      throw std::invalid_argument("random_label_trials: labels_per_class exceeds class " +
                                  std::to_string(c) + " size");
  }

  SweepResult result;
  result.has_precision = true;
  result.eval_set = spec.eval_set;
  result.seed = spec.seed;

  std::vector<LabelSet> trial_labels;
  trial_labels.reserve(spec.trials);
  for (int t = 0; t < spec.trials; ++t) {
    Rng rng = Rng::substream(spec.seed, static_cast<std::uint64_t>(t));
    trial_labels.push_back(detail::sample_labels(members, truth.k, spec.labels_per_class, rng));
    result.trial_labeled_nodes.push_back(trial_labels.back().labeled_nodes());
  }

  for (double sigma : spec.sigmas)
    for (double alpha : spec.alphas)
      for (int t = 0; t < spec.trials; ++t)
        result.rows.push_back(evaluate_cell(g, trial_labels[t], &truth, spec, sigma, alpha, t));

  detail::append_aggregates(result, spec);
  return result;
}

// Full (sigma, alpha) grid over one fixed labeled set; precision columns
// are present iff a reference partition is supplied.
inline SweepResult alpha_sweep(const Graph& g, const LabelSet& labels, const Partition* truth,
                               const SweepSpec& spec) {
  spec.validate();
  if (spec.trials != 1)
    throw std::invalid_argument("alpha_sweep: a fixed labeled set admits exactly one trial");
  if (truth && truth->size() != g.node_count())
    throw std::invalid_argument("alpha_sweep: partition does not match graph");

  SweepResult result;
  result.has_precision = truth != nullptr;
  result.eval_set = spec.eval_set;
  result.seed = spec.seed;
  result.trial_labeled_nodes.push_back(labels.labeled_nodes());

  for (double sigma : spec.sigmas)
    for (double alpha : spec.alphas)
      result.rows.push_back(evaluate_cell(g, labels, truth, spec, sigma, alpha, 0));

  detail::append_aggregates(result, spec);
  return result;
}

// Sibling path for the aggregate file: out.csv -> out_agg.csv.
inline std::filesystem::path aggregate_path(const std::filesystem::path& path) {
  std::filesystem::path agg = path;
  agg.replace_filename(path.stem().string() + "_agg" + path.extension().string());
  return agg;
}

// Writes the data rows to `path` and per-cell mean/std aggregates to the
// sibling `*_agg` file. Row order is sigma grid, then alpha grid, then
// trial; repeated invocations with the same result are byte-identical.
inline void write_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << "sigma,alpha,trial,modularity,precision,iterations\n";
  out << "# meta: precision=micro over "
      << (result.eval_set == EvalSet::kUnlabeled ? "unlabeled" : "all")
      << " nodes, seed=" << result.seed << '\n';
  for (const SweepRow& r : result.rows) {
    out << format_double(r.sigma) << ',' << format_double(r.alpha) << ',' << r.trial << ','
        << format_double(r.modularity) << ',' << format_double(r.precision) << ','
        << r.iterations << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());

  const std::filesystem::path agg_file = aggregate_path(path);
  std::ofstream agg(agg_file);
  if (!agg) throw IoError("cannot open for writing: " + agg_file.string());
  agg << "sigma,alpha,trials,modularity_mean,modularity_std,precision_mean,precision_std\n";
  for (const SweepAggRow& r : result.aggregates) {
    agg << format_double(r.sigma) << ',' << format_double(r.alpha) << ',' << r.trials << ','
        << format_double(r.modularity_mean) << ',' << format_double(r.modularity_std) << ','
        << format_double(r.precision_mean) << ',' << format_double(r.precision_std) << '\n';
  }
  if (!agg) throw IoError("write failed: " + agg_file.string());
}

// Parses the data file format emitted by write_csv (used as the round-trip
// oracle and by downstream tooling). Comment lines are skipped.
inline std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // header line
      continue;
    }
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    fields.push_back(cur);
    if (fields.size() != 6) throw IoError("sweep csv: expected 6 fields, got line '" + line + "'");
    SweepRow r;
    r.sigma = std::stod(fields[0]);
    r.alpha = std::stod(fields[1]);
    r.trial = std::stoi(fields[2]);
    r.modularity = std::stod(fields[3]);
    r.precision = std::stod(fields[4]);
    r.iterations = std::stoi(fields[5]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace gssl
