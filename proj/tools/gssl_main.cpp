// Command-line front end: classify / sweep / generate / eval over the
// text formats defined in gssl/io.hpp.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gssl/gssl.hpp"

namespace {

gssl::SolveMode parse_mode(const std::string& mode, const gssl::Graph& g, int dense_cap) {
  if (mode == "iterative") return gssl::SolveMode::kIterative;
  if (mode == "dense") return gssl::SolveMode::kDenseDirect;
  // auto
  return g.node_count() <= dense_cap ? gssl::SolveMode::kDenseDirect
                                     : gssl::SolveMode::kIterative;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw gssl::IoError("cannot open for writing: " + path);
  return out;
}

struct ClassifyArgs {
  std::string graph_path, labels_path, out_path;
  double sigma = 0.0;
  double alpha = -1.0, mu = -1.0;
  bool normalized = false;
  bool allow_self_loops = false;
  std::string mode = "auto";
  double tol = 1e-10;
  int max_iters = 10000;
  int dense_cap = 2000;
};

int run_classify(const ClassifyArgs& args) {
  const bool has_alpha = args.alpha >= 0.0, has_mu = args.mu >= 0.0;
  if (has_alpha == has_mu)
    throw CLI::ValidationError("classify", "give exactly one of --alpha / --mu");

  gssl::LoadedGraph lg = gssl::read_edge_list_file(args.graph_path, args.allow_self_loops);
  gssl::LoadedLabels ll = gssl::read_labels_file(args.labels_path, lg.nodes);
  if (args.normalized) ll.labels.mode = gssl::LabelMode::kPerClass;

  gssl::MethodParams params;
  params.sigma = args.sigma;
  params.alpha = has_alpha ? args.alpha : gssl::alpha_from_mu(args.mu);
  params.tolerance = args.tol;
  params.max_iterations = args.max_iters;
  params.dense_cap = args.dense_cap;

  const gssl::Matrix y = gssl::build_label_matrix(ll.labels, lg.graph.node_count());
  const gssl::ClassificationResult res =
      gssl::solve(lg.graph, y, params, parse_mode(args.mode, lg.graph, args.dense_cap));

  std::ofstream out = open_out(args.out_path);
  gssl::write_scores_csv(out, res.scores, res.labels, lg.nodes.names, ll.class_names);

  std::cout << "classified " << lg.graph.node_count() << " nodes into " << ll.labels.k
            << " classes (sigma=" << args.sigma << ", alpha=" << params.alpha
            << ", iterations=" << res.iterations << ", residual=" << res.final_residual
            << ")\n";
  if (!res.zero_score_rows.empty())
    std::cout << "warning: " << res.zero_score_rows.size()
              << " nodes received no score mass and were assigned class 0\n";
  return 0;
}

struct SweepArgs {
  std::string graph_path, partition_path, labels_path, out_path;
  std::vector<double> sigmas, alphas;
  int trials = 100;
  int labels_per_class = 1;
  std::uint64_t seed = 0;
  std::string eval_set = "unlabeled";
  std::string mode = "auto";
  double tol = 1e-10;
  int max_iters = 10000;
  int dense_cap = 2000;
  bool allow_self_loops = false;
};

int run_sweep(const SweepArgs& args) {
  gssl::LoadedGraph lg = gssl::read_edge_list_file(args.graph_path, args.allow_self_loops);
  gssl::Partition truth = gssl::read_partition_file(args.partition_path, lg.nodes);

  gssl::SweepSpec spec;
  spec.sigmas = args.sigmas;
  spec.alphas = args.alphas.empty() ? gssl::default_alpha_grid() : args.alphas;
  spec.trials = args.trials;
  spec.labels_per_class = args.labels_per_class;
  spec.seed = args.seed;
  spec.eval_set = args.eval_set == "all" ? gssl::EvalSet::kAll : gssl::EvalSet::kUnlabeled;
  spec.tolerance = args.tol;
  spec.max_iterations = args.max_iters;
  spec.dense_cap = args.dense_cap;
  if (args.mode == "iterative") spec.mode = gssl::SolveMode::kIterative;
  if (args.mode == "dense") spec.mode = gssl::SolveMode::kDenseDirect;

  gssl::SweepResult result;
  if (!args.labels_path.empty()) {
    gssl::LoadedLabels ll = gssl::read_labels_file(args.labels_path, lg.nodes);
    spec.trials = 1;  // a fixed labeled set admits exactly one trial
    result = gssl::alpha_sweep(lg.graph, ll.labels, &truth, spec);
  } else {
    result = gssl::random_label_trials(lg.graph, truth, spec);
  }
  gssl::write_csv(result, args.out_path);
  std::cout << "wrote " << result.rows.size() << " rows to " << args.out_path << " and "
            << result.aggregates.size() << " aggregate rows to "
            << gssl::aggregate_path(args.out_path).string() << '\n';
  return 0;
}

struct GenerateArgs {
  std::vector<int> sizes;
  std::vector<double> p_in;
  double p_out = 0.0;
  std::uint64_t seed = 0;
  std::string out_prefix;
};

int run_generate(const GenerateArgs& args) {
  gssl::PlantedPartitionSpec spec;
  spec.sizes = args.sizes;
  spec.p_in = args.p_in;
  spec.p_out = args.p_out;
  spec.seed = args.seed;
  auto [graph, truth] = gssl::planted_partition(spec);

  const std::string edges_path = args.out_prefix + ".edges";
  const std::string part_path = args.out_prefix + ".partition";
  {
    std::ofstream out = open_out(edges_path);
    gssl::write_edge_list(out, graph);
  }
  {
    std::ofstream out = open_out(part_path);
    gssl::write_partition(out, truth);
  }
  std::cout << "generated " << graph.node_count() << " nodes, " << graph.edge_count()
            << " edges (seed=" << args.seed << ") -> " << edges_path << ", " << part_path
            << '\n';
  return 0;
}

struct EvalArgs {
  std::string graph_path, pred_path, truth_path, out_path;
  std::string labels_path;
  double sigma = 0.0;
  bool have_sigma = false;
  std::string stationary_out;
  bool allow_self_loops = false;
};

int run_eval(const EvalArgs& args) {
  gssl::LoadedGraph lg = gssl::read_edge_list_file(args.graph_path, args.allow_self_loops);
  gssl::Partition pred = gssl::read_partition_file(args.pred_path, lg.nodes);
  gssl::Partition truth = gssl::read_partition_file(args.truth_path, lg.nodes);
  // Class ids come from the same label space; a file that happens not to
  // use the top class should still be scorable, so pad both to the max.
  pred.k = truth.k = std::max(pred.k, truth.k);

  gssl::EvalReport report = gssl::score_against(pred, truth, nullptr);
  report.modularity = gssl::modularity(lg.graph, pred);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.out_path.empty()) {
    file = open_out(args.out_path);
    out = &file;
  }
  gssl::write_eval_csv(*out, report);

  if (!args.labels_path.empty()) {
    if (!args.have_sigma)
      throw CLI::ValidationError("eval", "--labels diagnostics need --sigma");
    gssl::LoadedLabels ll = gssl::read_labels_file(args.labels_path, lg.nodes);
    const gssl::LimitClassWeights lw =
        gssl::limit_class_weights(lg.graph, ll.labels, args.sigma);
    for (std::size_t c = 0; c < lw.weights.size(); ++c)
      *out << "limit_weight," << c << ',' << gssl::format_double(lw.weights[c]) << '\n';
    *out << "dominating_class,,"
         << (lw.dominating ? std::to_string(*lw.dominating) : std::string("none")) << '\n';
  }
  if (!args.stationary_out.empty()) {
    const std::vector<double> pi = gssl::stationary_distribution(lg.graph);
    std::ofstream sout = open_out(args.stationary_out);
    sout << "node,pi\n";
    for (int i = 0; i < lg.graph.node_count(); ++i)
      sout << lg.nodes.names[i] << ',' << gssl::format_double(pi[i]) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-based semi-supervised classification toolkit"};
  app.require_subcommand(1);

  ClassifyArgs cargs;
  CLI::App* classify = app.add_subcommand(
      "classify", "solve one classification problem and export node scores");
  classify->add_option("--graph", cargs.graph_path, "edge-list file")->required();
  classify->add_option("--labels", cargs.labels_path, "labels file (node_id class_name)")
      ->required();
  classify->add_option("--sigma", cargs.sigma, "degree exponent (1=standard Laplacian, 0.5=normalized, 0=PageRank)")
      ->required();
  classify->add_option("--alpha", cargs.alpha, "regularization as continuation probability, in (0,1)");
  classify->add_option("--mu", cargs.mu, "regularization parameter; alternative to --alpha");
  classify->add_option("--out", cargs.out_path, "output CSV")->required();
  classify->add_flag("--normalized", cargs.normalized, "normalize label columns per class");
  classify->add_flag("--allow-self-loops", cargs.allow_self_loops);
  classify->add_option("--mode", cargs.mode, "auto|iterative|dense")
      ->check(CLI::IsMember({"auto", "iterative", "dense"}));
  classify->add_option("--tol", cargs.tol, "iterative convergence tolerance");
  classify->add_option("--max-iters", cargs.max_iters);
  classify->add_option("--dense-cap", cargs.dense_cap);

  SweepArgs sargs;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run (sigma, alpha) grids with random or fixed labeled points");
  sweep->add_option("--graph", sargs.graph_path)->required();
  sweep->add_option("--partition", sargs.partition_path, "reference partition file")->required();
  sweep->add_option("--labels", sargs.labels_path, "fixed labels file (disables random trials)");
  sweep->add_option("--sigmas", sargs.sigmas, "comma-separated sigma grid")
      ->required()
      ->delimiter(',');
  sweep->add_option("--alphas", sargs.alphas, "comma-separated alpha grid (default: built-in grid)")
      ->delimiter(',');
  sweep->add_option("--trials", sargs.trials);
  sweep->add_option("--labels-per-class", sargs.labels_per_class);
  sweep->add_option("--seed", sargs.seed);
  sweep->add_option("--out", sargs.out_path, "output CSV (aggregates go to *_agg.csv)")
      ->required();
  sweep->add_option("--eval-set", sargs.eval_set)->check(CLI::IsMember({"unlabeled", "all"}));
  sweep->add_option("--mode", sargs.mode)->check(CLI::IsMember({"auto", "iterative", "dense"}));
  sweep->add_option("--tol", sargs.tol);
  sweep->add_option("--max-iters", sargs.max_iters);
  sweep->add_option("--dense-cap", sargs.dense_cap);
  sweep->add_flag("--allow-self-loops", sargs.allow_self_loops);

  GenerateArgs gargs;
  CLI::App* generate =
      app.add_subcommand("generate", "sample a planted-partition graph with ground truth");
  generate->add_option("--sizes", gargs.sizes, "comma-separated class sizes")
      ->required()
      ->delimiter(',');
  generate->add_option("--p-in", gargs.p_in, "comma-separated intra-class link probabilities")
      ->required()
      ->delimiter(',');
  generate->add_option("--p-out", gargs.p_out, "inter-class link probability")->required();
  generate->add_option("--seed", gargs.seed);
  generate->add_option("--out-prefix", gargs.out_prefix, "writes <prefix>.edges and <prefix>.partition")
      ->required();

  EvalArgs eargs;
  CLI::App* eval =
      app.add_subcommand("eval", "score a predicted partition against a reference");
  eval->add_option("--graph", eargs.graph_path)->required();
  eval->add_option("--pred", eargs.pred_path, "predicted partition file")->required();
  eval->add_option("--truth", eargs.truth_path, "reference partition file")->required();
  eval->add_option("--out", eargs.out_path, "report CSV (default: stdout)");
  eval->add_option("--labels", eargs.labels_path, "labels file for limit-weight diagnostics");
  eval->add_option("--sigma", eargs.sigma)->each([&](const std::string&) { eargs.have_sigma = true; });
  eval->add_option("--stationary-out", eargs.stationary_out,
                   "write the stationary distribution as CSV");
  eval->add_flag("--allow-self-loops", eargs.allow_self_loops);

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return run_classify(cargs);
    if (sweep->parsed()) return run_sweep(sargs);
    if (generate->parsed()) return run_generate(gargs);
    if (eval->parsed()) return run_eval(eargs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
