#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nksearch/experiment.hpp"
#include "nksearch/metrics.hpp"

namespace {

int cmd_gen_net(const std::string& kind, const std::string& metric, const std::string& dir, int n,
                int d, long long iters, int restarts, std::uint64_t seed, const std::string& out_path,
                int threads) {
  using namespace nksearch;
  NetworkSpec spec;
  spec.n_nodes = n;
  spec.degree = d;
  std::string label;
  if (!metric.empty() || !dir.empty()) {
    if (!kind.empty() && kind != "rewired") {
      std::cerr << "gen-net: give either --kind or --metric/--dir, not both\n";
      return 1;
    }
    const auto m = metric_from_name(metric);
    const auto direction = direction_from_name(dir);
    if (!m) {
      std::cerr << "gen-net: --metric must be one of closeness, betweenness, clustering, constraint\n";
      return 1;
    }
    if (!direction) {
      std::cerr << "gen-net: --dir must be min or max\n";
      return 1;
    }
    spec.kind = NetworkSpec::Kind::rewired;
    spec.metric = m;
    spec.direction = direction;
    label = network_label(spec);
  } else {
    const auto parsed = network_spec_from_label(kind, n, d);
    if (!parsed || parsed->kind == NetworkSpec::Kind::rewired) {
      std::cerr << "gen-net: --kind must be complete, lattice or random-regular (or use --metric/--dir)\n";
      return 1;
    }
    spec = *parsed;
    label = kind;
  }

  Rng rng(seed);
  const Graph g = realize_network(spec, iters, restarts, rng, threads);
  save_edge_list(g, out_path, label);
  std::cout << label << ": n=" << g.n() << " m=" << g.edge_count() << " diameter=" << diameter(g);
  if (spec.kind == NetworkSpec::Kind::rewired)
    std::cout << " " << metric_name(*spec.metric) << "=" << graph_metric(g, *spec.metric);
  std::cout << " -> " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collective search on NK landscapes over networks"};
  app.require_subcommand(1);

  // gen-net
  std::string gn_kind, gn_metric, gn_dir, gn_out;
  int gn_n = 100, gn_d = 19, gn_restarts = 10, gn_threads = 0;
  long long gn_iters = 50000;
  std::uint64_t gn_seed = 1;
  auto* gen_net = app.add_subcommand("gen-net", "Generate a network and save it as an edge list");
  gen_net->add_option("--kind", gn_kind, "complete | lattice | random-regular");
  gen_net->add_option("--metric", gn_metric, "Rewiring objective: closeness | betweenness | clustering | constraint");
  gen_net->add_option("--dir", gn_dir, "Rewiring direction: min | max");
  gen_net->add_option("--n", gn_n, "Node count")->capture_default_str();
  gen_net->add_option("--d", gn_d, "Degree")->capture_default_str();
  gen_net->add_option("--iters", gn_iters, "Swap proposals per restart")->capture_default_str();
  gen_net->add_option("--restarts", gn_restarts, "Hill-climb restarts")->capture_default_str();
  gen_net->add_option("--seed", gn_seed, "Random seed")->capture_default_str();
  gen_net->add_option("--out", gn_out, "Output edge-list path")->required();
  gen_net->add_option("--threads", gn_threads, "Worker threads (0 = hardware)")->capture_default_str();

  // run
  std::string run_config, run_out;
  std::uint64_t run_seed = 0;
  int run_reps = 0, run_threads = 0;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment plan and write CSVs");
  run_cmd->add_option("--config", run_config, "Plan file")->required();
  run_cmd->add_option("--out", run_out, "Output directory")->required();
  run_cmd->add_option("--seed", run_seed, "Override the plan seed");
  run_cmd->add_option("--reps", run_reps, "Override the plan repetition count");
  run_cmd->add_option("--threads", run_threads, "Worker threads (0 = hardware)")->capture_default_str();

  // replicate
  std::string rep_figure, rep_out, rep_nets;
  std::uint64_t rep_seed = 42;
  int rep_reps = 200, rep_threads = 0;
  auto* rep_cmd = app.add_subcommand("replicate", "Run a built-in experiment preset and check its orderings");
  rep_cmd->add_option("--figure", rep_figure, "fig1 | fig2 | fig3 | fig4")->required();
  rep_cmd->add_option("--out", rep_out, "Output directory")->required();
  rep_cmd->add_option("--seed", rep_seed, "Random seed")->capture_default_str();
  rep_cmd->add_option("--reps", rep_reps, "Repetitions per cell")->capture_default_str();
  rep_cmd->add_option("--nets", rep_nets, "Directory with <label>.edges files (default <out>/networks)");
  rep_cmd->add_option("--threads", rep_threads, "Worker threads (0 = hardware)")->capture_default_str();

  // analyze
  std::string an_summary;
  auto* an_cmd = app.add_subcommand("analyze", "Print correlations and ordering checks for a summary CSV");
  an_cmd->add_option("--summary", an_summary, "summary.csv path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_net->parsed()) {
      return cmd_gen_net(gn_kind, gn_metric, gn_dir, gn_n, gn_d, gn_iters, gn_restarts, gn_seed,
                         gn_out, gn_threads);
    }
    if (run_cmd->parsed()) {
      nksearch::ExperimentPlan plan = nksearch::parse_config(run_config);
      if (run_cmd->count("--seed") > 0) plan.seed = run_seed;
      if (run_reps > 0) plan.repetitions = run_reps;
      nksearch::RunPlanOptions options;
      options.out_dir = run_out;
      options.threads = run_threads;
      options.progress = &std::cerr;
      const auto results = nksearch::run_plan(plan, options);
      std::cout << results.size() << " cells -> " << run_out << "/timeseries.csv, " << run_out
                << "/summary.csv\n";
      return 0;
    }
    if (rep_cmd->parsed()) {
      const auto figure = nksearch::figure_from_name(rep_figure);
      if (!figure) {
        std::cerr << "replicate: --figure must be fig1, fig2, fig3 or fig4\n";
        return 1;
      }
      nksearch::ReplicateOptions options;
      options.out_dir = rep_out;
      options.seed = rep_seed;
      options.repetitions = rep_reps;
      options.networks_dir = rep_nets.empty() ? rep_out + "/networks" : rep_nets;
      options.threads = rep_threads;
      const auto report = nksearch::replicate_figure(*figure, options, std::cout);
      return report.all_pass() ? 0 : 2;
    }
    if (an_cmd->parsed()) {
      const auto rows = nksearch::read_summary_csv(an_summary);
      nksearch::analyze_summary(rows, std::cout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
