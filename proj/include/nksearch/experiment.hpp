#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nksearch/engine.hpp"
#include "nksearch/rewire.hpp"

namespace nksearch {

// One expanded plan cell: a named (network, strategy, K) combination.
struct PlanCell {
  std::string name;
  std::string network_name;
  StrategySpec strategy;
  int k_interdependence = 0;
};

struct ExperimentPlan {
  int n_components = 15;
  std::vector<int> k_values;
  std::vector<std::pair<std::string, NetworkSpec>> networks;  // declaration order
  std::vector<StrategySpec> strategies;
  int t_max = 200;
  int repetitions = 200;
  int n_agents = 100;
  int degree = 19;
  std::uint64_t seed = 42;
  std::vector<PlanCell> cells;  // deterministic expansion order
};

// INI-style plan document; unknown sections or keys are hard errors, as are
// infeasible network parameters. See the README for the full grammar.
ExperimentPlan parse_config(const std::string& path);
ExperimentPlan parse_config_text(const std::string& text, const std::string& origin = "<string>");

// Effective sample size reported in CSVs: 0 for individual (no sampling),
// 1 for random_copy, s otherwise.
int effective_sample_size(const StrategySpec& strategy);
std::string cell_name(const std::string& network, const StrategySpec& strategy, int k);

struct CellResult {
  PlanCell cell;
  int diameter = 0;
  bool efficient = false;
  BatchResult batch;
};

struct SummaryRow {
  std::string cell;
  std::string network;
  int diameter = 0;
  bool efficient = false;
  std::string strategy;
  int s = 0;
  int k = 0;
  double final_mean = 0.0;
  double std_error = 0.0;
  int reps = 0;
};

// Diameter-median efficiency rule over the networks of one experiment:
// efficient iff diameter <= median; the complete graph is always efficient
// and the lattice always inefficient.
std::vector<bool> label_efficiency(const std::vector<std::pair<std::string, int>>& network_diameters);

// CSV columns: cell,network,strategy,s,K,rep,t,mean_payoff,max_payoff,unique_solutions
// sorted by (cell, rep, t); reals carry 17 significant digits.
void emit_timeseries_csv(const std::vector<CellResult>& results, const std::string& path);
// CSV columns: cell,network,diameter,efficiency,strategy,s,K,final_mean,stderr,reps
void emit_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path);
std::vector<SummaryRow> read_summary_csv(const std::string& path);

// Parsed time-series row, for round-trips and the analyze command.
struct TimeSeriesRow {
  std::string cell;
  std::string network;
  std::string strategy;
  int s = 0;
  int k = 0;
  int rep = 0;
  int t = 0;
  double mean_payoff = 0.0;
  double max_payoff = 0.0;
  int unique_solutions = 0;
};
std::vector<TimeSeriesRow> read_timeseries_csv(const std::string& path);

// Product-moment correlation; throws std::invalid_argument on length
// mismatch or fewer than 3 points, std::domain_error on constant input.
double pearson_r(const std::vector<double>& x, const std::vector<double>& y);

// Runs every cell of a plan (networks realized once, shared across cells;
// cells share the plan seed so repetition r pairs across cells) and writes
// timeseries.csv and summary.csv under out_dir.
struct RunPlanOptions {
  std::string out_dir;
  int threads = 0;
  long long rewire_iters = 50000;  // for plans that generate rewired networks inline
  int rewire_restarts = 10;
  std::ostream* progress = nullptr;
};
std::vector<CellResult> run_plan(const ExperimentPlan& plan, const RunPlanOptions& options);

enum class Figure { fig1, fig2, fig3, fig4 };
std::optional<Figure> figure_from_name(const std::string& name);

struct CheckLine {
  enum class Status { pass, fail, insufficient };
  std::string label;
  Status status = Status::pass;
  std::string detail;
};

struct ReplicateReport {
  Figure figure = Figure::fig1;
  std::vector<CheckLine> checks;
  bool all_pass() const;
};

// Ordering checks need at least this many repetitions to mean anything.
inline constexpr int kMinRepsForChecks = 50;

struct ReplicateOptions {
  std::string out_dir;
  std::uint64_t seed = 42;
  int repetitions = 200;
  // Directory holding <label>.edges files for the eight rewired networks
  // (fig3/fig4). Missing files raise an error telling the user to gen-net.
  std::string networks_dir;
  int threads = 0;
};

// Runs the figure's plan, writes its CSVs, prints one line per qualitative
// check with means +- 2 s.e., and returns the same lines structured.
ReplicateReport replicate_figure(Figure figure, const ReplicateOptions& options, std::ostream& out);

// The ten standard topologies: complete, lattice, and min/max of the four
// rewired measures.
std::vector<std::string> standard_network_labels();

void print_check(std::ostream& out, const CheckLine& line);

// Analysis over a summary CSV: per-(strategy, s, K) diameter/performance
// correlations and efficient-vs-inefficient orderings.
void analyze_summary(const std::vector<SummaryRow>& rows, std::ostream& out);

}  // namespace nksearch
