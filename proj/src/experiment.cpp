#include "nksearch/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "nksearch/metrics.hpp"

namespace nksearch {

namespace {

constexpr std::uint64_t kNetworkTag = 0x4E4554ull;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(value);
  while (std::getline(in, current, ',')) {
    const std::string item = unquote(trim(current));
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

[[noreturn]] void plan_error(const std::string& origin, const std::string& key_path, const std::string& what) {
  throw std::runtime_error(origin + ": " + key_path + ": " + what);
}

long long parse_integer(const std::string& origin, const std::string& key_path, const std::string& value) {
  try {
    size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    plan_error(origin, key_path, "expected an integer, got '" + value + "'");
  }
}

std::string format_real(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string fmt_pm2se(const MeanSe& m) {
  std::ostringstream out;
  out.precision(5);
  out << std::fixed << m.mean << "+-" << 2.0 * m.se;
  return out.str();
}

bool gap_exceeds_2se(const MeanSe& hi, const MeanSe& lo) {
  return hi.mean - lo.mean > 2.0 * std::sqrt(hi.se * hi.se + lo.se * lo.se);
}

// [lo.mean +- 2 s.e.] entirely below [hi.mean +- 2 s.e.]
bool disjoint_below(const MeanSe& lo, const MeanSe& hi) {
  return lo.mean + 2.0 * lo.se < hi.mean - 2.0 * hi.se;
}

}  // namespace

int effective_sample_size(const StrategySpec& strategy) {
  switch (strategy.rule) {
    case Rule::individual_only: return 0;
    case Rule::random_copy: return 1;
    default: return strategy.sample_size;
  }
}

std::string cell_name(const std::string& network, const StrategySpec& strategy, int k) {
  std::string name = network + "-" + rule_name(strategy.rule);
  if (strategy.rule == Rule::best_member || strategy.rule == Rule::conformity)
    name += "-s" + std::to_string(strategy.sample_size);
  name += "-K" + std::to_string(k);
  return name;
}

ExperimentPlan parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_config: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

ExperimentPlan parse_config_text(const std::string& text, const std::string& origin) {
  ExperimentPlan plan;
  bool saw_n = false, saw_k = false, saw_rule = false, saw_s = false;
  std::vector<std::string> rule_names;
  std::vector<int> s_values;
  ConformityTie tie = ConformityTie::modes;
  std::vector<std::pair<std::string, std::string>> network_entries;

  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') plan_error(origin, "line " + std::to_string(line_no), "unterminated section header");
      section = t.substr(1, t.size() - 2);
      if (section != "landscape" && section != "networks" && section != "strategies" && section != "run")
        plan_error(origin, "[" + section + "]", "unknown section");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      plan_error(origin, "line " + std::to_string(line_no), "expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (section.empty()) plan_error(origin, key, "key appears before any [section]");
    const std::string key_path = "[" + section + "] " + key;
    if (value.empty()) plan_error(origin, key_path, "empty value");

    if (section == "landscape") {
      if (key == "n") {
        plan.n_components = static_cast<int>(parse_integer(origin, key_path, unquote(value)));
        saw_n = true;
      } else if (key == "k") {
        plan.k_values.clear();
        for (const auto& item : split_list(value))
          plan.k_values.push_back(static_cast<int>(parse_integer(origin, key_path, item)));
        saw_k = !plan.k_values.empty();
      } else {
        plan_error(origin, key_path, "unknown key (expected n, k)");
      }
    } else if (section == "networks") {
      for (const auto& [existing, ignored] : network_entries)
        if (existing == key) plan_error(origin, key_path, "duplicate network name");
      network_entries.emplace_back(key, unquote(value));
    } else if (section == "strategies") {
      if (key == "rule") {
        rule_names = split_list(value);
        saw_rule = !rule_names.empty();
      } else if (key == "s") {
        s_values.clear();
        for (const auto& item : split_list(value))
          s_values.push_back(static_cast<int>(parse_integer(origin, key_path, item)));
        saw_s = !s_values.empty();
      } else if (key == "conformity_tie") {
        const std::string v = unquote(value);
        if (v == "modes") tie = ConformityTie::modes;
        else if (v == "fallback") tie = ConformityTie::fallback;
        else plan_error(origin, key_path, "expected modes or fallback, got '" + v + "'");
      } else {
        plan_error(origin, key_path, "unknown key (expected rule, s, conformity_tie)");
      }
    } else {  // run
      const std::string v = unquote(value);
      if (key == "t_max") plan.t_max = static_cast<int>(parse_integer(origin, key_path, v));
      else if (key == "reps") plan.repetitions = static_cast<int>(parse_integer(origin, key_path, v));
      else if (key == "seed") plan.seed = static_cast<std::uint64_t>(parse_integer(origin, key_path, v));
      else if (key == "agents") plan.n_agents = static_cast<int>(parse_integer(origin, key_path, v));
      else if (key == "degree") plan.degree = static_cast<int>(parse_integer(origin, key_path, v));
      else plan_error(origin, key_path, "unknown key (expected t_max, reps, seed, agents, degree)");
    }
  }

  if (!saw_n) plan_error(origin, "[landscape] n", "missing required key");
  if (!saw_k) plan_error(origin, "[landscape] k", "missing required key");
  if (network_entries.empty()) plan_error(origin, "[networks]", "need at least one network entry");
  if (!saw_rule) plan_error(origin, "[strategies] rule", "missing required key");

  if (plan.n_components < 1 || plan.n_components > kMaxComponents)
    plan_error(origin, "[landscape] n", "N must lie in [1, 24]");
  for (int k : plan.k_values)
    if (k < 0 || k > plan.n_components - 1)
      plan_error(origin, "[landscape] k", "K must lie in [0, N-1]");
  if (plan.t_max < 1) plan_error(origin, "[run] t_max", "must be >= 1");
  if (plan.repetitions < 1) plan_error(origin, "[run] reps", "must be >= 1");
  if (plan.n_agents < 2) plan_error(origin, "[run] agents", "must be >= 2");

  // Networks: builtin label, rewired label (file-backed only), or file:<path>.
  for (const auto& [name, value] : network_entries) {
    const std::string key_path = "[networks] " + name;
    NetworkSpec spec;
    if (value.rfind("file:", 0) == 0) {
      const std::string path = trim(value.substr(5));
      if (path.empty()) plan_error(origin, key_path, "file: needs a path");
      const auto from_label = network_spec_from_label(name, plan.n_agents, plan.degree);
      spec = from_label.value_or(NetworkSpec{});
      if (!from_label) spec.kind = NetworkSpec::Kind::rewired;  // unknown name: shape comes from the file
      spec.n_nodes = plan.n_agents;
      spec.degree = plan.degree;
      spec.source_path = path;
    } else {
      const auto parsed = network_spec_from_label(value, plan.n_agents, plan.degree);
      if (!parsed)
        plan_error(origin, key_path,
                   "unknown network spec '" + value +
                       "' (expected complete, lattice, random-regular, or file:<path>)");
      spec = *parsed;
      if (spec.kind == NetworkSpec::Kind::rewired)
        plan_error(origin, key_path,
                   "rewired topologies are expensive; generate '" + value +
                       "' with gen-net and reference it as file:<path>");
      // Feasibility at parse time.
      if (spec.kind == NetworkSpec::Kind::complete && plan.n_agents < 2)
        plan_error(origin, key_path, "complete graph needs n >= 2");
      if (spec.kind == NetworkSpec::Kind::lattice) {
        if (plan.degree >= plan.n_agents) plan_error(origin, key_path, "lattice needs d < n");
        if (plan.degree % 2 == 1 && plan.n_agents % 2 == 1)
          plan_error(origin, key_path, "lattice with odd degree needs an even node count");
      }
      if (spec.kind == NetworkSpec::Kind::random_regular) {
        if (plan.degree >= plan.n_agents) plan_error(origin, key_path, "random-regular needs d < n");
        if ((static_cast<long long>(plan.n_agents) * plan.degree) % 2 != 0)
          plan_error(origin, key_path, "random-regular needs n*d even");
      }
    }
    plan.networks.emplace_back(name, spec);
  }

  // Strategies: expand rule x s, collapsing s for the unsampled rules.
  for (const auto& name : rule_names) {
    const auto rule = rule_from_name(name);
    if (!rule)
      plan_error(origin, "[strategies] rule",
                 "unknown rule '" + name +
                     "' (valid: best_member, conformity, random_copy, individual)");
    if (*rule == Rule::best_member || *rule == Rule::conformity) {
      if (!saw_s) plan_error(origin, "[strategies] s", "missing required key (needed by " + name + ")");
      for (int s : s_values) {
        if (s < 1 || s > plan.n_agents - 1)
          plan_error(origin, "[strategies] s", "sample size must lie in [1, agents-1]");
        StrategySpec spec;
        spec.rule = *rule;
        spec.sample_size = s;
        spec.conformity_tie = tie;
        plan.strategies.push_back(spec);
      }
    } else {
      StrategySpec spec;
      spec.rule = *rule;
      spec.sample_size = 1;
      spec.conformity_tie = tie;
      plan.strategies.push_back(spec);
    }
  }

  std::set<std::string> cell_names;
  for (const auto& [name, spec] : plan.networks)
    for (int k : plan.k_values)
      for (const auto& strategy : plan.strategies) {
        PlanCell cell{cell_name(name, strategy, k), name, strategy, k};
        if (!cell_names.insert(cell.name).second)
          plan_error(origin, "[strategies] rule", "duplicate cell '" + cell.name + "' (repeated rule or s?)");
        plan.cells.push_back(std::move(cell));
      }
  return plan;
}

std::vector<bool> label_efficiency(const std::vector<std::pair<std::string, int>>& network_diameters) {
  std::vector<int> sorted;
  sorted.reserve(network_diameters.size());
  for (const auto& [name, d] : network_diameters) sorted.push_back(d);
  std::sort(sorted.begin(), sorted.end());
  double median = 0.0;
  const size_t n = sorted.size();
  if (n > 0) {
    median = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  }
  std::vector<bool> efficient(network_diameters.size());
  for (size_t i = 0; i < network_diameters.size(); ++i) {
    const auto& [name, d] = network_diameters[i];
    if (name == "complete") efficient[i] = true;
    else if (name == "lattice") efficient[i] = false;
    else efficient[i] = d <= median;
  }
  return efficient;
}

void emit_timeseries_csv(const std::vector<CellResult>& results, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_timeseries_csv: cannot open " + path);
  out << "cell,network,strategy,s,K,rep,t,mean_payoff,max_payoff,unique_solutions\n";
  std::vector<const CellResult*> ordered;
  ordered.reserve(results.size());
  for (const auto& r : results) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const CellResult* a, const CellResult* b) { return a->cell.name < b->cell.name; });
  for (const CellResult* r : ordered) {
    const std::string prefix = r->cell.name + "," + r->cell.network_name + "," +
                               rule_name(r->cell.strategy.rule) + "," +
                               std::to_string(effective_sample_size(r->cell.strategy)) + "," +
                               std::to_string(r->cell.k_interdependence) + ",";
    for (size_t rep = 0; rep < r->batch.per_rep.size(); ++rep) {
      const TimeSeries& ts = r->batch.per_rep[rep];
      for (size_t t = 0; t < ts.mean_payoff.size(); ++t) {
        out << prefix << rep << ',' << (t + 1) << ',' << format_real(ts.mean_payoff[t]) << ','
            << format_real(ts.max_payoff[t]) << ',' << ts.unique_solutions[t] << '\n';
      }
    }
  }
  if (!out) throw std::runtime_error("emit_timeseries_csv: write failed for " + path);
}

void emit_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_summary_csv: cannot open " + path);
  out << "cell,network,diameter,efficiency,strategy,s,K,final_mean,stderr,reps\n";
  std::vector<const SummaryRow*> ordered;
  ordered.reserve(rows.size());
  for (const auto& r : rows) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const SummaryRow* a, const SummaryRow* b) { return a->cell < b->cell; });
  for (const SummaryRow* r : ordered) {
    out << r->cell << ',' << r->network << ',' << r->diameter << ','
        << (r->efficient ? "efficient" : "inefficient") << ',' << r->strategy << ',' << r->s << ','
        << r->k << ',' << format_real(r->final_mean) << ',' << format_real(r->std_error) << ','
        << r->reps << '\n';
  }
  if (!out) throw std::runtime_error("emit_summary_csv: write failed for " + path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

std::vector<SummaryRow> read_summary_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_summary_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_summary_csv: empty file " + path);
  std::vector<SummaryRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 10)
      throw std::runtime_error("read_summary_csv: expected 10 fields at line " + std::to_string(line_no));
    SummaryRow row;
    row.cell = fields[0];
    row.network = fields[1];
    row.diameter = std::stoi(fields[2]);
    row.efficient = fields[3] == "efficient";
    row.strategy = fields[4];
    row.s = std::stoi(fields[5]);
    row.k = std::stoi(fields[6]);
    row.final_mean = std::stod(fields[7]);
    row.std_error = std::stod(fields[8]);
    row.reps = std::stoi(fields[9]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TimeSeriesRow> read_timeseries_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_timeseries_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_timeseries_csv: empty file " + path);
  std::vector<TimeSeriesRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 10)
      throw std::runtime_error("read_timeseries_csv: expected 10 fields at line " + std::to_string(line_no));
    TimeSeriesRow row;
    row.cell = fields[0];
    row.network = fields[1];
    row.strategy = fields[2];
    row.s = std::stoi(fields[3]);
    row.k = std::stoi(fields[4]);
    row.rep = std::stoi(fields[5]);
    row.t = std::stoi(fields[6]);
    row.mean_payoff = std::stod(fields[7]);
    row.max_payoff = std::stod(fields[8]);
    row.unique_solutions = std::stoi(fields[9]);
    rows.push_back(std::move(row));
  }
  return rows;
}

double pearson_r(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson_r: length mismatch");
  if (x.size() < 3) throw std::invalid_argument("pearson_r: need at least 3 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::domain_error("pearson_r: undefined for constant input");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<CellResult> run_plan(const ExperimentPlan& plan, const RunPlanOptions& options) {
  // Realize every network once; cells share them.
  std::vector<Graph> graphs;
  std::vector<std::pair<std::string, int>> diameters;
  graphs.reserve(plan.networks.size());
  for (size_t i = 0; i < plan.networks.size(); ++i) {
    const auto& [name, spec] = plan.networks[i];
    Rng rng(derive(plan.seed, kNetworkTag, static_cast<std::uint64_t>(i)));
    Graph g = realize_network(spec, options.rewire_iters, options.rewire_restarts, rng, options.threads);
    if (g.n() != plan.n_agents)
      throw std::runtime_error("run_plan: network '" + name + "' has " + std::to_string(g.n()) +
                               " nodes but the plan expects " + std::to_string(plan.n_agents));
    diameters.emplace_back(name, diameter(g));
    graphs.push_back(std::move(g));
  }
  const std::vector<bool> efficient = label_efficiency(diameters);

  std::vector<CellResult> results;
  results.reserve(plan.cells.size());
  for (const auto& cell : plan.cells) {
    size_t net_index = 0;
    while (plan.networks[net_index].first != cell.network_name) ++net_index;

    SimConfig config;
    config.n_agents = plan.n_agents;
    config.n_components = plan.n_components;
    config.k_interdependence = cell.k_interdependence;
    config.strategy = cell.strategy;
    config.t_max = plan.t_max;
    config.repetitions = plan.repetitions;
    config.base_seed = plan.seed;
    config.threads = options.threads;

    if (options.progress) (*options.progress) << "running " << cell.name << " (" << plan.repetitions
                                              << " reps)...\n";
    CellResult result;
    result.cell = cell;
    result.diameter = diameters[net_index].second;
    result.efficient = efficient[net_index];
    result.batch = run_batch(config, graphs[net_index]);
    results.push_back(std::move(result));
  }

  if (!options.out_dir.empty()) {
    std::filesystem::create_directories(options.out_dir);
    emit_timeseries_csv(results, options.out_dir + "/timeseries.csv");
    std::vector<SummaryRow> rows;
    rows.reserve(results.size());
    for (const auto& r : results) {
      SummaryRow row;
      row.cell = r.cell.name;
      row.network = r.cell.network_name;
      row.diameter = r.diameter;
      row.efficient = r.efficient;
      row.strategy = rule_name(r.cell.strategy.rule);
      row.s = effective_sample_size(r.cell.strategy);
      row.k = r.cell.k_interdependence;
      const MeanSe final = r.batch.final_payoff();
      row.final_mean = final.mean;
      row.std_error = final.se;
      row.reps = static_cast<int>(r.batch.per_rep.size());
      rows.push_back(std::move(row));
    }
    emit_summary_csv(rows, options.out_dir + "/summary.csv");
  }
  return results;
}

std::optional<Figure> figure_from_name(const std::string& name) {
  if (name == "fig1") return Figure::fig1;
  if (name == "fig2") return Figure::fig2;
  if (name == "fig3") return Figure::fig3;
  if (name == "fig4") return Figure::fig4;
  return std::nullopt;
}

bool ReplicateReport::all_pass() const {
  for (const auto& line : checks)
    if (line.status != CheckLine::Status::pass) return false;
  return true;
}

std::vector<std::string> standard_network_labels() {
  return {"complete",       "lattice",        "min_closeness",  "max_closeness",
          "min_betweenness", "max_betweenness", "min_clustering", "max_clustering",
          "min_constraint",  "max_constraint"};
}

void print_check(std::ostream& out, const CheckLine& line) {
  const char* status = line.status == CheckLine::Status::pass ? "PASS"
                       : line.status == CheckLine::Status::fail ? "FAIL"
                                                                : "insufficient repetitions";
  out << line.label << ": " << status;
  if (!line.detail.empty()) out << " [" << line.detail << "]";
  out << '\n';
}

namespace {

StrategySpec make_strategy(Rule rule, int s = 1) {
  StrategySpec spec;
  spec.rule = rule;
  spec.sample_size = s;
  return spec;
}

const CellResult* find_cell(const std::vector<CellResult>& results, const std::string& network,
                            Rule rule, int s, int k) {
  for (const auto& r : results) {
    if (r.cell.network_name != network) continue;
    if (r.cell.strategy.rule != rule) continue;
    if (r.cell.k_interdependence != k) continue;
    if ((rule == Rule::best_member || rule == Rule::conformity) && r.cell.strategy.sample_size != s)
      continue;
    return &r;
  }
  throw std::logic_error("replicate: missing cell for " + network);
}

class CheckBuilder {
 public:
  CheckBuilder(std::vector<CheckLine>& lines, bool sufficient) : lines_(lines), sufficient_(sufficient) {}

  void add(const std::string& label, bool pass, const std::string& detail) {
    CheckLine line;
    line.label = label;
    line.status = !sufficient_ ? CheckLine::Status::insufficient
                               : (pass ? CheckLine::Status::pass : CheckLine::Status::fail);
    line.detail = detail;
    lines_.push_back(std::move(line));
  }

  // hi must exceed lo by more than 2 combined s.e.
  void add_gap(const std::string& label, const MeanSe& hi, const MeanSe& lo) {
    add(label, gap_exceeds_2se(hi, lo), fmt_pm2se(hi) + " vs " + fmt_pm2se(lo));
  }

  // lo's +-2 s.e. interval must sit entirely below hi's.
  void add_disjoint(const std::string& label, const MeanSe& lo, const MeanSe& hi) {
    add(label, disjoint_below(lo, hi), fmt_pm2se(lo) + " vs " + fmt_pm2se(hi));
  }

 private:
  std::vector<CheckLine>& lines_;
  bool sufficient_;
};

ExperimentPlan figure_plan(Figure figure, const ReplicateOptions& options) {
  ExperimentPlan plan;
  plan.n_components = 15;
  plan.t_max = 200;
  plan.repetitions = options.repetitions;
  plan.seed = options.seed;
  plan.n_agents = 100;
  plan.degree = 19;

  const bool network_sweep = figure == Figure::fig3 || figure == Figure::fig4;
  if (network_sweep) {
    plan.k_values = {7};
    plan.strategies = {make_strategy(Rule::best_member, 3), make_strategy(Rule::conformity, 3)};
    std::vector<std::string> missing;
    for (const auto& label : standard_network_labels()) {
      auto spec = *network_spec_from_label(label, plan.n_agents, plan.degree);
      if (spec.kind == NetworkSpec::Kind::rewired) {
        const std::string path = options.networks_dir + "/" + label + ".edges";
        if (!std::filesystem::exists(path)) {
          missing.push_back(label);
          continue;
        }
        spec.source_path = path;
      }
      plan.networks.emplace_back(label, spec);
    }
    if (!missing.empty()) {
      std::string msg = "replicate: missing rewired network files under '" + options.networks_dir +
                        "'. Generate them first, e.g.:";
      for (const auto& label : missing) {
        const auto sep = label.find('_');
        msg += "\n  nksearch gen-net --metric " + label.substr(sep + 1) + " --dir " +
               label.substr(0, sep) + " --n 100 --d 19 --iters 50000 --restarts 10 --seed 1 --out " +
               options.networks_dir + "/" + label + ".edges";
      }
      throw std::runtime_error(msg);
    }
  } else {
    plan.k_values = {0, 7};
    plan.strategies = {make_strategy(Rule::best_member, 3), make_strategy(Rule::best_member, 9),
                       make_strategy(Rule::conformity, 3),  make_strategy(Rule::conformity, 9),
                       make_strategy(Rule::individual_only), make_strategy(Rule::random_copy)};
    plan.networks.emplace_back("complete", *network_spec_from_label("complete", plan.n_agents, plan.degree));
  }

  for (const auto& [name, spec] : plan.networks)
    for (int k : plan.k_values)
      for (const auto& strategy : plan.strategies)
        plan.cells.push_back({cell_name(name, strategy, k), name, strategy, k});
  return plan;
}

void fig1_checks(const std::vector<CellResult>& results, CheckBuilder& checks) {
  const std::string net = "complete";
  const double threshold = 0.999;

  struct Named {
    const char* label;
    Rule rule;
    int s;
  };
  const Named all[] = {{"best_member s=3", Rule::best_member, 3},
                       {"best_member s=9", Rule::best_member, 9},
                       {"conformity s=3", Rule::conformity, 3},
                       {"conformity s=9", Rule::conformity, 9},
                       {"individual", Rule::individual_only, 1},
                       {"random_copy", Rule::random_copy, 1}};

  for (const auto& strat : all) {
    const auto* cell = find_cell(results, net, strat.rule, strat.s, 0);
    const MeanSe final = cell->batch.final_payoff();
    checks.add(std::string("K=0 ") + strat.label + " final mean >= 0.999", final.mean >= threshold,
               fmt_pm2se(final));
  }

  // First-passage ordering: both best_member variants faster than both
  // conformity variants, which are faster than each pure baseline.
  auto fpt = [&](Rule rule, int s) {
    return find_cell(results, net, rule, s, 0)->batch.first_passage(threshold);
  };
  const MeanSe bm3 = fpt(Rule::best_member, 3), bm9 = fpt(Rule::best_member, 9);
  const MeanSe c3 = fpt(Rule::conformity, 3), c9 = fpt(Rule::conformity, 9);
  const MeanSe ind = fpt(Rule::individual_only, 1), rc = fpt(Rule::random_copy, 1);
  const std::pair<const char*, MeanSe> bms[] = {{"best_member s=3", bm3}, {"best_member s=9", bm9}};
  const std::pair<const char*, MeanSe> confs[] = {{"conformity s=3", c3}, {"conformity s=9", c9}};
  const std::pair<const char*, MeanSe> pures[] = {{"individual", ind}, {"random_copy", rc}};
  for (const auto& [bl, bv] : bms)
    for (const auto& [cl, cv] : confs)
      checks.add_disjoint(std::string("K=0 first-passage ") + bl + " < " + cl, bv, cv);
  for (const auto& [cl, cv] : confs)
    for (const auto& [pl, pv] : pures)
      checks.add_disjoint(std::string("K=0 first-passage ") + cl + " < " + pl, cv, pv);

  // Complex environment orderings at the final step.
  auto final7 = [&](Rule rule, int s) {
    return find_cell(results, net, rule, s, 7)->batch.final_payoff();
  };
  const MeanSe f_c3 = final7(Rule::conformity, 3), f_c9 = final7(Rule::conformity, 9);
  const MeanSe f_b3 = final7(Rule::best_member, 3), f_b9 = final7(Rule::best_member, 9);
  checks.add_gap("K=7 final conformity s=3 > conformity s=9", f_c3, f_c9);
  checks.add_gap("K=7 final conformity s=3 > best_member s=3", f_c3, f_b3);
  checks.add_gap("K=7 final best_member s=3 > best_member s=9", f_b3, f_b9);

  // Short-run crossover: best_member s=3 ahead somewhere in t <= 20.
  const auto& bm_series = find_cell(results, net, Rule::best_member, 3, 7)->batch.payoff_mean_by_t;
  const auto& cf_series = find_cell(results, net, Rule::conformity, 3, 7)->batch.payoff_mean_by_t;
  bool crossed = false;
  int crossed_t = -1;
  double bm_at = 0.0, cf_at = 0.0;
  for (int t = 1; t <= 20 && t <= static_cast<int>(bm_series.size()); ++t) {
    if (bm_series[static_cast<size_t>(t - 1)] > cf_series[static_cast<size_t>(t - 1)]) {
      crossed = true;
      crossed_t = t;
      bm_at = bm_series[static_cast<size_t>(t - 1)];
      cf_at = cf_series[static_cast<size_t>(t - 1)];
      break;
    }
  }
  checks.add("K=7 best_member s=3 > conformity s=3 at some t <= 20", crossed,
             crossed ? "t=" + std::to_string(crossed_t) + ", " + format_real(bm_at) + " vs " + format_real(cf_at)
                     : "no crossover in t <= 20");
}

void fig2_checks(const std::vector<CellResult>& results, CheckBuilder& checks) {
  const std::string net = "complete";
  const MeanSe bm9 = find_cell(results, net, Rule::best_member, 9, 7)->batch.final_unique();
  const MeanSe c3 = find_cell(results, net, Rule::conformity, 3, 7)->batch.final_unique();
  checks.add("K=7 final unique solutions best_member s=9 <= 1.1", bm9.mean <= 1.1, fmt_pm2se(bm9));
  checks.add_gap("K=7 final unique solutions conformity s=3 > best_member s=9", c3, bm9);
}

void fig3_checks(const std::vector<CellResult>& results, CheckBuilder& checks) {
  const MeanSe bm_lattice = find_cell(results, "lattice", Rule::best_member, 3, 7)->batch.final_payoff();
  const MeanSe bm_complete = find_cell(results, "complete", Rule::best_member, 3, 7)->batch.final_payoff();
  const MeanSe cf_lattice = find_cell(results, "lattice", Rule::conformity, 3, 7)->batch.final_payoff();
  const MeanSe cf_complete = find_cell(results, "complete", Rule::conformity, 3, 7)->batch.final_payoff();
  checks.add_gap("best_member s=3: lattice final > complete final", bm_lattice, bm_complete);
  checks.add_gap("conformity s=3: complete final > lattice final", cf_complete, cf_lattice);

  // Group comparison across all networks present.
  for (const Rule rule : {Rule::best_member, Rule::conformity}) {
    std::vector<double> eff, ineff;
    for (const auto& r : results) {
      if (r.cell.strategy.rule != rule) continue;
      (r.efficient ? eff : ineff).push_back(r.batch.final_payoff().mean);
    }
    if (eff.empty() || ineff.empty()) continue;
    const MeanSe eff_ms = mean_se(eff), ineff_ms = mean_se(ineff);
    const bool ineff_wins = rule == Rule::best_member;
    const MeanSe& hi = ineff_wins ? ineff_ms : eff_ms;
    const MeanSe& lo = ineff_wins ? eff_ms : ineff_ms;
    checks.add(std::string(rule_name(rule)) + " s=3: " + (ineff_wins ? "inefficient" : "efficient") +
                   " networks outperform on average",
               hi.mean > lo.mean, format_real(hi.mean) + " vs " + format_real(lo.mean));
  }
}

void fig4_checks(const std::vector<CellResult>& results, CheckBuilder& checks) {
  for (const Rule rule : {Rule::best_member, Rule::conformity}) {
    std::vector<double> diameters, finals;
    for (const auto& r : results) {
      if (r.cell.strategy.rule != rule) continue;
      diameters.push_back(static_cast<double>(r.diameter));
      finals.push_back(r.batch.final_payoff().mean);
    }
    const double r_value = pearson_r(diameters, finals);
    const bool positive = rule == Rule::best_member;
    const bool pass = positive ? r_value >= 0.5 : r_value <= -0.5;
    checks.add(std::string(rule_name(rule)) + " s=3: r(diameter, final mean) " +
                   (positive ? ">= +0.5" : "<= -0.5"),
               pass, "r=" + format_real(r_value));
  }
}

}  // namespace

ReplicateReport replicate_figure(Figure figure, const ReplicateOptions& options, std::ostream& out) {
  const ExperimentPlan plan = figure_plan(figure, options);

  RunPlanOptions run_options;
  run_options.out_dir = options.out_dir;
  run_options.threads = options.threads;
  run_options.progress = &out;
  const std::vector<CellResult> results = run_plan(plan, run_options);

  ReplicateReport report;
  report.figure = figure;
  CheckBuilder checks(report.checks, options.repetitions >= kMinRepsForChecks);
  switch (figure) {
    case Figure::fig1: fig1_checks(results, checks); break;
    case Figure::fig2: fig2_checks(results, checks); break;
    case Figure::fig3: fig3_checks(results, checks); break;
    case Figure::fig4: fig4_checks(results, checks); break;
  }
  for (const auto& line : report.checks) print_check(out, line);
  return report;
}

void analyze_summary(const std::vector<SummaryRow>& rows, std::ostream& out) {
  // Group rows by (strategy, s, K).
  std::map<std::string, std::vector<const SummaryRow*>> groups;
  for (const auto& row : rows) {
    const std::string key = row.strategy + " s=" + std::to_string(row.s) + " K=" + std::to_string(row.k);
    groups[key].push_back(&row);
  }
  for (const auto& [key, members] : groups) {
    out << key << " (" << members.size() << " networks)\n";
    std::vector<double> diameters, finals, eff, ineff;
    const SummaryRow* complete = nullptr;
    const SummaryRow* lattice = nullptr;
    for (const auto* row : members) {
      diameters.push_back(static_cast<double>(row->diameter));
      finals.push_back(row->final_mean);
      (row->efficient ? eff : ineff).push_back(row->final_mean);
      if (row->network == "complete") complete = row;
      if (row->network == "lattice") lattice = row;
    }
    if (diameters.size() >= 3) {
      try {
        const std::string r = format_real(pearson_r(diameters, finals));
        out << "  r(diameter, final_mean) = " << r << '\n';
      } catch (const std::domain_error&) {
        out << "  r(diameter, final_mean) undefined (constant input)\n";
      }
    }
    if (!eff.empty() && !ineff.empty()) {
      const double eff_mean = mean_se(eff).mean;
      const double ineff_mean = mean_se(ineff).mean;
      out << "  efficient mean " << format_real(eff_mean) << (eff_mean > ineff_mean ? " > " : " <= ")
          << "inefficient mean " << format_real(ineff_mean) << '\n';
    }
    if (complete && lattice) {
      out << "  complete " << format_real(complete->final_mean)
          << (complete->final_mean > lattice->final_mean ? " > " : " <= ") << "lattice "
          << format_real(lattice->final_mean) << '\n';
    }
  }
}

}  // namespace nksearch
