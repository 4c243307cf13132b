#include "nksearch/rewire.hpp"

#include <algorithm>
#include <stdexcept>

#include "nksearch/metrics.hpp"
#include "nksearch/parallel.hpp"

namespace nksearch {

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::closeness: return "closeness";
    case Metric::betweenness: return "betweenness";
    case Metric::clustering: return "clustering";
    case Metric::constraint: return "constraint";
  }
  return "?";
}

const char* direction_name(Direction d) {
  return d == Direction::minimize ? "min" : "max";
}

std::optional<Metric> metric_from_name(const std::string& name) {
  if (name == "closeness") return Metric::closeness;
  if (name == "betweenness") return Metric::betweenness;
  if (name == "clustering") return Metric::clustering;
  if (name == "constraint") return Metric::constraint;
  return std::nullopt;
}

std::optional<Direction> direction_from_name(const std::string& name) {
  if (name == "min") return Direction::minimize;
  if (name == "max") return Direction::maximize;
  return std::nullopt;
}

double graph_metric(const Graph& g, Metric metric) {
  switch (metric) {
    case Metric::closeness: return mean_closeness(g);
    case Metric::betweenness: return mean_betweenness(g);
    case Metric::clustering: return mean_clustering(g);
    case Metric::constraint: return mean_constraint(g);
  }
  throw std::invalid_argument("graph_metric: unknown metric");
}

namespace {

constexpr int kProposalTries = 100;

// Hill-climbing state for one restart. Clustering keeps per-node triangle
// counts up to date across swaps; the other measures are recomputed in full
// (closeness/betweenness BFS sweeps double as the connectivity check).
class Climber {
 public:
  Climber(Graph graph, Metric metric, Direction direction)
      : g_(std::move(graph)), metric_(metric), direction_(direction), eval_(g_.n()),
        edges_(g_.edge_list()) {
    if (metric_ == Metric::clustering) {
      tri_.assign(static_cast<size_t>(g_.n()), 0);
      coef_.assign(static_cast<size_t>(g_.n()), 0.0);
      for (int u = 0; u < g_.n(); ++u) {
        const auto& nbrs = g_.neighbors(u);
        const int d = static_cast<int>(nbrs.size());
        if (d < 2) continue;
        coef_[static_cast<size_t>(u)] = 2.0 / (static_cast<double>(d) * (d - 1));
        int closed = 0;
        for (size_t a = 0; a < nbrs.size(); ++a)
          for (size_t b = a + 1; b < nbrs.size(); ++b)
            if (g_.has_edge(nbrs[a], nbrs[b])) ++closed;
        tri_[static_cast<size_t>(u)] = closed;
        clustering_sum_ += coef_[static_cast<size_t>(u)] * closed;
      }
    }
    const auto start = evaluate();
    if (!start) throw std::invalid_argument("rewire_optimize: objective undefined on the start graph");
    objective_ = *start;
    trace_.push_back(objective_);
  }

  void climb(long long max_iters, Rng& rng) {
    for (long long iter = 0; iter < max_iters; ++iter) {
      const auto proposal = propose_swap(g_, edges_, rng, kProposalTries);
      if (!proposal) break;  // proposal-unavailable: nothing left to try
      apply(*proposal);
      const auto candidate = evaluate();
      bool accept = candidate.has_value() && improves(*candidate);
      // Clustering and constraint stay defined on disconnected graphs, so
      // connectivity needs its own check; the BFS-based measures already
      // reported nullopt if the swap cut the graph.
      if (accept && (metric_ == Metric::clustering || metric_ == Metric::constraint))
        accept = g_.is_connected();
      if (accept) {
        objective_ = *candidate;
        trace_.push_back(objective_);
        edges_[static_cast<size_t>(proposal->edge_index1)] = proposal->added1;
        edges_[static_cast<size_t>(proposal->edge_index2)] = proposal->added2;
        ++accepted_;
      } else {
        revert(*proposal);
      }
    }
  }

  RewireReport take_report() && {
    RewireReport report;
    report.graph = std::move(g_);
    report.objective = objective_;
    report.accepted = accepted_;
    report.accepted_trace = std::move(trace_);
    return report;
  }

 private:
  bool improves(double candidate) const {
    return direction_ == Direction::maximize ? candidate > objective_ : candidate < objective_;
  }

  std::optional<double> evaluate() {
    switch (metric_) {
      case Metric::closeness: return eval_.closeness(g_);
      case Metric::betweenness: return eval_.betweenness(g_);
      case Metric::clustering: return clustering_sum_ / g_.n();
      case Metric::constraint: return eval_.constraint(g_);
    }
    return std::nullopt;
  }

  // Triangle bookkeeping. Called with the edge (u,v) absent from g_ in
  // both cases: just before adding and just after removing.
  void tri_delta(int u, int v, int sign) {
    const auto& nu = g_.neighbors(u);
    const auto& nv = g_.neighbors(v);
    size_t a = 0, b = 0;
    int common = 0;
    while (a < nu.size() && b < nv.size()) {
      if (nu[a] < nv[b]) ++a;
      else if (nu[a] > nv[b]) ++b;
      else {
        const int q = nu[a];
        tri_[static_cast<size_t>(q)] += sign;
        clustering_sum_ += coef_[static_cast<size_t>(q)] * sign;
        ++common;
        ++a;
        ++b;
      }
    }
    tri_[static_cast<size_t>(u)] += sign * common;
    tri_[static_cast<size_t>(v)] += sign * common;
    clustering_sum_ += coef_[static_cast<size_t>(u)] * sign * common;
    clustering_sum_ += coef_[static_cast<size_t>(v)] * sign * common;
  }

  void remove_edge(int u, int v) {
    g_.remove_edge(u, v);
    if (metric_ == Metric::clustering) tri_delta(u, v, -1);
  }

  void add_edge(int u, int v) {
    if (metric_ == Metric::clustering) tri_delta(u, v, +1);
    g_.add_edge(u, v);
  }

  void apply(const EdgeSwap& s) {
    remove_edge(s.removed1.first, s.removed1.second);
    remove_edge(s.removed2.first, s.removed2.second);
    add_edge(s.added1.first, s.added1.second);
    add_edge(s.added2.first, s.added2.second);
  }

  void revert(const EdgeSwap& s) {
    remove_edge(s.added1.first, s.added1.second);
    remove_edge(s.added2.first, s.added2.second);
    add_edge(s.removed1.first, s.removed1.second);
    add_edge(s.removed2.first, s.removed2.second);
  }

  Graph g_;
  Metric metric_;
  Direction direction_;
  MetricEvaluator eval_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> tri_;
  std::vector<double> coef_;
  double clustering_sum_ = 0.0;
  double objective_ = 0.0;
  long long accepted_ = 0;
  std::vector<double> trace_;
};

}  // namespace

RewireReport rewire_optimize_report(const Graph& g0, Metric metric, Direction direction,
                                    long long max_iters, int restarts, Rng& rng, int threads) {
  if (!g0.is_connected()) throw std::invalid_argument("rewire_optimize: start graph must be connected");
  if (restarts < 1) throw std::invalid_argument("rewire_optimize: need at least one restart");
  if (max_iters < 0) throw std::invalid_argument("rewire_optimize: negative iteration budget");

  const int degree = g0.n() > 0 ? g0.degree(0) : 0;

  // Per-restart seeds are drawn up front so the result does not depend on
  // how restarts are scheduled across threads.
  std::vector<std::uint64_t> seeds(static_cast<size_t>(restarts));
  for (auto& s : seeds) s = rng();

  std::vector<std::optional<RewireReport>> reports(static_cast<size_t>(restarts));
  parallel_for_index(restarts, threads, [&](int r) {
    Rng restart_rng(seeds[static_cast<size_t>(r)]);
    Graph start = r == 0 ? g0 : random_regular(g0.n(), degree, restart_rng);
    Climber climber(std::move(start), metric, direction);
    climber.climb(max_iters, restart_rng);
    reports[static_cast<size_t>(r)] = std::move(climber).take_report();
  });

  int best = 0;
  for (int r = 1; r < restarts; ++r) {
    const double a = reports[static_cast<size_t>(r)]->objective;
    const double b = reports[static_cast<size_t>(best)]->objective;
    const bool better = direction == Direction::maximize ? a > b : a < b;
    if (better) best = r;
  }
  RewireReport result = std::move(*reports[static_cast<size_t>(best)]);
  result.best_restart = best;
  return result;
}

Graph rewire_optimize(const Graph& g0, Metric metric, Direction direction, long long max_iters,
                      int restarts, Rng& rng, int threads) {
  return rewire_optimize_report(g0, metric, direction, max_iters, restarts, rng, threads).graph;
}

std::string network_label(const NetworkSpec& spec) {
  switch (spec.kind) {
    case NetworkSpec::Kind::complete: return "complete";
    case NetworkSpec::Kind::lattice: return "lattice";
    case NetworkSpec::Kind::random_regular: return "random-regular";
    case NetworkSpec::Kind::rewired:
      return std::string(direction_name(*spec.direction)) + "_" + metric_name(*spec.metric);
  }
  return "?";
}

std::optional<NetworkSpec> network_spec_from_label(const std::string& label, int n_nodes, int degree) {
  NetworkSpec spec;
  spec.n_nodes = n_nodes;
  spec.degree = degree;
  if (label == "complete") {
    spec.kind = NetworkSpec::Kind::complete;
    return spec;
  }
  if (label == "lattice") {
    spec.kind = NetworkSpec::Kind::lattice;
    return spec;
  }
  if (label == "random-regular") {
    spec.kind = NetworkSpec::Kind::random_regular;
    return spec;
  }
  const auto sep = label.find('_');
  if (sep == std::string::npos) return std::nullopt;
  const auto dir = direction_from_name(label.substr(0, sep));
  const auto metric = metric_from_name(label.substr(sep + 1));
  if (!dir || !metric) return std::nullopt;
  spec.kind = NetworkSpec::Kind::rewired;
  spec.direction = dir;
  spec.metric = metric;
  return spec;
}

Graph realize_network(const NetworkSpec& spec, long long rewire_iters, int restarts, Rng& rng,
                      int threads) {
  if (!spec.source_path.empty()) return load_edge_list(spec.source_path);
  switch (spec.kind) {
    case NetworkSpec::Kind::complete:
      return complete_graph(spec.n_nodes);
    case NetworkSpec::Kind::lattice:
      return ring_lattice(spec.n_nodes, spec.degree);
    case NetworkSpec::Kind::random_regular:
      return random_regular(spec.n_nodes, spec.degree, rng);
    case NetworkSpec::Kind::rewired: {
      if (!spec.metric || !spec.direction)
        throw std::invalid_argument("realize_network: rewired spec needs metric and direction");
      Graph start = random_regular(spec.n_nodes, spec.degree, rng);
      return rewire_optimize(start, *spec.metric, *spec.direction, rewire_iters, restarts, rng, threads);
    }
  }
  throw std::invalid_argument("realize_network: unknown kind");
}

}  // namespace nksearch
