#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nksearch/graph.hpp"
#include "nksearch/rng.hpp"

namespace nksearch {

enum class Metric { closeness, betweenness, clustering, constraint };
enum class Direction { minimize, maximize };

const char* metric_name(Metric m);
const char* direction_name(Direction d);
std::optional<Metric> metric_from_name(const std::string& name);
std::optional<Direction> direction_from_name(const std::string& name);

// Node-mean of the requested measure; throws where the measure is undefined.
double graph_metric(const Graph& g, Metric metric);

struct RewireReport {
  Graph graph;
  double objective = 0.0;
  int best_restart = 0;
  long long accepted = 0;
  // Objective after every accepted swap of the winning restart (the start
  // value first). Strictly monotone in the requested direction.
  std::vector<double> accepted_trace;
};

// Degree-preserving stochastic hill climb: proposes double edge swaps and
// accepts one only when it keeps the graph connected and strictly improves
// the node-mean of the chosen measure. Restart 0 climbs from g0; every
// further restart begins from a fresh random-regular graph with the same
// (n, d). Best restart wins, ties to the lowest index. Deterministic for a
// given rng state regardless of threads.
RewireReport rewire_optimize_report(const Graph& g0, Metric metric, Direction direction,
                                    long long max_iters, int restarts, Rng& rng, int threads = 0);
Graph rewire_optimize(const Graph& g0, Metric metric, Direction direction,
                      long long max_iters, int restarts, Rng& rng, int threads = 0);

// One experiment topology. kind=rewired additionally carries the measure
// and direction; a non-empty source_path short-circuits generation by
// loading a saved edge list.
struct NetworkSpec {
  enum class Kind { complete, lattice, random_regular, rewired };
  Kind kind = Kind::complete;
  std::optional<Metric> metric;
  std::optional<Direction> direction;
  int n_nodes = 100;
  int degree = 19;
  std::string source_path;
};

// Canonical labels: "complete", "lattice", "random-regular",
// "min_clustering", "max_betweenness", ...
std::string network_label(const NetworkSpec& spec);
std::optional<NetworkSpec> network_spec_from_label(const std::string& label, int n_nodes, int degree);

// Validates feasibility (parity, degree bounds) and builds or loads the
// graph. rewire_iters/restarts apply to kind=rewired without a source path.
Graph realize_network(const NetworkSpec& spec, long long rewire_iters, int restarts, Rng& rng,
                      int threads = 0);

}  // namespace nksearch
