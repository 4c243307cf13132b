#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nksearch/engine.hpp"
#include "nksearch/experiment.hpp"
#include "nksearch/metrics.hpp"
#include "nksearch/rewire.hpp"

namespace py = pybind11;
using namespace nksearch;

namespace {

Rule rule_arg(const std::string& name) {
  const auto rule = rule_from_name(name);
  if (!rule) throw std::invalid_argument("unknown rule '" + name + "'");
  return *rule;
}

StrategySpec strategy_arg(const std::string& rule, int s, const std::string& tie) {
  StrategySpec spec;
  spec.rule = rule_arg(rule);
  spec.sample_size = s;
  if (tie == "modes") spec.conformity_tie = ConformityTie::modes;
  else if (tie == "fallback") spec.conformity_tie = ConformityTie::fallback;
  else throw std::invalid_argument("conformity_tie must be 'modes' or 'fallback'");
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Social-learning search on NK landscapes over networks";

  py::class_<Solution>(m, "Solution")
      .def(py::init([](const std::vector<int>& bits) { return Solution::from_bits(bits); }), py::arg("bits"))
      .def_property_readonly("bits", &Solution::to_bits)
      .def("__len__", &Solution::size)
      .def("__eq__", [](const Solution& a, const Solution& b) { return a == b; })
      .def("__repr__", [](const Solution& s) { return "Solution('" + s.to_string() + "')"; });

  py::class_<NkLandscape>(m, "NkLandscape")
      .def(py::init<int, int, std::uint64_t>(), py::arg("n"), py::arg("k"), py::arg("seed"))
      .def_property_readonly("n", &NkLandscape::n)
      .def_property_readonly("k", &NkLandscape::k)
      .def_property_readonly("max_raw_payoff", &NkLandscape::max_raw_payoff)
      .def("raw_payoff", &NkLandscape::raw_payoff, py::arg("solution"))
      .def("payoff", &NkLandscape::payoff, py::arg("solution"))
      .def("global_max", &NkLandscape::global_max)
      .def("count_local_optima", &NkLandscape::count_local_optima)
      .def("dependencies", &NkLandscape::dependencies, py::arg("component"))
      .def("contribution_table", &NkLandscape::contribution_table, py::arg("component"))
      .def("dump", &NkLandscape::dump_string);

  py::class_<Graph>(m, "Graph")
      .def(py::init<int>(), py::arg("n"))
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("degree", &Graph::degree, py::arg("node"))
      .def("neighbors", &Graph::neighbors, py::arg("node"))
      .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
      .def("add_edge", &Graph::add_edge, py::arg("u"), py::arg("v"))
      .def("edge_list", &Graph::edge_list)
      .def("degree_sequence", &Graph::degree_sequence)
      .def("is_connected", &Graph::is_connected)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; });

  m.def("complete_graph", &complete_graph, py::arg("n"));
  m.def("ring_lattice", &ring_lattice, py::arg("n"), py::arg("d"));
  m.def(
      "random_regular",
      [](int n, int d, std::uint64_t seed) {
        Rng rng(seed);
        return random_regular(n, d, rng);
      },
      py::arg("n"), py::arg("d"), py::arg("seed"));

  m.def("mean_closeness", &mean_closeness, py::arg("graph"));
  m.def("mean_betweenness", &mean_betweenness, py::arg("graph"));
  m.def("mean_clustering", &mean_clustering, py::arg("graph"));
  m.def("mean_constraint", &mean_constraint, py::arg("graph"));
  m.def("diameter", &diameter, py::arg("graph"));

  m.def(
      "rewire_optimize",
      [](const Graph& g0, const std::string& metric, const std::string& direction, long long max_iters,
         int restarts, std::uint64_t seed, int threads) {
        const auto m_ = metric_from_name(metric);
        const auto d_ = direction_from_name(direction);
        if (!m_) throw std::invalid_argument("unknown metric '" + metric + "'");
        if (!d_) throw std::invalid_argument("direction must be 'min' or 'max'");
        Rng rng(seed);
        return rewire_optimize(g0, *m_, *d_, max_iters, restarts, rng, threads);
      },
      py::arg("g0"), py::arg("metric"), py::arg("direction"), py::arg("max_iters"), py::arg("restarts"),
      py::arg("seed"), py::arg("threads") = 0,
      "Degree-preserving hill climb on the chosen node-mean measure");

  m.def("save_edge_list", &save_edge_list, py::arg("graph"), py::arg("path"), py::arg("kind") = "custom");
  m.def("load_edge_list", &load_edge_list, py::arg("path"));

  m.def(
      "individual_step",
      [](const NkLandscape& landscape, const Solution& sol, std::uint64_t seed) {
        Rng rng(seed);
        return individual_step(landscape, sol, rng);
      },
      py::arg("landscape"), py::arg("solution"), py::arg("seed"));

  py::class_<TimeSeries>(m, "TimeSeries")
      .def_readonly("mean_payoff", &TimeSeries::mean_payoff)
      .def_readonly("max_payoff", &TimeSeries::max_payoff)
      .def_readonly("unique_solutions", &TimeSeries::unique_solutions);

  py::class_<BatchResult>(m, "BatchResult")
      .def_readonly("per_rep", &BatchResult::per_rep)
      .def_readonly("payoff_mean_by_t", &BatchResult::payoff_mean_by_t)
      .def_readonly("payoff_se_by_t", &BatchResult::payoff_se_by_t)
      .def_readonly("unique_mean_by_t", &BatchResult::unique_mean_by_t)
      .def_readonly("unique_se_by_t", &BatchResult::unique_se_by_t)
      .def_readonly("final_mean_payoffs", &BatchResult::final_mean_payoffs)
      .def("final_payoff_mean", [](const BatchResult& b) { return b.final_payoff().mean; })
      .def("final_payoff_se", [](const BatchResult& b) { return b.final_payoff().se; });

  m.def(
      "run",
      [](int n_agents, int n, int k, const Graph& graph, const std::string& rule, int s, int t_max,
         std::uint64_t seed, const std::string& conformity_tie) {
        SimConfig config;
        config.n_agents = n_agents;
        config.n_components = n;
        config.k_interdependence = k;
        config.strategy = strategy_arg(rule, s, conformity_tie);
        config.t_max = t_max;
        config.repetitions = 1;
        config.base_seed = seed;
        const NkLandscape landscape(n, k, derive(seed, kLandscapeStreamTag));
        return nksearch::run(config, landscape, graph, seed);
      },
      py::arg("n_agents"), py::arg("n"), py::arg("k"), py::arg("graph"), py::arg("rule"), py::arg("s"),
      py::arg("t_max"), py::arg("seed"), py::arg("conformity_tie") = "modes",
      "Single repetition on a fresh landscape derived from the seed");

  m.def(
      "run_batch",
      [](int n_agents, int n, int k, const Graph& graph, const std::string& rule, int s, int t_max,
         int repetitions, std::uint64_t base_seed, int threads, const std::string& conformity_tie) {
        SimConfig config;
        config.n_agents = n_agents;
        config.n_components = n;
        config.k_interdependence = k;
        config.strategy = strategy_arg(rule, s, conformity_tie);
        config.t_max = t_max;
        config.repetitions = repetitions;
        config.base_seed = base_seed;
        config.threads = threads;
        return run_batch(config, graph);
      },
      py::arg("n_agents"), py::arg("n"), py::arg("k"), py::arg("graph"), py::arg("rule"), py::arg("s"),
      py::arg("t_max"), py::arg("repetitions"), py::arg("base_seed"), py::arg("threads") = 0,
      py::arg("conformity_tie") = "modes");

  m.def("pearson_r", &pearson_r, py::arg("x"), py::arg("y"));
}
