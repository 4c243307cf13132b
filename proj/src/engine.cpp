#include "nksearch/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nksearch/parallel.hpp"

namespace nksearch {

namespace {

int count_unique(const std::vector<Solution>& solutions) {
  std::vector<std::uint32_t> packed;
  packed.reserve(solutions.size());
  for (const auto& s : solutions) packed.push_back(s.packed());
  std::sort(packed.begin(), packed.end());
  return static_cast<int>(std::unique(packed.begin(), packed.end()) - packed.begin());
}

void validate_config(const SimConfig& config, const Graph& g) {
  if (config.n_agents != g.n())
    throw std::invalid_argument("SimConfig: n_agents must equal the network node count");
  if (config.t_max < 1) throw std::invalid_argument("SimConfig: t_max must be >= 1");
  if (config.repetitions < 1) throw std::invalid_argument("SimConfig: repetitions must be >= 1");
  const Rule rule = config.strategy.rule;
  if (rule == Rule::best_member || rule == Rule::conformity) {
    if (config.strategy.sample_size < 1 || config.strategy.sample_size > config.n_agents - 1)
      throw std::invalid_argument("SimConfig: sample size must lie in [1, n_agents - 1]");
  }
}

}  // namespace

MeanSe mean_se(const std::vector<double>& values) {
  MeanSe out;
  const size_t n = values.size();
  if (n == 0) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(n);
  if (n < 2) return out;
  double ss = 0.0;
  for (double v : values) {
    const double d = v - out.mean;
    ss += d * d;
  }
  out.se = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  return out;
}

MeanSe BatchResult::final_payoff() const { return mean_se(final_mean_payoffs); }

MeanSe BatchResult::final_unique() const {
  std::vector<double> finals;
  finals.reserve(per_rep.size());
  for (const auto& ts : per_rep) finals.push_back(static_cast<double>(ts.unique_solutions.back()));
  return mean_se(finals);
}

MeanSe BatchResult::first_passage(double threshold) const {
  std::vector<double> times;
  times.reserve(per_rep.size());
  for (const auto& ts : per_rep) {
    const int t_max = static_cast<int>(ts.mean_payoff.size());
    int hit = t_max + 1;
    for (int t = 1; t <= t_max; ++t) {
      if (ts.mean_payoff[static_cast<size_t>(t - 1)] >= threshold) {
        hit = t;
        break;
      }
    }
    times.push_back(static_cast<double>(hit));
  }
  return mean_se(times);
}

PopulationState init_population(const NkLandscape& landscape, int n_agents, Rng& rng) {
  if (n_agents < 1) throw std::invalid_argument("init_population: need at least one agent");
  PopulationState state;
  state.solutions.reserve(static_cast<size_t>(n_agents));
  state.payoffs.reserve(static_cast<size_t>(n_agents));
  for (int a = 0; a < n_agents; ++a) {
    state.solutions.push_back(Solution::random(landscape.n(), rng));
    state.payoffs.push_back(landscape.payoff(state.solutions.back()));
  }
  state.t = 0;
  return state;
}

void step(PopulationState& state, const NkLandscape& landscape, const Graph& g,
          const StrategySpec& strategy, std::uint64_t rep_seed) {
  const int n = static_cast<int>(state.solutions.size());
  const int t_next = state.t + 1;
  std::vector<Solution> next_solutions = state.solutions;
  std::vector<double> next_payoffs = state.payoffs;

  std::vector<Observation> sample;
  sample.reserve(static_cast<size_t>(std::max(1, strategy.sample_size)));

  for (int a = 0; a < n; ++a) {
    Rng rng(derive(rep_seed, kStepStreamTag, static_cast<std::uint64_t>(t_next), static_cast<std::uint64_t>(a)));

    auto learn_individually = [&]() {
      const Solution moved = individual_step(landscape, state.solutions[static_cast<size_t>(a)], rng);
      if (!(moved == state.solutions[static_cast<size_t>(a)])) {
        next_solutions[static_cast<size_t>(a)] = moved;
        next_payoffs[static_cast<size_t>(a)] = landscape.payoff(moved);
      }
    };

    if (strategy.rule == Rule::individual_only) {
      learn_individually();
      continue;
    }

    const int s_eff = strategy.rule == Rule::random_copy ? 1 : strategy.sample_size;
    const std::vector<int> neighbors = sample_neighbors(g, a, s_eff, rng);
    if (neighbors.empty()) {
      if (strategy.rule != Rule::random_copy) learn_individually();
      continue;
    }

    sample.clear();
    for (int nb : neighbors)
      sample.push_back({state.solutions[static_cast<size_t>(nb)], state.payoffs[static_cast<size_t>(nb)]});

    SocialOutcome outcome;
    switch (strategy.rule) {
      case Rule::best_member: outcome = decide_best_member(sample, rng); break;
      case Rule::conformity: outcome = decide_conformity(sample, rng, strategy.conformity_tie); break;
      case Rule::random_copy: outcome = decide_random_copy(sample); break;
      case Rule::individual_only: break;  // unreachable
    }

    if (outcome.candidate && outcome.candidate->payoff > state.payoffs[static_cast<size_t>(a)]) {
      next_solutions[static_cast<size_t>(a)] = outcome.candidate->solution;
      next_payoffs[static_cast<size_t>(a)] = outcome.candidate->payoff;
    } else if (strategy.rule != Rule::random_copy) {
      learn_individually();
    }
  }

  state.solutions = std::move(next_solutions);
  state.payoffs = std::move(next_payoffs);
  state.t = t_next;
}

TimeSeries run(const SimConfig& config, const NkLandscape& landscape, const Graph& g,
               std::uint64_t rep_seed) {
  validate_config(config, g);
  if (landscape.n() != config.n_components)
    throw std::invalid_argument("run: landscape size does not match the configuration");

  Rng init_rng(derive(rep_seed, kInitStreamTag));
  PopulationState state = init_population(landscape, config.n_agents, init_rng);

  TimeSeries series;
  series.mean_payoff.reserve(static_cast<size_t>(config.t_max));
  series.max_payoff.reserve(static_cast<size_t>(config.t_max));
  series.unique_solutions.reserve(static_cast<size_t>(config.t_max));

  for (int t = 1; t <= config.t_max; ++t) {
    step(state, landscape, g, config.strategy, rep_seed);
    double sum = 0.0;
    double best = 0.0;
    for (double p : state.payoffs) {
      sum += p;
      best = std::max(best, p);
    }
    series.mean_payoff.push_back(sum / config.n_agents);
    series.max_payoff.push_back(best);
    series.unique_solutions.push_back(count_unique(state.solutions));
  }
  return series;
}

BatchResult run_batch(const SimConfig& config, const Graph& g) {
  validate_config(config, g);

  BatchResult result;
  result.per_rep.resize(static_cast<size_t>(config.repetitions));

  parallel_for_index(config.repetitions, config.threads, [&](int r) {
    const std::uint64_t rep_seed = derive(config.base_seed, kRepStreamTag, static_cast<std::uint64_t>(r));
    const NkLandscape landscape(config.n_components, config.k_interdependence,
                                derive(rep_seed, kLandscapeStreamTag));
    result.per_rep[static_cast<size_t>(r)] = run(config, landscape, g, rep_seed);
  });

  const int t_max = config.t_max;
  result.payoff_mean_by_t.resize(static_cast<size_t>(t_max));
  result.payoff_se_by_t.resize(static_cast<size_t>(t_max));
  result.unique_mean_by_t.resize(static_cast<size_t>(t_max));
  result.unique_se_by_t.resize(static_cast<size_t>(t_max));

  std::vector<double> column(static_cast<size_t>(config.repetitions));
  for (int t = 0; t < t_max; ++t) {
    for (int r = 0; r < config.repetitions; ++r)
      column[static_cast<size_t>(r)] = result.per_rep[static_cast<size_t>(r)].mean_payoff[static_cast<size_t>(t)];
    const MeanSe payoff = mean_se(column);
    result.payoff_mean_by_t[static_cast<size_t>(t)] = payoff.mean;
    result.payoff_se_by_t[static_cast<size_t>(t)] = payoff.se;
    for (int r = 0; r < config.repetitions; ++r)
      column[static_cast<size_t>(r)] =
          static_cast<double>(result.per_rep[static_cast<size_t>(r)].unique_solutions[static_cast<size_t>(t)]);
    const MeanSe unique = mean_se(column);
    result.unique_mean_by_t[static_cast<size_t>(t)] = unique.mean;
    result.unique_se_by_t[static_cast<size_t>(t)] = unique.se;
  }

  result.final_mean_payoffs.reserve(static_cast<size_t>(config.repetitions));
  for (const auto& ts : result.per_rep) result.final_mean_payoffs.push_back(ts.mean_payoff.back());
  return result;
}

}  // namespace nksearch
