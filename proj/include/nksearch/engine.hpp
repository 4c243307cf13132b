#pragma once

#include <cstdint>
#include <vector>

#include "nksearch/graph.hpp"
#include "nksearch/landscape.hpp"
#include "nksearch/strategy.hpp"

namespace nksearch {

// Stream tags for the documented seed derivation (rng.hpp):
//   rep_seed       = derive(base_seed, kRepStreamTag, rep)
//   landscape seed = derive(rep_seed, kLandscapeStreamTag)
//   init stream    = derive(rep_seed, kInitStreamTag)
//   agent stream   = derive(rep_seed, kStepStreamTag, t, agent)  [t = 1-based]
inline constexpr std::uint64_t kRepStreamTag = 0x5245ull;
inline constexpr std::uint64_t kLandscapeStreamTag = 0x4C414Eull;
inline constexpr std::uint64_t kInitStreamTag = 0x494E49ull;
inline constexpr std::uint64_t kStepStreamTag = 0x535445ull;

// One experiment cell: population, task, strategy and run lengths.
struct SimConfig {
  int n_agents = 100;
  int n_components = 15;
  int k_interdependence = 7;
  StrategySpec strategy;
  int t_max = 200;
  int repetitions = 1;
  std::uint64_t base_seed = 0;
  int threads = 0;  // run_batch workers, 0 = hardware count
};

struct PopulationState {
  std::vector<Solution> solutions;
  std::vector<double> payoffs;  // cached transformed payoffs
  int t = 0;
};

// Per-step records for t = 1..t_max.
struct TimeSeries {
  std::vector<double> mean_payoff;
  std::vector<double> max_payoff;
  std::vector<int> unique_solutions;
};

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_se(const std::vector<double>& values);

struct BatchResult {
  std::vector<TimeSeries> per_rep;
  // Across-repetition aggregates per step.
  std::vector<double> payoff_mean_by_t;
  std::vector<double> payoff_se_by_t;
  std::vector<double> unique_mean_by_t;
  std::vector<double> unique_se_by_t;
  // Final-step population-mean payoff of every repetition.
  std::vector<double> final_mean_payoffs;

  MeanSe final_payoff() const;
  MeanSe final_unique() const;
  // Mean first step whose population mean payoff reaches `threshold`;
  // repetitions that never reach it count as t_max + 1.
  MeanSe first_passage(double threshold) const;
};

// Independent uniform random starting solutions, payoffs cached.
PopulationState init_population(const NkLandscape& landscape, int n_agents, Rng& rng);

// One synchronous step: every agent decides against the time-t snapshot,
// all adoptions commit together. Per agent: individual_only hill-climbs;
// otherwise sample + decision rule, adopt the candidate when its payoff is
// strictly higher, else hill-climb — except random_copy, which never
// learns individually. Agent randomness comes from streams derived as
// (rep_seed, step-tag, t+1, agent), so results are schedule-independent.
void step(PopulationState& state, const NkLandscape& landscape, const Graph& g,
          const StrategySpec& strategy, std::uint64_t rep_seed);

// t_max steps from a fresh population; records after every step.
TimeSeries run(const SimConfig& config, const NkLandscape& landscape, const Graph& g,
               std::uint64_t rep_seed);

// Repetition r draws rep_seed = derive(base_seed, rep-tag, r), builds a
// fresh landscape, reuses the fixed graph. Deterministic for a given
// base_seed regardless of thread count.
BatchResult run_batch(const SimConfig& config, const Graph& g);

}  // namespace nksearch
