#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nksearch/graph.hpp"
#include "nksearch/landscape.hpp"
#include "nksearch/rng.hpp"

namespace nksearch {

enum class Rule { best_member, conformity, random_copy, individual_only };

// Behavior of conformity when several solutions tie for the mode but the
// frequencies are not all equal (e.g. counts 2-2-1): pick uniformly among
// the modal solutions, or fall back to individual learning on any tie.
enum class ConformityTie { modes, fallback };

// Configuration names are the exact strings best_member / conformity /
// random_copy / individual.
const char* rule_name(Rule rule);
std::optional<Rule> rule_from_name(const std::string& name);

struct StrategySpec {
  Rule rule = Rule::best_member;
  int sample_size = 3;  // ignored by random_copy (uses 1) and individual_only
  ConformityTie conformity_tie = ConformityTie::modes;
};

// One observed neighbor: their solution and its (cached) payoff.
struct Observation {
  Solution solution;
  double payoff = 0.0;
};

// Result of a decision rule: either a solution worth comparing against the
// agent's own, or the signal to fall back to individual learning.
struct SocialOutcome {
  std::optional<Observation> candidate;
  bool fallback() const { return !candidate.has_value(); }
};

// Uniform sample without replacement of min(s, degree) neighbors of agent;
// never contains the agent. Empty when the agent is isolated (the caller
// falls back to individual learning).
std::vector<int> sample_neighbors(const Graph& g, int agent, int s, Rng& rng);

// Highest-payoff entry, ties broken uniformly at random.
SocialOutcome decide_best_member(const std::vector<Observation>& sample, Rng& rng);

// Most frequent solution in the sample. When two or more distinct
// solutions are all equally frequent there is no mode and the outcome is
// the individual-learning fallback; partial modal ties follow `tie`.
SocialOutcome decide_conformity(const std::vector<Observation>& sample, Rng& rng,
                                ConformityTie tie = ConformityTie::modes);

// Pure social learning: the sampled entry is always the candidate (the
// engine's strictly-better comparison decides adoption; no fallback).
SocialOutcome decide_random_copy(const std::vector<Observation>& sample);

// Hill climb: flip one uniformly chosen bit, keep it only on a strict
// payoff improvement.
Solution individual_step(const NkLandscape& landscape, const Solution& sol, Rng& rng);
// Deterministic core of the above with the flipped bit given explicitly.
Solution individual_step_at(const NkLandscape& landscape, const Solution& sol, int bit);

}  // namespace nksearch
