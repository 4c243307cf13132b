#include "nksearch/strategy.hpp"

#include <algorithm>
#include <stdexcept>

namespace nksearch {

const char* rule_name(Rule rule) {
  switch (rule) {
    case Rule::best_member: return "best_member";
    case Rule::conformity: return "conformity";
    case Rule::random_copy: return "random_copy";
    case Rule::individual_only: return "individual";
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
  if (name == "best_member") return Rule::best_member;
  if (name == "conformity") return Rule::conformity;
  if (name == "random_copy") return Rule::random_copy;
  if (name == "individual") return Rule::individual_only;
  return std::nullopt;
}

std::vector<int> sample_neighbors(const Graph& g, int agent, int s, Rng& rng) {
  if (s < 1) throw std::invalid_argument("sample_neighbors: sample size must be >= 1");
  const auto& nbrs = g.neighbors(agent);
  const int d = static_cast<int>(nbrs.size());
  std::vector<int> out;
  if (d == 0) return out;  // no-neighbors signal
  const int take = std::min(s, d);
  out.reserve(static_cast<size_t>(take));
  if (take == d) {
    out.assign(nbrs.begin(), nbrs.end());
    return out;
  }
  // Floyd's subset sampling: uniform over subsets, O(take) index draws.
  std::vector<int> picked;
  picked.reserve(static_cast<size_t>(take));
  for (int j = d - take; j < d; ++j) {
    const int t = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(j) + 1));
    if (std::find(picked.begin(), picked.end(), t) == picked.end()) picked.push_back(t);
    else picked.push_back(j);
  }
  for (int idx : picked) out.push_back(nbrs[static_cast<size_t>(idx)]);
  return out;
}

SocialOutcome decide_best_member(const std::vector<Observation>& sample, Rng& rng) {
  if (sample.empty()) throw std::invalid_argument("decide_best_member: sample must be nonempty");
  size_t pick = 0;
  int ties = 1;
  for (size_t i = 1; i < sample.size(); ++i) {
    if (sample[i].payoff > sample[pick].payoff) {
      pick = i;
      ties = 1;
    } else if (sample[i].payoff == sample[pick].payoff) {
      // Reservoir draw keeps the choice uniform over all maximizers.
      ++ties;
      if (uniform_below(rng, static_cast<std::uint64_t>(ties)) == 0) pick = i;
    }
  }
  return SocialOutcome{sample[pick]};
}

SocialOutcome decide_conformity(const std::vector<Observation>& sample, Rng& rng, ConformityTie tie) {
  if (sample.empty()) throw std::invalid_argument("decide_conformity: sample must be nonempty");

  struct Count {
    Observation obs;
    int freq = 0;
  };
  std::vector<Count> counts;
  counts.reserve(sample.size());
  for (const auto& obs : sample) {
    bool found = false;
    for (auto& c : counts) {
      if (c.obs.solution == obs.solution) {
        ++c.freq;
        found = true;
        break;
      }
    }
    if (!found) counts.push_back({obs, 1});
  }

  int max_freq = 0;
  int modal = 0;
  for (const auto& c : counts) {
    if (c.freq > max_freq) {
      max_freq = c.freq;
      modal = 1;
    } else if (c.freq == max_freq) {
      ++modal;
    }
  }

  // No mode stands out: several distinct solutions, all equally frequent.
  if (counts.size() >= 2 && max_freq * counts.size() == sample.size()) return SocialOutcome{};
  if (tie == ConformityTie::fallback && modal > 1) return SocialOutcome{};

  int skip = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(modal)));
  for (const auto& c : counts) {
    if (c.freq == max_freq && skip-- == 0) return SocialOutcome{c.obs};
  }
  throw std::logic_error("decide_conformity: modal pick out of range");
}

SocialOutcome decide_random_copy(const std::vector<Observation>& sample) {
  if (sample.size() != 1) throw std::invalid_argument("decide_random_copy: sample must hold exactly one entry");
  return SocialOutcome{sample.front()};
}

Solution individual_step_at(const NkLandscape& landscape, const Solution& sol, int bit) {
  if (bit < 0 || bit >= sol.size()) throw std::invalid_argument("individual_step_at: bit index out of range");
  Solution flipped = sol;
  flipped.flip(bit);
  return landscape.payoff(flipped) > landscape.payoff(sol) ? flipped : sol;
}

Solution individual_step(const NkLandscape& landscape, const Solution& sol, Rng& rng) {
  if (sol.size() != landscape.n()) throw std::invalid_argument("individual_step: solution length does not match N");
  const int bit = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(sol.size())));
  return individual_step_at(landscape, sol, bit);
}

}  // namespace nksearch
