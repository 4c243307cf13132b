#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "nksearch/strategy.hpp"
#include "oracles.hpp"

using namespace nksearch;

namespace {

Observation obs(const Solution& s, double payoff) { return Observation{s, payoff}; }

Solution sol(std::initializer_list<int> bits) { return Solution::from_bits(std::vector<int>(bits)); }

}  // namespace

TEST_CASE("rule names are the configuration strings") {
  CHECK(std::string(rule_name(Rule::best_member)) == "best_member");
  CHECK(std::string(rule_name(Rule::conformity)) == "conformity");
  CHECK(std::string(rule_name(Rule::random_copy)) == "random_copy");
  CHECK(std::string(rule_name(Rule::individual_only)) == "individual");
  CHECK(rule_from_name("best_member") == Rule::best_member);
  CHECK_FALSE(rule_from_name("bestmember").has_value());
}

TEST_CASE("sample_neighbors basics") {
  const Graph g = complete_graph(100);
  Rng rng(42);
  const auto sample = sample_neighbors(g, 17, 9, rng);
  CHECK(sample.size() == 9);
  std::set<int> unique(sample.begin(), sample.end());
  CHECK(unique.size() == 9);
  CHECK(unique.count(17) == 0);
  for (int v : sample) CHECK(g.has_edge(17, v));
}

TEST_CASE("sample_neighbors clamps to the neighborhood") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  Rng rng(7);
  const auto sample = sample_neighbors(g, 0, 3, rng);
  CHECK(std::set<int>(sample.begin(), sample.end()) == std::set<int>{1, 2});
  CHECK(sample_neighbors(g, 3, 3, rng).empty());  // isolated: no-neighbors signal
}

TEST_CASE("sample_neighbors inclusion frequencies are hypergeometric-uniform") {
  const Graph g = ring_lattice(100, 19);
  Rng rng(555);
  std::map<int, int> hits;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i)
    for (int v : sample_neighbors(g, 0, 3, rng)) ++hits[v];
  // Inclusion ~ Binomial(10000, 3/19): mean 1578.9, sd 36.5; allow 3 sd.
  CHECK(hits.size() == 19);
  for (const auto& [v, count] : hits) {
    CHECK(count > 1579 - 110);
    CHECK(count < 1579 + 110);
  }
}

TEST_CASE("decide_best_member picks the payoff argmax") {
  Rng rng(1);
  const auto outcome = decide_best_member(
      {obs(sol({0, 0}), 0.2), obs(sol({1, 0}), 0.9), obs(sol({0, 1}), 0.5)}, rng);
  REQUIRE_FALSE(outcome.fallback());
  CHECK(outcome.candidate->solution == sol({1, 0}));
  CHECK(outcome.candidate->payoff == 0.9);

  const auto single = decide_best_member({obs(sol({1, 1}), 0.4)}, rng);
  CHECK(single.candidate->solution == sol({1, 1}));

  CHECK_THROWS_AS(decide_best_member({}, rng), std::invalid_argument);
}

TEST_CASE("decide_best_member breaks payoff ties uniformly") {
  Rng rng(2024);
  int first = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    const auto outcome =
        decide_best_member({obs(sol({0, 0}), 0.7), obs(sol({1, 1}), 0.7), obs(sol({0, 1}), 0.1)}, rng);
    if (outcome.candidate->solution == sol({0, 0})) ++first;
  }
  // Binomial(10000, 1/2): sd 50; allow 3 sd.
  CHECK(first > 5000 - 150);
  CHECK(first < 5000 + 150);
}

TEST_CASE("decide_conformity") {
  Rng rng(3);
  const Solution a = sol({0, 0}), b = sol({1, 0}), c = sol({0, 1});

  SUBCASE("unique mode wins") {
    const auto outcome = decide_conformity({obs(a, 0.1), obs(a, 0.1), obs(b, 0.9)}, rng);
    REQUIRE_FALSE(outcome.fallback());
    CHECK(outcome.candidate->solution == a);
  }
  SUBCASE("all distinct and equally frequent falls back") {
    CHECK(decide_conformity({obs(a, 0.1), obs(b, 0.5), obs(c, 0.9)}, rng).fallback());
    CHECK(decide_conformity({obs(a, 0.1), obs(a, 0.1), obs(b, 0.5), obs(b, 0.5)}, rng).fallback());
  }
  SUBCASE("unanimous sample is a candidate, not a fallback") {
    const auto outcome = decide_conformity({obs(a, 0.1), obs(a, 0.1), obs(a, 0.1)}, rng);
    REQUIRE_FALSE(outcome.fallback());
    CHECK(outcome.candidate->solution == a);
  }
  SUBCASE("partial modal tie splits uniformly under the modes rule") {
    int picked_a = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
      const auto outcome = decide_conformity(
          {obs(a, 0.1), obs(a, 0.1), obs(b, 0.5), obs(b, 0.5), obs(c, 0.9)}, rng, ConformityTie::modes);
      REQUIRE_FALSE(outcome.fallback());
      if (outcome.candidate->solution == a) ++picked_a;
      else CHECK(outcome.candidate->solution == b);
    }
    CHECK(picked_a > 5000 - 150);
    CHECK(picked_a < 5000 + 150);
  }
  SUBCASE("partial modal tie falls back under the fallback rule") {
    CHECK(decide_conformity({obs(a, 0.1), obs(a, 0.1), obs(b, 0.5), obs(b, 0.5), obs(c, 0.9)}, rng,
                            ConformityTie::fallback)
              .fallback());
    // A unique mode is unaffected by the flag.
    CHECK_FALSE(decide_conformity({obs(a, 0.1), obs(a, 0.1), obs(b, 0.5)}, rng, ConformityTie::fallback)
                    .fallback());
  }
  SUBCASE("empty sample is a parameter error") {
    CHECK_THROWS_AS(decide_conformity({}, rng), std::invalid_argument);
  }
}

TEST_CASE("conformity returns a solution of maximal sample frequency") {
  Rng rng(8);
  Rng case_rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Observation> sample;
    const int size = 1 + static_cast<int>(uniform_below(case_rng, 9));
    for (int i = 0; i < size; ++i) {
      const auto bits = static_cast<std::uint32_t>(uniform_below(case_rng, 4));
      sample.push_back(obs(Solution(2, bits), 0.1 * static_cast<double>(bits)));
    }
    std::map<std::uint32_t, int> freq;
    for (const auto& o : sample) ++freq[o.solution.packed()];
    int max_freq = 0;
    for (const auto& [bits, f] : freq) max_freq = std::max(max_freq, f);
    const bool all_equal =
        freq.size() >= 2 &&
        std::all_of(freq.begin(), freq.end(), [&](const auto& kv) { return kv.second == max_freq; });

    const auto outcome = decide_conformity(sample, rng);
    if (all_equal) {
      CHECK(outcome.fallback());
    } else {
      REQUIRE_FALSE(outcome.fallback());
      CHECK(freq[outcome.candidate->solution.packed()] == max_freq);
    }
  }
}

TEST_CASE("decisions are invariant under strictly increasing payoff transforms") {
  Rng case_rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Observation> sample, transformed;
    const int size = 1 + static_cast<int>(uniform_below(case_rng, 7));
    for (int i = 0; i < size; ++i) {
      const auto bits = static_cast<std::uint32_t>(uniform_below(case_rng, 8));
      const double payoff = 0.125 * static_cast<double>(uniform_below(case_rng, 5));
      sample.push_back(obs(Solution(3, bits), payoff));
      transformed.push_back(obs(Solution(3, bits), payoff * 3.0 + 1.0));
    }
    Rng rng_a(trial), rng_b(trial);
    const auto plain = decide_best_member(sample, rng_a);
    const auto scaled = decide_best_member(transformed, rng_b);
    CHECK(plain.candidate->solution == scaled.candidate->solution);

    Rng rng_c(trial), rng_d(trial);
    const auto conf_plain = decide_conformity(sample, rng_c);
    const auto conf_scaled = decide_conformity(transformed, rng_d);
    CHECK(conf_plain.fallback() == conf_scaled.fallback());
    if (!conf_plain.fallback()) CHECK(conf_plain.candidate->solution == conf_scaled.candidate->solution);
  }
}

TEST_CASE("decide_random_copy") {
  const auto outcome = decide_random_copy({obs(sol({1, 0, 1}), 0.4)});
  REQUIRE_FALSE(outcome.fallback());
  CHECK(outcome.candidate->solution == sol({1, 0, 1}));
  CHECK_THROWS_AS(decide_random_copy({}), std::invalid_argument);
  CHECK_THROWS_AS(decide_random_copy({obs(sol({0}), 0.1), obs(sol({1}), 0.2)}), std::invalid_argument);
}

TEST_CASE("individual_step accepts exactly the strict improvements") {
  const NkLandscape landscape(10, 3, 808);
  Rng case_rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Solution start = Solution::random(10, case_rng);
    for (int bit = 0; bit < 10; ++bit) {
      Solution flipped = start;
      flipped.flip(bit);
      // Oracle decision from the brute-force payoff route.
      const double raw_start = oracles::raw_payoff(landscape, start);
      const double raw_flip = oracles::raw_payoff(landscape, flipped);
      const Solution moved = individual_step_at(landscape, start, bit);
      if (raw_flip > raw_start) CHECK(moved == flipped);
      else CHECK(moved == start);
    }
  }
}

TEST_CASE("individual_step never decreases the payoff") {
  const NkLandscape landscape(12, 5, 909);
  Rng rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const Solution start = Solution::random(12, rng);
    const Solution moved = individual_step(landscape, start, rng);
    CHECK(landscape.payoff(moved) >= landscape.payoff(start));
    if (moved == start) continue;
    CHECK(landscape.payoff(moved) > landscape.payoff(start));
  }
}

TEST_CASE("individual_step is a no-op at a strict local optimum") {
  const NkLandscape landscape(8, 2, 117);
  const auto [peak, value] = landscape.global_max();
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) CHECK(individual_step(landscape, peak, rng) == peak);
}

TEST_CASE("individual_step fixes a suboptimal bit when the flip lands on it") {
  // Separable landscape: bit 2 prefers 1, all other bits prefer 0.
  std::vector<std::vector<int>> deps(4);
  std::vector<std::vector<double>> tables = {{0.9, 0.1}, {0.9, 0.1}, {0.1, 0.9}, {0.9, 0.1}};
  const NkLandscape landscape(4, 0, deps, tables);
  const Solution start = sol({0, 0, 0, 0});
  CHECK(individual_step_at(landscape, start, 2) == sol({0, 0, 1, 0}));
  CHECK(individual_step_at(landscape, start, 1) == start);
}
