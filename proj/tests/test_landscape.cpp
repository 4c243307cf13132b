#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "nksearch/landscape.hpp"
#include "oracles.hpp"

using namespace nksearch;

namespace {

// Rebuilds a landscape from its text dump; exercises the dump as an
// oracle-facing interchange format.
NkLandscape landscape_from_dump(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  int n = 0, k = 0;
  std::uint64_t seed = 0;
  in >> tag >> n >> k >> seed;
  REQUIRE(tag == "NK");
  std::vector<std::vector<int>> deps(static_cast<size_t>(n));
  std::vector<std::vector<double>> tables(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      int d = -1;
      in >> d;
      deps[static_cast<size_t>(i)].push_back(d);
    }
    for (size_t j = 0; j < (1ull << (k + 1)); ++j) {
      double v = -1.0;
      in >> v;
      tables[static_cast<size_t>(i)].push_back(v);
    }
  }
  REQUIRE(in.good());
  return NkLandscape(n, k, std::move(deps), std::move(tables), seed);
}

}  // namespace

TEST_CASE("landscape construction validates parameters") {
  Rng rng(1);
  CHECK_THROWS_AS(NkLandscape(0, 0, 7), std::invalid_argument);
  CHECK_THROWS_AS(NkLandscape(5, 5, 7), std::invalid_argument);
  CHECK_THROWS_AS(NkLandscape(5, -1, 7), std::invalid_argument);
  CHECK_THROWS_AS(NkLandscape(25, 3, 7), std::length_error);
  CHECK_NOTHROW(NkLandscape(3, 2, 7));  // K = N-1 forces full dependency
}

TEST_CASE("K=N-1 tables have 2^N entries and full dependencies") {
  NkLandscape landscape(3, 2, 99);
  for (int i = 0; i < 3; ++i) {
    CHECK(landscape.contribution_table(i).size() == 8);
    std::set<int> deps(landscape.dependencies(i).begin(), landscape.dependencies(i).end());
    CHECK(deps.size() == 2);
    CHECK(deps.count(i) == 0);
  }
}

TEST_CASE("constant K=0 tables give constant payoff") {
  const double c = 0.25;
  std::vector<std::vector<int>> deps(4);
  std::vector<std::vector<double>> tables(4, {c, c});
  NkLandscape landscape(4, 0, deps, tables);
  for (std::uint32_t u = 0; u < 16; ++u) CHECK(landscape.raw_payoff(Solution(4, u)) == doctest::Approx(c).epsilon(1e-15));
}

TEST_CASE("two-bit hand example") {
  std::vector<std::vector<int>> deps(2);
  std::vector<std::vector<double>> tables = {{0.2, 0.8}, {0.4, 0.6}};
  NkLandscape landscape(2, 0, deps, tables);
  CHECK(landscape.raw_payoff(Solution::from_bits({1, 1})) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(landscape.raw_payoff(Solution::from_bits({0, 0})) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(landscape.raw_payoff(Solution::from_bits({1, 0})) == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("payoff transform: argmax scores 1, half scores 0.5^8") {
  std::vector<std::vector<int>> deps(1);
  std::vector<std::vector<double>> tables = {{0.4, 0.8}};
  NkLandscape landscape(1, 0, deps, tables);
  CHECK(landscape.payoff(Solution::from_bits({1})) == 1.0);
  CHECK(landscape.payoff(Solution::from_bits({0})) == 0.00390625);  // (0.4/0.8)^8
}

TEST_CASE("K=0 raw payoff equals the per-bit mean") {
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    NkLandscape landscape(15, 0, seed);
    Rng rng(seed * 31 + 1);
    for (int trial = 0; trial < 1000; ++trial) {
      const Solution sol = Solution::random(15, rng);
      double mean = 0.0;
      for (int i = 0; i < 15; ++i) mean += landscape.contribution_table(i)[static_cast<size_t>(sol.bit(i))];
      mean /= 15.0;
      CHECK(landscape.raw_payoff(sol) == mean);
    }
  }
}

TEST_CASE("payoffs match the brute-force oracle on full enumeration") {
  const std::pair<int, int> shapes[] = {{6, 2}, {8, 3}, {10, 0}, {10, 9}, {9, 4}};
  for (const auto& [n, k] : shapes) {
    NkLandscape landscape(n, k, static_cast<std::uint64_t>(n * 1000 + k));
    for (std::uint32_t u = 0; u < (1u << n); ++u) {
      const Solution sol(n, u);
      CHECK(landscape.raw_payoff(sol) == oracles::raw_payoff(landscape, sol));
    }
  }
}

TEST_CASE("payoff is a strictly monotone transform of raw payoff") {
  NkLandscape landscape(10, 4, 321);
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Solution a = Solution::random(10, rng);
    const Solution b = Solution::random(10, rng);
    CHECK((landscape.payoff(a) > landscape.payoff(b)) == (landscape.raw_payoff(a) > landscape.raw_payoff(b)));
  }
}

TEST_CASE("argmax sets of raw and transformed payoffs coincide") {
  for (std::uint64_t seed : {3ull, 4ull}) {
    NkLandscape landscape(8, 3, seed);
    double best_raw = -1.0, best_pay = -1.0;
    for (std::uint32_t u = 0; u < 256; ++u) {
      best_raw = std::max(best_raw, landscape.raw_payoff(Solution(8, u)));
      best_pay = std::max(best_pay, landscape.payoff(Solution(8, u)));
    }
    for (std::uint32_t u = 0; u < 256; ++u) {
      const Solution sol(8, u);
      CHECK((landscape.raw_payoff(sol) == best_raw) == (landscape.payoff(sol) == best_pay));
    }
  }
}

TEST_CASE("global_max agrees with independent enumeration") {
  for (const auto& [n, k] : {std::pair{8, 0}, {8, 7}, {10, 3}}) {
    NkLandscape landscape(n, k, static_cast<std::uint64_t>(77 + n + k));
    const auto [sol, value] = landscape.global_max();
    const auto [oracle_sol, oracle_value] = oracles::global_max(landscape);
    CHECK(value == oracle_value);
    CHECK(sol == oracle_sol);
    CHECK(landscape.payoff(sol) == 1.0);
  }
}

TEST_CASE("global_max tie-break picks the lowest binary numeral") {
  // Bit 0 contributes equally either way, so (0,1) and (1,1) tie at the top.
  std::vector<std::vector<int>> deps(2);
  std::vector<std::vector<double>> tables = {{0.5, 0.5}, {0.3, 0.9}};
  NkLandscape landscape(2, 0, deps, tables);
  const auto [sol, value] = landscape.global_max();
  CHECK(value == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(sol.to_bits() == std::vector<int>{0, 1});
}

TEST_CASE("K=0 global max sets each bit by its own table") {
  NkLandscape landscape(12, 0, 5150);
  const auto [sol, value] = landscape.global_max();
  for (int i = 0; i < 12; ++i) {
    const auto& table = landscape.contribution_table(i);
    CHECK(sol.bit(i) == (table[1] > table[0] ? 1 : 0));
  }
}

TEST_CASE("count_local_optima") {
  SUBCASE("separable landscape has exactly one") {
    NkLandscape landscape(10, 0, 8);
    CHECK(landscape.count_local_optima() == 1);
  }
  SUBCASE("matches the brute-force oracle at K=N-1") {
    NkLandscape landscape(8, 7, 9);
    CHECK(landscape.count_local_optima() == oracles::count_local_optima(landscape));
  }
  SUBCASE("always at least one") {
    for (std::uint64_t seed : {21ull, 22ull, 23ull}) {
      NkLandscape landscape(9, 4, seed);
      CHECK(landscape.count_local_optima() >= 1);
    }
  }
  SUBCASE("capacity bound") {
    NkLandscape landscape(21, 2, 10);
    CHECK_THROWS_AS(landscape.count_local_optima(), std::length_error);
  }
}

TEST_CASE("raw payoffs stay in [0,1) and transformed in [0,1]") {
  NkLandscape landscape(12, 6, 1234);
  Rng rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const Solution sol = Solution::random(12, rng);
    const double raw = landscape.raw_payoff(sol);
    const double pay = landscape.payoff(sol);
    CHECK(raw >= 0.0);
    CHECK(raw < 1.0);
    CHECK(pay >= 0.0);
    CHECK(pay <= 1.0);
  }
}

TEST_CASE("construction is deterministic in the seed") {
  NkLandscape a(12, 5, 2024);
  NkLandscape b(12, 5, 2024);
  NkLandscape c(12, 5, 2025);
  CHECK(a.dump_string() == b.dump_string());
  CHECK(a.dump_string() != c.dump_string());
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Solution sol = Solution::random(12, rng);
    CHECK(a.payoff(sol) == b.payoff(sol));
  }
}

TEST_CASE("flipping a bit changes exactly the dependent contributions") {
  NkLandscape landscape(15, 7, 606);
  Rng rng(7);
  const Solution sol = Solution::random(15, rng);
  for (int b = 0; b < 15; ++b) {
    Solution flipped = sol;
    flipped.flip(b);
    for (int i = 0; i < 15; ++i) {
      const auto& deps = landscape.dependencies(i);
      const bool depends = i == b || std::find(deps.begin(), deps.end(), b) != deps.end();
      // Contribution of component i, evaluated in isolation.
      auto contribution = [&](const Solution& s) {
        std::uint32_t idx = static_cast<std::uint32_t>(s.bit(i));
        for (int d : deps) idx = (idx << 1) | static_cast<std::uint32_t>(s.bit(d));
        return landscape.contribution_table(i)[idx];
      };
      if (!depends) CHECK(contribution(sol) == contribution(flipped));
    }
  }
}

TEST_CASE("solution length mismatch raises a parameter error") {
  NkLandscape landscape(6, 2, 55);
  CHECK_THROWS_AS(landscape.raw_payoff(Solution(5, 0)), std::invalid_argument);
  CHECK_THROWS_AS(landscape.payoff(Solution(7, 0)), std::invalid_argument);
}

TEST_CASE("dump round-trips through the text format") {
  NkLandscape original(7, 3, 424242);
  const std::string text = original.dump_string();
  // Header and one line per component.
  CHECK(std::count(text.begin(), text.end(), '\n') == 8);
  CHECK(text.rfind("NK 7 3 424242\n", 0) == 0);

  const NkLandscape reparsed = landscape_from_dump(text);
  CHECK(reparsed.max_raw_payoff() == original.max_raw_payoff());
  for (std::uint32_t u = 0; u < (1u << 7); ++u) {
    const Solution sol(7, u);
    CHECK(reparsed.raw_payoff(sol) == original.raw_payoff(sol));
  }
}

TEST_CASE("explicit-table constructor validates invariants") {
  std::vector<std::vector<int>> deps(2, std::vector<int>{});
  std::vector<std::vector<double>> tables = {{0.2, 0.8}, {0.4, 0.6}};
  CHECK_NOTHROW(NkLandscape(2, 0, deps, tables));
  SUBCASE("self dependency") {
    std::vector<std::vector<int>> bad = {{0}, {0}};
    std::vector<std::vector<double>> t4 = {{0.1, 0.2, 0.3, 0.4}, {0.1, 0.2, 0.3, 0.4}};
    CHECK_THROWS_AS(NkLandscape(2, 1, bad, t4), std::invalid_argument);
  }
  SUBCASE("wrong table size") {
    std::vector<std::vector<double>> bad = {{0.2, 0.8, 0.3}, {0.4, 0.6}};
    CHECK_THROWS_AS(NkLandscape(2, 0, deps, bad), std::invalid_argument);
  }
  SUBCASE("value out of range") {
    std::vector<std::vector<double>> bad = {{0.2, 1.0}, {0.4, 0.6}};
    CHECK_THROWS_AS(NkLandscape(2, 0, deps, bad), std::invalid_argument);
  }
}
