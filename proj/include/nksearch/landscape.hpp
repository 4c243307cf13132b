#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nksearch/rng.hpp"

namespace nksearch {

// Enumeration bound for caching the landscape maximum (2^24 evaluations).
inline constexpr int kMaxComponents = 24;
// Bound for the full payoff table used by count_local_optima.
inline constexpr int kLocalOptimaBound = 20;

// Fixed-length binary vector, packed into a word. Component i lives at
// bit i. Landscapes cap N at kMaxComponents, so 32 bits always suffice.
class Solution {
 public:
  Solution() = default;
  Solution(int n, std::uint32_t packed);

  static Solution random(int n, Rng& rng);
  static Solution from_bits(const std::vector<int>& bits);

  int size() const { return n_; }
  int bit(int i) const { return static_cast<int>((bits_ >> i) & 1u); }
  void set_bit(int i, int value);
  void flip(int i) { bits_ ^= (1u << i); }
  std::uint32_t packed() const { return bits_; }

  // Value of the vector read as a binary numeral, bits[0] most significant.
  // Used only for deterministic tie-breaking.
  std::uint64_t numeral() const;

  std::vector<int> to_bits() const;
  std::string to_string() const;

  friend bool operator==(const Solution&, const Solution&) = default;

 private:
  std::uint32_t bits_ = 0;
  int n_ = 0;
};

// NK payoff structure: every component contributes a table value selected
// by its own bit and the bits of its K dependencies; the raw payoff is the
// mean contribution. Raw payoffs are normalized by the exhaustively
// enumerated maximum and sharpened with a power-8 transform, so most
// solutions score low and only near-optimal ones score high.
class NkLandscape {
 public:
  // Random construction; deterministic for a given seed.
  NkLandscape(int n_components, int k_interdependence, std::uint64_t seed);
  // Construction from explicit parts (tests, file round-trips). The
  // normalizing maximum is still found by enumeration.
  NkLandscape(int n_components, int k_interdependence,
              std::vector<std::vector<int>> dependencies,
              std::vector<std::vector<double>> tables,
              std::uint64_t seed = 0);

  int n() const { return n_; }
  int k() const { return k_; }
  std::uint64_t seed() const { return seed_; }

  // Mean of the N table contributions, in [0, 1).
  double raw_payoff(const Solution& sol) const;
  // (raw / max_raw)^8, in [0, 1]; equals 1 exactly at the cached argmax.
  double payoff(const Solution& sol) const;

  double max_raw_payoff() const { return max_raw_; }
  // Raw-payoff maximizer found at construction; ties broken by the lowest
  // binary numeral of the bit vector.
  std::pair<Solution, double> global_max() const { return {max_solution_, max_raw_}; }

  // Number of solutions strictly better than all N single-bit neighbors.
  int count_local_optima() const;

  const std::vector<int>& dependencies(int component) const { return deps_[component]; }
  const std::vector<double>& contribution_table(int component) const { return tables_[component]; }

  // Plain-text dump: header "NK <N> <K> <seed>", then one line per
  // component holding its K dependency indices followed by the 2^(K+1)
  // table values in lexicographic state order (own bit most significant,
  // then the dependencies in listed order), 17 significant digits.
  void dump(std::ostream& out) const;
  std::string dump_string() const;

 private:
  void validate_params() const;
  void cache_max();

  int n_ = 0;
  int k_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::vector<int>> deps_;
  std::vector<std::vector<double>> tables_;
  double max_raw_ = 0.0;
  Solution max_solution_;
};

}  // namespace nksearch
