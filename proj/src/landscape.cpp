#include "nksearch/landscape.hpp"

#include <ostream>
#include <sstream>
#include <iomanip>
#include <stdexcept>

namespace nksearch {

Solution::Solution(int n, std::uint32_t packed) : bits_(packed), n_(n) {
  if (n < 1 || n > 32) throw std::invalid_argument("Solution: length must be in [1, 32]");
  if (n < 32) bits_ &= (1u << n) - 1u;
}

Solution Solution::random(int n, Rng& rng) {
  if (n < 1 || n > 32) throw std::invalid_argument("Solution: length must be in [1, 32]");
  const std::uint32_t mask = n < 32 ? (1u << n) - 1u : ~0u;
  return Solution(n, static_cast<std::uint32_t>(rng()) & mask);
}

Solution Solution::from_bits(const std::vector<int>& bits) {
  Solution s(static_cast<int>(bits.size()), 0);
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("Solution: bits must be 0 or 1");
    if (bits[i]) s.bits_ |= (1u << i);
  }
  return s;
}

void Solution::set_bit(int i, int value) {
  if (value) bits_ |= (1u << i);
  else bits_ &= ~(1u << i);
}

std::uint64_t Solution::numeral() const {
  std::uint64_t v = 0;
  for (int i = 0; i < n_; ++i) v = (v << 1) | static_cast<std::uint64_t>(bit(i));
  return v;
}

std::vector<int> Solution::to_bits() const {
  std::vector<int> out(n_);
  for (int i = 0; i < n_; ++i) out[i] = bit(i);
  return out;
}

std::string Solution::to_string() const {
  std::string out(static_cast<size_t>(n_), '0');
  for (int i = 0; i < n_; ++i) out[static_cast<size_t>(i)] = bit(i) ? '1' : '0';
  return out;
}

NkLandscape::NkLandscape(int n_components, int k_interdependence, std::uint64_t seed)
    : n_(n_components), k_(k_interdependence), seed_(seed) {
  validate_params();

  Rng rng(derive(seed, 0x4E4Bull));

  // Dependency lists: K distinct components other than i, uniform via a
  // partial Fisher-Yates shuffle of the candidate list.
  deps_.resize(static_cast<size_t>(n_));
  std::vector<int> candidates;
  candidates.reserve(static_cast<size_t>(n_ - 1));
  for (int i = 0; i < n_; ++i) {
    candidates.clear();
    for (int j = 0; j < n_; ++j)
      if (j != i) candidates.push_back(j);
    for (int j = 0; j < k_; ++j) {
      const auto pick = j + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_ - 1 - j)));
      std::swap(candidates[static_cast<size_t>(j)], candidates[static_cast<size_t>(pick)]);
    }
    deps_[static_cast<size_t>(i)].assign(candidates.begin(), candidates.begin() + k_);
  }

  const size_t table_size = 1ull << (k_ + 1);
  tables_.resize(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    auto& table = tables_[static_cast<size_t>(i)];
    table.resize(table_size);
    for (auto& v : table) v = uniform_unit(rng);
  }

  cache_max();
}

NkLandscape::NkLandscape(int n_components, int k_interdependence,
                         std::vector<std::vector<int>> dependencies,
                         std::vector<std::vector<double>> tables, std::uint64_t seed)
    : n_(n_components), k_(k_interdependence), seed_(seed),
      deps_(std::move(dependencies)), tables_(std::move(tables)) {
  validate_params();
  if (deps_.size() != static_cast<size_t>(n_) || tables_.size() != static_cast<size_t>(n_))
    throw std::invalid_argument("NkLandscape: need one dependency list and one table per component");
  const size_t table_size = 1ull << (k_ + 1);
  for (int i = 0; i < n_; ++i) {
    const auto& deps = deps_[static_cast<size_t>(i)];
    if (deps.size() != static_cast<size_t>(k_))
      throw std::invalid_argument("NkLandscape: dependency list must have exactly K entries");
    for (size_t a = 0; a < deps.size(); ++a) {
      if (deps[a] < 0 || deps[a] >= n_ || deps[a] == i)
        throw std::invalid_argument("NkLandscape: dependency index out of range or self-referential");
      for (size_t b = a + 1; b < deps.size(); ++b)
        if (deps[a] == deps[b]) throw std::invalid_argument("NkLandscape: duplicate dependency index");
    }
    const auto& table = tables_[static_cast<size_t>(i)];
    if (table.size() != table_size)
      throw std::invalid_argument("NkLandscape: table must have exactly 2^(K+1) entries");
    for (double v : table)
      if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument("NkLandscape: table values must lie in [0, 1)");
  }
  cache_max();
}

void NkLandscape::validate_params() const {
  if (n_ < 1) throw std::invalid_argument("NkLandscape: N must be >= 1");
  if (k_ < 0 || k_ > n_ - 1) throw std::invalid_argument("NkLandscape: K must satisfy 0 <= K <= N-1");
  if (n_ > kMaxComponents)
    throw std::length_error("NkLandscape: N exceeds the enumeration bound of 24 (needed to cache the maximum)");
}

double NkLandscape::raw_payoff(const Solution& sol) const {
  if (sol.size() != n_) throw std::invalid_argument("raw_payoff: solution length does not match N");
  const std::uint32_t bits = sol.packed();
  double sum = 0.0;
  for (int i = 0; i < n_; ++i) {
    std::uint32_t idx = (bits >> i) & 1u;
    for (int d : deps_[static_cast<size_t>(i)]) idx = (idx << 1) | ((bits >> d) & 1u);
    sum += tables_[static_cast<size_t>(i)][idx];
  }
  return sum / n_;
}

double NkLandscape::payoff(const Solution& sol) const {
  const double r = raw_payoff(sol) / max_raw_;
  const double r2 = r * r;
  const double r4 = r2 * r2;
  return r4 * r4;
}

void NkLandscape::cache_max() {
  const std::uint32_t count = 1u << n_;
  double best = -1.0;
  std::uint32_t best_bits = 0;
  std::uint64_t best_numeral = 0;
  for (std::uint32_t u = 0; u < count; ++u) {
    const Solution sol(n_, u);
    const double r = raw_payoff(sol);
    if (r > best) {
      best = r;
      best_bits = u;
      best_numeral = sol.numeral();
    } else if (r == best) {
      const std::uint64_t num = sol.numeral();
      if (num < best_numeral) {
        best_bits = u;
        best_numeral = num;
      }
    }
  }
  max_raw_ = best;
  max_solution_ = Solution(n_, best_bits);
}

int NkLandscape::count_local_optima() const {
  if (n_ > kLocalOptimaBound)
    throw std::length_error("count_local_optima: N exceeds the enumeration bound of 20");
  const std::uint32_t count = 1u << n_;
  std::vector<double> raw(count);
  for (std::uint32_t u = 0; u < count; ++u) raw[u] = raw_payoff(Solution(n_, u));
  int optima = 0;
  for (std::uint32_t u = 0; u < count; ++u) {
    bool is_opt = true;
    for (int i = 0; i < n_ && is_opt; ++i)
      if (raw[u ^ (1u << i)] >= raw[u]) is_opt = false;
    if (is_opt) ++optima;
  }
  return optima;
}

void NkLandscape::dump(std::ostream& out) const {
  out << "NK " << n_ << ' ' << k_ << ' ' << seed_ << '\n';
  out << std::setprecision(17);
  for (int i = 0; i < n_; ++i) {
    bool first = true;
    for (int d : deps_[static_cast<size_t>(i)]) {
      if (!first) out << ' ';
      out << d;
      first = false;
    }
    for (double v : tables_[static_cast<size_t>(i)]) {
      if (!first) out << ' ';
      out << v;
      first = false;
    }
    out << '\n';
  }
}

std::string NkLandscape::dump_string() const {
  std::ostringstream out;
  dump(out);
  return out.str();
}

}  // namespace nksearch
