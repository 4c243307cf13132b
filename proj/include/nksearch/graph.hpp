#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nksearch/rng.hpp"

namespace nksearch {

// Simple undirected graph with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  long long edge_count() const { return m_; }
  int degree(int u) const { return static_cast<int>(adj_[static_cast<size_t>(u)].size()); }
  const std::vector<int>& neighbors(int u) const { return adj_[static_cast<size_t>(u)]; }

  bool has_edge(int u, int v) const;
  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  // Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<std::pair<int, int>> edge_list() const;
  std::vector<int> degree_sequence() const;
  bool is_connected() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_node(int u) const;

  int n_ = 0;
  long long m_ = 0;
  std::vector<std::vector<int>> adj_;
};

// Every node adjacent to every other (degree n-1).
Graph complete_graph(int n);

// Ring lattice with uniform degree d: node i is adjacent to i±1..i±⌊d/2⌋
// (mod n); an odd d additionally links every node to its antipode i+n/2,
// which requires n even.
Graph ring_lattice(int n, int d);

// Connected d-regular graph sampled by random stub pairing: clashing pairs
// (self-loops, repeats) are thrown back and re-shuffled; attempts that
// stall or come out disconnected are rejected wholesale.
Graph random_regular(int n, int d, Rng& rng, int max_attempts = 1000);

// A degree-preserving rewiring proposal: edges removed1/removed2 replaced
// by added1/added2. All pairs normalized to u < v. edge_index1/2 locate the
// removed edges in the edge list the proposal was drawn from.
struct EdgeSwap {
  std::pair<int, int> removed1, removed2;
  std::pair<int, int> added1, added2;
  int edge_index1 = -1;
  int edge_index2 = -1;
};

// Draws two distinct edges with four distinct endpoints and a random
// orientation; rejects proposals that would duplicate an existing edge.
// nullopt once max_tries draws fail.
std::optional<EdgeSwap> propose_swap(const Graph& g, const std::vector<std::pair<int, int>>& edges,
                                     Rng& rng, int max_tries);
std::optional<EdgeSwap> double_edge_swap(const Graph& g, Rng& rng, int max_tries = 100);

void apply_swap(Graph& g, const EdgeSwap& swap);
void revert_swap(Graph& g, const EdgeSwap& swap);

// Edge-list file errors carry the offending 1-based line number.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& message, int line);
  int line() const { return line_; }

 private:
  int line_;
};

// UTF-8 text, `# n=<n> d=<d> kind=<kind>` header comment, then one edge per
// line as "<u> <v>" with u < v, sorted lexicographically. d is the common
// degree, or -1 when the graph is irregular.
void save_edge_list(const Graph& g, const std::string& path, const std::string& kind = "custom");
Graph load_edge_list(const std::string& path);

}  // namespace nksearch
