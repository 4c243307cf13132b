#include "nksearch/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace nksearch {

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("Graph: node count must be non-negative");
  adj_.resize(static_cast<size_t>(n));
}

void Graph::check_node(int u) const {
  if (u < 0 || u >= n_) throw std::invalid_argument("Graph: node index out of range");
}

bool Graph::has_edge(int u, int v) const {
  check_node(u);
  check_node(v);
  const auto& a = adj_[static_cast<size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

void Graph::add_edge(int u, int v) {
  check_node(u);
  check_node(v);
  if (u == v) throw std::invalid_argument("Graph: self-loops are not allowed");
  auto& au = adj_[static_cast<size_t>(u)];
  const auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) throw std::invalid_argument("Graph: parallel edges are not allowed");
  au.insert(it, v);
  auto& av = adj_[static_cast<size_t>(v)];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++m_;
}

void Graph::remove_edge(int u, int v) {
  check_node(u);
  check_node(v);
  auto& au = adj_[static_cast<size_t>(u)];
  const auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it == au.end() || *it != v) throw std::invalid_argument("Graph: edge not present");
  au.erase(it);
  auto& av = adj_[static_cast<size_t>(v)];
  av.erase(std::lower_bound(av.begin(), av.end(), u));
  --m_;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(m_));
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[static_cast<size_t>(u)])
      if (u < v) edges.emplace_back(u, v);
  return edges;
}

std::vector<int> Graph::degree_sequence() const {
  std::vector<int> degrees(static_cast<size_t>(n_));
  for (int u = 0; u < n_; ++u) degrees[static_cast<size_t>(u)] = degree(u);
  return degrees;
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(static_cast<size_t>(n_), 0);
  std::vector<int> queue;
  queue.reserve(static_cast<size_t>(n_));
  queue.push_back(0);
  seen[0] = 1;
  size_t head = 0;
  int visited = 1;
  while (head < queue.size()) {
    const int u = queue[head++];
    for (int v : adj_[static_cast<size_t>(u)]) {
      if (!seen[static_cast<size_t>(v)]) {
        seen[static_cast<size_t>(v)] = 1;
        ++visited;
        queue.push_back(v);
      }
    }
  }
  return visited == n_;
}

Graph complete_graph(int n) {
  if (n < 2) throw std::invalid_argument("complete_graph: need at least 2 nodes");
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph ring_lattice(int n, int d) {
  if (d < 0 || d >= n) throw std::invalid_argument("ring_lattice: need 0 <= d < n");
  if ((d % 2) == 1 && (n % 2) == 1)
    throw std::invalid_argument("ring_lattice: odd degree needs an even node count (antipode link)");
  Graph g(n);
  const int half = d / 2;
  for (int offset = 1; offset <= half; ++offset)
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + offset) % n);
  if (d % 2 == 1)
    for (int i = 0; i < n / 2; ++i) g.add_edge(i, i + n / 2);
  return g;
}

Graph random_regular(int n, int d, Rng& rng, int max_attempts) {
  if (n < 1 || d < 0 || d >= n) throw std::invalid_argument("random_regular: need 0 <= d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("random_regular: n*d must be even");

  std::vector<int> stubs;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Graph g(n);
    stubs.clear();
    stubs.reserve(static_cast<size_t>(n) * static_cast<size_t>(d));
    for (int u = 0; u < n; ++u)
      for (int c = 0; c < d; ++c) stubs.push_back(u);

    bool stuck = false;
    while (!stubs.empty() && !stuck) {
      for (size_t i = stubs.size(); i > 1; --i) {
        const size_t j = uniform_below(rng, i);
        std::swap(stubs[i - 1], stubs[j]);
      }
      std::vector<int> leftover;
      bool progress = false;
      for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const int u = stubs[i];
        const int v = stubs[i + 1];
        if (u == v || g.has_edge(u, v)) {
          leftover.push_back(u);
          leftover.push_back(v);
        } else {
          g.add_edge(u, v);
          progress = true;
        }
      }
      if (!progress) stuck = true;
      stubs.swap(leftover);
    }
    if (!stuck && g.is_connected()) return g;
  }
  throw std::runtime_error("random_regular: rejection budget exhausted");
}

std::optional<EdgeSwap> propose_swap(const Graph& g, const std::vector<std::pair<int, int>>& edges,
                                     Rng& rng, int max_tries) {
  const size_t m = edges.size();
  if (m < 2) return std::nullopt;
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    const auto i = static_cast<int>(uniform_below(rng, m));
    const auto j = static_cast<int>(uniform_below(rng, m));
    if (i == j) continue;
    const auto [a, b] = edges[static_cast<size_t>(i)];
    const auto [c, d] = edges[static_cast<size_t>(j)];
    if (a == c || a == d || b == c || b == d) continue;
    int x1, y1, x2, y2;
    if (coin_flip(rng)) {
      x1 = a; y1 = d; x2 = c; y2 = b;
    } else {
      x1 = a; y1 = c; x2 = b; y2 = d;
    }
    if (g.has_edge(x1, y1) || g.has_edge(x2, y2)) continue;
    EdgeSwap swap;
    swap.removed1 = {a, b};
    swap.removed2 = {c, d};
    swap.added1 = {std::min(x1, y1), std::max(x1, y1)};
    swap.added2 = {std::min(x2, y2), std::max(x2, y2)};
    swap.edge_index1 = i;
    swap.edge_index2 = j;
    return swap;
  }
  return std::nullopt;
}

std::optional<EdgeSwap> double_edge_swap(const Graph& g, Rng& rng, int max_tries) {
  if (g.edge_count() < 2) throw std::invalid_argument("double_edge_swap: need at least 2 edges");
  return propose_swap(g, g.edge_list(), rng, max_tries);
}

void apply_swap(Graph& g, const EdgeSwap& swap) {
  g.remove_edge(swap.removed1.first, swap.removed1.second);
  g.remove_edge(swap.removed2.first, swap.removed2.second);
  g.add_edge(swap.added1.first, swap.added1.second);
  g.add_edge(swap.added2.first, swap.added2.second);
}

void revert_swap(Graph& g, const EdgeSwap& swap) {
  g.remove_edge(swap.added1.first, swap.added1.second);
  g.remove_edge(swap.added2.first, swap.added2.second);
  g.add_edge(swap.removed1.first, swap.removed1.second);
  g.add_edge(swap.removed2.first, swap.removed2.second);
}

FormatError::FormatError(const std::string& message, int line)
    : std::runtime_error(message + " (line " + std::to_string(line) + ")"), line_(line) {}

void save_edge_list(const Graph& g, const std::string& path, const std::string& kind) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_edge_list: cannot open " + path);
  int d = -1;
  if (g.n() > 0) {
    d = g.degree(0);
    for (int u = 1; u < g.n(); ++u)
      if (g.degree(u) != d) {
        d = -1;
        break;
      }
  }
  out << "# n=" << g.n() << " d=" << d << " kind=" << kind << '\n';
  for (const auto& [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
  if (!out) throw std::runtime_error("save_edge_list: write failed for " + path);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_edge_list: cannot open " + path);

  struct Entry {
    int u, v, line;
  };
  std::vector<Entry> entries;
  int n_header = -1;
  int line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("n=");
      if (pos != std::string::npos) {
        std::istringstream hs(line.substr(pos + 2));
        int n = -1;
        if (hs >> n && n >= 0) n_header = n;
      }
      continue;
    }
    std::istringstream ls(line);
    long long u, v;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) throw FormatError("load_edge_list: malformed line '" + line + "'", line_no);
    if (u == v) throw FormatError("load_edge_list: self-loop " + std::to_string(u), line_no);
    if (u < 0 || v < 0) throw FormatError("load_edge_list: negative node index", line_no);
    entries.push_back({static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v)), line_no});
  }

  int n = n_header;
  if (n < 0) {
    n = 0;
    for (const auto& e : entries) n = std::max(n, e.v + 1);
  }
  Graph g(n);
  for (const auto& e : entries) {
    if (e.u >= n || e.v >= n)
      throw FormatError("load_edge_list: node index out of range for n=" + std::to_string(n), e.line);
    if (g.has_edge(e.u, e.v)) throw FormatError("load_edge_list: duplicate edge", e.line);
    g.add_edge(e.u, e.v);
  }
  return g;
}

}  // namespace nksearch
