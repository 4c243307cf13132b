#include "nksearch/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace nksearch {

MetricEvaluator::MetricEvaluator(int n)
    : n_(n), csr_start_(static_cast<size_t>(n) + 1), dist_(static_cast<size_t>(n)),
      sigma_(static_cast<size_t>(n)), delta_(static_cast<size_t>(n)), accum_(static_cast<size_t>(n)) {
  order_.reserve(static_cast<size_t>(n));
}

void MetricEvaluator::load_csr(const Graph& g) {
  if (g.n() != n_) throw std::invalid_argument("MetricEvaluator: graph size mismatch");
  csr_adj_.clear();
  csr_adj_.reserve(static_cast<size_t>(2 * g.edge_count()));
  csr_start_[0] = 0;
  for (int u = 0; u < n_; ++u) {
    const auto& nbrs = g.neighbors(u);
    csr_adj_.insert(csr_adj_.end(), nbrs.begin(), nbrs.end());
    csr_start_[static_cast<size_t>(u) + 1] = static_cast<int>(csr_adj_.size());
  }
}

int MetricEvaluator::bfs(int source) {
  std::fill(dist_.begin(), dist_.end(), -1);
  order_.clear();
  order_.push_back(source);
  dist_[static_cast<size_t>(source)] = 0;
  size_t head = 0;
  while (head < order_.size()) {
    const int v = order_[head++];
    const int dv = dist_[static_cast<size_t>(v)] + 1;
    const int end = csr_start_[static_cast<size_t>(v) + 1];
    for (int i = csr_start_[static_cast<size_t>(v)]; i < end; ++i) {
      const int w = csr_adj_[static_cast<size_t>(i)];
      if (dist_[static_cast<size_t>(w)] < 0) {
        dist_[static_cast<size_t>(w)] = dv;
        order_.push_back(w);
      }
    }
  }
  return static_cast<int>(order_.size());
}

std::optional<double> MetricEvaluator::closeness(const Graph& g) {
  if (n_ < 2) return std::nullopt;
  load_csr(g);
  double total = 0.0;
  for (int s = 0; s < n_; ++s) {
    if (bfs(s) != n_) return std::nullopt;
    long long sum = 0;
    for (int v : order_) sum += dist_[static_cast<size_t>(v)];
    total += static_cast<double>(n_ - 1) / static_cast<double>(sum);
  }
  return total / n_;
}

std::optional<int> MetricEvaluator::diameter(const Graph& g) {
  if (n_ <= 1) return 0;
  load_csr(g);
  int best = 0;
  for (int s = 0; s < n_; ++s) {
    if (bfs(s) != n_) return std::nullopt;
    best = std::max(best, dist_[static_cast<size_t>(order_.back())]);
  }
  return best;
}

std::optional<double> MetricEvaluator::betweenness(const Graph& g) {
  load_csr(g);
  std::fill(accum_.begin(), accum_.end(), 0.0);
  for (int s = 0; s < n_; ++s) {
    // Forward sweep: BFS order, shortest-path counts.
    std::fill(dist_.begin(), dist_.end(), -1);
    std::fill(sigma_.begin(), sigma_.end(), 0.0);
    order_.clear();
    order_.push_back(s);
    dist_[static_cast<size_t>(s)] = 0;
    sigma_[static_cast<size_t>(s)] = 1.0;
    size_t head = 0;
    while (head < order_.size()) {
      const int v = order_[head++];
      const int dv = dist_[static_cast<size_t>(v)] + 1;
      const double sv = sigma_[static_cast<size_t>(v)];
      const int end = csr_start_[static_cast<size_t>(v) + 1];
      for (int i = csr_start_[static_cast<size_t>(v)]; i < end; ++i) {
        const int w = csr_adj_[static_cast<size_t>(i)];
        if (dist_[static_cast<size_t>(w)] < 0) {
          dist_[static_cast<size_t>(w)] = dv;
          order_.push_back(w);
        }
        if (dist_[static_cast<size_t>(w)] == dv) sigma_[static_cast<size_t>(w)] += sv;
      }
    }
    if (order_.size() != static_cast<size_t>(n_)) return std::nullopt;
    // Dependency accumulation in reverse BFS order; predecessors are
    // recognized on the fly by distance, so no predecessor lists needed.
    std::fill(delta_.begin(), delta_.end(), 0.0);
    for (size_t i = order_.size(); i-- > 1;) {
      const int w = order_[i];
      const double coeff = (1.0 + delta_[static_cast<size_t>(w)]) / sigma_[static_cast<size_t>(w)];
      const int dw = dist_[static_cast<size_t>(w)] - 1;
      const int end = csr_start_[static_cast<size_t>(w) + 1];
      for (int j = csr_start_[static_cast<size_t>(w)]; j < end; ++j) {
        const int v = csr_adj_[static_cast<size_t>(j)];
        if (dist_[static_cast<size_t>(v)] == dw) delta_[static_cast<size_t>(v)] += sigma_[static_cast<size_t>(v)] * coeff;
      }
      if (w != s) accum_[static_cast<size_t>(w)] += delta_[static_cast<size_t>(w)];
    }
  }
  double total = 0.0;
  for (double c : accum_) total += c / 2.0;  // each unordered pair counted from both endpoints
  return total / n_;
}

double MetricEvaluator::clustering(const Graph& g) {
  if (g.n() != n_) throw std::invalid_argument("MetricEvaluator: graph size mismatch");
  double total = 0.0;
  for (int u = 0; u < n_; ++u) {
    const auto& nbrs = g.neighbors(u);
    const int d = static_cast<int>(nbrs.size());
    if (d < 2) continue;
    int closed = 0;
    for (size_t a = 0; a < nbrs.size(); ++a)
      for (size_t b = a + 1; b < nbrs.size(); ++b)
        if (g.has_edge(nbrs[a], nbrs[b])) ++closed;
    total += 2.0 * closed / (static_cast<double>(d) * (d - 1));
  }
  return total / n_;
}

std::optional<double> MetricEvaluator::constraint(const Graph& g) {
  if (g.n() != n_) throw std::invalid_argument("MetricEvaluator: graph size mismatch");
  double total = 0.0;
  for (int i = 0; i < n_; ++i) {
    const auto& nbrs = g.neighbors(i);
    if (nbrs.empty()) return std::nullopt;
    const double p = 1.0 / static_cast<double>(nbrs.size());
    double ci = 0.0;
    for (int j : nbrs) {
      double direct_plus_indirect = p;
      // Shared contacts q of i and j: p_iq * p_qj, two-pointer over the
      // sorted adjacency lists.
      const auto& nj = g.neighbors(j);
      size_t a = 0, b = 0;
      while (a < nbrs.size() && b < nj.size()) {
        if (nbrs[a] < nj[b]) ++a;
        else if (nbrs[a] > nj[b]) ++b;
        else {
          const int q = nbrs[a];
          if (q != i && q != j) direct_plus_indirect += p / static_cast<double>(g.degree(q));
          ++a;
          ++b;
        }
      }
      ci += direct_plus_indirect * direct_plus_indirect;
    }
    total += ci;
  }
  return total / n_;
}

double mean_closeness(const Graph& g) {
  MetricEvaluator eval(g.n());
  const auto v = eval.closeness(g);
  if (!v) throw std::domain_error("mean_closeness: undefined on a disconnected graph");
  return *v;
}

double mean_betweenness(const Graph& g) {
  MetricEvaluator eval(g.n());
  const auto v = eval.betweenness(g);
  if (!v) throw std::domain_error("mean_betweenness: undefined on a disconnected graph");
  return *v;
}

double mean_clustering(const Graph& g) {
  MetricEvaluator eval(g.n());
  return eval.clustering(g);
}

double mean_constraint(const Graph& g) {
  MetricEvaluator eval(g.n());
  const auto v = eval.constraint(g);
  if (!v) throw std::domain_error("mean_constraint: undefined with an isolated node");
  return *v;
}

int diameter(const Graph& g) {
  MetricEvaluator eval(g.n());
  const auto v = eval.diameter(g);
  if (!v) throw std::domain_error("diameter: undefined on a disconnected graph");
  return *v;
}

}  // namespace nksearch
