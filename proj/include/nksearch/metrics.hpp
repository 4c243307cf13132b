#pragma once

#include <optional>
#include <vector>

#include "nksearch/graph.hpp"

namespace nksearch {

// Node-averaged structural measures. Conventions (fixed so values are
// comparable across same-size graphs):
//   closeness_i   = (n-1) / sum_j dist(i, j)
//   betweenness_i = sum over unordered pairs {s,t}, s,t != i, of the
//                   fraction of shortest s-t paths through i (unnormalized)
//   clustering_i  = 2 * t_i / (d_i (d_i - 1)), 0 when d_i < 2
//   constraint_i  = Burt's measure with tie weights p_uv = 1/d_u
//
// The free functions throw std::domain_error when the measure is undefined
// (disconnected graph, or an isolated node for constraint).

double mean_closeness(const Graph& g);
double mean_betweenness(const Graph& g);
double mean_clustering(const Graph& g);
double mean_constraint(const Graph& g);
int diameter(const Graph& g);

// Buffer-reusing evaluator for tight loops (the rewiring optimizer calls
// these tens of thousands of times). The optional-returning methods yield
// nullopt instead of throwing when the measure is undefined.
class MetricEvaluator {
 public:
  explicit MetricEvaluator(int n);

  std::optional<double> closeness(const Graph& g);
  std::optional<double> betweenness(const Graph& g);
  double clustering(const Graph& g);
  std::optional<double> constraint(const Graph& g);
  std::optional<int> diameter(const Graph& g);

 private:
  // Copies the adjacency into a flat CSR layout; the BFS sweeps run on it.
  void load_csr(const Graph& g);
  // BFS from source over the loaded CSR; returns visited count. Fills
  // dist_ and order_.
  int bfs(int source);

  int n_;
  std::vector<int> csr_start_;
  std::vector<int> csr_adj_;
  std::vector<int> dist_;
  std::vector<int> order_;
  std::vector<double> sigma_;
  std::vector<double> delta_;
  std::vector<double> accum_;
};

}  // namespace nksearch
