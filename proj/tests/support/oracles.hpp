#pragma once

// Independent reference computations used only by tests. None of these
// share code with the library kernels they check.

#include <cstdint>
#include <vector>

#include "coordscope/graph.hpp"
#include "coordscope/rng.hpp"

namespace oracle {

/// Dense symmetric adjacency (weights) of g.
std::vector<std::vector<double>> adjacency(const coordscope::WeightedGraph& g);

/// Betweenness by listing every shortest path explicitly: for each
/// unordered pair, all hop-shortest paths are enumerated by DFS and every
/// interior node gets (paths through it) / (all paths).
std::vector<double> enumerated_betweenness(const coordscope::WeightedGraph& g);

/// Q = 1/(2m) sum_ij [A_ij - gamma k_i k_j / (2m)] delta(c_i, c_j).
double direct_modularity(const coordscope::WeightedGraph& g, const std::vector<int>& labels,
                         double gamma = 1.0);

struct BestPartition {
  std::vector<int> labels;
  double modularity;
};

/// Exhaustive search over all set partitions (restricted growth strings).
BestPartition best_partition(const coordscope::WeightedGraph& g, double gamma = 1.0);

/// G(n, p) on labels "n0".."n{n-1}"; integer weights in [1, max_weight].
coordscope::WeightedGraph random_graph(coordscope::Rng& rng, std::size_t n, double p, int max_weight = 1);

/// max_i |(A x)_i - lambda x_i|.
double eigen_residual(const coordscope::WeightedGraph& g, const std::vector<double>& x, double lambda);

}  // namespace oracle
