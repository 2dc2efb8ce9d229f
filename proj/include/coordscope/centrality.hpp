#pragma once

#include <vector>

#include "coordscope/graph.hpp"

namespace coordscope {

/// Exact shortest-path betweenness (pair-dependency accumulation), hop
/// distances, each unordered pair counted once, not normalized.
///
/// Sources are processed in fixed-size blocks: dependencies inside a block
/// are computed in parallel and then summed in source order, so the result
/// is bit-identical to betweenness_centrality_serial for any thread count.
std::vector<double> betweenness_centrality(const WeightedGraph& g);
std::vector<double> betweenness_centrality_serial(const WeightedGraph& g);

struct EigenvectorResult {
  std::vector<double> scores;  // by NodeId; 0 outside the largest component
  double eigenvalue = 0.0;     // Rayleigh quotient on the component
  int iterations = 0;
  bool converged = false;
};

/// Power iteration on the weighted adjacency of the largest connected
/// component (ties go to the component holding the smallest node id).
/// Iterates x <- (A + I) x, which has the eigenvectors of A but does not
/// oscillate on bipartite components. Unit Euclidean norm, non-negative.
/// Converged when successive iterates differ by < tol in max-norm.
/// Throws ArgumentError on an empty graph.
EigenvectorResult eigenvector_centrality(const WeightedGraph& g, double tol = 1e-8,
                                         int max_iter = 1000);
EigenvectorResult eigenvector_centrality_serial(const WeightedGraph& g, double tol = 1e-8,
                                                int max_iter = 1000);

/// Sum of incident edge weights.
std::vector<double> total_degree_centrality(const WeightedGraph& g);

/// Components as sorted node lists, ordered by their smallest node.
std::vector<std::vector<NodeId>> connected_components(const WeightedGraph& g);

struct CentralityScores {
  std::vector<double> betweenness;
  EigenvectorResult eigenvector;
  std::vector<double> total_degree;
};

CentralityScores compute_centralities(const WeightedGraph& g);

}  // namespace coordscope
