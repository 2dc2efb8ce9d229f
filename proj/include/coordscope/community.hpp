#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "coordscope/graph.hpp"

namespace coordscope {

/// Node -> community assignment indexed by NodeId, ids dense from 0.
struct Partition {
  std::vector<int> assignment;
  int num_communities = 0;

  /// Renumbers arbitrary non-negative labels to 0..k-1 in order of first
  /// appearance by node id.
  static Partition from_labels(const std::vector<int>& labels);
  static Partition singletons(std::size_t n);
  static Partition single(std::size_t n);

  std::vector<std::vector<NodeId>> members() const;
  bool operator==(const Partition&) const = default;
};

/// Weighted Newman-Girvan modularity with resolution gamma:
/// Q = sum_c [ in_c / 2m - gamma (tot_c / 2m)^2 ].
/// Throws UndefinedError when the graph has zero total edge weight and
/// ArgumentError when the partition does not cover the graph.
double modularity(const WeightedGraph& g, const Partition& p, double resolution = 1.0);

struct LouvainResult {
  Partition partition;
  std::vector<double> level_modularity;  // after each aggregation level
  bool degenerate = false;               // edgeless input: all singletons
};

/// Classic two-phase Louvain: local moves to the best modularity gain, then
/// aggregation, repeated until a level moves no node. Node visit order in
/// each level is shuffled with a generator seeded from `seed`, so results
/// are reproducible.
LouvainResult louvain(const WeightedGraph& g, std::uint64_t seed, double resolution = 1.0);

/// Two-column "node community" text, one line per node.
void write_partition(std::ostream& out, const WeightedGraph& g, const Partition& p);
Partition read_partition(std::istream& in, const WeightedGraph& g);

}  // namespace coordscope
