#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace coordscope {

class Corpus;

using NodeId = std::uint32_t;

struct Neighbor {
  NodeId node;
  double weight;
};

struct Edge {
  NodeId u;  // u < v
  NodeId v;
  double weight;
};

/// Undirected weighted graph without self-loops. Nodes are sorted by label,
/// edges are stored once with u < v and sorted, and adjacency is kept in
/// CSR form for traversal.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  std::size_t num_nodes() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::string& label(NodeId n) const { return labels_[n]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;

  std::span<const Neighbor> neighbors(NodeId n) const {
    return {adjacency_.data() + offsets_[n], adjacency_.data() + offsets_[n + 1]};
  }
  const std::vector<Edge>& edges() const { return edges_; }
  /// 0 when the nodes are not adjacent.
  double weight(NodeId a, NodeId b) const;
  double total_weight() const { return total_weight_; }

  /// Per-node usage frequency, empty when the builder did not set any.
  const std::vector<double>& frequency() const { return frequency_; }

 private:
  friend class GraphBuilder;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> frequency_;
  double total_weight_ = 0.0;
};

/// Accumulates nodes and edge weight by label. Self-loops are dropped and
/// repeated edges sum. Weights must be positive.
class GraphBuilder {
 public:
  void add_node(const std::string& label);
  void add_edge(const std::string& a, const std::string& b, double weight = 1.0);
  void add_frequency(const std::string& label, double amount = 1.0);

  WeightedGraph build() const;

 private:
  std::map<std::string, double> nodes_;  // label -> frequency
  std::map<std::pair<std::string, std::string>, double> edges_;
  bool has_frequency_ = false;
};

/// Agents of the corpus as nodes; one unit of weight per (tweet, referenced
/// agent) pair where the referenced agents are the tweet's mentions plus its
/// retweet target, so "RT @x" listing x in both places counts once.
WeightedGraph build_communication_network(const Corpus& corpus);

/// Distinct hashtags as nodes with usage frequency; edge weight is the
/// number of tweets containing both tags.
WeightedGraph build_hashtag_cooccurrence(const Corpus& corpus);

/// Induced subgraph on the nodes whose labels pass `keep`.
template <typename Pred>
WeightedGraph induced_subgraph(const WeightedGraph& g, Pred keep) {
  GraphBuilder b;
  for (NodeId n = 0; n < g.num_nodes(); ++n) {
    if (keep(g.label(n))) b.add_node(g.label(n));
  }
  for (const auto& e : g.edges()) {
    if (keep(g.label(e.u)) && keep(g.label(e.v))) b.add_edge(g.label(e.u), g.label(e.v), e.weight);
  }
  return b.build();
}

}  // namespace coordscope
