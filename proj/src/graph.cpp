#include "coordscope/graph.hpp"

#include <algorithm>
#include <set>

#include "coordscope/corpus.hpp"
#include "coordscope/error.hpp"

namespace coordscope {

std::optional<NodeId> WeightedGraph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double WeightedGraph::weight(NodeId a, NodeId b) const {
  for (const auto& nb : neighbors(a)) {
    if (nb.node == b) return nb.weight;
  }
  return 0.0;
}

void GraphBuilder::add_node(const std::string& label) { nodes_.try_emplace(label, 0.0); }

void GraphBuilder::add_edge(const std::string& a, const std::string& b, double weight) {
  if (!(weight > 0.0)) throw ArgumentError("edge weight must be positive");
  add_node(a);
  add_node(b);
  if (a == b) return;
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  edges_[key] += weight;
}

void GraphBuilder::add_frequency(const std::string& label, double amount) {
  nodes_[label] += amount;
  has_frequency_ = true;
}

WeightedGraph GraphBuilder::build() const {
  WeightedGraph g;
  g.labels_.reserve(nodes_.size());
  for (const auto& [label, freq] : nodes_) {
    g.index_.emplace(label, static_cast<NodeId>(g.labels_.size()));
    g.labels_.push_back(label);
    if (has_frequency_) g.frequency_.push_back(freq);
  }
  const std::size_t n = g.labels_.size();
  g.edges_.reserve(edges_.size());
  std::vector<std::size_t> degree(n, 0);
  // std::map iteration is lexicographic on (a, b); labels map monotonically
  // to ids, so edges come out sorted by (u, v).
  for (const auto& [key, w] : edges_) {
    const NodeId u = g.index_.at(key.first);
    const NodeId v = g.index_.at(key.second);
    g.edges_.push_back({u, v, w});
    g.total_weight_ += w;
    ++degree[u];
    ++degree[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : g.edges_) {
    g.adjacency_[cursor[e.u]++] = {e.v, e.weight};
    g.adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return g;
}

WeightedGraph build_communication_network(const Corpus& corpus) {
  GraphBuilder b;
  for (const auto& [id, agent] : corpus.agents()) b.add_node(id);
  for (const auto& t : corpus.tweets()) {
    std::set<std::string> referenced(t.mentions.begin(), t.mentions.end());
    if (t.retweet_of_author) referenced.insert(*t.retweet_of_author);
    for (const auto& r : referenced) {
      if (r != t.author_id) b.add_edge(t.author_id, r, 1.0);
    }
  }
  return b.build();
}

WeightedGraph build_hashtag_cooccurrence(const Corpus& corpus) {
  GraphBuilder b;
  for (const auto& t : corpus.tweets()) {
    // Tags are unique per tweet after normalization.
    for (const auto& tag : t.hashtags) b.add_frequency(tag, 1.0);
    for (std::size_t i = 0; i < t.hashtags.size(); ++i) {
      for (std::size_t j = i + 1; j < t.hashtags.size(); ++j) {
        b.add_edge(t.hashtags[i], t.hashtags[j], 1.0);
      }
    }
  }
  return b.build();
}

}  // namespace coordscope
