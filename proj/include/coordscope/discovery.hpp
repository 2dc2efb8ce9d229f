#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coordscope/community.hpp"
#include "coordscope/corpus.hpp"
#include "coordscope/graph.hpp"

namespace coordscope {

/// A campaign marker tag: exactly four characters from [a-z0-9] with at
/// least one digit ("dup6", "892t"). Expects a normalized tag.
bool is_anomalous_hashtag(std::string_view tag);

struct ClusterSummary {
  int community = 0;
  std::size_t size = 0;
  std::size_t anomalous = 0;
  double fraction = 0.0;
};

/// Anomalous-member fraction for every community of the hashtag graph.
std::vector<ClusterSummary> summarize_clusters(const WeightedGraph& hashtag_graph, const Partition& p);

/// Communities with at least `min_size` tags whose anomalous fraction is
/// >= min_fraction (inclusive), mapped to that fraction.
std::map<int, double> flag_coordination_clusters(const WeightedGraph& hashtag_graph,
                                                 const Partition& p, double min_fraction = 0.5,
                                                 std::size_t min_size = 3);

struct Evidence {
  std::string tweet_id;
  std::vector<std::string> anomalous_tags;
  bool operator==(const Evidence&) const = default;
};

struct DiscoveryOptions {
  int window_days = 3;  // leading days used for the hashtag network
  std::uint64_t seed = 1;
  double resolution = 1.0;
  double min_fraction = 0.5;
  std::size_t min_size = 3;
};

struct DiscoveryResult {
  std::set<std::string> anomalous_hashtags;
  std::map<int, double> flagged_clusters;
  std::vector<ClusterSummary> clusters;
  std::set<std::string> coordinated_agents;
  /// Evidence per agent, ordered like the corpus (created_at, tweet id).
  std::map<std::string, std::vector<Evidence>> per_agent_evidence;

  // Discovery-window hashtag network and its Louvain partition.
  WeightedGraph hashtag_graph;
  Partition hashtag_partition;
};

/// Coordinated agents are the authors of any tweet carrying an anomalous
/// tag. Cluster flags come from Louvain on the co-occurrence network of the
/// leading `window_days` days.
DiscoveryResult extract_coordinated_agents(const Corpus& corpus, const DiscoveryOptions& options = {});

/// Union of the agent-level parts (anomalous tags, agents, evidence) of
/// results computed on disjoint windows. Cluster fields are left empty.
DiscoveryResult merge_agent_evidence(const std::vector<DiscoveryResult>& parts);

struct BurstProfile {
  std::map<std::chrono::sys_days, std::size_t> per_day_counts;  // UTC days with tweets
  std::size_t total = 0;
  double peak_fraction = 0.0;
  std::chrono::sys_days peak_day{};
};

/// Per-day tweet counts of the given authors. Throws ArgumentError for an
/// empty agent set and UndefinedError when they authored no tweets.
BurstProfile burst_concentration(const Corpus& corpus, const std::set<std::string>& agents);

std::set<std::string> recurring_agents(const DiscoveryResult& a, const DiscoveryResult& b);

}  // namespace coordscope
