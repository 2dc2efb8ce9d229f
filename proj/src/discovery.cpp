#include "coordscope/discovery.hpp"

#include <algorithm>
#include <iterator>

#include "coordscope/error.hpp"

namespace coordscope {

bool is_anomalous_hashtag(std::string_view tag) {
  if (tag.size() != 4) return false;
  bool digit = false;
  for (char c : tag) {
    const bool is_digit = c >= '0' && c <= '9';
    if (!is_digit && !(c >= 'a' && c <= 'z')) return false;
    digit = digit || is_digit;
  }
  return digit;
}

std::vector<ClusterSummary> summarize_clusters(const WeightedGraph& hashtag_graph, const Partition& p) {
  if (p.assignment.size() != hashtag_graph.num_nodes()) {
    throw ArgumentError("partition does not cover the hashtag graph");
  }
  std::vector<ClusterSummary> out(static_cast<std::size_t>(p.num_communities));
  for (int c = 0; c < p.num_communities; ++c) out[static_cast<std::size_t>(c)].community = c;
  for (NodeId v = 0; v < hashtag_graph.num_nodes(); ++v) {
    auto& s = out[static_cast<std::size_t>(p.assignment[v])];
    ++s.size;
    if (is_anomalous_hashtag(hashtag_graph.label(v))) ++s.anomalous;
  }
  for (auto& s : out) {
    s.fraction = s.size == 0 ? 0.0 : static_cast<double>(s.anomalous) / static_cast<double>(s.size);
  }
  return out;
}

std::map<int, double> flag_coordination_clusters(const WeightedGraph& hashtag_graph,
                                                 const Partition& p, double min_fraction,
                                                 std::size_t min_size) {
  std::map<int, double> flagged;
  for (const auto& s : summarize_clusters(hashtag_graph, p)) {
    if (s.size >= min_size && s.fraction >= min_fraction) flagged.emplace(s.community, s.fraction);
  }
  return flagged;
}

namespace {

void collect_evidence(const Corpus& corpus, DiscoveryResult& r) {
  for (const auto& t : corpus.tweets()) {
    Evidence ev{t.id, {}};
    for (const auto& tag : t.hashtags) {
      if (is_anomalous_hashtag(tag)) ev.anomalous_tags.push_back(tag);
    }
    if (ev.anomalous_tags.empty()) continue;
    r.anomalous_hashtags.insert(ev.anomalous_tags.begin(), ev.anomalous_tags.end());
    r.coordinated_agents.insert(t.author_id);
    r.per_agent_evidence[t.author_id].push_back(std::move(ev));
  }
}

}  // namespace

DiscoveryResult extract_coordinated_agents(const Corpus& corpus, const DiscoveryOptions& options) {
  DiscoveryResult r;
  collect_evidence(corpus, r);
  if (corpus.empty()) return r;

  const auto [from, to] = leading_days(corpus, options.window_days);
  r.hashtag_graph = build_hashtag_cooccurrence(window(corpus, from, to));
  r.hashtag_partition = louvain(r.hashtag_graph, options.seed, options.resolution).partition;
  r.clusters = summarize_clusters(r.hashtag_graph, r.hashtag_partition);
  r.flagged_clusters = flag_coordination_clusters(r.hashtag_graph, r.hashtag_partition,
                                                  options.min_fraction, options.min_size);
  return r;
}

DiscoveryResult merge_agent_evidence(const std::vector<DiscoveryResult>& parts) {
  DiscoveryResult r;
  for (const auto& p : parts) {
    r.anomalous_hashtags.insert(p.anomalous_hashtags.begin(), p.anomalous_hashtags.end());
    r.coordinated_agents.insert(p.coordinated_agents.begin(), p.coordinated_agents.end());
    for (const auto& [agent, evs] : p.per_agent_evidence) {
      auto& dst = r.per_agent_evidence[agent];
      dst.insert(dst.end(), evs.begin(), evs.end());
    }
  }
  return r;
}

BurstProfile burst_concentration(const Corpus& corpus, const std::set<std::string>& agents) {
  if (agents.empty()) throw ArgumentError("burst profile needs a non-empty agent set");
  BurstProfile profile;
  for (const auto& id : agents) {
    for (std::size_t i : corpus.tweets_by(id)) {
      const auto day = std::chrono::floor<std::chrono::days>(corpus.tweets()[i].created_at);
      ++profile.per_day_counts[day];
      ++profile.total;
    }
  }
  if (profile.total == 0) throw UndefinedError("the agent set authored no tweets");
  std::size_t peak = 0;
  for (const auto& [day, count] : profile.per_day_counts) {
    if (count > peak) {
      peak = count;
      profile.peak_day = day;
    }
  }
  profile.peak_fraction = static_cast<double>(peak) / static_cast<double>(profile.total);
  return profile;
}

std::set<std::string> recurring_agents(const DiscoveryResult& a, const DiscoveryResult& b) {
  std::set<std::string> out;
  std::set_intersection(a.coordinated_agents.begin(), a.coordinated_agents.end(),
                        b.coordinated_agents.begin(), b.coordinated_agents.end(),
                        std::inserter(out, out.end()));
  return out;
}

}  // namespace coordscope
