#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "coordscope/community.hpp"
#include "coordscope/corpus.hpp"
#include "coordscope/graph.hpp"

namespace coordscope {

/// Internal and external link mass of a node set and its E/I index.
struct EIEntry {
  double internal = 0.0;  // IL
  double external = 0.0;  // EL
  double ei = 0.0;        // (EL - IL) / (EL + IL)
};

/// IL counts edges with both endpoints in `subgroup`, EL edges with exactly
/// one. Unweighted counts links; weighted sums edge weights. Throws
/// ArgumentError for unknown or repeated nodes and UndefinedError when
/// EL + IL = 0.
EIEntry ei_counts(const WeightedGraph& g, std::span<const NodeId> subgroup, bool weighted = false);
double ei_index(const WeightedGraph& g, std::span<const NodeId> subgroup, bool weighted = false);
/// Label-based convenience; unknown labels are an ArgumentError.
double ei_index(const WeightedGraph& g, const std::set<std::string>& subgroup, bool weighted = false);

/// Whole-network E/I over a grouping: edges between two assigned nodes are
/// internal when the groups match and external otherwise. Nodes with group
/// -1 are ignored. UndefinedError when no edge joins two assigned nodes.
EIEntry grouped_ei(const WeightedGraph& g, std::span<const int> group, bool weighted = false);

struct TimeWindow {
  Timestamp from;
  Timestamp to;  // exclusive
};

struct PolarizationOptions {
  std::uint64_t seed = 1;
  double resolution = 1.0;
  bool weighted = false;
  /// Drop the discovered agents' tweets from the pre window.
  bool exclude_discovered_from_pre = true;
  /// Subgroups smaller than this are left out of the rows (still counted).
  std::size_t min_subgroup_size = 2;
};

struct SubgroupEI {
  int subgroup = 0;
  std::vector<std::string> members;  // sorted labels
  std::optional<int> theme;
  std::optional<EIEntry> post;      // empty when the subgroup has no links
  std::optional<EIEntry> baseline;  // empty when not computable on the pre network
  std::size_t present_in_pre = 0;
};

struct EIReport {
  std::vector<SubgroupEI> rows;
  std::optional<EIEntry> before;  // whole pre network under the projected subgroups
  std::optional<EIEntry> after;   // whole post network under its own subgroups
  std::size_t omitted_subgroups = 0;
  std::size_t pre_nodes = 0;
  std::size_t post_nodes = 0;
  bool weighted = false;
  bool pre_excludes_discovered = true;
  TimeWindow pre_window{};
  TimeWindow post_window{};
};

/// Louvain subgroups of the post-window communication network, their E/I
/// there, and baselines from the pre-window network restricted to the
/// members present in it. Throws ArgumentError when a window holds no
/// tweets.
EIReport polarization_report(const Corpus& corpus, const std::set<std::string>& discovered, TimeWindow pre,
                             TimeWindow post, const PolarizationOptions& options = {});

/// Links each subgroup to the most frequent topic among the tweets its
/// members authored (lowest topic id on ties). `topic_of_tweet` maps tweet
/// ids to a topic, e.g. each document's dominant topic.
void assign_themes(EIReport& report, const Corpus& corpus, const std::map<std::string, int>& topic_of_tweet);

/// "subgroup,size,theme,IL,EL,ei,baseline_IL,baseline_EL,baseline_ei,baseline_status";
/// the first row, "before", is the whole pre network.
void write_ei_report(std::ostream& out, const EIReport& report);

}  // namespace coordscope
