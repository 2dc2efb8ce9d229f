#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coordscope/community.hpp"
#include "coordscope/corpus.hpp"
#include "coordscope/graph.hpp"
#include "coordscope/lexicon.hpp"

namespace coordscope {

enum class Maneuver { back, build, bridge, boost, dismay, dismiss, distort, distract };

inline constexpr std::size_t kNumManeuvers = 8;
inline constexpr std::array<Maneuver, kNumManeuvers> kAllManeuvers = {
    Maneuver::back,   Maneuver::build,   Maneuver::bridge,  Maneuver::boost,
    Maneuver::dismay, Maneuver::dismiss, Maneuver::distort, Maneuver::distract,
};

std::string_view to_string(Maneuver m);
std::optional<Maneuver> parse_maneuver(std::string_view name);

/// Eight B-/D- maneuver values, each in [0, 1].
struct ManeuverScores {
  std::array<double, kNumManeuvers> values{};

  double operator[](Maneuver m) const { return values[static_cast<std::size_t>(m)]; }
  double& operator[](Maneuver m) { return values[static_cast<std::size_t>(m)]; }
  bool operator==(const ManeuverScores&) const = default;
};

struct CueVector {
  std::array<int, kNumCueCategories> category{};
  int question_marks = 0;
  int exclamations = 0;
  int negative_emoji = 0;  // negative emoji code points plus ":(" style emoticons

  int operator[](CueCategory c) const { return category[static_cast<std::size_t>(c)]; }
  bool operator==(const CueVector&) const = default;
};

/// Lexicon hits over content tokens; punctuation and emoji counted on the
/// raw text.
CueVector extract_cues(const Tweet& tweet, const Lexicon& lexicon);

/// Agents whose followers_count is >= the `percentile` quantile (linear
/// interpolation between order statistics) of the followers distribution
/// over agents that carry a count. Ties are kept. Throws ArgumentError when
/// no agent has a follower count.
std::set<std::string> identify_opinion_leaders(const Corpus& corpus, double percentile = 0.90);

struct FirstUse {
  Timestamp at{};
  std::string tweet_id;
  std::string agent;
};

/// Corpus-level facts the network indicators need.
struct ManeuverContext {
  std::set<std::string> opinion_leaders;
  WeightedGraph community_network;  // communication network the partition is over
  Partition agent_partition;
  /// First tweet carrying each tag, by (created_at, tweet id).
  std::map<std::string, FirstUse> hashtag_first_use;
  /// Community holding a strict majority of a tag's distinct users.
  std::map<std::string, int> hashtag_majority_community;

  std::optional<int> community_of(std::string_view agent) const;
};

struct ContextOptions {
  double leader_percentile = 0.90;
  std::uint64_t seed = 1;
  double resolution = 1.0;
};

/// Opinion leaders and hashtag facts come from `corpus`; agent communities
/// come from Louvain on the communication network of `community_corpus`
/// (the discovery window in the pipeline). Agents absent from that network
/// have no community.
ManeuverContext build_context(const Corpus& corpus, const Corpus& community_corpus,
                              const ContextOptions& options = {});

inline constexpr std::array<std::size_t, kNumManeuvers> kIndicatorCounts = {2, 3, 2, 3, 1, 2, 2, 2};

/// Binary indicators per maneuver, in the order documented in bend.cpp.
struct ManeuverIndicators {
  std::array<std::array<bool, 3>, kNumManeuvers> flags{};
};

/// Per-maneuver indicator weights; a score is the weighted mean of its
/// indicators. Defaults to uniform weights.
struct ManeuverWeights {
  std::array<std::vector<double>, kNumManeuvers> weights;

  ManeuverWeights();
  /// Throws ArgumentError on wrong sizes, negative weights or a zero sum.
  void validate() const;
};

ManeuverIndicators maneuver_indicators(const Tweet& tweet, const CueVector& cues,
                                       const ManeuverContext& ctx);

ManeuverScores score_maneuvers(const Tweet& tweet, const CueVector& cues, const ManeuverContext& ctx,
                               const ManeuverWeights& weights = {});

/// Scores for every tweet of the corpus, aligned with corpus.tweets().
/// Tweets are scored in parallel; the serial variant is the reference.
std::vector<ManeuverScores> score_tweets(const Corpus& corpus, const Lexicon& lexicon,
                                         const ManeuverContext& ctx, const ManeuverWeights& weights = {});
std::vector<ManeuverScores> score_tweets_serial(const Corpus& corpus, const Lexicon& lexicon,
                                                const ManeuverContext& ctx,
                                                const ManeuverWeights& weights = {});

/// Mean of the agent's tweet scores. Throws ArgumentError when the agent
/// authored nothing. `scores` must be aligned with corpus.tweets().
ManeuverScores agent_maneuver_profile(std::string_view agent, const Corpus& corpus,
                                      std::span<const ManeuverScores> scores);

struct GroupComparison {
  std::size_t size_a = 0;  // agents with at least one tweet
  std::size_t size_b = 0;
  ManeuverScores mean_a;
  ManeuverScores mean_b;
  ManeuverScores difference;  // a - b
};

/// Mean agent profile of each group. Groups must be non-empty and
/// disjoint; agents without tweets are skipped, and a group left with no
/// scored agent is an ArgumentError.
GroupComparison compare_groups(const std::set<std::string>& group_a,
                               const std::set<std::string>& group_b, const Corpus& corpus,
                               std::span<const ManeuverScores> scores);

/// "maneuver,<label_a>,<label_b>,difference" rows, one per maneuver.
void write_comparison_csv(std::ostream& out, const GroupComparison& cmp, std::string_view label_a,
                          std::string_view label_b);

}  // namespace coordscope
