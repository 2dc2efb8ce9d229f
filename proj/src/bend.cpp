#include "coordscope/bend.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "coordscope/error.hpp"
#include "coordscope/text.hpp"

namespace coordscope {

namespace {

constexpr std::array<std::string_view, kNumManeuvers> kManeuverNames = {
    "back", "build", "bridge", "boost", "dismay", "dismiss", "distort", "distract",
};

constexpr std::array<std::string_view, 20> kNegativeEmoji = {
    "\xF0\x9F\x98\xA0",  // angry face
    "\xF0\x9F\x98\xA1",  // pouting face
    "\xF0\x9F\xA4\xAC",  // face with symbols on mouth
    "\xF0\x9F\x98\xA2",  // crying face
    "\xF0\x9F\x98\xAD",  // loudly crying face
    "\xF0\x9F\x98\x9E",  // disappointed face
    "\xF0\x9F\x98\x94",  // pensive face
    "\xF0\x9F\x98\x9F",  // worried face
    "\xF0\x9F\x98\xA4",  // face with steam from nose
    "\xF0\x9F\x98\xA9",  // weary face
    "\xF0\x9F\x98\xAB",  // tired face
    "\xF0\x9F\x98\xB1",  // screaming in fear
    "\xF0\x9F\x98\x92",  // unamused face
    "\xF0\x9F\x92\x94",  // broken heart
    "\xF0\x9F\x91\x8E",  // thumbs down
    "\xE2\x98\xB9",      // frowning face
    ":-(",
    ":'(",
    ">:(",
    ":(",
};

int count_occurrences(std::string_view haystack, std::string_view needle) {
  int n = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

std::string_view to_string(Maneuver m) { return kManeuverNames[static_cast<std::size_t>(m)]; }

std::optional<Maneuver> parse_maneuver(std::string_view name) {
  for (std::size_t i = 0; i < kManeuverNames.size(); ++i) {
    if (kManeuverNames[i] == name) return static_cast<Maneuver>(i);
  }
  return std::nullopt;
}

CueVector extract_cues(const Tweet& tweet, const Lexicon& lexicon) {
  CueVector cues;
  for (const auto& tok : content_tokens(tweet.text)) {
    if (auto cat = lexicon.lookup(tok)) ++cues.category[static_cast<std::size_t>(*cat)];
  }
  const std::string_view text = tweet.text;
  cues.question_marks = static_cast<int>(std::count(text.begin(), text.end(), '?'));
  cues.exclamations = static_cast<int>(std::count(text.begin(), text.end(), '!'));
  int emoji = 0;
  for (std::string_view e : kNegativeEmoji) emoji += count_occurrences(text, e);
  // Every ">:(" also matched ":(".
  emoji -= count_occurrences(text, ">:(");
  cues.negative_emoji = emoji;
  return cues;
}

std::set<std::string> identify_opinion_leaders(const Corpus& corpus, double percentile) {
  if (!(percentile >= 0.0 && percentile <= 1.0)) throw ArgumentError("percentile must lie in [0, 1]");
  std::vector<double> followers;
  for (const auto& [id, a] : corpus.agents()) {
    if (a.followers_count) followers.push_back(static_cast<double>(*a.followers_count));
  }
  if (followers.empty()) throw ArgumentError("no agent carries a follower count");
  std::sort(followers.begin(), followers.end());
  const double pos = percentile * static_cast<double>(followers.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, followers.size() - 1);
  const double cutoff = followers[lo] + (pos - static_cast<double>(lo)) * (followers[hi] - followers[lo]);

  std::set<std::string> leaders;
  for (const auto& [id, a] : corpus.agents()) {
    if (a.followers_count && static_cast<double>(*a.followers_count) >= cutoff) leaders.insert(id);
  }
  return leaders;
}

std::optional<int> ManeuverContext::community_of(std::string_view agent) const {
  auto node = community_network.find(agent);
  if (!node || agent_partition.assignment.size() != community_network.num_nodes()) return std::nullopt;
  return agent_partition.assignment[*node];
}

ManeuverContext build_context(const Corpus& corpus, const Corpus& community_corpus,
                              const ContextOptions& options) {
  ManeuverContext ctx;
  ctx.opinion_leaders = identify_opinion_leaders(corpus, options.leader_percentile);
  ctx.community_network = build_communication_network(community_corpus);
  ctx.agent_partition = louvain(ctx.community_network, options.seed, options.resolution).partition;

  // Tweets are sorted by (created_at, id), so the first sighting wins.
  std::map<std::string, std::set<std::string>> tag_users;
  for (const auto& t : corpus.tweets()) {
    for (const auto& tag : t.hashtags) {
      ctx.hashtag_first_use.try_emplace(tag, FirstUse{t.created_at, t.id, t.author_id});
      tag_users[tag].insert(t.author_id);
    }
  }
  for (const auto& [tag, users] : tag_users) {
    std::map<int, std::size_t> counts;
    for (const auto& u : users) {
      if (auto c = ctx.community_of(u)) ++counts[*c];
    }
    for (const auto& [c, n] : counts) {
      if (2 * n > users.size()) {
        ctx.hashtag_majority_community.emplace(tag, c);
        break;
      }
    }
  }
  return ctx;
}

ManeuverWeights::ManeuverWeights() {
  for (std::size_t m = 0; m < kNumManeuvers; ++m) weights[m].assign(kIndicatorCounts[m], 1.0);
}

void ManeuverWeights::validate() const {
  for (std::size_t m = 0; m < kNumManeuvers; ++m) {
    const auto name = std::string(kManeuverNames[m]);
    if (weights[m].size() != kIndicatorCounts[m]) {
      throw ArgumentError(fmt::format("maneuver '{}' takes {} indicator weights", name, kIndicatorCounts[m]));
    }
    double sum = 0.0;
    for (double w : weights[m]) {
      if (!(w >= 0.0)) throw ArgumentError("maneuver '" + name + "' has a negative weight");
      sum += w;
    }
    if (!(sum > 0.0)) throw ArgumentError("maneuver '" + name + "' weights sum to zero");
  }
}

// Indicator order per maneuver:
//   back:     encouragement cue; mentions an opinion leader
//   build:    mentions >= 2 agents; join-invitation cue; mentions someone of the author's community
//   bridge:   mentions span >= 2 communities; carries a tag whose majority users sit in another community
//   boost:    mentions >= 3 agents; joint-activity cue; mentions >= 2 agents of one community
//   dismay:   negative-emotion cue or negative emoji
//   dismiss:  belittling cue; unimportance cue
//   distort:  doubt/equivocal cue; question mark
//   distract: first corpus use of a tag; rhetorical cue or exclamation
ManeuverIndicators maneuver_indicators(const Tweet& tweet, const CueVector& cues,
                                       const ManeuverContext& ctx) {
  std::vector<std::string_view> mentioned;
  for (const auto& m : tweet.mentions) {
    if (m != tweet.author_id) mentioned.push_back(m);
  }
  const auto author_comm = ctx.community_of(tweet.author_id);

  bool leader = false;
  bool same_community = false;
  std::map<int, std::size_t> per_community;
  for (auto m : mentioned) {
    leader = leader || ctx.opinion_leaders.count(std::string(m)) != 0;
    if (auto c = ctx.community_of(m)) {
      ++per_community[*c];
      same_community = same_community || (author_comm && *c == *author_comm);
    }
  }
  std::size_t largest_block = 0;
  for (const auto& [c, n] : per_community) largest_block = std::max(largest_block, n);

  bool foreign_tag = false;
  bool first_use = false;
  for (const auto& tag : tweet.hashtags) {
    if (author_comm) {
      auto it = ctx.hashtag_majority_community.find(tag);
      foreign_tag = foreign_tag || (it != ctx.hashtag_majority_community.end() && it->second != *author_comm);
    }
    auto fu = ctx.hashtag_first_use.find(tag);
    first_use = first_use || (fu != ctx.hashtag_first_use.end() && fu->second.tweet_id == tweet.id);
  }

  auto cue = [&](CueCategory c) { return cues[c] > 0; };
  ManeuverIndicators ind;
  auto set = [&](Maneuver m, std::initializer_list<bool> flags) {
    std::size_t i = 0;
    for (bool f : flags) ind.flags[static_cast<std::size_t>(m)][i++] = f;
  };
  set(Maneuver::back, {cue(CueCategory::encouragement), leader});
  set(Maneuver::build, {mentioned.size() >= 2, cue(CueCategory::join_invitation), same_community});
  set(Maneuver::bridge, {per_community.size() >= 2, foreign_tag});
  set(Maneuver::boost, {mentioned.size() >= 3, cue(CueCategory::joint_activity), largest_block >= 2});
  set(Maneuver::dismay, {cue(CueCategory::negative_emotion) || cues.negative_emoji > 0});
  set(Maneuver::dismiss, {cue(CueCategory::belittling), cue(CueCategory::unimportance)});
  set(Maneuver::distort, {cue(CueCategory::doubt_equivocal), cues.question_marks > 0});
  set(Maneuver::distract, {first_use, cue(CueCategory::rhetorical) || cues.exclamations > 0});
  return ind;
}

ManeuverScores score_maneuvers(const Tweet& tweet, const CueVector& cues, const ManeuverContext& ctx,
                               const ManeuverWeights& weights) {
  const auto ind = maneuver_indicators(tweet, cues, ctx);
  ManeuverScores s;
  for (std::size_t m = 0; m < kNumManeuvers; ++m) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < kIndicatorCounts[m]; ++i) {
      num += ind.flags[m][i] ? weights.weights[m][i] : 0.0;
      den += weights.weights[m][i];
    }
    s.values[m] = num / den;
  }
  return s;
}

std::vector<ManeuverScores> score_tweets_serial(const Corpus& corpus, const Lexicon& lexicon,
                                                const ManeuverContext& ctx,
                                                const ManeuverWeights& weights) {
  weights.validate();
  std::vector<ManeuverScores> out;
  out.reserve(corpus.tweets().size());
  for (const auto& t : corpus.tweets()) out.push_back(score_maneuvers(t, extract_cues(t, lexicon), ctx, weights));
  return out;
}

std::vector<ManeuverScores> score_tweets(const Corpus& corpus, const Lexicon& lexicon,
                                         const ManeuverContext& ctx, const ManeuverWeights& weights) {
  weights.validate();
  const auto& tweets = corpus.tweets();
  std::vector<ManeuverScores> out(tweets.size());
  const long n = static_cast<long>(tweets.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (long i = 0; i < n; ++i) {
    const auto& t = tweets[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = score_maneuvers(t, extract_cues(t, lexicon), ctx, weights);
  }
  return out;
}

ManeuverScores agent_maneuver_profile(std::string_view agent, const Corpus& corpus,
                                      std::span<const ManeuverScores> scores) {
  if (scores.size() != corpus.tweets().size()) throw ArgumentError("scores are not aligned with the corpus");
  const auto& idx = corpus.tweets_by(agent);
  if (idx.empty()) throw ArgumentError("agent '" + std::string(agent) + "' authored no tweets");
  ManeuverScores mean;
  for (std::size_t i : idx) {
    for (std::size_t m = 0; m < kNumManeuvers; ++m) mean.values[m] += scores[i].values[m];
  }
  for (auto& v : mean.values) v /= static_cast<double>(idx.size());
  return mean;
}

namespace {

std::pair<ManeuverScores, std::size_t> group_mean(const std::set<std::string>& group, const Corpus& corpus,
                                                  std::span<const ManeuverScores> scores) {
  ManeuverScores sum;
  std::size_t n = 0;
  for (const auto& id : group) {
    if (corpus.tweets_by(id).empty()) continue;
    const auto p = agent_maneuver_profile(id, corpus, scores);
    for (std::size_t m = 0; m < kNumManeuvers; ++m) sum.values[m] += p.values[m];
    ++n;
  }
  if (n == 0) throw ArgumentError("group has no agent with tweets");
  for (auto& v : sum.values) v /= static_cast<double>(n);
  return {sum, n};
}

}  // namespace

GroupComparison compare_groups(const std::set<std::string>& group_a, const std::set<std::string>& group_b,
                               const Corpus& corpus, std::span<const ManeuverScores> scores) {
  if (group_a.empty() || group_b.empty()) throw ArgumentError("groups must be non-empty");
  for (const auto& id : group_a) {
    if (group_b.count(id)) throw ArgumentError("groups overlap on agent '" + id + "'");
  }
  GroupComparison cmp;
  std::tie(cmp.mean_a, cmp.size_a) = group_mean(group_a, corpus, scores);
  std::tie(cmp.mean_b, cmp.size_b) = group_mean(group_b, corpus, scores);
  for (std::size_t m = 0; m < kNumManeuvers; ++m) {
    cmp.difference.values[m] = cmp.mean_a.values[m] - cmp.mean_b.values[m];
  }
  return cmp;
}

void write_comparison_csv(std::ostream& out, const GroupComparison& cmp, std::string_view label_a,
                          std::string_view label_b) {
  out << "maneuver," << label_a << ',' << label_b << ",difference\n";
  for (auto m : kAllManeuvers) {
    out << fmt::format("{},{:.6f},{:.6f},{:.6f}\n", to_string(m), cmp.mean_a[m], cmp.mean_b[m],
                       cmp.difference[m]);
  }
}

}  // namespace coordscope
