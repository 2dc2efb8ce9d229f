#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "coordscope/corpus.hpp"
#include "coordscope/kv_config.hpp"

namespace coordscope {

struct TopicVocabulary {
  std::vector<std::string> words;
  std::vector<std::string> hashtags;  // proper (non-anomalous) tags, without '#'
};

/// Parameters of a synthetic hijacking scenario.
///
/// Organic agents live in friend circles of `circle_size`; circles are
/// dealt round-robin to the topic vocabularies. Before
/// `polarization_start_day` a mention stays in the circle with probability
/// `within_circle_pre`, afterwards with `within_circle_post`; otherwise it
/// goes to a uniform organic agent or influencer.
struct CampaignConfig {
  std::size_t n_organic_agents = 1000;
  std::size_t n_coordinated_agents = 60;
  std::size_t n_influencers = 5;
  int n_days = 7;
  std::chrono::sys_days start_date = std::chrono::sys_days{std::chrono::year{2021} / 5 / 14};

  int organic_min_tweets_per_day = 0;
  int organic_max_tweets_per_day = 3;
  int influencer_min_tweets_per_day = 1;
  int influencer_max_tweets_per_day = 4;
  std::size_t tweets_per_coordinated_agent = 4;

  int burst_day = 1;
  double burst_fraction = 0.85;

  std::size_t circle_size = 25;
  double within_circle_pre = 0.5;
  double within_circle_post = 0.92;
  int polarization_start_day = 3;
  double organic_mention_probability = 0.8;
  double organic_retweet_probability = 0.15;
  double organic_second_mention_probability = 0.1;
  std::size_t organic_words_min = 6;
  std::size_t organic_words_max = 12;

  double influencer_encouragement_probability = 0.8;
  double influencer_peer_mention_probability = 0.7;

  std::vector<TopicVocabulary> topics;
  std::vector<std::string> filler_words;  // stopword-like glue, shared by all topics
  std::vector<std::string> encouragement_words;

  /// Slots: {time} {praise} {city} {mention}. Mentions beyond the slot are appended.
  std::vector<std::string> coordinated_templates;
  std::vector<std::string> time_phrases;
  std::vector<std::string> praise_phrases;
  std::vector<std::string> cities;
  std::size_t n_anomalous_hashtags = 12;
  std::size_t anomalous_tags_per_tweet = 2;
  double influencer_target_probability = 0.7;
  double fellow_mention_probability = 0.8;
  std::size_t target_pool_size = 40;
  double target_mention_probability = 0.4;

  double bot_fraction_coordinated = 0.23;
  double bot_fraction_organic = 0.22;

  std::uint64_t seed = 1;
};

/// Built-in scenario; data/synth_default.conf spells out the same values.
CampaignConfig default_campaign_config();

/// Keys mirror the field names; topics as topic.N.words / topic.N.hashtags,
/// templates as template.N. Unknown keys are an ArgumentError. Missing keys
/// keep the built-in defaults.
CampaignConfig campaign_config_from(const KeyValueConfig& kv);
CampaignConfig load_campaign_config(const std::filesystem::path& path);
/// Inverse of campaign_config_from.
void write_campaign_config(std::ostream& out, const CampaignConfig& config);

struct ConfigCheck {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

/// Never throws; collects every violated invariant.
ConfigCheck validate_config(const CampaignConfig& config);

enum class AgentRole { organic, coordinated, influencer };
std::string_view to_string(AgentRole r);

struct TweetLabel {
  bool campaign = false;
  int template_id = -1;  // campaign tweets only
  int topic = -1;        // organic and influencer tweets only
};

struct GroundTruth {
  std::map<std::string, AgentRole> roles;
  std::map<std::string, bool> bot;
  std::map<std::string, TweetLabel> tweets;
  std::set<std::string> target_pool;

  std::set<std::string> with_role(AgentRole r) const;
};

struct SyntheticCampaign {
  std::vector<TweetRecord> records;  // in emission order (sorted by time, then id)
  GroundTruth truth;

  Corpus corpus() const { return Corpus::from_records(records); }
};

/// Deterministic in config.seed. Throws ArgumentError listing the errors of
/// an invalid config and Error when the post-generation self-check fails.
SyntheticCampaign generate(const CampaignConfig& config);

/// Failed planted-proportion checks, empty when the campaign is consistent
/// with its config.
std::vector<std::string> self_check(const SyntheticCampaign& campaign, const CampaignConfig& config);

void write_corpus(std::ostream& out, const SyntheticCampaign& campaign);
/// One JSON object per line: agents ({"kind":"agent",...}), then tweets.
void write_ground_truth(std::ostream& out, const GroundTruth& truth);
GroundTruth read_ground_truth(std::istream& in);

}  // namespace coordscope
