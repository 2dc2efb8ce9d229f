#include <algorithm>
#include <sstream>

#include <doctest.h>

#include "coordscope/discovery.hpp"
#include "coordscope/error.hpp"
#include "coordscope/kv_config.hpp"
#include "coordscope/synthgen.hpp"

using namespace coordscope;

namespace {

std::string text_of(const CampaignConfig& c) {
  std::ostringstream out;
  write_campaign_config(out, c);
  return out.str();
}

bool mentions_error(const ConfigCheck& check, const std::string& needle) {
  return std::any_of(check.errors.begin(), check.errors.end(),
                     [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

CampaignConfig small() {
  auto c = default_campaign_config();
  c.n_organic_agents = 200;
  c.n_coordinated_agents = 20;
  c.target_pool_size = 20;
  return c;
}

}  // namespace

TEST_CASE("the default scenario is valid") {
  const auto check = validate_config(default_campaign_config());
  CHECK(check.ok());
  CHECK(check.warnings.empty());
}

TEST_CASE("validation collects every violation") {
  auto c = default_campaign_config();
  c.burst_day = c.n_days;
  c.within_circle_post = 1.5;
  c.topics[1].words.push_back(c.topics[0].words.front());
  c.topics[1].hashtags.push_back("ab12");
  const auto check = validate_config(c);
  CHECK_FALSE(check.ok());
  CHECK(mentions_error(check, "burst_day"));
  CHECK(mentions_error(check, "within_circle_post"));
  CHECK(mentions_error(check, "appears in topics 0 and 1"));
  CHECK(mentions_error(check, "anomaly rule"));
  CHECK_THROWS_AS(generate(c), ArgumentError);
}

TEST_CASE("shipped config file spells out the default scenario") {
  const auto loaded = load_campaign_config(std::filesystem::path(COORDSCOPE_DATA_DIR) / "synth_default.conf");
  CHECK(text_of(loaded) == text_of(default_campaign_config()));
}

TEST_CASE("config text round trip and unknown keys") {
  auto c = small();
  c.seed = 42;
  c.coordinated_templates.push_back("Ayo {mention}, satu lagi");
  std::istringstream in(text_of(c));
  CHECK(text_of(campaign_config_from(KeyValueConfig::parse(in))) == text_of(c));
  std::istringstream bad("n_days = 7\nn_dayz = 3\n");
  CHECK_THROWS_AS(campaign_config_from(KeyValueConfig::parse(bad)), ArgumentError);
}

TEST_CASE("generation is deterministic in the seed") {
  auto c = small();
  const auto a = generate(c);
  const auto b = generate(c);
  std::ostringstream x, y;
  write_corpus(x, a);
  write_corpus(y, b);
  CHECK(x.str() == y.str());
  c.seed = 2;
  std::ostringstream z;
  write_corpus(z, generate(c));
  CHECK(z.str() != x.str());
}

TEST_CASE("planted structure") {
  const auto c = small();
  const auto campaign = generate(c);
  const auto& truth = campaign.truth;
  CHECK(self_check(campaign, c).empty());
  CHECK(truth.with_role(AgentRole::coordinated).size() == c.n_coordinated_agents);
  CHECK(truth.with_role(AgentRole::influencer).size() == c.n_influencers);
  CHECK(truth.tweets.size() == campaign.records.size());
  for (const auto& rec : campaign.records) {
    const auto& label = truth.tweets.at(rec.tweet.id);
    const bool anomalous = std::any_of(rec.tweet.hashtags.begin(), rec.tweet.hashtags.end(),
                                       [](const std::string& h) { return is_anomalous_hashtag(h); });
    CHECK(anomalous == label.campaign);
    CHECK(label.campaign == (truth.roles.at(rec.tweet.author_id) == AgentRole::coordinated));
  }
  const auto corpus = campaign.corpus();
  const auto burst = burst_concentration(corpus, truth.with_role(AgentRole::coordinated));
  CHECK(burst.peak_fraction >= c.burst_fraction - 1e-9);
  CHECK(format_date(burst.peak_day) == "2021-05-15");
}

TEST_CASE("ground truth round trip") {
  const auto campaign = generate(small());
  std::stringstream ss;
  write_ground_truth(ss, campaign.truth);
  const auto back = read_ground_truth(ss);
  CHECK(back.roles == campaign.truth.roles);
  CHECK(back.bot == campaign.truth.bot);
  CHECK(back.target_pool == campaign.truth.target_pool);
  REQUIRE(back.tweets.size() == campaign.truth.tweets.size());
  for (const auto& [id, label] : campaign.truth.tweets) {
    CHECK(back.tweets.at(id).campaign == label.campaign);
    CHECK(back.tweets.at(id).template_id == label.template_id);
    CHECK(back.tweets.at(id).topic == label.topic);
  }
}

TEST_CASE("role names") {
  CHECK(to_string(AgentRole::organic) == "organic");
  CHECK(to_string(AgentRole::coordinated) == "coordinated");
  CHECK(to_string(AgentRole::influencer) == "influencer");
}
