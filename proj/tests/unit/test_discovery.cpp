#include <doctest.h>

#include "coordscope/discovery.hpp"
#include "coordscope/error.hpp"
#include "coordscope/synthgen.hpp"
#include "fixtures.hpp"

using namespace coordscope;

TEST_CASE("anomalous hashtag rule") {
  CHECK(is_anomalous_hashtag("dup6"));
  CHECK(is_anomalous_hashtag("892t"));
  CHECK(is_anomalous_hashtag("zyl7"));
  CHECK(is_anomalous_hashtag("1234"));
  CHECK_FALSE(is_anomalous_hashtag("abcd"));    // no digit
  CHECK_FALSE(is_anomalous_hashtag("dup66"));   // five characters
  CHECK_FALSE(is_anomalous_hashtag("du6"));     // three characters
  CHECK_FALSE(is_anomalous_hashtag("du_6"));    // underscore
  CHECK_FALSE(is_anomalous_hashtag("DUP6"));    // not normalized
}

namespace {

Corpus small_campaign() {
  return fixture::corpus({
      R"({"id":"1","author_id":"c1","created_at":"2021-05-14T01:00:00Z","text":"#ab12 #cd34 #ef56 ayo"})",
      R"({"id":"2","author_id":"c2","created_at":"2021-05-14T02:00:00Z","text":"#ab12 #cd34 mari"})",
      R"({"id":"3","author_id":"c3","created_at":"2021-05-14T03:00:00Z","text":"#cd34 #ef56 gabung"})",
      R"({"id":"4","author_id":"o1","created_at":"2021-05-14T04:00:00Z","text":"#pasar #harga naik"})",
      R"({"id":"5","author_id":"o2","created_at":"2021-05-14T05:00:00Z","text":"#pasar #harga #beras"})",
      R"({"id":"6","author_id":"o3","created_at":"2021-05-15T05:00:00Z","text":"#beras #harga"})",
      R"({"id":"7","author_id":"late","created_at":"2021-05-20T05:00:00Z","text":"#zz99 telat"})",
  });
}

}  // namespace

TEST_CASE("authors of anomalous tags are coordinated, whatever the window") {
  const auto r = extract_coordinated_agents(small_campaign());
  CHECK(r.anomalous_hashtags == std::set<std::string>{"ab12", "cd34", "ef56", "zz99"});
  CHECK(r.coordinated_agents == std::set<std::string>{"c1", "c2", "c3", "late"});
  REQUIRE(r.per_agent_evidence.count("c1"));
  CHECK(r.per_agent_evidence.at("c1").front() == Evidence{"1", {"ab12", "cd34", "ef56"}});
  // The late tag is outside the three-day hashtag network.
  CHECK_FALSE(r.hashtag_graph.find("zz99"));
}

TEST_CASE("the campaign cluster is flagged") {
  const auto r = extract_coordinated_agents(small_campaign());
  REQUIRE(r.flagged_clusters.size() == 1);
  const auto [community, fraction] = *r.flagged_clusters.begin();
  CHECK(fraction == 1.0);
  const auto campaign = r.hashtag_partition.assignment[*r.hashtag_graph.find("ab12")];
  CHECK(community == campaign);
  std::size_t summarized = 0;
  for (const auto& s : r.clusters) summarized += s.size;
  CHECK(summarized == r.hashtag_graph.num_nodes());
}

TEST_CASE("cluster flags respect the inclusive fraction and the size floor") {
  const auto g = fixture::graph({{"ab12", "x"}, {"x", "cd34"}, {"y", "z"}});
  const auto p = Partition::from_labels({0, 0, 0, 1, 1});  // ab12 cd34 x | y z
  CHECK(flag_coordination_clusters(g, p, 0.7, 3).empty());
  const auto flags = flag_coordination_clusters(g, p, 2.0 / 3.0, 3);
  REQUIRE(flags.size() == 1);
  CHECK(flags.at(0) == doctest::Approx(2.0 / 3.0));
  CHECK(flag_coordination_clusters(g, p, 0.6, 4).empty());
}

TEST_CASE("burst concentration") {
  const auto c = small_campaign();
  const auto b = burst_concentration(c, {"c1", "c2", "o3"});
  CHECK(b.total == 3);
  CHECK(b.peak_fraction == doctest::Approx(2.0 / 3.0));
  CHECK(format_date(b.peak_day) == "2021-05-14");
  CHECK_THROWS_AS(burst_concentration(c, {}), ArgumentError);
  CHECK_THROWS_AS(burst_concentration(c, {"nobody"}), UndefinedError);
}

TEST_CASE("recurring agents and merged evidence across windows") {
  const auto c = small_campaign();
  const auto [f1, t1] = leading_days(c, 1);
  const auto first = extract_coordinated_agents(window(c, f1, t1));
  const auto second = extract_coordinated_agents(window(c, t1, c.time_span()->max + std::chrono::seconds(1)));
  CHECK(recurring_agents(first, first) == first.coordinated_agents);
  CHECK(recurring_agents(first, second).empty());
  const auto merged = merge_agent_evidence({first, second});
  CHECK(merged.coordinated_agents == std::set<std::string>{"c1", "c2", "c3", "late"});
  CHECK(merged.clusters.empty());
}

TEST_CASE("discovery on a synthetic campaign is exact") {
  const auto campaign = generate(default_campaign_config());
  const auto r = extract_coordinated_agents(campaign.corpus());
  CHECK(r.coordinated_agents == campaign.truth.with_role(AgentRole::coordinated));
  CHECK(r.anomalous_hashtags.size() == default_campaign_config().n_anomalous_hashtags);
  CHECK_FALSE(r.flagged_clusters.empty());
}
