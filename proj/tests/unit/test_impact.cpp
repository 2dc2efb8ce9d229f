#include <sstream>

#include <doctest.h>

#include "coordscope/discovery.hpp"
#include "coordscope/error.hpp"
#include "coordscope/impact.hpp"
#include "coordscope/synthgen.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace coordscope;

TEST_CASE("counts on a triangle with a tail") {
  const auto g = fixture::graph({{"a", "b"}, {"b", "c"}, {"a", "c"}, {"c", "d"}});
  const std::vector<NodeId> s{*g.find("a"), *g.find("b"), *g.find("c")};
  const auto e = ei_counts(g, s);
  CHECK(e.internal == 3.0);
  CHECK(e.external == 1.0);
  CHECK(e.ei == -0.5);
}

TEST_CASE("argument and definedness errors") {
  const auto g = fixture::graph({{"a", "b"}}, {"z"});
  CHECK_THROWS_AS(ei_index(g, std::set<std::string>{"q"}), ArgumentError);
  const std::vector<NodeId> repeated{0, 0};
  CHECK_THROWS_AS(ei_counts(g, repeated), ArgumentError);
  const std::vector<NodeId> unknown{7};
  CHECK_THROWS_AS(ei_counts(g, unknown), ArgumentError);
  CHECK_THROWS_AS(ei_index(g, std::set<std::string>{"z"}), UndefinedError);
}

TEST_CASE("adding an internal edge lowers E/I, adding an external edge raises it") {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = oracle::random_graph(rng, 8, 0.35);
    std::set<std::string> s;
    for (NodeId n = 0; n < 8; ++n) {
      if (rng.bernoulli(0.5)) s.insert(g.label(n));
    }
    if (s.empty() || s.size() == 8) continue;
    const std::string in_a = *s.begin(), in_b = *s.rbegin();
    std::string out;
    for (const auto& l : g.labels()) {
      if (!s.count(l)) out = l;
    }
    auto with_edge = [&](const std::string& x, const std::string& y) {
      GraphBuilder b;
      for (const auto& l : g.labels()) b.add_node(l);
      for (const auto& e : g.edges()) b.add_edge(g.label(e.u), g.label(e.v));
      b.add_edge(x, y);
      return b.build();
    };
    const auto ext = ei_index(with_edge(in_a, out), s);
    double base = 0.0;
    try {
      base = ei_index(g, s);
    } catch (const UndefinedError&) {
      CHECK(ext == 1.0);
      continue;
    }
    CHECK(ext >= base);
    if (in_a != in_b) CHECK(ei_index(with_edge(in_a, in_b), s) <= base);
  }
}

TEST_CASE("swapping internal and external links flips the sign") {
  // {a,b}: IL 1, EL 3.  {a,b,c,d,e}: IL 3, EL 1 when c,d,e hang off a/b.
  const auto g = fixture::graph({{"a", "b"}, {"a", "c"}, {"b", "d"}, {"b", "e"}});
  const double x = ei_index(g, std::set<std::string>{"a", "b"});
  const auto h = fixture::graph({{"a", "b"}, {"b", "c"}, {"a", "c"}, {"c", "d"}});
  const double y = ei_index(h, std::set<std::string>{"a", "b", "c"});
  CHECK(x == 0.5);
  CHECK(y == -x);
}

TEST_CASE("weighted counts sum weights") {
  GraphBuilder b;
  b.add_edge("a", "b", 2.0);
  b.add_edge("b", "c", 6.0);
  const auto g = b.build();
  CHECK(ei_index(g, std::set<std::string>{"a", "b"}, true) == 0.5);
  CHECK(ei_index(g, std::set<std::string>{"a", "b"}, false) == 0.0);
}

TEST_CASE("grouped E/I over a partition") {
  const auto g = fixture::two_cliques(4);
  std::vector<int> groups(g.num_nodes());
  for (NodeId n = 0; n < g.num_nodes(); ++n) groups[n] = g.label(n)[0] == 'a' ? 0 : 1;
  const auto e = grouped_ei(g, groups);
  CHECK(e.internal == 12.0);
  CHECK(e.external == 1.0);
  groups[*g.find("a0")] = -1;
  groups[*g.find("b0")] = -1;
  const auto dropped = grouped_ei(g, groups);
  CHECK(dropped.external == 0.0);
  CHECK(dropped.ei == -1.0);
  std::vector<int> none(g.num_nodes(), -1);
  CHECK_THROWS_AS(grouped_ei(g, none), UndefinedError);
}

TEST_CASE("polarization report on a synthetic campaign") {
  const auto campaign = generate(default_campaign_config());
  const auto corpus = campaign.corpus();
  const auto discovered = extract_coordinated_agents(corpus).coordinated_agents;
  const auto [pf, pt] = leading_days(corpus, 3);
  const auto [qf, qt] = trailing_days(corpus, 3);
  const auto report = polarization_report(corpus, discovered, {pf, pt}, {qf, qt});
  REQUIRE(report.before);
  REQUIRE(report.after);
  CHECK(report.after->ei < report.before->ei);
  CHECK_FALSE(report.rows.empty());
  for (const auto& row : report.rows) {
    CHECK(row.members.size() >= 2);
    CHECK(std::is_sorted(row.members.begin(), row.members.end()));
    CHECK(row.present_in_pre <= row.members.size());
  }

  std::map<std::string, int> topics;
  for (const auto& t : corpus.tweets()) topics[t.id] = 4;
  auto themed = report;
  assign_themes(themed, corpus, topics);
  for (const auto& row : themed.rows) CHECK(row.theme == 4);

  std::ostringstream out;
  write_ei_report(out, themed);
  const auto text = out.str();
  CHECK(text.rfind("subgroup,size,theme,IL,EL,ei,baseline_IL,baseline_EL,baseline_ei,baseline_status\nbefore,", 0) == 0);

  CHECK_THROWS_AS(polarization_report(corpus, discovered, {pf, pf}, {qf, qt}), ArgumentError);
}
