// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Thresholds and tolerances are the contractual ones.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "coordscope/bend.hpp"
#include "coordscope/centrality.hpp"
#include "coordscope/community.hpp"
#include "coordscope/corpus.hpp"
#include "coordscope/discovery.hpp"
#include "coordscope/error.hpp"
#include "coordscope/impact.hpp"
#include "coordscope/lexicon.hpp"
#include "coordscope/narrative.hpp"
#include "coordscope/pipeline.hpp"
#include "coordscope/rng.hpp"
#include "coordscope/synthgen.hpp"
#include "coordscope/targeting.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "planted.hpp"

using namespace coordscope;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void fail(Outcome& o, const std::string& why) {
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += why;
}

void note(Outcome& o, const std::string& what) {
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what;
}

// Default scenario with a chosen seed, plus the products of the analysis
// stages, as the pipeline computes them.
struct Analysed {
  SyntheticCampaign campaign;
  Corpus corpus;
  DiscoveryResult discovery;
  std::vector<ManeuverScores> scores;
};

Analysed analyse(std::uint64_t seed) {
  auto config = default_campaign_config();
  config.seed = seed;
  Analysed a{generate(config), {}, {}, {}};
  a.corpus = a.campaign.corpus();
  a.discovery = extract_coordinated_agents(a.corpus);
  const auto [from, to] = leading_days(a.corpus, 3);
  const auto ctx = build_context(a.corpus, window(a.corpus, from, to));
  a.scores = score_tweets(a.corpus, Lexicon::load(default_lexicon_path()), ctx);
  return a;
}

std::set<std::string> authors_except(const Corpus& corpus, const std::set<std::string>& excluded) {
  std::set<std::string> out;
  for (const auto& t : corpus.tweets()) {
    if (!excluded.count(t.author_id)) out.insert(t.author_id);
  }
  return out;
}

// ---------------------------------------------------------------------------

Outcome ei_exactness() {
  Outcome o;
  const auto start = Clock::now();
  struct Case {
    std::string name;
    WeightedGraph g;
    std::set<std::string> subgroup;
    bool weighted;
    double expected;
  };
  GraphBuilder wb;
  wb.add_edge("a", "b", 2.0);
  wb.add_edge("b", "c", 1.0);
  wb.add_edge("c", "d", 5.0);
  const auto weighted_path = wb.build();

  std::vector<Case> cases = {
      {"IL=3 EL=1", fixture::graph({{"a", "b"}, {"b", "c"}, {"a", "c"}, {"c", "d"}}), {"a", "b", "c"}, false, -0.5},
      {"isolated clique", fixture::graph({{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"},
                                          {"x", "y"}, {"y", "z"}}),
       {"a", "b", "c", "d"}, false, -1.0},
      {"star leaf", fixture::graph({{"s", "l1"}, {"s", "l2"}, {"s", "l3"}, {"s", "l4"}}), {"l1"}, false, 1.0},
      {"star centre", fixture::graph({{"s", "l1"}, {"s", "l2"}, {"s", "l3"}, {"s", "l4"}}), {"s"}, false, 1.0},
      {"star centre+leaf", fixture::graph({{"s", "l1"}, {"s", "l2"}, {"s", "l3"}, {"s", "l4"}}), {"s", "l1"}, false,
       0.5},
      {"path end pair", fixture::graph({{"a", "b"}, {"b", "c"}, {"c", "d"}}), {"a", "b"}, false, 0.0},
      {"path middle pair", fixture::graph({{"a", "b"}, {"b", "c"}, {"c", "d"}}), {"b", "c"}, false, 1.0 / 3.0},
      {"bridged triangles", fixture::graph({{"a", "b"}, {"b", "c"}, {"a", "c"}, {"c", "x"}, {"x", "y"}, {"y", "z"},
                                            {"x", "z"}}),
       {"a", "b", "c"}, false, -0.5},
      {"K5 triple", fixture::graph({{"a", "b"}, {"a", "c"}, {"a", "d"}, {"a", "e"}, {"b", "c"}, {"b", "d"},
                                    {"b", "e"}, {"c", "d"}, {"c", "e"}, {"d", "e"}}),
       {"a", "b", "c"}, false, 1.0 / 3.0},
      {"whole graph", fixture::graph({{"a", "b"}, {"b", "c"}}), {"a", "b", "c"}, false, -1.0},
      {"4-cycle opposite", fixture::graph({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}}), {"a", "c"}, false, 1.0},
      {"weighted path", weighted_path, {"a", "b", "c"}, true, 0.25},
      {"weighted path, unweighted", weighted_path, {"a", "b", "c"}, false, -1.0 / 3.0},
  };
  std::size_t passed = 0;
  for (const auto& c : cases) {
    const double got = ei_index(c.g, c.subgroup, c.weighted);
    if (std::abs(got - c.expected) > 1e-12) {
      fail(o, fmt::format("{}: got {} want {}", c.name, got, c.expected));
    } else {
      ++passed;
    }
  }
  try {
    ei_index(fixture::graph({{"a", "b"}}, {"z"}), std::set<std::string>{"z"});
    fail(o, "isolated subgroup did not raise");
  } catch (const UndefinedError&) {
  }
  const double t = seconds_since(start);
  if (t >= 1.0) fail(o, fmt::format("runtime {:.3f}s >= 1s", t));
  note(o, fmt::format("{}/{} fixtures within 1e-12, {:.3f}s", passed, cases.size(), t));
  return o;
}

Outcome centrality_oracles() {
  Outcome o;
  const auto start = Clock::now();
  Rng rng(20240601);
  double worst_bc = 0.0, worst_res = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 8));
    const auto g = oracle::random_graph(rng, n, rng.uniform(0.2, 0.9));
    const auto bc = betweenness_centrality(g);
    const auto ref = oracle::enumerated_betweenness(g);
    for (std::size_t v = 0; v < n; ++v) worst_bc = std::max(worst_bc, std::abs(bc[v] - ref[v]));
    const auto eig = eigenvector_centrality(g);
    worst_res = std::max(worst_res, oracle::eigen_residual(g, eig.scores, eig.eigenvalue));
    if (!eig.converged) fail(o, fmt::format("graph {}: power iteration did not converge", i));
  }
  if (worst_bc > 1e-9) fail(o, fmt::format("betweenness deviates by {}", worst_bc));
  if (worst_res >= 1e-6) fail(o, fmt::format("eigen residual {}", worst_res));
  const double t = seconds_since(start);
  if (t >= 30.0) fail(o, fmt::format("runtime {:.2f}s >= 30s", t));
  note(o, fmt::format("100 graphs, max |bc - oracle| = {:.1e}, max residual = {:.1e}, {:.2f}s", worst_bc, worst_res, t));
  return o;
}

Outcome louvain_quality() {
  Outcome o;
  const auto start = Clock::now();
  Rng rng(77);
  double worst_gap = 0.0;
  int graphs = 0;
  while (graphs < 50) {
    const auto n = static_cast<std::size_t>(rng.integer(3, 8));
    const auto g = oracle::random_graph(rng, n, rng.uniform(0.2, 0.8), 3);
    if (g.num_edges() == 0) continue;
    ++graphs;
    const auto found = louvain(g, static_cast<std::uint64_t>(graphs));
    const double q = oracle::direct_modularity(g, found.partition.assignment);
    const auto best = oracle::best_partition(g);
    worst_gap = std::max(worst_gap, best.modularity - q);
  }
  if (worst_gap > 0.05) fail(o, fmt::format("modularity gap {:.4f} > 0.05", worst_gap));

  const auto g = fixture::two_cliques(5);
  const auto p = louvain(g, 1).partition;
  std::vector<int> expected(g.num_nodes());
  for (NodeId n = 0; n < g.num_nodes(); ++n) expected[n] = g.label(n)[0] == 'a' ? 0 : 1;
  if (!(p == Partition::from_labels(expected))) fail(o, "two-clique fixture not recovered");
  const double t = seconds_since(start);
  if (t >= 60.0) fail(o, fmt::format("runtime {:.2f}s >= 60s", t));
  note(o, fmt::format("50 graphs, worst gap to exhaustive optimum {:.4f}, two cliques recovered, {:.2f}s", worst_gap, t));
  return o;
}

Outcome discovery_recall_precision(const Analysed& a) {
  Outcome o;
  const auto start = Clock::now();
  const auto result = extract_coordinated_agents(a.corpus);
  const double t = seconds_since(start);
  const auto truth = a.campaign.truth.with_role(AgentRole::coordinated);
  std::size_t hits = 0;
  for (const auto& id : result.coordinated_agents) hits += truth.count(id);
  const double recall = static_cast<double>(hits) / static_cast<double>(truth.size());
  const double precision =
      result.coordinated_agents.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(result.coordinated_agents.size());
  if (recall < 0.95) fail(o, fmt::format("recall {:.3f} < 0.95", recall));
  if (precision < 0.95) fail(o, fmt::format("precision {:.3f} < 0.95", precision));
  if (t >= 10.0) fail(o, fmt::format("runtime {:.2f}s >= 10s", t));
  note(o, fmt::format("recall {:.3f}, precision {:.3f} ({} of {} found, {} flagged), {:.3f}s", recall, precision, hits,
                      truth.size(), result.coordinated_agents.size(), t));
  return o;
}

Outcome burst_signature(const Analysed& a) {
  Outcome o;
  const auto coordinated = burst_concentration(a.corpus, a.discovery.coordinated_agents);
  const auto organic = burst_concentration(a.corpus, a.campaign.truth.with_role(AgentRole::organic));
  if (coordinated.peak_fraction < 0.8) fail(o, fmt::format("coordinated peak {:.3f} < 0.8", coordinated.peak_fraction));
  if (organic.peak_fraction > 0.3) fail(o, fmt::format("organic peak {:.3f} > 0.3", organic.peak_fraction));
  note(o, fmt::format("coordinated peak {:.3f} on {}, organic peak {:.3f}", coordinated.peak_fraction,
                      format_date(coordinated.peak_day), organic.peak_fraction));
  return o;
}

Outcome maneuver_separation(const std::vector<Analysed>& runs) {
  Outcome o;
  const Maneuver required[] = {Maneuver::back, Maneuver::build, Maneuver::bridge, Maneuver::distract};
  double smallest = 1e9;
  for (std::size_t s = 0; s < runs.size(); ++s) {
    const auto& a = runs[s];
    const auto others = authors_except(a.corpus, a.discovery.coordinated_agents);
    const auto cmp = compare_groups(a.discovery.coordinated_agents, others, a.corpus, a.scores);
    for (auto m : required) {
      const double diff = cmp.mean_a[m] - cmp.mean_b[m];
      smallest = std::min(smallest, diff);
      if (!(cmp.mean_a[m] > cmp.mean_b[m])) {
        fail(o, fmt::format("seed {}: {} discovered {:.4f} <= other {:.4f}", s + 1, to_string(m), cmp.mean_a[m],
                            cmp.mean_b[m]));
      }
    }
  }
  note(o, fmt::format("{} seeds, smallest discovered-minus-other gap {:.4f}", runs.size(), smallest));
  return o;
}

Outcome correlation_signs(const std::vector<Analysed>& runs) {
  Outcome o;
  double min_deg = 1, min_fol = 1, max_bot = -1;
  for (std::size_t s = 0; s < runs.size(); ++s) {
    const auto& a = runs[s];
    const auto targets = extract_targets(a.corpus, a.discovery.coordinated_agents);
    const auto table = correlation_table(targets, a.corpus, a.scores, build_communication_network(a.corpus));
    auto r = [&](TargetAttribute attr) { return table.at(Maneuver::back, attr).r; };
    const auto deg = r(TargetAttribute::total_degree);
    const auto fol = r(TargetAttribute::followers);
    const auto bot = r(TargetAttribute::bot_probability);
    if (!deg || !fol || !bot) {
      fail(o, fmt::format("seed {}: undefined correlation", s + 1));
      continue;
    }
    min_deg = std::min(min_deg, *deg);
    min_fol = std::min(min_fol, *fol);
    max_bot = std::max(max_bot, *bot);
    if (!(*deg > 0)) fail(o, fmt::format("seed {}: r(back, total_degree) = {:.3f}", s + 1, *deg));
    if (!(*fol > 0)) fail(o, fmt::format("seed {}: r(back, followers) = {:.3f}", s + 1, *fol));
    if (!(*bot < 0)) fail(o, fmt::format("seed {}: r(back, bot_probability) = {:.3f}", s + 1, *bot));
  }
  note(o, fmt::format("{} seeds, min r(total_degree) {:.3f}, min r(followers) {:.3f}, max r(bot) {:.3f}", runs.size(),
                      min_deg, min_fol, max_bot));
  return o;
}

Outcome polarization_direction(const Analysed& a) {
  Outcome o;
  const auto [pre_from, pre_to] = leading_days(a.corpus, 3);
  const auto [post_from, post_to] = trailing_days(a.corpus, 3);
  const auto report =
      polarization_report(a.corpus, a.discovery.coordinated_agents, {pre_from, pre_to}, {post_from, post_to});
  if (!report.before) {
    fail(o, "pre-activity E/I undefined");
  } else if (std::abs(report.before->ei) >= 0.1) {
    fail(o, fmt::format("pre-activity |ei| = {:.3f} >= 0.1", std::abs(report.before->ei)));
  }
  std::size_t checked = 0;
  double worst = -1.0;
  for (const auto& row : report.rows) {
    if (row.members.size() < 10) continue;
    ++checked;
    if (!row.post) {
      fail(o, fmt::format("subgroup {} has no links", row.subgroup));
      continue;
    }
    worst = std::max(worst, row.post->ei);
    if (row.post->ei > -0.3) fail(o, fmt::format("subgroup {} post ei {:.3f} > -0.3", row.subgroup, row.post->ei));
  }
  if (checked == 0) fail(o, "no subgroup of size >= 10");
  note(o, fmt::format("pre ei {:.3f}; {} subgroups of size >= 10, max post ei {:.3f}",
                      report.before ? report.before->ei : NAN, checked, worst));
  return o;
}

Outcome lda_recovery() {
  Outcome o;
  const auto start = Clock::now();
  const auto planted = fixture::planted_corpus(2, 50, 200, 30, 11);
  const auto ds = preprocess(planted.tweets, {});
  LdaOptions opts;
  opts.topics = 2;
  opts.seed = 5;
  const auto model = fit_lda(ds, opts);
  const auto words = top_words(model, ds, 10);
  double worst_purity = 1.0;
  for (const auto& topic : words) {
    std::size_t best = 0;
    for (const auto& vocab : planted.vocabularies) {
      const auto n = static_cast<std::size_t>(std::count_if(topic.begin(), topic.end(), [&](const std::string& w) {
        return std::find(vocab.begin(), vocab.end(), w) != vocab.end();
      }));
      best = std::max(best, n);
    }
    worst_purity = std::min(worst_purity, static_cast<double>(best) / static_cast<double>(topic.size()));
  }
  if (worst_purity < 0.9) fail(o, fmt::format("top-10 purity {:.2f} < 0.9", worst_purity));

  const auto again = fit_lda(ds, opts);
  if (again.topic_word_counts() != model.topic_word_counts() || again.doc_topic_counts() != model.doc_topic_counts()) {
    fail(o, "same seed produced different counts");
  }

  const std::vector<int> ks = {2, 3, 4, 5, 6, 7, 8};
  LdaOptions sweep_opts;
  sweep_opts.seed = 5;
  const auto sweep = coherence_sweep(ds, ks, sweep_opts);
  const auto best = std::max_element(sweep.begin(), sweep.end(), [](const SweepEntry& x, const SweepEntry& y) {
    return x.mean_coherence < y.mean_coherence;
  });
  if (best->topics != 2) fail(o, fmt::format("coherence peaks at K = {}", best->topics));
  std::string curve;
  for (const auto& e : sweep) curve += fmt::format("{}{}:{:.1f}", curve.empty() ? "" : " ", e.topics, e.mean_coherence);

  const double t = seconds_since(start);
  if (t >= 60.0) fail(o, fmt::format("runtime {:.2f}s >= 60s", t));
  note(o, fmt::format("purity {:.2f}, coherence by K [{}], deterministic, {:.2f}s", worst_purity, curve, t));
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome pipeline_determinism(const Analysed& a) {
  Outcome o;
  const fs::path dir = fixture::temp_dir("acceptance_determinism");
  const auto input = dir / "corpus.jsonl";
  {
    std::ofstream out(input, std::ios::binary);
    write_corpus(out, a.campaign);
  }
  PipelineConfig config;
  config.input = input;
  config.output_dir = dir / "first";
  const auto first = run_pipeline(config);
  config.output_dir = dir / "second";
  const auto second = run_pipeline(config);
  if (first.artifacts != second.artifacts) fail(o, "artifact lists differ");
  std::size_t bytes = 0;
  for (const auto& name : first.artifacts) {
    const auto x = slurp(first.directory / name);
    const auto y = slurp(second.directory / name);
    bytes += x.size();
    if (x != y) fail(o, name + " differs");
  }
  note(o, fmt::format("{} artifacts, {} bytes, identical", first.artifacts.size(), bytes));
  return o;
}

Outcome stats_format() {
  Outcome o;
  const auto corpus = fixture::corpus({
      R"({"id":"1","author_id":"a","created_at":"2021-05-14T10:00:00Z","text":"x","author":{"bot_probability":0.6}})",
      R"({"id":"2","author_id":"b","created_at":"2021-05-14T11:00:00Z","text":"y","author":{"bot_probability":0.2}})",
  });
  const auto stats = corpus_stats(corpus);
  if (stats.bot_percentage != 50.0) fail(o, fmt::format("bot percentage {} != 50.0", stats.bot_percentage));
  const auto header = stats_table_header();
  const auto row = format_stats_row("Full dataset", stats);
  if (header != "Dataset,Num Agents,Num Tweets,Bot Percentage (%)") fail(o, "header layout: " + header);
  if (row != "Full dataset,2,2,50.00") fail(o, "row layout: " + row);
  note(o, fmt::format("'{}' / '{}'", header, row));
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
  std::vector<Analysed> runs;
  auto seeds = [&]() -> const std::vector<Analysed>& {
    if (runs.empty()) {
      for (std::uint64_t s = 1; s <= 5; ++s) runs.push_back(analyse(s));
    }
    return runs;
  };

  criteria.emplace_back("E/I exactness", ei_exactness);
  criteria.emplace_back("Centrality oracles", centrality_oracles);
  criteria.emplace_back("Louvain quality", louvain_quality);
  criteria.emplace_back("Discovery recall/precision", [&] { return discovery_recall_precision(seeds().front()); });
  criteria.emplace_back("Burst signature", [&] { return burst_signature(seeds().front()); });
  criteria.emplace_back("Maneuver separation", [&] { return maneuver_separation(seeds()); });
  criteria.emplace_back("Correlation signs", [&] { return correlation_signs(seeds()); });
  criteria.emplace_back("Polarization direction", [&] { return polarization_direction(seeds().front()); });
  criteria.emplace_back("LDA recovery", lda_recovery);
  criteria.emplace_back("End-to-end determinism", [&] { return pipeline_determinism(seeds().front()); });
  criteria.emplace_back("Dataset-statistics format", stats_format);

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::cout << fmt::format("[{}] {:2d}. {}: {}", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail)
              << std::endl;
  }
  std::cout << fmt::format("{} of {} criteria passed", criteria.size() - static_cast<std::size_t>(failures),
                           criteria.size())
            << std::endl;
  return failures == 0 ? 0 : 1;
}
