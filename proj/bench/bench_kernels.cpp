// Serial reference vs OpenMP kernels on synthetic inputs.

#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "coordscope/bend.hpp"
#include "coordscope/centrality.hpp"
#include "coordscope/corpus.hpp"
#include "coordscope/graph.hpp"
#include "coordscope/lexicon.hpp"
#include "coordscope/rng.hpp"
#include "coordscope/synthgen.hpp"

using namespace coordscope;

namespace {

WeightedGraph sparse_graph(std::size_t n, std::size_t avg_degree, std::uint64_t seed) {
  Rng rng(seed);
  GraphBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node("v" + std::to_string(i));
  for (std::size_t e = 0; e < n * avg_degree / 2; ++e) {
    const auto u = rng.index(n);
    const auto v = rng.index(n);
    if (u != v) b.add_edge("v" + std::to_string(u), "v" + std::to_string(v));
  }
  return b.build();
}

const WeightedGraph& bench_graph(std::size_t n) {
  static std::map<std::size_t, WeightedGraph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, sparse_graph(n, 8, 42)).first;
  return it->second;
}

struct ScoringInput {
  Corpus corpus;
  Lexicon lexicon;
  ManeuverContext ctx;
};

const ScoringInput& scoring_input() {
  static const ScoringInput input = [] {
    auto campaign = generate(default_campaign_config());
    auto corpus = campaign.corpus();
    auto lexicon = Lexicon::load(default_lexicon_path());
    auto ctx = build_context(corpus, corpus);
    return ScoringInput{std::move(corpus), std::move(lexicon), std::move(ctx)};
  }();
  return input;
}

void BM_BetweennessSerial(benchmark::State& state) {
  const auto& g = bench_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(betweenness_centrality_serial(g));
}

void BM_BetweennessParallel(benchmark::State& state) {
  const auto& g = bench_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(betweenness_centrality(g));
}

void BM_EigenvectorSerial(benchmark::State& state) {
  const auto& g = bench_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvector_centrality_serial(g));
}

void BM_EigenvectorParallel(benchmark::State& state) {
  const auto& g = bench_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvector_centrality(g));
}

void BM_ScoreTweetsSerial(benchmark::State& state) {
  const auto& in = scoring_input();
  for (auto _ : state) benchmark::DoNotOptimize(score_tweets_serial(in.corpus, in.lexicon, in.ctx));
}

void BM_ScoreTweetsParallel(benchmark::State& state) {
  const auto& in = scoring_input();
  for (auto _ : state) benchmark::DoNotOptimize(score_tweets(in.corpus, in.lexicon, in.ctx));
}

}  // namespace

BENCHMARK(BM_BetweennessSerial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BetweennessParallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EigenvectorSerial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EigenvectorParallel)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreTweetsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreTweetsParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
