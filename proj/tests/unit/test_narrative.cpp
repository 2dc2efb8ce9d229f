#include <cmath>
#include <numeric>
#include <sstream>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "coordscope/error.hpp"
#include "coordscope/narrative.hpp"
#include "planted.hpp"

using namespace coordscope;
using Strings = std::vector<std::string>;

namespace {

std::vector<Tweet> tweets(std::initializer_list<std::string> texts) {
  std::vector<Tweet> out;
  int i = 0;
  for (const auto& text : texts) {
    nlohmann::json j{{"id", "t" + std::to_string(i++)}, {"author_id", "a"}, {"created_at", "2021-05-14T00:00:00Z"},
                     {"text", text}};
    out.push_back(parse_tweet_record(j.dump()));
  }
  return out;
}

Stopwords stop(std::string text) {
  std::istringstream in(text);
  return read_stopwords(in);
}

}  // namespace

TEST_CASE("preprocessing") {
  const auto ds = preprocess(tweets({"RT @x: Ayo bergabung di #dup6 https://t.co/z, é", "di a", "Bergabung!! sekarang"}),
                             stop("# comment\nDi\n\nsekarang\n"));
  REQUIRE(ds.docs.size() == 2);
  CHECK(ds.dropped == 1);
  CHECK(ds.tokens(0) == Strings{"ayo", "bergabung"});
  CHECK(ds.tokens(1) == Strings{"bergabung"});
  CHECK(ds.vocabulary == Strings{"ayo", "bergabung"});
  CHECK(ds.tweet_ids == Strings{"t0", "t2"});
  CHECK(ds.num_tokens() == 3);
}

TEST_CASE("two-code-point floor counts characters, not bytes") {
  const auto ds = preprocess(tweets({"éé é x"}), {});
  CHECK(ds.tokens(0) == Strings{"éé"});
}

TEST_CASE("preprocessing is idempotent") {
  const auto first = preprocess(tweets({"Wahai umat, sadarlah! mari dukung", "RT kami di sini juga ok"}),
                                load_stopwords(default_stopwords_path()));
  std::vector<Tweet> again;
  for (std::size_t d = 0; d < first.docs.size(); ++d) {
    Tweet t;
    t.id = first.tweet_ids[d];
    for (const auto& w : first.tokens(d)) t.text += w + " ";
    again.push_back(t);
  }
  const auto second = preprocess(again, load_stopwords(default_stopwords_path()));
  CHECK(second.docs == first.docs);
  CHECK(second.vocabulary == first.vocabulary);
}

TEST_CASE("gibbs counts stay consistent after every sweep") {
  const auto planted = fixture::planted_corpus(3, 20, 30, 12, 4);
  const auto ds = preprocess(planted.tweets, {});
  LdaOptions opts;
  opts.topics = 3;
  opts.iterations = 25;
  int sweeps = 0;
  fit_lda(ds, opts, [&](int sweep, const LdaModel& m) {
    CHECK(sweep == sweeps++);
    std::uint64_t word_total = 0;
    for (int k = 0; k < m.topics(); ++k) {
      std::uint64_t row = 0;
      for (WordId w = 0; w < m.vocabulary_size(); ++w) row += m.topic_word(k, w);
      CHECK(row == m.topic_total(k));
      word_total += row;
    }
    CHECK(word_total == ds.num_tokens());
    for (std::size_t d = 0; d < m.num_docs(); ++d) {
      std::uint64_t len = 0;
      for (int k = 0; k < m.topics(); ++k) len += m.doc_topic(d, k);
      CHECK(len == ds.docs[d].size());
    }
  });
  CHECK(sweeps == 25);
}

TEST_CASE("theta and phi are distributions") {
  const auto planted = fixture::planted_corpus(2, 15, 20, 10, 9);
  const auto ds = preprocess(planted.tweets, {});
  LdaOptions opts;
  opts.topics = 2;
  opts.iterations = 50;
  const auto m = fit_lda(ds, opts);
  CHECK(m.alpha() == 25.0);
  CHECK(m.iterations_run() == 50);
  for (std::size_t d = 0; d < m.num_docs(); ++d) {
    const auto th = m.theta(d);
    CHECK(std::accumulate(th.begin(), th.end(), 0.0) == doctest::Approx(1.0));
    const int dom = m.dominant_topic(d);
    CHECK(th[static_cast<std::size_t>(dom)] == *std::max_element(th.begin(), th.end()));
  }
  for (int k = 0; k < m.topics(); ++k) {
    const auto ph = m.phi(k);
    CHECK(ph.size() == ds.vocabulary.size());
    CHECK(std::accumulate(ph.begin(), ph.end(), 0.0) == doctest::Approx(1.0));
  }
}

TEST_CASE("fitting is deterministic in the seed") {
  const auto ds = preprocess(fixture::planted_corpus(2, 15, 20, 10, 9).tweets, {});
  LdaOptions opts;
  opts.topics = 3;
  opts.iterations = 30;
  const auto a = fit_lda(ds, opts);
  const auto b = fit_lda(ds, opts);
  CHECK(a.topic_word_counts() == b.topic_word_counts());
  opts.seed = 2;
  CHECK(fit_lda(ds, opts).doc_topic_counts() != a.doc_topic_counts());
}

TEST_CASE("fit_lda argument checks") {
  const auto ds = preprocess(tweets({"aa bb", "cc dd"}), {});
  LdaOptions opts;
  opts.topics = 3;
  CHECK_THROWS_AS(fit_lda(ds, opts), ArgumentError);
  CHECK_THROWS_AS(fit_lda(DocumentSet{}, LdaOptions{}), ArgumentError);
}

TEST_CASE("top words and UMass coherence on a hand-checked case") {
  const auto ds = preprocess(tweets({"aa bb", "aa cc", "aa bb"}), {});
  LdaOptions opts;
  opts.topics = 1;
  opts.iterations = 5;
  const auto m = fit_lda(ds, opts);
  CHECK(top_words(m, ds, 10) == std::vector<Strings>{{"aa", "bb", "cc"}});
  const auto c = coherence(m, ds, 3);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == doctest::Approx(std::log(2.0 / 3.0) + std::log(1.0 / 2.0)));
  CHECK_THROWS_AS(coherence(m, ds, 4), ArgumentError);
}

TEST_CASE("sweep reports one entry per K and writes its table") {
  const auto ds = preprocess(fixture::planted_corpus(2, 20, 40, 15, 3).tweets, {});
  LdaOptions opts;
  opts.iterations = 60;
  const std::vector<int> ks{2, 3};
  const auto sweep = coherence_sweep(ds, ks, opts, 5);
  REQUIRE(sweep.size() == 2);
  CHECK(sweep[1].topics == 3);
  CHECK(sweep[1].per_topic.size() == 3);
  CHECK(coherence_sweep(ds, ks, opts, 5)[0].mean_coherence == sweep[0].mean_coherence);
  std::ostringstream out;
  write_sweep_report(out, sweep);
  CHECK(out.str().rfind("k,mean_coherence_umass\n2,", 0) == 0);
}
