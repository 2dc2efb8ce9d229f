#include <algorithm>
#include <sstream>

#include <doctest.h>

#include "coordscope/corpus.hpp"
#include "coordscope/error.hpp"
#include "fixtures.hpp"

using namespace coordscope;

namespace {

const char* kA = R"({"id":"t1","author_id":"alice","created_at":"2021-05-14T08:00:00Z","text":"Bela Palestina #zyl7 @abc","author":{"followers_count":10,"bot_probability":0.9}})";
const char* kB = R"({"id":"t2","author_id":"bob","created_at":"2021-05-15T09:30:00+02:00","text":"RT @alice hello","retweet_of_author":"alice","author":{"bot_probability":0.5}})";
const char* kC = R"({"id":"t3","author_id":"carol","created_at":"2021-05-17 23:59:59.75","text":"sore","author":{"bot_probability":0.1,"verified":true}})";

}  // namespace

TEST_CASE("timestamps") {
  const auto t = parse_timestamp("2021-05-14T08:00:00.999Z");
  CHECK(format_timestamp(t) == "2021-05-14T08:00:00Z");
  CHECK(parse_timestamp("2021-05-14T10:00:00+02:00") == parse_timestamp("2021-05-14T08:00:00Z"));
  CHECK(parse_timestamp("2021-05-14 08:00:00") == t);
  CHECK_THROWS_AS(parse_timestamp("2021-13-01T00:00:00Z"), ArgumentError);
  CHECK_THROWS_AS(parse_timestamp("yesterday"), ArgumentError);
}

TEST_CASE("a record yields its entities and author metadata") {
  const auto rec = parse_record(kA, 1);
  CHECK(rec.tweet.hashtags == std::vector<std::string>{"zyl7"});
  CHECK(rec.tweet.mentions == std::vector<std::string>{"abc"});
  REQUIRE(rec.author);
  CHECK(rec.author->followers_count == 10);
  CHECK(rec.author->bot_probability == 0.9);
}

TEST_CASE("explicit entity lists override text extraction") {
  const auto t = parse_tweet_record(
      R"({"id":"x","author_id":"a","created_at":"2021-05-14T00:00:00Z","text":"#ignored","hashtags":["#DUP6","dup6"],"mentions":["@B"]})");
  CHECK(t.hashtags == std::vector<std::string>{"dup6"});
  CHECK(t.mentions == std::vector<std::string>{"B"});
}

TEST_CASE("malformed records report their line") {
  try {
    fixture::corpus({kA, "{not json", kC});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_record(R"({"id":"x","created_at":"2021-05-14T00:00:00Z"})"), SchemaError);
  CHECK_THROWS_AS(parse_record(R"({"id":"x","author_id":"a","created_at":"soon"})"), SchemaError);
}

TEST_CASE("duplicate tweet ids are a schema error at the later line") {
  try {
    fixture::corpus({kA, kB, kA});
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("serialization round-trips") {
  const auto rec = parse_record(kB);
  const auto again = parse_record(serialize_record(rec.tweet, rec.author ? &*rec.author : nullptr));
  CHECK(again.tweet == rec.tweet);
  CHECK(again.author == rec.author);
}

TEST_CASE("corpus order does not depend on input order") {
  const auto x = fixture::corpus({kA, kB, kC});
  const auto y = fixture::corpus({kC, kA, kB});
  CHECK(x.tweets() == y.tweets());
  CHECK(x.agents() == y.agents());
  CHECK(x.tweets().front().id == "t1");
}

TEST_CASE("referenced agents are resolved without metadata") {
  const auto c = fixture::corpus({kA, kB, kC});
  const auto* abc = c.find_agent("abc");
  REQUIRE(abc);
  CHECK_FALSE(abc->has_metadata());
  CHECK(c.agents().size() == 4);
  CHECK(c.tweets_by("bob").size() == 1);
  CHECK(c.tweets_by("abc").empty());
}

TEST_CASE("windows and calendar-day spans") {
  const auto c = fixture::corpus({kA, kB, kC});
  const auto [from, to] = leading_days(c, 2);
  const auto w = window(c, from, to);
  CHECK(w.tweets().size() == 2);
  CHECK(w.find_agent("carol") == nullptr);
  const auto [tf, tt] = trailing_days(c, 1);
  CHECK(window(c, tf, tt).tweets().size() == 1);
  CHECK_THROWS_AS(window(c, to, from), ArgumentError);
  CHECK(filter_tweets(c, {2}).tweets().front().id == "t3");
}

TEST_CASE("bot percentage uses an inclusive threshold") {
  const auto c = fixture::corpus({kA, kB, kC});
  const auto s = corpus_stats(c);
  CHECK(s.num_agents == 4);
  CHECK(s.num_tweets == 3);
  // 0.9 and 0.5 of three agents with a probability.
  CHECK(s.bot_percentage == doctest::Approx(200.0 / 3.0));
  const std::set<std::string> subset{"carol"};
  const auto sub = corpus_stats(c, &subset);
  CHECK(sub.num_agents == 1);
  CHECK(sub.num_tweets == 1);
  CHECK(sub.bot_percentage == 0.0);
  CHECK(format_stats_row("Full dataset", corpus_stats(fixture::corpus({kA, kC}))) == "Full dataset,3,2,50.00");
}

TEST_CASE("heuristic bot probability fills gaps only") {
  std::stringstream ss;
  ss << R"({"id":"1","author_id":"a","created_at":"2021-05-14T00:00:00Z","author":{"followers_count":999}})" << '\n'
     << R"({"id":"2","author_id":"b","created_at":"2021-05-14T00:00:00Z","author":{"followers_count":9,"bot_probability":0.7}})"
     << '\n';
  const auto c = read_corpus(ss, LoadOptions{true});
  CHECK(*c.find_agent("a")->bot_probability == doctest::Approx(0.2));
  CHECK(*c.find_agent("b")->bot_probability == 0.7);
}
