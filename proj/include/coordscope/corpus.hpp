#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace coordscope {

using Timestamp = std::chrono::sys_seconds;

/// Accepts "YYYY-MM-DDTHH:MM:SS" with optional fractional seconds
/// (truncated) and an optional "Z" or "+HH:MM"/"-HH:MM" offset.
/// A space may replace the 'T'. Throws ArgumentError on bad input.
Timestamp parse_timestamp(std::string_view text);
/// Always "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(Timestamp t);
/// "YYYY-MM-DD".
std::string format_date(std::chrono::sys_days d);

struct Tweet {
  std::string id;
  std::string author_id;
  Timestamp created_at{};
  std::string text;
  std::vector<std::string> hashtags;  // normalized, unique
  std::vector<std::string> mentions;  // agent ids, unique
  std::optional<std::string> retweet_of_author;
  std::vector<std::string> urls;

  bool operator==(const Tweet&) const = default;
};

/// Account metadata. Agents that only appear as mention or retweet targets
/// carry no metadata at all.
struct Agent {
  std::string id;
  std::string screen_name_hash;
  std::optional<std::int64_t> followers_count;
  std::optional<std::int64_t> following_count;
  std::optional<bool> verified;
  std::optional<double> bot_probability;

  bool has_metadata() const {
    return followers_count || following_count || verified || bot_probability ||
           !screen_name_hash.empty();
  }
  bool operator==(const Agent&) const = default;
};

/// One input line: the tweet plus the author metadata it carried, if any.
struct TweetRecord {
  Tweet tweet;
  std::optional<Agent> author;
  std::size_t line = 0;  // source line, 0 when not read from a file
};

/// Parses one JSON object line. `line_no` is used in error messages only.
TweetRecord parse_record(std::string_view line, std::size_t line_no = 0);
Tweet parse_tweet_record(std::string_view line, std::size_t line_no = 0);

/// Inverse of parse_record; emits the entity fields explicitly.
std::string serialize_record(const Tweet& tweet, const Agent* author = nullptr);

struct TimeSpan {
  Timestamp min;
  Timestamp max;
};

struct LoadOptions {
  /// Fill missing bot probabilities with 0.5 - min(0.5, log10(1+followers)/10).
  /// A crude stand-in for an external bot classifier, off by default.
  bool heuristic_bot_probability = false;
};

/// Immutable tweet collection with resolved agents.
///
/// Tweets are kept sorted by (created_at, id) so every downstream result is
/// independent of input line order. Every author, mention and retweet target
/// has an entry in agents(); unseen ids get metadata-free entries.
class Corpus {
 public:
  Corpus() = default;

  /// Throws SchemaError on duplicate tweet ids, reporting the later record's line.
  static Corpus from_records(std::vector<TweetRecord> records, const LoadOptions& options = {});

  const std::vector<Tweet>& tweets() const { return tweets_; }
  const std::map<std::string, Agent>& agents() const { return agents_; }
  const std::optional<TimeSpan>& time_span() const { return span_; }
  bool empty() const { return tweets_.empty(); }

  const Agent* find_agent(std::string_view id) const;
  /// Indices into tweets() authored by `id`; empty when none.
  const std::vector<std::size_t>& tweets_by(std::string_view id) const;

 private:
  friend Corpus window(const Corpus&, Timestamp, Timestamp);
  friend Corpus filter_tweets(const Corpus&, const std::vector<std::size_t>&);

  static Corpus assemble(std::vector<Tweet> tweets, const std::map<std::string, Agent>& source);
  void index();

  std::vector<Tweet> tweets_;
  std::map<std::string, Agent> agents_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_author_;
  std::optional<TimeSpan> span_;
};

/// Reads one record per line; blank lines are skipped. The first bad line
/// aborts with its 1-based line number.
Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options = {});
Corpus read_corpus(std::istream& in, const LoadOptions& options = {});

/// Tweets with from <= created_at < to; agents restricted to those the
/// remaining tweets reference. Throws ArgumentError when from > to.
Corpus window(const Corpus& corpus, Timestamp from, Timestamp to);

/// Sub-corpus made of the given tweet indices (agent metadata preserved).
Corpus filter_tweets(const Corpus& corpus, const std::vector<std::size_t>& indices);

/// [start of first day, start of first day + days) in UTC calendar days.
std::pair<Timestamp, Timestamp> leading_days(const Corpus& corpus, int days);
/// The last `days` calendar days ending with the day of the latest tweet.
std::pair<Timestamp, Timestamp> trailing_days(const Corpus& corpus, int days);

struct CorpusStats {
  std::size_t num_agents = 0;
  std::size_t num_tweets = 0;
  double bot_percentage = 0.0;
};

/// Agents with bot_probability >= threshold over agents carrying a
/// probability, as a percentage. With `subset`, agents are restricted to
/// the subset and tweets to those authored by it.
CorpusStats corpus_stats(const Corpus& corpus, const std::set<std::string>* subset = nullptr,
                         double bot_threshold = 0.5);

/// One row of the dataset-statistics table: "label,agents,tweets,bot%".
std::string format_stats_row(std::string_view label, const CorpusStats& stats);
std::string stats_table_header();

}  // namespace coordscope
