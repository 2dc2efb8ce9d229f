#include "coordscope/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <unordered_map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "coordscope/error.hpp"
#include "coordscope/text.hpp"

namespace coordscope {

using nlohmann::json;
namespace chr = std::chrono;

namespace {

int parse_digits(std::string_view s, std::size_t pos, std::size_t n, std::string_view whole) {
  int value = 0;
  if (pos + n > s.size()) throw ArgumentError("truncated timestamp '" + std::string(whole) + "'");
  auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + n, value);
  if (ec != std::errc() || ptr != s.data() + pos + n) {
    throw ArgumentError("bad timestamp '" + std::string(whole) + "'");
  }
  return value;
}

void expect_char(std::string_view s, std::size_t pos, std::string_view allowed,
                 std::string_view whole) {
  if (pos >= s.size() || allowed.find(s[pos]) == std::string_view::npos) {
    throw ArgumentError("bad timestamp '" + std::string(whole) + "'");
  }
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  const std::string_view s = trim(text);
  const int y = parse_digits(s, 0, 4, text);
  expect_char(s, 4, "-", text);
  const int mo = parse_digits(s, 5, 2, text);
  expect_char(s, 7, "-", text);
  const int d = parse_digits(s, 8, 2, text);
  expect_char(s, 10, "T ", text);
  const int hh = parse_digits(s, 11, 2, text);
  expect_char(s, 13, ":", text);
  const int mm = parse_digits(s, 14, 2, text);
  expect_char(s, 16, ":", text);
  const int ss = parse_digits(s, 17, 2, text);
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) throw ArgumentError("bad timestamp '" + std::string(text) + "'");
  }
  int offset_minutes = 0;
  if (pos < s.size()) {
    if (s[pos] == 'Z' || s[pos] == 'z') {
      ++pos;
    } else if (s[pos] == '+' || s[pos] == '-') {
      const int sign = s[pos] == '-' ? -1 : 1;
      const int oh = parse_digits(s, pos + 1, 2, text);
      expect_char(s, pos + 3, ":", text);
      const int om = parse_digits(s, pos + 4, 2, text);
      offset_minutes = sign * (oh * 60 + om);
      pos += 6;
    }
  }
  if (pos != s.size()) throw ArgumentError("bad timestamp '" + std::string(text) + "'");

  const chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(mo)},
                                chr::day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60) {
    throw ArgumentError("timestamp out of range '" + std::string(text) + "'");
  }
  return chr::sys_days{ymd} + chr::hours{hh} + chr::minutes{mm} + chr::seconds{ss} -
         chr::minutes{offset_minutes};
}

std::string format_timestamp(Timestamp t) {
  const auto day = chr::floor<chr::days>(t);
  const chr::year_month_day ymd{day};
  const chr::hh_mm_ss hms{t - day};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                     hms.hours().count(), hms.minutes().count(), hms.seconds().count());
}

std::string format_date(chr::sys_days d) {
  const chr::year_month_day ymd{d};
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

// ---------------------------------------------------------------------------
// Records

namespace {

std::string required_string(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    throw SchemaError(line_no, std::string("missing required field '") + key + "'");
  }
  if (!it->is_string()) throw SchemaError(line_no, std::string("field '") + key + "' must be a string");
  std::string value = it->get<std::string>();
  if (value.empty()) throw SchemaError(line_no, std::string("field '") + key + "' is empty");
  return value;
}

std::optional<std::vector<std::string>> optional_string_list(const json& obj, const char* key,
                                                             std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) throw SchemaError(line_no, std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw SchemaError(line_no, std::string("field '") + key + "' must contain strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::optional<std::int64_t> optional_count(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) {
    throw SchemaError(line_no, std::string("field '") + key + "' must be an integer");
  }
  const auto v = it->get<std::int64_t>();
  if (v < 0) throw SchemaError(line_no, std::string("field '") + key + "' must be non-negative");
  return v;
}

template <typename Fn>
std::vector<std::string> normalized_unique(const std::vector<std::string>& raw, Fn normalize) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    std::string n = normalize(r);
    if (n.empty() || std::find(out.begin(), out.end(), n) != out.end()) continue;
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace

TweetRecord parse_record(std::string_view line, std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(line_no, std::string("malformed record: ") + e.what());
  }
  if (!obj.is_object()) throw ParseError(line_no, "record is not a JSON object");

  TweetRecord rec;
  Tweet& t = rec.tweet;
  t.id = required_string(obj, "id", line_no);
  t.author_id = normalize_mention(required_string(obj, "author_id", line_no));
  const std::string created = required_string(obj, "created_at", line_no);
  try {
    t.created_at = parse_timestamp(created);
  } catch (const ArgumentError& e) {
    throw SchemaError(line_no, e.what());
  }
  if (auto it = obj.find("text"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaError(line_no, "field 'text' must be a string");
    t.text = it->get<std::string>();
  }

  if (auto tags = optional_string_list(obj, "hashtags", line_no)) {
    t.hashtags = normalized_unique(*tags, [](const std::string& s) { return normalize_hashtag(s); });
  } else {
    t.hashtags = extract_hashtags(t.text);
  }
  if (auto mentions = optional_string_list(obj, "mentions", line_no)) {
    t.mentions =
        normalized_unique(*mentions, [](const std::string& s) { return normalize_mention(s); });
  } else {
    t.mentions = extract_mentions(t.text);
  }
  if (auto it = obj.find("retweet_of_author"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaError(line_no, "field 'retweet_of_author' must be a string");
    std::string rt = normalize_mention(it->get<std::string>());
    if (!rt.empty()) t.retweet_of_author = std::move(rt);
  }
  if (auto urls = optional_string_list(obj, "urls", line_no)) t.urls = std::move(*urls);

  if (auto it = obj.find("author"); it != obj.end() && !it->is_null()) {
    if (!it->is_object()) throw SchemaError(line_no, "field 'author' must be an object");
    const json& a = *it;
    Agent agent;
    agent.id = t.author_id;
    if (auto h = a.find("screen_name_hash"); h != a.end() && !h->is_null()) {
      if (!h->is_string()) throw SchemaError(line_no, "field 'screen_name_hash' must be a string");
      agent.screen_name_hash = h->get<std::string>();
    }
    agent.followers_count = optional_count(a, "followers_count", line_no);
    agent.following_count = optional_count(a, "following_count", line_no);
    if (auto v = a.find("verified"); v != a.end() && !v->is_null()) {
      if (!v->is_boolean()) throw SchemaError(line_no, "field 'verified' must be a boolean");
      agent.verified = v->get<bool>();
    }
    if (auto b = a.find("bot_probability"); b != a.end() && !b->is_null()) {
      if (!b->is_number()) throw SchemaError(line_no, "field 'bot_probability' must be a number");
      const double p = b->get<double>();
      if (!(p >= 0.0 && p <= 1.0)) {
        throw SchemaError(line_no, "field 'bot_probability' must lie in [0, 1]");
      }
      agent.bot_probability = p;
    }
    rec.author = std::move(agent);
  }
  return rec;
}

Tweet parse_tweet_record(std::string_view line, std::size_t line_no) {
  return parse_record(line, line_no).tweet;
}

std::string serialize_record(const Tweet& tweet, const Agent* author) {
  json obj;
  obj["id"] = tweet.id;
  obj["author_id"] = tweet.author_id;
  obj["created_at"] = format_timestamp(tweet.created_at);
  obj["text"] = tweet.text;
  obj["hashtags"] = tweet.hashtags;
  obj["mentions"] = tweet.mentions;
  if (tweet.retweet_of_author) obj["retweet_of_author"] = *tweet.retweet_of_author;
  obj["urls"] = tweet.urls;
  if (author && author->has_metadata()) {
    json a = json::object();
    if (!author->screen_name_hash.empty()) a["screen_name_hash"] = author->screen_name_hash;
    if (author->followers_count) a["followers_count"] = *author->followers_count;
    if (author->following_count) a["following_count"] = *author->following_count;
    if (author->verified) a["verified"] = *author->verified;
    if (author->bot_probability) a["bot_probability"] = *author->bot_probability;
    obj["author"] = std::move(a);
  }
  return obj.dump();
}

// ---------------------------------------------------------------------------
// Corpus

namespace {

bool tweet_order(const Tweet& a, const Tweet& b) {
  if (a.created_at != b.created_at) return a.created_at < b.created_at;
  return a.id < b.id;
}

void ensure_agent(std::map<std::string, Agent>& agents, const std::string& id) {
  if (id.empty()) return;
  auto [it, inserted] = agents.try_emplace(id);
  if (inserted) it->second.id = id;
}

}  // namespace

Corpus Corpus::from_records(std::vector<TweetRecord> records, const LoadOptions& options) {
  {
    std::unordered_map<std::string_view, std::size_t> seen;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (!seen.emplace(records[i].tweet.id, i).second) {
        const std::size_t line = records[i].line != 0 ? records[i].line : i + 1;
        throw SchemaError(line, "duplicate tweet id '" + records[i].tweet.id + "'");
      }
    }
  }
  // Metadata from the latest tweet (by created_at, then id) wins, which
  // keeps the result independent of line order.
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return tweet_order(records[a].tweet, records[b].tweet);
  });

  std::map<std::string, Agent> agents;
  std::vector<Tweet> tweets;
  tweets.reserve(records.size());
  for (std::size_t k : order) {
    auto& rec = records[k];
    if (rec.author) {
      rec.author->id = rec.tweet.author_id;
      agents[rec.tweet.author_id] = std::move(*rec.author);
    }
    tweets.push_back(std::move(rec.tweet));
  }

  if (options.heuristic_bot_probability) {
    for (auto& [id, agent] : agents) {
      if (!agent.bot_probability && agent.followers_count) {
        const double f = static_cast<double>(*agent.followers_count);
        agent.bot_probability = 0.5 - std::min(0.5, std::log10(1.0 + f) / 10.0);
      }
    }
  }
  return assemble(std::move(tweets), agents);
}

Corpus Corpus::assemble(std::vector<Tweet> tweets, const std::map<std::string, Agent>& source) {
  Corpus c;
  std::sort(tweets.begin(), tweets.end(), tweet_order);
  c.tweets_ = std::move(tweets);
  for (const auto& t : c.tweets_) {
    auto resolve = [&](const std::string& id) {
      if (auto it = source.find(id); it != source.end()) c.agents_.emplace(id, it->second);
      ensure_agent(c.agents_, id);
    };
    resolve(t.author_id);
    for (const auto& m : t.mentions) resolve(m);
    if (t.retweet_of_author) resolve(*t.retweet_of_author);
  }
  c.index();
  return c;
}

void Corpus::index() {
  by_author_.clear();
  for (std::size_t i = 0; i < tweets_.size(); ++i) by_author_[tweets_[i].author_id].push_back(i);
  if (tweets_.empty()) {
    span_.reset();
  } else {
    span_ = TimeSpan{tweets_.front().created_at, tweets_.back().created_at};
  }
}

const Agent* Corpus::find_agent(std::string_view id) const {
  auto it = agents_.find(std::string(id));
  return it == agents_.end() ? nullptr : &it->second;
}

const std::vector<std::size_t>& Corpus::tweets_by(std::string_view id) const {
  static const std::vector<std::size_t> none;
  auto it = by_author_.find(id);
  return it == by_author_.end() ? none : it->second;
}

Corpus read_corpus(std::istream& in, const LoadOptions& options) {
  std::vector<TweetRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    records.push_back(parse_record(line, line_no));
    records.back().line = line_no;
  }
  if (in.bad()) throw IoError("read failure after line " + std::to_string(line_no));
  return Corpus::from_records(std::move(records), options);
}

Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file " + path.string());
  return read_corpus(in, options);
}

Corpus window(const Corpus& corpus, Timestamp from, Timestamp to) {
  if (from > to) throw ArgumentError("window start is after window end");
  std::vector<Tweet> kept;
  for (const auto& t : corpus.tweets()) {
    if (t.created_at >= from && t.created_at < to) kept.push_back(t);
  }
  return Corpus::assemble(std::move(kept), corpus.agents());
}

Corpus filter_tweets(const Corpus& corpus, const std::vector<std::size_t>& indices) {
  std::vector<Tweet> kept;
  kept.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= corpus.tweets().size()) throw ArgumentError("tweet index out of range");
    kept.push_back(corpus.tweets()[i]);
  }
  return Corpus::assemble(std::move(kept), corpus.agents());
}

std::pair<Timestamp, Timestamp> leading_days(const Corpus& corpus, int days) {
  if (days <= 0) throw ArgumentError("day count must be positive");
  if (!corpus.time_span()) throw ArgumentError("corpus has no tweets");
  const auto start = chr::floor<chr::days>(corpus.time_span()->min);
  return {Timestamp{start}, Timestamp{start + chr::days{days}}};
}

std::pair<Timestamp, Timestamp> trailing_days(const Corpus& corpus, int days) {
  if (days <= 0) throw ArgumentError("day count must be positive");
  if (!corpus.time_span()) throw ArgumentError("corpus has no tweets");
  const auto last = chr::floor<chr::days>(corpus.time_span()->max) + chr::days{1};
  return {Timestamp{last - chr::days{days}}, Timestamp{last}};
}

CorpusStats corpus_stats(const Corpus& corpus, const std::set<std::string>* subset,
                         double bot_threshold) {
  CorpusStats stats;
  std::size_t with_probability = 0;
  std::size_t bots = 0;
  auto count_agent = [&](const Agent& a) {
    ++stats.num_agents;
    if (a.bot_probability) {
      ++with_probability;
      if (*a.bot_probability >= bot_threshold) ++bots;
    }
  };
  if (subset) {
    for (const auto& id : *subset) {
      const Agent* a = corpus.find_agent(id);
      if (!a) throw ArgumentError("agent '" + id + "' is not in the corpus");
      count_agent(*a);
      stats.num_tweets += corpus.tweets_by(id).size();
    }
  } else {
    for (const auto& [id, a] : corpus.agents()) count_agent(a);
    stats.num_tweets = corpus.tweets().size();
  }
  stats.bot_percentage =
      with_probability == 0 ? 0.0 : 100.0 * static_cast<double>(bots) / static_cast<double>(with_probability);
  return stats;
}

std::string stats_table_header() { return "Dataset,Num Agents,Num Tweets,Bot Percentage (%)"; }

std::string format_stats_row(std::string_view label, const CorpusStats& stats) {
  return fmt::format("{},{},{},{:.2f}", label, stats.num_agents, stats.num_tweets,
                     stats.bot_percentage);
}

}  // namespace coordscope
