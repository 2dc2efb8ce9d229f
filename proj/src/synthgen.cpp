#include "coordscope/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "coordscope/discovery.hpp"
#include "coordscope/error.hpp"
#include "coordscope/rng.hpp"
#include "coordscope/text.hpp"

namespace coordscope {

using nlohmann::json;
namespace chr = std::chrono;

CampaignConfig default_campaign_config() {
  CampaignConfig c;
  c.topics = {
      {{"harga", "beras", "pasar", "minyak", "goreng", "gaji", "pekerja", "petani", "panen", "sawah",
        "subsidi", "listrik", "tarif", "bensin", "ojek", "warung", "usaha", "modal", "pajak", "ekspor",
        "impor", "rupiah", "inflasi", "belanja", "sembako", "kredit", "koperasi", "nelayan", "pelabuhan",
        "pabrik", "buruh", "upah", "kontrak", "investasi", "saham", "dagang", "toko", "gudang", "pupuk",
        "cicilan"},
       {"hargapangan", "ekonomirakyat", "umkmbangkit", "pasarrakyat", "subsidiyatepat", "petaniindonesia"}},
      {{"sepakbola", "timnas", "pemain", "pelatih", "gol", "stadion", "liga", "klub", "suporter", "juara",
        "turnamen", "musik", "konser", "lagu", "penyanyi", "film", "bioskop", "sinetron", "artis", "album",
        "panggung", "festival", "tiket", "pertandingan", "skor", "wasit", "kiper", "penalti", "bola",
        "lapangan", "latihan", "final", "trofi", "medali", "atlet", "olahraga", "badminton", "voli",
        "gitar", "drummer"},
       {"timnasday", "ligaindonesia", "musikindonesia", "filmindonesia", "konsermusik", "sepakbolakita"}},
  };
  c.filler_words = {"yang", "dan", "di", "ini", "itu", "dengan", "untuk", "dari", "ke", "juga", "sudah", "akan"};
  c.encouragement_words = {"semangat", "dukung", "hebat", "mantap", "bangkit"};
  c.coordinated_templates = {
      "{time}, {praise} di kota {city} makin banyak saudara yang sadar khilafah, kamu gimana {mention}?",
      "Ayo bergabung bersama kami {mention}, {praise} perjuangan ini untuk umat!",
      "Wahai umat, sadarlah! Mari dukung perjuangan bersama {mention}",
      "{time} di {city}, semangat saudaraku! mari bergabung dan bergerak bersama {mention}",
  };
  c.time_phrases = {"Pagi ini", "Siang tadi", "Sore ini", "Malam ini", "Kemarin"};
  c.praise_phrases = {"alhamdulillah", "masyaallah", "subhanallah"};
  c.cities = {"bandung", "surabaya", "medan", "makassar", "semarang", "palembang", "yogyakarta", "malang"};
  return c;
}

// ---------------------------------------------------------------------------
// Config text

namespace {

std::string join(const std::vector<std::string>& v) { return fmt::format("{}", fmt::join(v, ",")); }

chr::sys_days parse_date(const std::string& text) {
  const auto t = parse_timestamp(text + "T00:00:00Z");
  return chr::floor<chr::days>(t);
}

}  // namespace

CampaignConfig campaign_config_from(const KeyValueConfig& kv) {
  std::set<std::string> known = {
      "n_organic_agents", "n_coordinated_agents", "n_influencers", "n_days", "start_date",
      "organic_min_tweets_per_day", "organic_max_tweets_per_day", "influencer_min_tweets_per_day",
      "influencer_max_tweets_per_day", "tweets_per_coordinated_agent", "burst_day", "burst_fraction",
      "circle_size", "within_circle_pre", "within_circle_post", "polarization_start_day",
      "organic_mention_probability", "organic_retweet_probability", "organic_second_mention_probability",
      "organic_words_min", "organic_words_max", "influencer_encouragement_probability",
      "influencer_peer_mention_probability", "n_topics", "filler_words", "encouragement_words", "n_templates",
      "time_phrases", "praise_phrases", "cities", "n_anomalous_hashtags", "anomalous_tags_per_tweet",
      "influencer_target_probability", "fellow_mention_probability", "target_pool_size",
      "target_mention_probability", "bot_fraction_coordinated", "bot_fraction_organic", "seed",
  };
  const CampaignConfig d = default_campaign_config();
  const auto n_topics = static_cast<std::size_t>(kv.get_int("n_topics", static_cast<long long>(d.topics.size())));
  const auto n_templates =
      static_cast<std::size_t>(kv.get_int("n_templates", static_cast<long long>(d.coordinated_templates.size())));
  for (std::size_t i = 0; i < n_topics; ++i) {
    known.insert(fmt::format("topic.{}.words", i));
    known.insert(fmt::format("topic.{}.hashtags", i));
  }
  for (std::size_t i = 0; i < n_templates; ++i) known.insert(fmt::format("template.{}", i));
  kv.require_known(known);

  auto size = [&](const char* key, std::size_t fallback) {
    const auto v = kv.get_int(key, static_cast<long long>(fallback));
    if (v < 0) throw ArgumentError(fmt::format("{} must be non-negative", key));
    return static_cast<std::size_t>(v);
  };
  auto integer = [&](const char* key, int fallback) { return static_cast<int>(kv.get_int(key, fallback)); };

  CampaignConfig c;
  c.n_organic_agents = size("n_organic_agents", d.n_organic_agents);
  c.n_coordinated_agents = size("n_coordinated_agents", d.n_coordinated_agents);
  c.n_influencers = size("n_influencers", d.n_influencers);
  c.n_days = integer("n_days", d.n_days);
  if (auto s = kv.get("start_date")) c.start_date = parse_date(*s);
  c.organic_min_tweets_per_day = integer("organic_min_tweets_per_day", d.organic_min_tweets_per_day);
  c.organic_max_tweets_per_day = integer("organic_max_tweets_per_day", d.organic_max_tweets_per_day);
  c.influencer_min_tweets_per_day = integer("influencer_min_tweets_per_day", d.influencer_min_tweets_per_day);
  c.influencer_max_tweets_per_day = integer("influencer_max_tweets_per_day", d.influencer_max_tweets_per_day);
  c.tweets_per_coordinated_agent = size("tweets_per_coordinated_agent", d.tweets_per_coordinated_agent);
  c.burst_day = integer("burst_day", d.burst_day);
  c.burst_fraction = kv.get_double("burst_fraction", d.burst_fraction);
  c.circle_size = size("circle_size", d.circle_size);
  c.within_circle_pre = kv.get_double("within_circle_pre", d.within_circle_pre);
  c.within_circle_post = kv.get_double("within_circle_post", d.within_circle_post);
  c.polarization_start_day = integer("polarization_start_day", d.polarization_start_day);
  c.organic_mention_probability = kv.get_double("organic_mention_probability", d.organic_mention_probability);
  c.organic_retweet_probability = kv.get_double("organic_retweet_probability", d.organic_retweet_probability);
  c.organic_second_mention_probability =
      kv.get_double("organic_second_mention_probability", d.organic_second_mention_probability);
  c.organic_words_min = size("organic_words_min", d.organic_words_min);
  c.organic_words_max = size("organic_words_max", d.organic_words_max);
  c.influencer_encouragement_probability =
      kv.get_double("influencer_encouragement_probability", d.influencer_encouragement_probability);
  c.influencer_peer_mention_probability =
      kv.get_double("influencer_peer_mention_probability", d.influencer_peer_mention_probability);

  c.topics.resize(n_topics);
  for (std::size_t i = 0; i < n_topics; ++i) {
    const TopicVocabulary fallback = i < d.topics.size() ? d.topics[i] : TopicVocabulary{};
    c.topics[i].words = kv.get_list(fmt::format("topic.{}.words", i), fallback.words);
    c.topics[i].hashtags = kv.get_list(fmt::format("topic.{}.hashtags", i), fallback.hashtags);
  }
  c.filler_words = kv.get_list("filler_words", d.filler_words);
  c.encouragement_words = kv.get_list("encouragement_words", d.encouragement_words);
  c.coordinated_templates.resize(n_templates);
  for (std::size_t i = 0; i < n_templates; ++i) {
    const std::string fallback = i < d.coordinated_templates.size() ? d.coordinated_templates[i] : "";
    c.coordinated_templates[i] = kv.get_string(fmt::format("template.{}", i), fallback);
  }
  c.time_phrases = kv.get_list("time_phrases", d.time_phrases);
  c.praise_phrases = kv.get_list("praise_phrases", d.praise_phrases);
  c.cities = kv.get_list("cities", d.cities);
  c.n_anomalous_hashtags = size("n_anomalous_hashtags", d.n_anomalous_hashtags);
  c.anomalous_tags_per_tweet = size("anomalous_tags_per_tweet", d.anomalous_tags_per_tweet);
  c.influencer_target_probability = kv.get_double("influencer_target_probability", d.influencer_target_probability);
  c.fellow_mention_probability = kv.get_double("fellow_mention_probability", d.fellow_mention_probability);
  c.target_pool_size = size("target_pool_size", d.target_pool_size);
  c.target_mention_probability = kv.get_double("target_mention_probability", d.target_mention_probability);
  c.bot_fraction_coordinated = kv.get_double("bot_fraction_coordinated", d.bot_fraction_coordinated);
  c.bot_fraction_organic = kv.get_double("bot_fraction_organic", d.bot_fraction_organic);
  const auto seed = kv.get_int("seed", static_cast<long long>(d.seed));
  c.seed = static_cast<std::uint64_t>(seed);
  return c;
}

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
  return campaign_config_from(KeyValueConfig::load(path));
}

void write_campaign_config(std::ostream& out, const CampaignConfig& c) {
  auto line = [&](std::string_view key, const auto& value) { out << key << " = " << value << '\n'; };
  line("n_organic_agents", c.n_organic_agents);
  line("n_coordinated_agents", c.n_coordinated_agents);
  line("n_influencers", c.n_influencers);
  line("n_days", c.n_days);
  line("start_date", format_date(c.start_date));
  line("organic_min_tweets_per_day", c.organic_min_tweets_per_day);
  line("organic_max_tweets_per_day", c.organic_max_tweets_per_day);
  line("influencer_min_tweets_per_day", c.influencer_min_tweets_per_day);
  line("influencer_max_tweets_per_day", c.influencer_max_tweets_per_day);
  line("tweets_per_coordinated_agent", c.tweets_per_coordinated_agent);
  line("burst_day", c.burst_day);
  line("burst_fraction", fmt::format("{}", c.burst_fraction));
  line("circle_size", c.circle_size);
  line("within_circle_pre", fmt::format("{}", c.within_circle_pre));
  line("within_circle_post", fmt::format("{}", c.within_circle_post));
  line("polarization_start_day", c.polarization_start_day);
  line("organic_mention_probability", fmt::format("{}", c.organic_mention_probability));
  line("organic_retweet_probability", fmt::format("{}", c.organic_retweet_probability));
  line("organic_second_mention_probability", fmt::format("{}", c.organic_second_mention_probability));
  line("organic_words_min", c.organic_words_min);
  line("organic_words_max", c.organic_words_max);
  line("influencer_encouragement_probability", fmt::format("{}", c.influencer_encouragement_probability));
  line("influencer_peer_mention_probability", fmt::format("{}", c.influencer_peer_mention_probability));
  line("n_topics", c.topics.size());
  for (std::size_t i = 0; i < c.topics.size(); ++i) {
    line(fmt::format("topic.{}.words", i), join(c.topics[i].words));
    line(fmt::format("topic.{}.hashtags", i), join(c.topics[i].hashtags));
  }
  line("filler_words", join(c.filler_words));
  line("encouragement_words", join(c.encouragement_words));
  line("n_templates", c.coordinated_templates.size());
  for (std::size_t i = 0; i < c.coordinated_templates.size(); ++i) {
    line(fmt::format("template.{}", i), c.coordinated_templates[i]);
  }
  line("time_phrases", join(c.time_phrases));
  line("praise_phrases", join(c.praise_phrases));
  line("cities", join(c.cities));
  line("n_anomalous_hashtags", c.n_anomalous_hashtags);
  line("anomalous_tags_per_tweet", c.anomalous_tags_per_tweet);
  line("influencer_target_probability", fmt::format("{}", c.influencer_target_probability));
  line("fellow_mention_probability", fmt::format("{}", c.fellow_mention_probability));
  line("target_pool_size", c.target_pool_size);
  line("target_mention_probability", fmt::format("{}", c.target_mention_probability));
  line("bot_fraction_coordinated", fmt::format("{}", c.bot_fraction_coordinated));
  line("bot_fraction_organic", fmt::format("{}", c.bot_fraction_organic));
  line("seed", c.seed);
}

// ---------------------------------------------------------------------------
// Validation

ConfigCheck validate_config(const CampaignConfig& c) {
  ConfigCheck check;
  auto error = [&](std::string msg) { check.errors.push_back(std::move(msg)); };
  auto probability = [&](std::string_view name, double p) {
    if (!(p >= 0.0 && p <= 1.0)) error(fmt::format("{} = {} is outside [0, 1]", name, p));
  };

  if (c.n_organic_agents == 0) error("n_organic_agents must be positive");
  if (c.n_coordinated_agents == 0) error("n_coordinated_agents must be positive");
  if (c.n_influencers == 0) error("n_influencers must be positive");
  if (c.n_days < 1) error("n_days must be positive");
  if (c.burst_day < 0 || c.burst_day >= c.n_days) {
    error(fmt::format("burst_day {} must lie in [0, n_days = {})", c.burst_day, c.n_days));
  }
  if (!(c.burst_fraction > 0.0 && c.burst_fraction <= 1.0)) {
    error(fmt::format("burst_fraction = {} is outside (0, 1]", c.burst_fraction));
  }
  if (c.organic_min_tweets_per_day < 0 || c.organic_min_tweets_per_day > c.organic_max_tweets_per_day) {
    error("organic tweets per day needs 0 <= min <= max");
  }
  if (c.influencer_min_tweets_per_day < 0 || c.influencer_min_tweets_per_day > c.influencer_max_tweets_per_day) {
    error("influencer tweets per day needs 0 <= min <= max");
  }
  if (c.tweets_per_coordinated_agent == 0) error("tweets_per_coordinated_agent must be positive");
  if (c.circle_size < 2) error("circle_size must be at least 2");
  if (c.polarization_start_day < 0 || c.polarization_start_day > c.n_days) {
    error("polarization_start_day must lie in [0, n_days]");
  }
  probability("within_circle_pre", c.within_circle_pre);
  probability("within_circle_post", c.within_circle_post);
  probability("organic_mention_probability", c.organic_mention_probability);
  probability("organic_retweet_probability", c.organic_retweet_probability);
  probability("organic_second_mention_probability", c.organic_second_mention_probability);
  probability("influencer_encouragement_probability", c.influencer_encouragement_probability);
  probability("influencer_peer_mention_probability", c.influencer_peer_mention_probability);
  probability("influencer_target_probability", c.influencer_target_probability);
  probability("fellow_mention_probability", c.fellow_mention_probability);
  probability("target_mention_probability", c.target_mention_probability);
  probability("bot_fraction_coordinated", c.bot_fraction_coordinated);
  probability("bot_fraction_organic", c.bot_fraction_organic);
  if (c.organic_words_min == 0 || c.organic_words_min > c.organic_words_max) {
    error("organic word counts need 1 <= min <= max");
  }
  if (c.target_pool_size > c.n_organic_agents) error("target_pool_size exceeds n_organic_agents");

  if (c.topics.size() < 2) error("at least two topic vocabularies are required");
  std::map<std::string, std::size_t> word_owner;
  std::map<std::string, std::size_t> tag_owner;
  for (std::size_t i = 0; i < c.topics.size(); ++i) {
    const auto& t = c.topics[i];
    if (t.words.empty()) error(fmt::format("topic {} has no words", i));
    if (t.hashtags.empty()) error(fmt::format("topic {} has no hashtags", i));
    for (const auto& w : t.words) {
      auto [it, fresh] = word_owner.emplace(w, i);
      if (!fresh && it->second != i) error(fmt::format("word '{}' appears in topics {} and {}", w, it->second, i));
    }
    for (const auto& h : t.hashtags) {
      if (normalize_hashtag(h) != h) error(fmt::format("hashtag '{}' is not normalized", h));
      if (is_anomalous_hashtag(h)) error(fmt::format("organic hashtag '{}' matches the anomaly rule", h));
      auto [it, fresh] = tag_owner.emplace(h, i);
      if (!fresh && it->second != i) error(fmt::format("hashtag '{}' appears in topics {} and {}", h, it->second, i));
    }
  }
  if (c.coordinated_templates.empty()) error("no coordinated templates");
  for (std::size_t i = 0; i < c.coordinated_templates.size(); ++i) {
    const auto& tpl = c.coordinated_templates[i];
    if (trim(tpl).empty()) error(fmt::format("template {} is empty", i));
    if (tpl.find("{time}") != std::string::npos && c.time_phrases.empty()) error("templates use {time} but time_phrases is empty");
    if (tpl.find("{praise}") != std::string::npos && c.praise_phrases.empty()) error("templates use {praise} but praise_phrases is empty");
    if (tpl.find("{city}") != std::string::npos && c.cities.empty()) error("templates use {city} but cities is empty");
  }
  if (c.anomalous_tags_per_tweet == 0) error("anomalous_tags_per_tweet must be positive");
  if (c.n_anomalous_hashtags < c.anomalous_tags_per_tweet) {
    error("n_anomalous_hashtags is smaller than anomalous_tags_per_tweet");
  }
  if (c.influencer_encouragement_probability > 0.0 && c.encouragement_words.empty()) {
    error("encouragement_words is empty");
  }

  if (c.n_days == 1) check.warnings.push_back("n_days = 1: burst concentration is trivially 1 for every group");
  if (c.n_coordinated_agents < 3) check.warnings.push_back("fewer than 3 coordinated agents");
  if (c.circle_size > c.n_organic_agents) check.warnings.push_back("circle_size exceeds n_organic_agents: one circle");
  if (c.n_influencers < 2) check.warnings.push_back("a single influencer cannot mention a peer");
  return check;
}

// ---------------------------------------------------------------------------
// Generation

std::string_view to_string(AgentRole r) {
  switch (r) {
    case AgentRole::organic: return "organic";
    case AgentRole::coordinated: return "coordinated";
    case AgentRole::influencer: return "influencer";
  }
  return "organic";
}

std::set<std::string> GroundTruth::with_role(AgentRole r) const {
  std::set<std::string> out;
  for (const auto& [id, role] : roles) {
    if (role == r) out.insert(id);
  }
  return out;
}

namespace {

struct SynthAgent {
  std::string id;
  AgentRole role = AgentRole::organic;
  std::size_t topic = 0;
  std::size_t circle = 0;  // organic only
  Agent meta;
  bool bot = false;
};

struct Draft {
  Timestamp at;
  std::size_t author;
  std::string text;
  std::vector<std::string> hashtags;
  std::vector<std::string> mentions;
  std::optional<std::string> retweet_of;
  TweetLabel label;
};

std::int64_t log_uniform(Rng& rng, double lo_exp, double hi_exp) {
  return static_cast<std::int64_t>(std::llround(std::pow(10.0, rng.uniform(lo_exp, hi_exp))));
}

double rounded(double p) { return std::round(p * 1000.0) / 1000.0; }

std::string random_anomalous_tag(Rng& rng) {
  static constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
  for (;;) {
    std::string tag(4, ' ');
    for (auto& ch : tag) ch = kAlphabet[rng.index(kAlphabet.size())];
    if (is_anomalous_hashtag(tag)) return tag;
  }
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

void push_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

class Generator {
 public:
  explicit Generator(const CampaignConfig& c) : c_(c), rng_(c.seed) {}

  SyntheticCampaign run() {
    make_agents();
    make_organic_tweets();
    make_influencer_tweets();
    make_campaign_tweets();
    return emit();
  }

 private:
  Timestamp moment(int day) {
    return chr::time_point_cast<chr::seconds>(c_.start_date + chr::days{day}) +
           chr::seconds{rng_.integer(0, 86399)};
  }

  void make_agents() {
    const std::size_t total = c_.n_organic_agents + c_.n_coordinated_agents + c_.n_influencers;
    std::vector<std::size_t> numbers(total);
    std::iota(numbers.begin(), numbers.end(), std::size_t{0});
    rng_.shuffle(std::span<std::size_t>(numbers));

    agents_.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
      auto& a = agents_[i];
      a.id = fmt::format("u{:05d}", numbers[i]);
      a.meta.id = a.id;
      a.meta.screen_name_hash = fmt::format("{:016x}", rng_.next());
      if (i < c_.n_organic_agents) {
        a.role = AgentRole::organic;
        a.circle = i / c_.circle_size;
        a.topic = a.circle % c_.topics.size();
        a.meta.followers_count = log_uniform(rng_, 1.0, 3.7);
        a.meta.following_count = log_uniform(rng_, 1.5, 3.0);
        a.meta.verified = false;
        organic_.push_back(i);
      } else if (i < c_.n_organic_agents + c_.n_coordinated_agents) {
        a.role = AgentRole::coordinated;
        a.meta.followers_count = log_uniform(rng_, 0.5, 2.5);
        a.meta.following_count = log_uniform(rng_, 2.0, 3.3);
        a.meta.verified = false;
        coordinated_.push_back(i);
      } else {
        a.role = AgentRole::influencer;
        a.topic = (i - c_.n_organic_agents - c_.n_coordinated_agents) % c_.topics.size();
        a.meta.followers_count = rng_.integer(300'000, 2'000'000);
        a.meta.following_count = log_uniform(rng_, 2.0, 3.0);
        a.meta.verified = true;
        influencers_.push_back(i);
      }
    }
    for (std::size_t i = 0; i < c_.n_organic_agents; ++i) circles_[agents_[i].circle].push_back(i);

    assign_bots(organic_, c_.bot_fraction_organic);
    assign_bots(coordinated_, c_.bot_fraction_coordinated);
    for (std::size_t i : influencers_) agents_[i].meta.bot_probability = rounded(rng_.uniform(0.01, 0.1));

    mention_pool_ = organic_;
    mention_pool_.insert(mention_pool_.end(), influencers_.begin(), influencers_.end());

    std::vector<std::size_t> shuffled = organic_;
    rng_.shuffle(std::span<std::size_t>(shuffled));
    targets_.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(c_.target_pool_size));

    const std::set<std::string> organic_tags = [&] {
      std::set<std::string> s;
      for (const auto& t : c_.topics) s.insert(t.hashtags.begin(), t.hashtags.end());
      return s;
    }();
    std::set<std::string> seen;
    while (anomalous_.size() < c_.n_anomalous_hashtags) {
      auto tag = random_anomalous_tag(rng_);
      if (organic_tags.count(tag) || !seen.insert(tag).second) continue;
      anomalous_.push_back(std::move(tag));
    }
  }

  // Exactly round(fraction * n) of the group get a probability above 0.5.
  void assign_bots(const std::vector<std::size_t>& group, double fraction) {
    std::vector<std::size_t> order = group;
    rng_.shuffle(std::span<std::size_t>(order));
    const auto n_bots = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(group.size())));
    for (std::size_t k = 0; k < order.size(); ++k) {
      auto& a = agents_[order[k]];
      a.bot = k < n_bots;
      a.meta.bot_probability = rounded(a.bot ? rng_.uniform(0.55, 0.99) : rng_.uniform(0.01, 0.45));
    }
  }

  std::size_t pick_other(const std::vector<std::size_t>& pool, std::size_t self) {
    for (;;) {
      const std::size_t j = pool[rng_.index(pool.size())];
      if (j != self) return j;
    }
  }

  std::size_t organic_partner(std::size_t self, int day) {
    const double within = day < c_.polarization_start_day ? c_.within_circle_pre : c_.within_circle_post;
    const auto& circle = circles_[agents_[self].circle];
    if (circle.size() > 1 && rng_.bernoulli(within)) return pick_other(circle, self);
    return pick_other(mention_pool_, self);
  }

  std::vector<std::string> topic_words(std::size_t topic, std::size_t n) {
    std::vector<std::string> words;
    const auto& vocab = c_.topics[topic].words;
    for (std::size_t k = 0; k < n; ++k) {
      if (!c_.filler_words.empty() && rng_.bernoulli(0.3)) {
        words.push_back(rng_.pick(c_.filler_words));
      } else {
        words.push_back(rng_.pick(vocab));
      }
    }
    return words;
  }

  static std::string render(std::vector<std::string> words, const std::vector<std::string>& mentions,
                            const std::vector<std::string>& tags, std::string_view prefix = {}) {
    std::string text(prefix);
    for (const auto& m : mentions) words.push_back("@" + m);
    for (const auto& t : tags) words.push_back("#" + t);
    text += fmt::format("{}", fmt::join(words, " "));
    return text;
  }

  void make_organic_tweets() {
    for (std::size_t i : organic_) {
      const auto& a = agents_[i];
      for (int day = 0; day < c_.n_days; ++day) {
        const auto n = rng_.integer(c_.organic_min_tweets_per_day, c_.organic_max_tweets_per_day);
        for (std::int64_t k = 0; k < n; ++k) {
          Draft d{moment(day), i, {}, {}, {}, std::nullopt, {false, -1, static_cast<int>(a.topic)}};
          const auto& pool = c_.topics[a.topic].hashtags;
          if (rng_.bernoulli(0.6)) push_unique(d.hashtags, rng_.pick(pool));
          if (rng_.bernoulli(0.2)) push_unique(d.hashtags, rng_.pick(pool));
          const auto words = topic_words(
              a.topic, static_cast<std::size_t>(rng_.integer(static_cast<std::int64_t>(c_.organic_words_min),
                                                             static_cast<std::int64_t>(c_.organic_words_max))));
          if (rng_.bernoulli(c_.organic_retweet_probability)) {
            const auto& target = agents_[organic_partner(i, day)].id;
            d.retweet_of = target;
            d.mentions.push_back(target);
            d.text = render(words, {}, d.hashtags, "RT @" + target + ": ");
          } else {
            if (rng_.bernoulli(c_.organic_mention_probability)) {
              d.mentions.push_back(agents_[organic_partner(i, day)].id);
              if (rng_.bernoulli(c_.organic_second_mention_probability)) {
                push_unique(d.mentions, agents_[organic_partner(i, day)].id);
              }
            }
            d.text = render(words, d.mentions, d.hashtags);
          }
          drafts_.push_back(std::move(d));
        }
      }
    }
  }

  void make_influencer_tweets() {
    for (std::size_t i : influencers_) {
      const auto& a = agents_[i];
      for (int day = 0; day < c_.n_days; ++day) {
        const auto n = rng_.integer(c_.influencer_min_tweets_per_day, c_.influencer_max_tweets_per_day);
        for (std::int64_t k = 0; k < n; ++k) {
          Draft d{moment(day), i, {}, {}, {}, std::nullopt, {false, -1, static_cast<int>(a.topic)}};
          auto words = topic_words(a.topic, static_cast<std::size_t>(rng_.integer(8, 14)));
          if (rng_.bernoulli(c_.influencer_encouragement_probability)) {
            words.insert(words.begin() + static_cast<std::ptrdiff_t>(rng_.index(words.size() + 1)),
                         rng_.pick(c_.encouragement_words));
          }
          if (influencers_.size() > 1 && rng_.bernoulli(c_.influencer_peer_mention_probability)) {
            d.mentions.push_back(agents_[pick_other(influencers_, i)].id);
          }
          d.hashtags.push_back(rng_.pick(c_.topics[a.topic].hashtags));
          d.text = render(words, d.mentions, d.hashtags);
          drafts_.push_back(std::move(d));
        }
      }
    }
  }

  void make_campaign_tweets() {
    const std::size_t slots = c_.n_coordinated_agents * c_.tweets_per_coordinated_agent;
    const auto in_burst = static_cast<std::size_t>(std::ceil(c_.burst_fraction * static_cast<double>(slots) - 1e-9));
    std::vector<std::size_t> order(slots);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng_.shuffle(std::span<std::size_t>(order));
    std::vector<int> day_of(slots, c_.burst_day);
    for (std::size_t k = in_burst; k < slots; ++k) {
      if (c_.n_days == 1) break;
      int day = static_cast<int>(rng_.integer(0, c_.n_days - 2));
      if (day >= c_.burst_day) ++day;
      day_of[order[k]] = day;
    }

    const std::string& hijacked = c_.topics.front().hashtags.front();
    for (std::size_t s = 0; s < slots; ++s) {
      const std::size_t author = coordinated_[s / c_.tweets_per_coordinated_agent];
      const int tpl = static_cast<int>(rng_.index(c_.coordinated_templates.size()));
      Draft d{moment(day_of[s]), author, {}, {}, {}, std::nullopt, {true, tpl, -1}};

      if (rng_.bernoulli(c_.influencer_target_probability) || coordinated_.size() < 2) {
        d.mentions.push_back(agents_[rng_.pick(influencers_)].id);
      } else {
        d.mentions.push_back(agents_[pick_other(coordinated_, author)].id);
      }
      if (coordinated_.size() > 1 && rng_.bernoulli(c_.fellow_mention_probability)) {
        const auto n = rng_.integer(1, 2);
        for (std::int64_t k = 0; k < n; ++k) push_unique(d.mentions, agents_[pick_other(coordinated_, author)].id);
      }
      if (!targets_.empty() && rng_.bernoulli(c_.target_mention_probability)) {
        push_unique(d.mentions, agents_[rng_.pick(targets_)].id);
      }

      std::vector<std::string> tags;
      while (tags.size() < c_.anomalous_tags_per_tweet) push_unique(tags, rng_.pick(anomalous_));
      tags.push_back(hijacked);
      d.hashtags = tags;

      std::string text = c_.coordinated_templates[static_cast<std::size_t>(tpl)];
      if (text.find("{time}") != std::string::npos) replace_all(text, "{time}", rng_.pick(c_.time_phrases));
      if (text.find("{praise}") != std::string::npos) replace_all(text, "{praise}", rng_.pick(c_.praise_phrases));
      if (text.find("{city}") != std::string::npos) replace_all(text, "{city}", rng_.pick(c_.cities));
      std::vector<std::string> rest = d.mentions;
      if (text.find("{mention}") != std::string::npos) {
        replace_all(text, "{mention}", "@" + d.mentions.front());
        rest.erase(rest.begin());
      }
      d.text = render({text}, rest, tags);
      drafts_.push_back(std::move(d));
    }
  }

  SyntheticCampaign emit() {
    std::vector<std::size_t> order(drafts_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return drafts_[a].at < drafts_[b].at; });

    SyntheticCampaign out;
    const int width = std::max<int>(7, static_cast<int>(std::to_string(drafts_.size()).size()));
    for (std::size_t k = 0; k < order.size(); ++k) {
      auto& d = drafts_[order[k]];
      TweetRecord r;
      r.tweet.id = fmt::format("t{:0{}d}", k + 1, width);
      r.tweet.author_id = agents_[d.author].id;
      r.tweet.created_at = d.at;
      r.tweet.text = std::move(d.text);
      r.tweet.hashtags = std::move(d.hashtags);
      r.tweet.mentions = std::move(d.mentions);
      r.tweet.retweet_of_author = std::move(d.retweet_of);
      r.author = agents_[d.author].meta;
      r.line = k + 1;
      out.truth.tweets.emplace(r.tweet.id, d.label);
      out.records.push_back(std::move(r));
    }
    for (const auto& a : agents_) {
      out.truth.roles.emplace(a.id, a.role);
      out.truth.bot.emplace(a.id, a.bot);
    }
    for (std::size_t i : targets_) out.truth.target_pool.insert(agents_[i].id);
    return out;
  }

  const CampaignConfig& c_;
  Rng rng_;
  std::vector<SynthAgent> agents_;
  std::vector<std::size_t> organic_, coordinated_, influencers_, mention_pool_, targets_;
  std::map<std::size_t, std::vector<std::size_t>> circles_;
  std::vector<std::string> anomalous_;
  std::vector<Draft> drafts_;
};

}  // namespace

SyntheticCampaign generate(const CampaignConfig& config) {
  const auto check = validate_config(config);
  if (!check.ok()) {
    throw ArgumentError(fmt::format("invalid campaign config: {}", fmt::join(check.errors, "; ")));
  }
  auto campaign = Generator(config).run();
  if (auto failures = self_check(campaign, config); !failures.empty()) {
    throw Error(fmt::format("synthetic campaign failed its self-check: {}", fmt::join(failures, "; ")));
  }
  return campaign;
}

std::vector<std::string> self_check(const SyntheticCampaign& campaign, const CampaignConfig& config) {
  std::vector<std::string> failures;
  const auto& truth = campaign.truth;
  std::map<std::string, const Agent*> meta;
  std::size_t campaign_tweets = 0, on_burst_day = 0;
  const auto burst_day = config.start_date + chr::days{config.burst_day};

  for (const auto& r : campaign.records) {
    const auto& t = r.tweet;
    auto role = truth.roles.find(t.author_id);
    auto label = truth.tweets.find(t.id);
    if (role == truth.roles.end() || label == truth.tweets.end()) {
      failures.push_back(fmt::format("tweet {} is missing from the ground truth", t.id));
      continue;
    }
    if (r.author) meta.emplace(t.author_id, &*r.author);
    const bool anomalous = std::any_of(t.hashtags.begin(), t.hashtags.end(), is_anomalous_hashtag);
    const bool is_campaign = role->second == AgentRole::coordinated;
    if (label->second.campaign != is_campaign) failures.push_back(fmt::format("tweet {} label disagrees with its author", t.id));
    if (is_campaign && !anomalous) failures.push_back(fmt::format("campaign tweet {} has no anomalous hashtag", t.id));
    if (!is_campaign && anomalous) failures.push_back(fmt::format("organic tweet {} has an anomalous hashtag", t.id));
    if (is_campaign) {
      ++campaign_tweets;
      if (chr::floor<chr::days>(t.created_at) == burst_day) ++on_burst_day;
    }
  }

  const double needed = std::ceil(config.burst_fraction * static_cast<double>(campaign_tweets) - 1e-9);
  if (static_cast<double>(on_burst_day) < needed) {
    failures.push_back(fmt::format("{} of {} campaign tweets on the burst day, need {}", on_burst_day,
                                   campaign_tweets, needed));
  }

  auto bot_count = [&](AgentRole r) {
    std::size_t n = 0, bots = 0;
    for (const auto& [id, role] : truth.roles) {
      if (role != r) continue;
      ++n;
      auto it = meta.find(id);
      const bool flagged = truth.bot.at(id);
      const bool above = it != meta.end() && it->second->bot_probability && *it->second->bot_probability > 0.5;
      if (it != meta.end() && flagged != above) failures.push_back(fmt::format("bot flag of {} disagrees with its probability", id));
      bots += flagged ? 1 : 0;
    }
    return std::pair{n, bots};
  };
  auto expect_bots = [&](AgentRole r, double fraction) {
    const auto [n, bots] = bot_count(r);
    const auto want = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    if (bots != want) failures.push_back(fmt::format("{} {} bots, expected {}", bots, to_string(r), want));
  };
  expect_bots(AgentRole::organic, config.bot_fraction_organic);
  expect_bots(AgentRole::coordinated, config.bot_fraction_coordinated);

  std::int64_t min_influencer = std::numeric_limits<std::int64_t>::max(), max_other = 0;
  for (const auto& [id, a] : meta) {
    const auto f = a->followers_count.value_or(0);
    if (truth.roles.at(id) == AgentRole::influencer) {
      min_influencer = std::min(min_influencer, f);
    } else {
      max_other = std::max(max_other, f);
    }
  }
  if (min_influencer <= max_other) failures.push_back("influencers do not dominate follower counts");
  if (truth.with_role(AgentRole::coordinated).size() != config.n_coordinated_agents) {
    failures.push_back("coordinated agent count disagrees with the config");
  }
  return failures;
}

void write_corpus(std::ostream& out, const SyntheticCampaign& campaign) {
  for (const auto& r : campaign.records) {
    out << serialize_record(r.tweet, r.author ? &*r.author : nullptr) << '\n';
  }
}

void write_ground_truth(std::ostream& out, const GroundTruth& truth) {
  for (const auto& [id, role] : truth.roles) {
    json j = {{"kind", "agent"}, {"id", id}, {"role", std::string(to_string(role))}, {"bot", truth.bot.at(id)},
              {"target_pool", truth.target_pool.count(id) != 0}};
    out << j.dump() << '\n';
  }
  for (const auto& [id, label] : truth.tweets) {
    json j = {{"kind", "tweet"}, {"id", id}, {"campaign", label.campaign}, {"template", label.template_id},
              {"topic", label.topic}};
    out << j.dump() << '\n';
  }
}

GroundTruth read_ground_truth(std::istream& in) {
  GroundTruth truth;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const auto j = json::parse(line);
      const auto kind = j.at("kind").get<std::string>();
      const auto id = j.at("id").get<std::string>();
      if (kind == "agent") {
        const auto role = j.at("role").get<std::string>();
        AgentRole r = role == "coordinated"  ? AgentRole::coordinated
                      : role == "influencer" ? AgentRole::influencer
                      : role == "organic"    ? AgentRole::organic
                                             : throw SchemaError(line_no, "unknown role '" + role + "'");
        truth.roles.emplace(id, r);
        truth.bot.emplace(id, j.at("bot").get<bool>());
        if (j.value("target_pool", false)) truth.target_pool.insert(id);
      } else if (kind == "tweet") {
        truth.tweets.emplace(id, TweetLabel{j.at("campaign").get<bool>(), j.at("template").get<int>(),
                                            j.at("topic").get<int>()});
      } else {
        throw SchemaError(line_no, "unknown record kind '" + kind + "'");
      }
    } catch (const json::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return truth;
}

}  // namespace coordscope
