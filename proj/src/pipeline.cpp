#include "coordscope/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

#include "coordscope/community.hpp"
#include "coordscope/discovery.hpp"
#include "coordscope/graph_io.hpp"
#include "coordscope/lexicon.hpp"
#include "coordscope/narrative.hpp"
#include "coordscope/text.hpp"

namespace coordscope {

namespace fs = std::filesystem;
namespace chr = std::chrono;

inline constexpr std::string_view kVersion = "0.1.0";

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::discovery: return "DISCOVERY";
    case Stage::who: return "WHO";
    case Stage::did_what: return "DID WHAT";
    case Stage::to_whom: return "TO WHOM";
    case Stage::why: return "WHY";
    case Stage::impact: return "IMPACT";
  }
  return "?";
}

StageError::StageError(Stage stage, const std::string& cause)
    : Error(fmt::format("{}: {}", to_string(stage), cause)), stage_(stage) {}

// ---------------------------------------------------------------------------
// Config

void PipelineConfig::validate() const {
  auto unit = [](std::string_view name, double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError(fmt::format("{} = {} is outside [0, 1]", name, v));
  };
  if (discovery_window_days < 1) throw ArgumentError("discovery_window_days must be positive");
  unit("cluster_min_fraction", cluster_min_fraction);
  unit("bot_threshold", bot_threshold);
  unit("leader_percentile", leader_percentile);
  unit("ratio_threshold", ratio_threshold);
  if (louvain_resolution <= 0.0) throw ArgumentError("louvain_resolution must be positive");
  if (lda_topics < 1) throw ArgumentError("lda_topics must be positive");
  if (lda_beta <= 0.0) throw ArgumentError("lda_beta must be positive");
  if (lda_iterations < 0) throw ArgumentError("lda_iterations must be non-negative");
  for (int k : sweep_topics) {
    if (k < 1) throw ArgumentError("sweep_topics entries must be positive");
  }
  if (post_window_days < 1) throw ArgumentError("post_window_days must be positive");
  weights.validate();
}

PipelineConfig pipeline_config_from(const KeyValueConfig& kv) {
  std::set<std::string> known = {
      "input", "output_dir", "discovery_window_days", "cluster_min_fraction", "cluster_min_size",
      "bot_threshold", "heuristic_bot_probability", "louvain_seed", "louvain_resolution", "lexicon", "stopwords",
      "leader_percentile", "ratio_threshold", "correlation_mode", "lda_topics", "lda_alpha", "lda_beta",
      "lda_iterations", "lda_seed", "sweep_topics", "pre_from", "pre_to", "post_from", "post_to",
      "post_window_days", "impact_weighted", "pre_excludes_discovered",
  };
  for (auto m : kAllManeuvers) known.insert(fmt::format("weights.{}", to_string(m)));
  kv.require_known(known);

  PipelineConfig c;
  auto path = [&](const char* key, const fs::path& fallback) {
    auto v = kv.get(key);
    return v ? fs::path(*v) : fallback;
  };
  auto timestamp = [&](const char* key) -> std::optional<Timestamp> {
    if (auto v = kv.get(key)) return parse_timestamp(*v);
    return std::nullopt;
  };
  auto seed = [&](const char* key, std::uint64_t fallback) {
    const auto v = kv.get_int(key, static_cast<long long>(fallback));
    if (v < 0) throw ArgumentError(fmt::format("{} must be non-negative", key));
    return static_cast<std::uint64_t>(v);
  };

  c.input = path("input", c.input);
  c.output_dir = path("output_dir", c.output_dir);
  c.discovery_window_days = static_cast<int>(kv.get_int("discovery_window_days", c.discovery_window_days));
  c.cluster_min_fraction = kv.get_double("cluster_min_fraction", c.cluster_min_fraction);
  c.cluster_min_size = seed("cluster_min_size", c.cluster_min_size);
  c.bot_threshold = kv.get_double("bot_threshold", c.bot_threshold);
  c.heuristic_bot_probability = kv.get_bool("heuristic_bot_probability", c.heuristic_bot_probability);
  c.louvain_seed = seed("louvain_seed", c.louvain_seed);
  c.louvain_resolution = kv.get_double("louvain_resolution", c.louvain_resolution);
  c.lexicon = path("lexicon", c.lexicon);
  c.stopwords = path("stopwords", c.stopwords);
  c.leader_percentile = kv.get_double("leader_percentile", c.leader_percentile);
  for (auto m : kAllManeuvers) {
    const auto i = static_cast<std::size_t>(m);
    c.weights.weights[i] = kv.get_double_list(fmt::format("weights.{}", to_string(m)), c.weights.weights[i]);
  }
  c.ratio_threshold = kv.get_double("ratio_threshold", c.ratio_threshold);
  const auto mode = kv.get_string("correlation_mode", "ratio");
  if (mode == "ratio") {
    c.correlation_mode = CorrelationMode::ratio;
  } else if (mode == "mean") {
    c.correlation_mode = CorrelationMode::mean_score;
  } else {
    throw ArgumentError("correlation_mode must be 'ratio' or 'mean', got '" + mode + "'");
  }
  c.lda_topics = static_cast<int>(kv.get_int("lda_topics", c.lda_topics));
  c.lda_alpha = kv.get_double("lda_alpha", c.lda_alpha);
  c.lda_beta = kv.get_double("lda_beta", c.lda_beta);
  c.lda_iterations = static_cast<int>(kv.get_int("lda_iterations", c.lda_iterations));
  c.lda_seed = seed("lda_seed", c.lda_seed);
  if (kv.has("sweep_topics")) {
    c.sweep_topics.clear();
    for (double k : kv.get_double_list("sweep_topics", {})) c.sweep_topics.push_back(static_cast<int>(k));
  }
  c.pre_from = timestamp("pre_from");
  c.pre_to = timestamp("pre_to");
  c.post_from = timestamp("post_from");
  c.post_to = timestamp("post_to");
  c.post_window_days = static_cast<int>(kv.get_int("post_window_days", c.post_window_days));
  c.impact_weighted = kv.get_bool("impact_weighted", c.impact_weighted);
  c.pre_excludes_discovered = kv.get_bool("pre_excludes_discovered", c.pre_excludes_discovered);
  c.validate();
  return c;
}

PipelineConfig load_pipeline_config(const fs::path& path) { return pipeline_config_from(KeyValueConfig::load(path)); }

namespace {

fs::path lexicon_path(const PipelineConfig& c) { return c.lexicon.empty() ? default_lexicon_path() : c.lexicon; }
fs::path stopwords_path(const PipelineConfig& c) {
  return c.stopwords.empty() ? default_stopwords_path() : c.stopwords;
}

std::string optional_time(const std::optional<Timestamp>& t) { return t ? format_timestamp(*t) : "default"; }

}  // namespace

std::string describe(const PipelineConfig& c) {
  std::string out;
  auto line = [&](std::string_view key, const auto& value) { out += fmt::format("{} = {}\n", key, value); };
  line("input", c.input.string());
  line("discovery_window_days", c.discovery_window_days);
  line("cluster_min_fraction", c.cluster_min_fraction);
  line("cluster_min_size", c.cluster_min_size);
  line("bot_threshold", c.bot_threshold);
  line("heuristic_bot_probability", c.heuristic_bot_probability);
  line("louvain_seed", c.louvain_seed);
  line("louvain_resolution", c.louvain_resolution);
  line("lexicon", lexicon_path(c).string());
  line("stopwords", stopwords_path(c).string());
  line("leader_percentile", c.leader_percentile);
  for (auto m : kAllManeuvers) {
    line(fmt::format("weights.{}", to_string(m)),
         fmt::format("{}", fmt::join(c.weights.weights[static_cast<std::size_t>(m)], ",")));
  }
  line("ratio_threshold", c.ratio_threshold);
  line("correlation_mode", c.correlation_mode == CorrelationMode::ratio ? "ratio" : "mean");
  line("lda_topics", c.lda_topics);
  line("lda_alpha", c.lda_alpha > 0.0 ? fmt::format("{}", c.lda_alpha) : fmt::format("50/K ({})", 50.0 / c.lda_topics));
  line("lda_beta", c.lda_beta);
  line("lda_iterations", c.lda_iterations);
  line("lda_seed", c.lda_seed);
  line("sweep_topics", fmt::format("{}", fmt::join(c.sweep_topics, ",")));
  line("pre_from", optional_time(c.pre_from));
  line("pre_to", optional_time(c.pre_to));
  line("post_from", optional_time(c.post_from));
  line("post_to", optional_time(c.post_to));
  line("post_window_days", c.post_window_days);
  line("impact_weighted", c.impact_weighted);
  line("pre_excludes_discovered", c.pre_excludes_discovered);
  return out;
}

// ---------------------------------------------------------------------------
// Files

namespace {

void write_file(const fs::path& dir, std::string_view name, const std::function<void(std::ostream&)>& body,
                std::vector<std::string>& written) {
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  body(out);
  if (!out) throw IoError("write failed for " + path.string());
  written.emplace_back(name);
}

fs::path require(const PipelineConfig& c, Stage stage, std::string_view name, std::string_view producer) {
  auto path = c.output_dir / name;
  if (!fs::exists(path)) {
    throw StageError(stage, fmt::format("missing upstream artifact {} (produced by {})", path.string(), producer));
  }
  return path;
}

template <typename F>
auto staged(Stage stage, F&& body) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

std::set<std::string> other_authors(const Corpus& corpus, const std::set<std::string>& excluded) {
  std::set<std::string> out;
  for (const auto& t : corpus.tweets()) {
    if (!excluded.count(t.author_id)) out.insert(t.author_id);
  }
  return out;
}

Corpus discovery_window(const PipelineConfig& c, const Corpus& corpus) {
  const auto [from, to] = leading_days(corpus, c.discovery_window_days);
  return window(corpus, from, to);
}

std::uint64_t fnv1a(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace

std::set<std::string> read_agent_list(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open agent list " + path.string());
  std::set<std::string> agents;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    agents.emplace(t);
  }
  return agents;
}

void write_agent_list(const fs::path& path, const std::set<std::string>& agents) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& a : agents) out << a << '\n';
}

std::vector<ManeuverScores> read_scores(const fs::path& path, const Corpus& corpus) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::map<std::string, ManeuverScores> by_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    if (++line_no == 1 || trim(line).empty()) continue;
    std::stringstream ss(line);
    std::string id, field;
    std::getline(ss, id, ',');
    ManeuverScores s;
    for (auto& v : s.values) {
      if (!std::getline(ss, field, ',')) throw ParseError(line_no, "expected 8 maneuver scores");
      try {
        v = std::stod(field);
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad score '" + field + "'");
      }
    }
    by_id.emplace(id, s);
  }
  std::vector<ManeuverScores> out;
  out.reserve(corpus.tweets().size());
  for (const auto& t : corpus.tweets()) {
    auto it = by_id.find(t.id);
    if (it == by_id.end()) throw ArgumentError("scores file has no row for tweet " + t.id);
    out.push_back(it->second);
  }
  return out;
}

std::string stats_report(const Corpus& corpus, const std::set<std::string>* agents, double bot_threshold) {
  std::string out = stats_table_header() + "\n";
  out += format_stats_row("Full dataset", corpus_stats(corpus, nullptr, bot_threshold)) + "\n";
  if (agents) out += format_stats_row("Discovered agents", corpus_stats(corpus, agents, bot_threshold)) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Stages

Corpus load_pipeline_corpus(const PipelineConfig& config) {
  return staged(Stage::discovery, [&] {
    if (!fs::exists(config.input)) throw IoError("input file " + config.input.string() + " does not exist");
    LoadOptions opts;
    opts.heuristic_bot_probability = config.heuristic_bot_probability;
    auto corpus = load_corpus(config.input, opts);
    if (corpus.empty()) throw ArgumentError("input " + config.input.string() + " holds zero tweets");
    return corpus;
  });
}

std::vector<std::string> run_discovery(const PipelineConfig& c, const Corpus& corpus) {
  return staged(Stage::discovery, [&] {
    if (corpus.empty()) throw ArgumentError("corpus holds zero tweets");
    DiscoveryOptions opts;
    opts.window_days = c.discovery_window_days;
    opts.seed = c.louvain_seed;
    opts.resolution = c.louvain_resolution;
    opts.min_fraction = c.cluster_min_fraction;
    opts.min_size = c.cluster_min_size;
    const auto r = extract_coordinated_agents(corpus, opts);

    std::vector<std::string> written;
    write_file(c.output_dir, artifact::discovery, [&](std::ostream& out) {
      for (const auto& [agent, evidence] : r.per_agent_evidence) {
        nlohmann::json ev = nlohmann::json::array();
        for (const auto& e : evidence) ev.push_back({{"tweet_id", e.tweet_id}, {"anomalous_tags", e.anomalous_tags}});
        out << nlohmann::json{{"agent", agent}, {"evidence", ev}}.dump() << '\n';
      }
    }, written);
    write_file(c.output_dir, artifact::coordinated, [&](std::ostream& out) {
      for (const auto& a : r.coordinated_agents) out << a << '\n';
    }, written);
    write_file(c.output_dir, artifact::clusters, [&](std::ostream& out) {
      out << "community,size,anomalous,fraction,flagged\n";
      for (const auto& s : r.clusters) {
        out << fmt::format("{},{},{},{:.6f},{}\n", s.community, s.size, s.anomalous, s.fraction,
                           r.flagged_clusters.count(s.community) ? 1 : 0);
      }
    }, written);
    NodeAttributes attrs;
    attrs.community = r.hashtag_partition.assignment;
    std::vector<bool> anomalous(r.hashtag_graph.num_nodes());
    for (NodeId n = 0; n < r.hashtag_graph.num_nodes(); ++n) {
      anomalous[n] = is_anomalous_hashtag(r.hashtag_graph.label(n));
    }
    attrs.discovered = std::move(anomalous);
    write_file(c.output_dir, artifact::hashtag_graph, [&](std::ostream& out) {
      write_graph(out, r.hashtag_graph, GraphFormat::graphml, attrs);
    }, written);
    return written;
  });
}

std::vector<std::string> run_who(const PipelineConfig& c, const Corpus& corpus) {
  const auto list = require(c, Stage::who, artifact::coordinated, "discover");
  return staged(Stage::who, [&] {
    const auto agents = read_agent_list(list);
    std::vector<std::string> written;
    write_file(c.output_dir, artifact::corpus_stats, [&](std::ostream& out) {
      out << stats_report(corpus, &agents, c.bot_threshold);
    }, written);
    return written;
  });
}

std::vector<std::string> run_did_what(const PipelineConfig& c, const Corpus& corpus) {
  const auto list = require(c, Stage::did_what, artifact::coordinated, "discover");
  return staged(Stage::did_what, [&] {
    const auto coordinated = read_agent_list(list);
    if (coordinated.empty()) throw ArgumentError("no coordinated agents were discovered");
    const auto others = other_authors(corpus, coordinated);
    std::vector<std::string> written;

    write_file(c.output_dir, artifact::burst, [&](std::ostream& out) {
      out << "group,date,tweets,fraction,peak\n";
      auto emit = [&](std::string_view group, const std::set<std::string>& agents) {
        const auto p = burst_concentration(corpus, agents);
        for (const auto& [day, n] : p.per_day_counts) {
          out << fmt::format("{},{},{},{:.6f},{}\n", group, format_date(day), n,
                             static_cast<double>(n) / static_cast<double>(p.total), day == p.peak_day ? 1 : 0);
        }
      };
      emit("discovered", coordinated);
      if (!others.empty()) emit("other", others);
    }, written);

    const auto lexicon = Lexicon::load(lexicon_path(c));
    ContextOptions ctx_opts;
    ctx_opts.leader_percentile = c.leader_percentile;
    ctx_opts.seed = c.louvain_seed;
    ctx_opts.resolution = c.louvain_resolution;
    const auto ctx = build_context(corpus, discovery_window(c, corpus), ctx_opts);
    const auto scores = score_tweets(corpus, lexicon, ctx, c.weights);

    write_file(c.output_dir, artifact::scores, [&](std::ostream& out) {
      out << "tweet_id";
      for (auto m : kAllManeuvers) out << ',' << to_string(m);
      out << '\n';
      for (std::size_t i = 0; i < scores.size(); ++i) {
        out << corpus.tweets()[i].id;
        for (double v : scores[i].values) out << ',' << fmt::format("{}", v);
        out << '\n';
      }
    }, written);
    if (!others.empty()) {
      const auto cmp = compare_groups(coordinated, others, corpus, scores);
      write_file(c.output_dir, artifact::comparison, [&](std::ostream& out) {
        write_comparison_csv(out, cmp, "discovered", "other");
      }, written);
    }
    return written;
  });
}

std::vector<std::string> run_to_whom(const PipelineConfig& c, const Corpus& corpus) {
  const auto list = require(c, Stage::to_whom, artifact::coordinated, "discover");
  const auto scores_path = require(c, Stage::to_whom, artifact::scores, "didwhat");
  return staged(Stage::to_whom, [&] {
    const auto coordinated = read_agent_list(list);
    const auto scores = read_scores(scores_path, corpus);
    const auto targets = extract_targets(corpus, coordinated);
    const auto network = build_communication_network(corpus);

    std::vector<std::string> written;
    write_file(c.output_dir, artifact::targets, [&](std::ostream& out) {
      for (const auto& t : targets) out << t << '\n';
    }, written);

    CorrelationOptions opts;
    opts.mode = c.correlation_mode;
    opts.ratio_threshold = c.ratio_threshold;
    const auto table = correlation_table(targets, corpus, scores, network, opts);
    write_file(c.output_dir, artifact::correlation, [&](std::ostream& out) { write_correlation_matrix(out, table); },
               written);
    write_file(c.output_dir, artifact::correlation_long, [&](std::ostream& out) { write_correlation_long(out, table); },
               written);

    NodeAttributes attrs;
    attrs.community = louvain(network, c.louvain_seed, c.louvain_resolution).partition.assignment;
    std::vector<bool> discovered(network.num_nodes());
    for (NodeId n = 0; n < network.num_nodes(); ++n) discovered[n] = coordinated.count(network.label(n)) != 0;
    attrs.discovered = std::move(discovered);
    write_file(c.output_dir, artifact::communication_graph, [&](std::ostream& out) {
      write_graph(out, network, GraphFormat::graphml, attrs);
    }, written);
    return written;
  });
}

std::vector<std::string> run_why(const PipelineConfig& c, const Corpus& corpus, bool sweep) {
  const auto list = require(c, Stage::why, artifact::coordinated, "discover");
  return staged(Stage::why, [&] {
    const auto coordinated = read_agent_list(list);
    std::vector<Tweet> tweets;
    for (const auto& t : corpus.tweets()) {
      if (coordinated.count(t.author_id)) tweets.push_back(t);
    }
    const auto ds = preprocess(tweets, load_stopwords(stopwords_path(c)));
    LdaOptions opts;
    opts.topics = c.lda_topics;
    opts.alpha = c.lda_alpha;
    opts.beta = c.lda_beta;
    opts.iterations = c.lda_iterations;
    opts.seed = c.lda_seed;
    const auto model = fit_lda(ds, opts);

    std::vector<std::string> written;
    write_file(c.output_dir, artifact::topics, [&](std::ostream& out) { write_topic_report(out, model, ds); },
               written);
    write_file(c.output_dir, artifact::topic_assignments, [&](std::ostream& out) {
      out << "tweet_id,topic\n";
      for (std::size_t d = 0; d < ds.docs.size(); ++d) out << ds.tweet_ids[d] << ',' << model.dominant_topic(d) << '\n';
    }, written);
    if (sweep) {
      const auto entries = coherence_sweep(ds, c.sweep_topics, opts);
      write_file(c.output_dir, artifact::sweep, [&](std::ostream& out) { write_sweep_report(out, entries); },
                 written);
    }
    return written;
  });
}

std::vector<std::string> run_impact(const PipelineConfig& c, const Corpus& corpus) {
  const auto list = require(c, Stage::impact, artifact::coordinated, "discover");
  return staged(Stage::impact, [&] {
    const auto coordinated = read_agent_list(list);
    const auto [disc_from, disc_to] = leading_days(corpus, c.discovery_window_days);
    const auto [tail_from, tail_to] = trailing_days(corpus, c.post_window_days);
    const TimeWindow pre{c.pre_from.value_or(disc_from), c.pre_to.value_or(disc_to)};
    const TimeWindow post{c.post_from.value_or(tail_from), c.post_to.value_or(tail_to)};

    PolarizationOptions opts;
    opts.seed = c.louvain_seed;
    opts.resolution = c.louvain_resolution;
    opts.weighted = c.impact_weighted;
    opts.exclude_discovered_from_pre = c.pre_excludes_discovered;
    auto report = polarization_report(corpus, coordinated, pre, post, opts);

    const auto assignments = c.output_dir / artifact::topic_assignments;
    if (fs::exists(assignments)) {
      std::ifstream in(assignments);
      std::map<std::string, int> topic_of;
      std::string line;
      std::getline(in, line);
      while (std::getline(in, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        topic_of.emplace(line.substr(0, comma), std::stoi(line.substr(comma + 1)));
      }
      assign_themes(report, corpus, topic_of);
    }

    std::vector<std::string> written;
    write_file(c.output_dir, artifact::ei_report, [&](std::ostream& out) { write_ei_report(out, report); },
               written);
    return written;
  });
}

ReportBundle run_pipeline(const PipelineConfig& config) {
  staged(Stage::discovery, [&] {
    config.validate();
    return 0;
  });
  const auto corpus = load_pipeline_corpus(config);
  ReportBundle bundle;
  bundle.directory = config.output_dir;
  auto add = [&](std::vector<std::string> names) {
    bundle.artifacts.insert(bundle.artifacts.end(), names.begin(), names.end());
  };
  add(run_discovery(config, corpus));
  add(run_who(config, corpus));
  add(run_did_what(config, corpus));
  add(run_to_whom(config, corpus));
  add(run_why(config, corpus, true));
  add(run_impact(config, corpus));

  const auto [disc_from, disc_to] = leading_days(corpus, config.discovery_window_days);
  const auto [tail_from, tail_to] = trailing_days(corpus, config.post_window_days);
  std::vector<std::string> written;
  write_file(config.output_dir, artifact::manifest, [&](std::ostream& out) {
    out << "coordscope_version = " << kVersion << '\n';
    out << "input_bytes = " << fs::file_size(config.input) << '\n';
    out << fmt::format("input_fnv1a64 = {:016x}\n", fnv1a(config.input));
    out << describe(config);
    out << "impact.pre_window = " << format_timestamp(config.pre_from.value_or(disc_from)) << '/'
        << format_timestamp(config.pre_to.value_or(disc_to)) << '\n';
    out << "impact.post_window = " << format_timestamp(config.post_from.value_or(tail_from)) << '/'
        << format_timestamp(config.post_to.value_or(tail_to)) << '\n';
    out << "impact.pre_convention = "
        << (config.pre_excludes_discovered ? "pre window minus tweets by discovered agents" : "pre window, all tweets")
        << '\n';
    out << "impact.subgroups = louvain on the post network, projected onto the pre network\n";
    out << "to_whom.centrality = betweenness over hop distances, unnormalized; eigenvector weighted, unit norm, "
           "largest component; total_degree weighted\n";
    out << "narrative.coherence = umass\n";
    out << "artifacts = " << fmt::format("{}", fmt::join(bundle.artifacts, ",")) << '\n';
  }, written);
  add(written);
  return bundle;
}

}  // namespace coordscope
