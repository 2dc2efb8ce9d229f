#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coordscope/bend.hpp"
#include "coordscope/corpus.hpp"
#include "coordscope/error.hpp"
#include "coordscope/impact.hpp"
#include "coordscope/kv_config.hpp"
#include "coordscope/targeting.hpp"

namespace coordscope {

enum class Stage { discovery, who, did_what, to_whom, why, impact };
std::string_view to_string(Stage s);

/// A stage failed; what() is "<STAGE>: <cause>".
class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& cause);
  Stage stage() const noexcept { return stage_; }

 private:
  Stage stage_;
};

struct PipelineConfig {
  std::filesystem::path input;
  std::filesystem::path output_dir = "run";

  int discovery_window_days = 3;
  double cluster_min_fraction = 0.5;
  std::size_t cluster_min_size = 3;
  double bot_threshold = 0.5;
  bool heuristic_bot_probability = false;

  std::uint64_t louvain_seed = 1;
  double louvain_resolution = 1.0;

  std::filesystem::path lexicon;    // empty: shipped default
  std::filesystem::path stopwords;  // empty: shipped default
  double leader_percentile = 0.90;
  ManeuverWeights weights;
  double ratio_threshold = 0.5;
  CorrelationMode correlation_mode = CorrelationMode::ratio;

  int lda_topics = 5;
  double lda_alpha = -1.0;  // <= 0: 50 / K
  double lda_beta = 0.01;
  int lda_iterations = 1000;
  std::uint64_t lda_seed = 1;
  std::vector<int> sweep_topics = {2, 3, 4, 5, 6, 7, 8};

  /// Unset bounds default to the discovery window (pre) and the trailing
  /// `post_window_days` days (post).
  std::optional<Timestamp> pre_from, pre_to, post_from, post_to;
  int post_window_days = 3;
  bool impact_weighted = false;
  bool pre_excludes_discovered = true;

  /// Throws ArgumentError on out-of-range values.
  void validate() const;
};

/// Reads "key = value" text; unknown keys are an ArgumentError.
PipelineConfig pipeline_config_from(const KeyValueConfig& kv);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
/// Canonical echo of every setting, one "key = value" per line.
std::string describe(const PipelineConfig& config);

/// Artifact file names inside the run directory.
namespace artifact {
inline constexpr std::string_view discovery = "discovery.jsonl";
inline constexpr std::string_view coordinated = "coordinated_agents.list";
inline constexpr std::string_view clusters = "hashtag_clusters.csv";
inline constexpr std::string_view hashtag_graph = "hashtag_graph.graphml";
inline constexpr std::string_view corpus_stats = "corpus_stats.csv";
inline constexpr std::string_view burst = "burst_profile.csv";
inline constexpr std::string_view scores = "maneuver_scores.csv";
inline constexpr std::string_view comparison = "maneuver_comparison.csv";
inline constexpr std::string_view targets = "targets.list";
inline constexpr std::string_view correlation = "correlation_matrix.csv";
inline constexpr std::string_view correlation_long = "correlation_long.csv";
inline constexpr std::string_view communication_graph = "communication_graph.graphml";
inline constexpr std::string_view topics = "topics.csv";
inline constexpr std::string_view topic_assignments = "topic_assignments.csv";
inline constexpr std::string_view sweep = "coherence_sweep.csv";
inline constexpr std::string_view ei_report = "ei_report.csv";
inline constexpr std::string_view manifest = "manifest.txt";
}  // namespace artifact

struct ReportBundle {
  std::filesystem::path directory;
  std::vector<std::string> artifacts;  // file names, in the order written
};

/// Loads the input; an empty corpus fails at DISCOVERY.
Corpus load_pipeline_corpus(const PipelineConfig& config);

// Stage entry points. Each reads what it needs from earlier stages through
// the run directory and throws StageError naming any missing file.
std::vector<std::string> run_discovery(const PipelineConfig& config, const Corpus& corpus);
std::vector<std::string> run_who(const PipelineConfig& config, const Corpus& corpus);
std::vector<std::string> run_did_what(const PipelineConfig& config, const Corpus& corpus);
std::vector<std::string> run_to_whom(const PipelineConfig& config, const Corpus& corpus);
std::vector<std::string> run_why(const PipelineConfig& config, const Corpus& corpus, bool sweep = false);
std::vector<std::string> run_impact(const PipelineConfig& config, const Corpus& corpus);

/// DISCOVERY -> WHO -> DID WHAT -> TO WHOM -> WHY -> IMPACT, then the
/// manifest. Artifacts of completed stages stay on disk when a later stage
/// fails.
ReportBundle run_pipeline(const PipelineConfig& config);

/// One agent id per line; blank lines and '#' comments skipped.
std::set<std::string> read_agent_list(const std::filesystem::path& path);
void write_agent_list(const std::filesystem::path& path, const std::set<std::string>& agents);

/// "tweet_id,back,...,distract" rows aligned with corpus.tweets().
std::vector<ManeuverScores> read_scores(const std::filesystem::path& path, const Corpus& corpus);

/// Dataset-statistics rows: full corpus and, when given, the agent subset.
std::string stats_report(const Corpus& corpus, const std::set<std::string>* agents, double bot_threshold);

}  // namespace coordscope
