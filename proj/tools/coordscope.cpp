#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "coordscope/corpus.hpp"
#include "coordscope/graph.hpp"
#include "coordscope/graph_io.hpp"
#include "coordscope/pipeline.hpp"
#include "coordscope/synthgen.hpp"

namespace fs = std::filesystem;
using namespace coordscope;

namespace {

struct CommonFlags {
  std::string config;
  std::string input;
  std::string run_dir;
};

void add_common(CLI::App* app, CommonFlags& flags) {
  app->add_option("--config", flags.config, "pipeline config file (key = value)")->check(CLI::ExistingFile);
  app->add_option("--input", flags.input, "corpus file, one JSON record per line");
  app->add_option("--run-dir", flags.run_dir, "directory holding the stage artifacts");
}

PipelineConfig resolve(const CommonFlags& flags) {
  PipelineConfig c = flags.config.empty() ? PipelineConfig{} : load_pipeline_config(flags.config);
  if (!flags.input.empty()) c.input = flags.input;
  if (!flags.run_dir.empty()) c.output_dir = flags.run_dir;
  if (c.input.empty()) throw ArgumentError("no input corpus: pass --input or set input in the config");
  c.validate();
  return c;
}

void report(const std::vector<std::string>& written, const fs::path& dir) {
  for (const auto& name : written) std::cout << (dir / name).string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coordinated hashtag-hijacking analysis: discovery, maneuvers, targets, narratives, polarization"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  auto* run = app.add_subcommand("run", "run all six stages and write the report bundle");
  add_common(run, run_flags);

  struct StageCommand {
    CLI::App* app;
    CommonFlags flags;
  };
  std::vector<std::pair<std::string, std::string>> stage_specs = {
      {"discover", "DISCOVERY: anomalous hashtags, clusters, coordinated agents"},
      {"who", "WHO: dataset statistics for the full corpus and the discovered agents"},
      {"didwhat", "DID WHAT: burst profile and maneuver scores"},
      {"towhom", "TO WHOM: targets and maneuver/attribute correlations"},
      {"why", "WHY: topic model of the discovered agents' tweets"},
      {"impact", "IMPACT: E/I indices before and after the campaign"},
  };
  std::vector<StageCommand> stages(stage_specs.size());
  for (std::size_t i = 0; i < stage_specs.size(); ++i) {
    stages[i].app = app.add_subcommand(stage_specs[i].first, stage_specs[i].second);
    add_common(stages[i].app, stages[i].flags);
  }
  bool sweep = false;
  stages[4].app->add_flag("--sweep", sweep, "also fit every K in sweep_topics and report mean coherence");

  std::string synth_config, synth_out = ".";
  std::optional<std::uint64_t> synth_seed;
  bool synth_dump = false;
  auto* synth = app.add_subcommand("synth", "generate a labeled synthetic campaign");
  synth->add_option("--config", synth_config, "campaign config file")->check(CLI::ExistingFile);
  synth->add_option("--seed", synth_seed, "override the config seed");
  synth->add_option("--out", synth_out, "output directory for corpus.jsonl and ground_truth.jsonl");
  synth->add_flag("--dump-config", synth_dump, "print the resolved config and exit");

  std::string stats_input, stats_agents;
  double stats_threshold = 0.5;
  auto* stats = app.add_subcommand("stats", "dataset statistics rows");
  stats->add_option("--input", stats_input, "corpus file")->required();
  stats->add_option("--agents", stats_agents, "agent list for the subset row")->check(CLI::ExistingFile);
  stats->add_option("--bot-threshold", stats_threshold, "bot probability threshold")->check(CLI::Range(0.0, 1.0));

  std::string graph_input, graph_kind = "communication", graph_format = "graphml", graph_out;
  auto* graph = app.add_subcommand("graph", "export the communication or hashtag network");
  graph->add_option("--input", graph_input, "corpus file")->required();
  graph->add_option("--kind", graph_kind, "communication or hashtag")
      ->check(CLI::IsMember({"communication", "hashtag"}));
  graph->add_option("--format", graph_format, "graphml, dot or edgelist")
      ->check(CLI::IsMember({"graphml", "dot", "edgelist"}));
  graph->add_option("--out", graph_out, "output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto config = resolve(run_flags);
      const auto bundle = run_pipeline(config);
      report(bundle.artifacts, bundle.directory);
      return 0;
    }
    for (std::size_t i = 0; i < stages.size(); ++i) {
      if (!stages[i].app->parsed()) continue;
      const auto config = resolve(stages[i].flags);
      const auto corpus = load_pipeline_corpus(config);
      std::vector<std::string> written;
      switch (i) {
        case 0: written = run_discovery(config, corpus); break;
        case 1: written = run_who(config, corpus); break;
        case 2: written = run_did_what(config, corpus); break;
        case 3: written = run_to_whom(config, corpus); break;
        case 4: written = run_why(config, corpus, sweep); break;
        default: written = run_impact(config, corpus); break;
      }
      report(written, config.output_dir);
      return 0;
    }
    if (synth->parsed()) {
      auto config = synth_config.empty() ? default_campaign_config() : load_campaign_config(synth_config);
      if (synth_seed) config.seed = *synth_seed;
      if (synth_dump) {
        write_campaign_config(std::cout, config);
        return 0;
      }
      const auto check = validate_config(config);
      for (const auto& w : check.warnings) std::cerr << "warning: " << w << '\n';
      const auto campaign = generate(config);
      fs::create_directories(synth_out);
      const auto corpus_path = fs::path(synth_out) / "corpus.jsonl";
      const auto truth_path = fs::path(synth_out) / "ground_truth.jsonl";
      std::ofstream corpus_file(corpus_path, std::ios::binary);
      std::ofstream truth_file(truth_path, std::ios::binary);
      if (!corpus_file || !truth_file) throw IoError("cannot write into " + synth_out);
      write_corpus(corpus_file, campaign);
      write_ground_truth(truth_file, campaign.truth);
      std::cout << corpus_path.string() << '\n' << truth_path.string() << '\n';
      return 0;
    }
    if (stats->parsed()) {
      const auto corpus = load_corpus(stats_input);
      std::optional<std::set<std::string>> agents;
      if (!stats_agents.empty()) agents = read_agent_list(stats_agents);
      std::cout << stats_report(corpus, agents ? &*agents : nullptr, stats_threshold);
      return 0;
    }
    if (graph->parsed()) {
      const auto corpus = load_corpus(graph_input);
      const auto g = graph_kind == "hashtag" ? build_hashtag_cooccurrence(corpus) : build_communication_network(corpus);
      export_graph(g, parse_graph_format(graph_format), graph_out);
      std::cout << graph_out << '\n';
      return 0;
    }
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
