#include "coordscope/targeting.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "coordscope/centrality.hpp"
#include "coordscope/error.hpp"

namespace coordscope {

namespace {
constexpr std::array<std::string_view, kNumTargetAttributes> kAttributeNames = {
    "verified", "bot_probability", "followers", "following", "betweenness", "eigenvector", "total_degree",
};
}  // namespace

std::string_view to_string(TargetAttribute a) { return kAttributeNames[static_cast<std::size_t>(a)]; }

std::set<std::string> extract_targets(const Corpus& corpus, const std::set<std::string>& coordinated) {
  if (coordinated.empty()) throw ArgumentError("coordinated agent set is empty");
  std::set<std::string> targets;
  for (const auto& id : coordinated) {
    for (std::size_t i : corpus.tweets_by(id)) {
      const auto& t = corpus.tweets()[i];
      for (const auto& m : t.mentions) {
        if (!coordinated.count(m)) targets.insert(m);
      }
      if (t.retweet_of_author && !coordinated.count(*t.retweet_of_author)) {
        targets.insert(*t.retweet_of_author);
      }
    }
  }
  return targets;
}

ManeuverScores maneuver_ratio(std::string_view agent, const Corpus& corpus,
                              std::span<const ManeuverScores> scores, double threshold) {
  if (scores.size() != corpus.tweets().size()) throw ArgumentError("scores are not aligned with the corpus");
  const auto& idx = corpus.tweets_by(agent);
  if (idx.empty()) throw ArgumentError("agent '" + std::string(agent) + "' authored no tweets");
  ManeuverScores ratio;
  for (std::size_t i : idx) {
    for (std::size_t m = 0; m < kNumManeuvers; ++m) {
      if (scores[i].values[m] >= threshold) ratio.values[m] += 1.0;
    }
  }
  for (auto& v : ratio.values) v /= static_cast<double>(idx.size());
  return ratio;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("pearson: vectors differ in length");
  if (x.size() < 2) throw ArgumentError("pearson: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedError("pearson: zero variance");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

CorrelationTable correlation_table(const std::set<std::string>& targets, const Corpus& corpus,
                                   std::span<const ManeuverScores> scores, const WeightedGraph& network,
                                   const CorrelationOptions& options) {
  CorrelationTable table;
  table.mode = options.mode;
  table.threshold = options.ratio_threshold;

  const auto centrality = compute_centralities(network);
  for (const auto& id : targets) {
    if (corpus.tweets_by(id).empty()) {
      ++table.dropped_targets;
      continue;
    }
    TargetProfile p;
    p.agent = id;
    p.maneuver = options.mode == CorrelationMode::ratio
                     ? maneuver_ratio(id, corpus, scores, options.ratio_threshold)
                     : agent_maneuver_profile(id, corpus, scores);
    if (const Agent* a = corpus.find_agent(id)) {
      if (a->verified) p.attributes[0] = *a->verified ? 1.0 : 0.0;
      if (a->bot_probability) p.attributes[1] = *a->bot_probability;
      if (a->followers_count) p.attributes[2] = static_cast<double>(*a->followers_count);
      if (a->following_count) p.attributes[3] = static_cast<double>(*a->following_count);
    }
    double btw = 0.0, eig = 0.0, deg = 0.0;
    if (auto node = network.find(id)) {
      btw = centrality.betweenness[*node];
      eig = centrality.eigenvector.scores.empty() ? 0.0 : centrality.eigenvector.scores[*node];
      deg = centrality.total_degree[*node];
    }
    p.attributes[4] = btw;
    p.attributes[5] = eig;
    p.attributes[6] = deg;
    table.profiles.push_back(std::move(p));
  }
  if (table.profiles.size() < 2) {
    throw ArgumentError(fmt::format("correlation needs at least 2 targets with tweets, have {}",
                                    table.profiles.size()));
  }

  for (std::size_t m = 0; m < kNumManeuvers; ++m) {
    for (std::size_t a = 0; a < kNumTargetAttributes; ++a) {
      std::vector<double> xs, ys;
      for (const auto& p : table.profiles) {
        if (!p.attributes[a]) continue;
        xs.push_back(p.maneuver.values[m]);
        ys.push_back(*p.attributes[a]);
      }
      auto& cell = table.cells[m][a];
      cell.n = xs.size();
      if (xs.size() < 2) continue;
      try {
        cell.r = pearson(xs, ys);
      } catch (const UndefinedError&) {
        cell.r.reset();
      }
    }
  }
  return table;
}

void write_correlation_matrix(std::ostream& out, const CorrelationTable& table) {
  out << "maneuver";
  for (auto name : kAttributeNames) out << ',' << name;
  out << '\n';
  for (auto m : kAllManeuvers) {
    out << to_string(m);
    for (const auto& cell : table.cells[static_cast<std::size_t>(m)]) {
      out << ',' << (cell.r ? fmt::format("{:.6f}", *cell.r) : std::string("NA"));
    }
    out << '\n';
  }
}

void write_correlation_long(std::ostream& out, const CorrelationTable& table) {
  out << "maneuver,attribute,r,n,status\n";
  for (auto m : kAllManeuvers) {
    for (std::size_t a = 0; a < kNumTargetAttributes; ++a) {
      const auto& cell = table.cells[static_cast<std::size_t>(m)][a];
      out << to_string(m) << ',' << kAttributeNames[a] << ','
          << (cell.r ? fmt::format("{:.6f}", *cell.r) : std::string("NA")) << ',' << cell.n << ','
          << (cell.r ? "ok" : "undefined") << '\n';
    }
  }
}

}  // namespace coordscope
