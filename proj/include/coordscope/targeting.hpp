#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coordscope/bend.hpp"
#include "coordscope/corpus.hpp"
#include "coordscope/graph.hpp"

namespace coordscope {

/// Agents mentioned or retweeted by at least one tweet of a coordinated
/// agent, minus the coordinated agents. Throws ArgumentError when
/// `coordinated` is empty.
std::set<std::string> extract_targets(const Corpus& corpus, const std::set<std::string>& coordinated);

/// Fraction of the agent's tweets whose score for each maneuver is
/// >= threshold. Throws ArgumentError when the agent authored nothing.
ManeuverScores maneuver_ratio(std::string_view agent, const Corpus& corpus,
                              std::span<const ManeuverScores> scores, double threshold = 0.5);

/// Sample Pearson correlation. ArgumentError on size mismatch or fewer than
/// two points; UndefinedError when either side has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

enum class TargetAttribute {
  verified,
  bot_probability,
  followers,
  following,
  betweenness,
  eigenvector,
  total_degree,
};

inline constexpr std::size_t kNumTargetAttributes = 7;
std::string_view to_string(TargetAttribute a);

struct TargetProfile {
  std::string agent;
  ManeuverScores maneuver;  // ratios or mean scores, per CorrelationMode
  std::array<std::optional<double>, kNumTargetAttributes> attributes;
};

enum class CorrelationMode { ratio, mean_score };

struct CorrelationCell {
  std::optional<double> r;  // empty when undefined (too few points or zero variance)
  std::size_t n = 0;
};

struct CorrelationTable {
  std::array<std::array<CorrelationCell, kNumTargetAttributes>, kNumManeuvers> cells;
  std::vector<TargetProfile> profiles;
  std::size_t dropped_targets = 0;  // targets without tweets
  CorrelationMode mode = CorrelationMode::ratio;
  double threshold = 0.5;

  const CorrelationCell& at(Maneuver m, TargetAttribute a) const {
    return cells[static_cast<std::size_t>(m)][static_cast<std::size_t>(a)];
  }
};

struct CorrelationOptions {
  CorrelationMode mode = CorrelationMode::ratio;
  double ratio_threshold = 0.5;
};

/// 8 maneuvers x 7 attributes. Targets with no tweets are dropped (and
/// counted); missing attributes are excluded pairwise. Centralities come
/// from `network`, with absent agents scoring 0. Throws ArgumentError
/// naming the usable count when fewer than two targets have tweets.
CorrelationTable correlation_table(const std::set<std::string>& targets, const Corpus& corpus,
                                   std::span<const ManeuverScores> scores, const WeightedGraph& network,
                                   const CorrelationOptions& options = {});

/// Wide matrix: header "maneuver,verified,...", r or "NA".
void write_correlation_matrix(std::ostream& out, const CorrelationTable& table);
/// Long format: "maneuver,attribute,r,n,status".
void write_correlation_long(std::ostream& out, const CorrelationTable& table);

}  // namespace coordscope
