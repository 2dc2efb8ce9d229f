#include "coordscope/impact.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "coordscope/error.hpp"

namespace coordscope {

namespace {

EIEntry finish(double il, double el) {
  if (il + el <= 0.0) throw UndefinedError("E/I index undefined: subgroup has no links");
  return {il, el, (el - il) / (el + il)};
}

}  // namespace

EIEntry ei_counts(const WeightedGraph& g, std::span<const NodeId> subgroup, bool weighted) {
  std::vector<char> in(g.num_nodes(), 0);
  for (NodeId n : subgroup) {
    if (n >= g.num_nodes()) throw ArgumentError(fmt::format("node {} is not in the graph", n));
    if (in[n]) throw ArgumentError(fmt::format("node {} listed twice", n));
    in[n] = 1;
  }
  double il = 0.0, el = 0.0;
  for (const auto& e : g.edges()) {
    const double w = weighted ? e.weight : 1.0;
    const int inside = in[e.u] + in[e.v];
    if (inside == 2) {
      il += w;
    } else if (inside == 1) {
      el += w;
    }
  }
  return finish(il, el);
}

double ei_index(const WeightedGraph& g, std::span<const NodeId> subgroup, bool weighted) {
  return ei_counts(g, subgroup, weighted).ei;
}

double ei_index(const WeightedGraph& g, const std::set<std::string>& subgroup, bool weighted) {
  std::vector<NodeId> nodes;
  for (const auto& label : subgroup) {
    auto n = g.find(label);
    if (!n) throw ArgumentError("node '" + label + "' is not in the graph");
    nodes.push_back(*n);
  }
  return ei_index(g, nodes, weighted);
}

EIEntry grouped_ei(const WeightedGraph& g, std::span<const int> group, bool weighted) {
  if (group.size() != g.num_nodes()) throw ArgumentError("grouping does not cover the graph");
  double il = 0.0, el = 0.0;
  for (const auto& e : g.edges()) {
    if (group[e.u] < 0 || group[e.v] < 0) continue;
    const double w = weighted ? e.weight : 1.0;
    (group[e.u] == group[e.v] ? il : el) += w;
  }
  return finish(il, el);
}

EIReport polarization_report(const Corpus& corpus, const std::set<std::string>& discovered, TimeWindow pre,
                             TimeWindow post, const PolarizationOptions& options) {
  Corpus pre_corpus = window(corpus, pre.from, pre.to);
  if (options.exclude_discovered_from_pre) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < pre_corpus.tweets().size(); ++i) {
      if (!discovered.count(pre_corpus.tweets()[i].author_id)) keep.push_back(i);
    }
    pre_corpus = filter_tweets(pre_corpus, keep);
  }
  const Corpus post_corpus = window(corpus, post.from, post.to);
  if (pre_corpus.empty()) throw ArgumentError("pre-activity window holds no tweets");
  if (post_corpus.empty()) throw ArgumentError("post-activity window holds no tweets");

  const auto pre_net = build_communication_network(pre_corpus);
  const auto post_net = build_communication_network(post_corpus);
  const auto groups = louvain(post_net, options.seed, options.resolution).partition;

  EIReport report;
  report.weighted = options.weighted;
  report.pre_excludes_discovered = options.exclude_discovered_from_pre;
  report.pre_window = pre;
  report.post_window = post;
  report.pre_nodes = pre_net.num_nodes();
  report.post_nodes = post_net.num_nodes();

  std::vector<int> projected(pre_net.num_nodes(), -1);
  for (NodeId n = 0; n < post_net.num_nodes(); ++n) {
    if (auto m = pre_net.find(post_net.label(n))) projected[*m] = groups.assignment[n];
  }
  try {
    report.before = grouped_ei(pre_net, projected, options.weighted);
  } catch (const UndefinedError&) {
  }
  try {
    report.after = grouped_ei(post_net, groups.assignment, options.weighted);
  } catch (const UndefinedError&) {
  }

  const auto members = groups.members();
  for (int c = 0; c < groups.num_communities; ++c) {
    const auto& nodes = members[static_cast<std::size_t>(c)];
    if (nodes.size() < options.min_subgroup_size) {
      ++report.omitted_subgroups;
      continue;
    }
    SubgroupEI row;
    row.subgroup = c;
    std::vector<NodeId> in_pre;
    for (NodeId n : nodes) {
      row.members.push_back(post_net.label(n));
      if (auto m = pre_net.find(post_net.label(n))) in_pre.push_back(*m);
    }
    std::sort(row.members.begin(), row.members.end());
    row.present_in_pre = in_pre.size();
    try {
      row.post = ei_counts(post_net, nodes, options.weighted);
    } catch (const UndefinedError&) {
    }
    if (!in_pre.empty()) {
      try {
        row.baseline = ei_counts(pre_net, in_pre, options.weighted);
      } catch (const UndefinedError&) {
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

void assign_themes(EIReport& report, const Corpus& corpus, const std::map<std::string, int>& topic_of_tweet) {
  std::unordered_map<std::string, std::size_t> row_of;
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    for (const auto& m : report.rows[r].members) row_of.emplace(m, r);
  }
  std::vector<std::map<int, std::size_t>> votes(report.rows.size());
  for (const auto& t : corpus.tweets()) {
    auto topic = topic_of_tweet.find(t.id);
    if (topic == topic_of_tweet.end()) continue;
    auto r = row_of.find(t.author_id);
    if (r == row_of.end()) continue;
    ++votes[r->second][topic->second];
  }
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    std::size_t best = 0;
    for (const auto& [topic, n] : votes[r]) {
      if (n > best) {
        best = n;
        report.rows[r].theme = topic;
      }
    }
  }
}

void write_ei_report(std::ostream& out, const EIReport& report) {
  out << "subgroup,size,theme,IL,EL,ei,baseline_IL,baseline_EL,baseline_ei,baseline_status\n";
  auto entry = [](const std::optional<EIEntry>& e) {
    if (!e) return std::string(",,");
    return fmt::format("{},{},{:.6f}", e->internal, e->external, e->ei);
  };
  out << "before," << report.pre_nodes << ",," << entry(report.before) << ",,,,\n";
  for (const auto& row : report.rows) {
    out << row.subgroup << ',' << row.members.size() << ','
        << (row.theme ? std::to_string(*row.theme) : std::string()) << ',' << entry(row.post) << ','
        << entry(row.baseline) << ',';
    if (row.baseline) {
      out << "ok";
    } else if (row.present_in_pre == 0) {
      out << "absent_from_pre";
    } else {
      out << "no_links_in_pre";
    }
    out << '\n';
  }
}

}  // namespace coordscope
