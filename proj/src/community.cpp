#include "coordscope/community.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "coordscope/error.hpp"
#include "coordscope/rng.hpp"

namespace coordscope {

Partition Partition::from_labels(const std::vector<int>& labels) {
  Partition p;
  p.assignment.resize(labels.size());
  std::unordered_map<int, int> remap;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.try_emplace(labels[i], p.num_communities);
    if (inserted) ++p.num_communities;
    p.assignment[i] = it->second;
  }
  return p;
}

Partition Partition::singletons(std::size_t n) {
  Partition p;
  p.assignment.resize(n);
  std::iota(p.assignment.begin(), p.assignment.end(), 0);
  p.num_communities = static_cast<int>(n);
  return p;
}

Partition Partition::single(std::size_t n) {
  Partition p;
  p.assignment.assign(n, 0);
  p.num_communities = n == 0 ? 0 : 1;
  return p;
}

std::vector<std::vector<NodeId>> Partition::members() const {
  std::vector<std::vector<NodeId>> out(static_cast<std::size_t>(num_communities));
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    out[static_cast<std::size_t>(assignment[i])].push_back(static_cast<NodeId>(i));
  }
  return out;
}

double modularity(const WeightedGraph& g, const Partition& p, double resolution) {
  if (p.assignment.size() != g.num_nodes()) {
    throw ArgumentError("partition does not cover the graph");
  }
  const double m = g.total_weight();
  if (!(m > 0.0)) throw UndefinedError("modularity is undefined for zero total edge weight");
  const auto k = static_cast<std::size_t>(p.num_communities);
  std::vector<double> in(k, 0.0), tot(k, 0.0);
  for (const auto& e : g.edges()) {
    const int cu = p.assignment[e.u];
    const int cv = p.assignment[e.v];
    if (cu < 0 || cv < 0 || cu >= p.num_communities || cv >= p.num_communities) {
      throw ArgumentError("partition has an out-of-range community id");
    }
    tot[static_cast<std::size_t>(cu)] += e.weight;
    tot[static_cast<std::size_t>(cv)] += e.weight;
    if (cu == cv) in[static_cast<std::size_t>(cu)] += 2.0 * e.weight;
  }
  double q = 0.0;
  const double two_m = 2.0 * m;
  for (std::size_t c = 0; c < k; ++c) {
    q += in[c] / two_m - resolution * (tot[c] / two_m) * (tot[c] / two_m);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Louvain

namespace {

// Graph of one aggregation level. `loop[i]` holds the weight of edges
// collapsed inside node i (each original edge once).
struct LevelGraph {
  std::vector<std::vector<Neighbor>> adj;
  std::vector<double> loop;
  std::vector<double> degree;  // 2 * loop + incident weight
  double two_m = 0.0;

  std::size_t size() const { return adj.size(); }
};

LevelGraph from_graph(const WeightedGraph& g) {
  LevelGraph lg;
  const std::size_t n = g.num_nodes();
  lg.adj.resize(n);
  lg.loop.assign(n, 0.0);
  lg.degree.assign(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    for (const auto& nb : g.neighbors(v)) {
      lg.adj[v].push_back(nb);
      lg.degree[v] += nb.weight;
    }
  }
  lg.two_m = 2.0 * g.total_weight();
  return lg;
}

// One local-moving phase. Returns true if any node changed community.
bool local_moves(const LevelGraph& lg, std::vector<int>& comm, double resolution, Rng& rng) {
  const std::size_t n = lg.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) tot[static_cast<std::size_t>(comm[i])] += lg.degree[i];

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<NodeId>(order));

  std::vector<double> link(n, 0.0);  // weight from the current node to community c
  std::vector<int> touched;
  bool moved_any = false;
  constexpr double kEps = 1e-12;

  bool improved = true;
  while (improved) {
    improved = false;
    for (NodeId i : order) {
      const int old = comm[i];
      const double ki = lg.degree[i];
      touched.clear();
      for (const auto& nb : lg.adj[i]) {
        const int c = comm[nb.node];
        if (link[static_cast<std::size_t>(c)] == 0.0) touched.push_back(c);
        link[static_cast<std::size_t>(c)] += nb.weight;
      }
      tot[static_cast<std::size_t>(old)] -= ki;

      // Gain of inserting i into c, up to the common factor 1/m.
      auto gain = [&](int c) {
        return link[static_cast<std::size_t>(c)] -
               resolution * tot[static_cast<std::size_t>(c)] * ki / lg.two_m;
      };
      int best = old;
      double best_gain = gain(old);
      for (int c : touched) {
        const double gc = gain(c);
        if (gc > best_gain + kEps) {
          best = c;
          best_gain = gc;
        }
      }
      tot[static_cast<std::size_t>(best)] += ki;
      for (int c : touched) link[static_cast<std::size_t>(c)] = 0.0;
      if (best != old) {
        comm[i] = best;
        improved = true;
        moved_any = true;
      }
    }
  }
  return moved_any;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& comm, int k) {
  LevelGraph out;
  const auto nk = static_cast<std::size_t>(k);
  out.loop.assign(nk, 0.0);
  out.degree.assign(nk, 0.0);
  out.adj.resize(nk);
  std::vector<std::map<int, double>> acc(nk);
  for (std::size_t i = 0; i < lg.size(); ++i) {
    const auto ci = static_cast<std::size_t>(comm[i]);
    out.loop[ci] += lg.loop[i];
    out.degree[ci] += lg.degree[i];
    for (const auto& nb : lg.adj[i]) {
      const int cj = comm[nb.node];
      if (static_cast<std::size_t>(cj) == ci) {
        if (i < nb.node) out.loop[ci] += nb.weight;
      } else {
        acc[ci][cj] += nb.weight;
      }
    }
  }
  for (std::size_t c = 0; c < nk; ++c) {
    for (const auto& [d, w] : acc[c]) out.adj[c].push_back({static_cast<NodeId>(d), w});
  }
  out.two_m = lg.two_m;
  return out;
}

// Dense renumbering by first appearance; returns the community count.
int renumber(std::vector<int>& comm) {
  std::unordered_map<int, int> remap;
  for (auto& c : comm) {
    auto [it, inserted] = remap.try_emplace(c, static_cast<int>(remap.size()));
    c = it->second;
  }
  return static_cast<int>(remap.size());
}

}  // namespace

LouvainResult louvain(const WeightedGraph& g, std::uint64_t seed, double resolution) {
  LouvainResult result;
  const std::size_t n = g.num_nodes();
  if (g.num_edges() == 0) {
    result.partition = Partition::singletons(n);
    result.degenerate = true;
    return result;
  }
  if (!(resolution > 0.0)) throw ArgumentError("resolution must be positive");

  Rng rng(seed);
  LevelGraph level = from_graph(g);
  std::vector<int> node_comm(n);
  std::iota(node_comm.begin(), node_comm.end(), 0);

  while (true) {
    std::vector<int> comm(level.size());
    std::iota(comm.begin(), comm.end(), 0);
    if (!local_moves(level, comm, resolution, rng)) break;
    const int k = renumber(comm);
    for (auto& c : node_comm) c = comm[static_cast<std::size_t>(c)];
    result.level_modularity.push_back(modularity(g, Partition::from_labels(node_comm), resolution));
    if (static_cast<std::size_t>(k) == level.size()) break;
    level = aggregate(level, comm, k);
  }
  result.partition = Partition::from_labels(node_comm);
  return result;
}

void write_partition(std::ostream& out, const WeightedGraph& g, const Partition& p) {
  if (p.assignment.size() != g.num_nodes()) throw ArgumentError("partition does not cover the graph");
  for (NodeId v = 0; v < g.num_nodes(); ++v) out << g.label(v) << ' ' << p.assignment[v] << '\n';
}

Partition read_partition(std::istream& in, const WeightedGraph& g) {
  std::vector<int> labels(g.num_nodes(), -1);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string node;
    int c = -1;
    if (!(ss >> node >> c) || c < 0) throw ParseError(line_no, "expected 'node community'");
    auto id = g.find(node);
    if (!id) throw ParseError(line_no, "unknown node '" + node + "'");
    if (labels[*id] >= 0) throw ParseError(line_no, "node '" + node + "' assigned twice");
    labels[*id] = c;
  }
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (labels[v] < 0) throw ArgumentError("node '" + g.label(v) + "' has no community");
  }
  return Partition::from_labels(labels);
}

}  // namespace coordscope
