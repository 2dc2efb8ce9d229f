#include "coordscope/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <omp.h>

#include "coordscope/error.hpp"

namespace coordscope {

namespace {

constexpr std::size_t kSourceBlock = 64;

// Workspace for one single-source pass; reused across sources.
struct BrandesWorkspace {
  explicit BrandesWorkspace(std::size_t n)
      : dist(n, -1), sigma(n, 0.0), delta(n, 0.0), order(), queue() {
    order.reserve(n);
    queue.reserve(n);
  }
  std::vector<long> dist;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<NodeId> order;  // BFS visit order
  std::vector<NodeId> queue;
};

// Fills ws.delta with the dependencies of source s on every node.
void single_source_dependency(const WeightedGraph& g, NodeId s, BrandesWorkspace& ws) {
  std::fill(ws.dist.begin(), ws.dist.end(), -1);
  std::fill(ws.sigma.begin(), ws.sigma.end(), 0.0);
  std::fill(ws.delta.begin(), ws.delta.end(), 0.0);
  ws.order.clear();
  ws.queue.clear();

  ws.dist[s] = 0;
  ws.sigma[s] = 1.0;
  ws.queue.push_back(s);
  for (std::size_t head = 0; head < ws.queue.size(); ++head) {
    const NodeId v = ws.queue[head];
    ws.order.push_back(v);
    for (const auto& nb : g.neighbors(v)) {
      const NodeId w = nb.node;
      if (ws.dist[w] < 0) {
        ws.dist[w] = ws.dist[v] + 1;
        ws.queue.push_back(w);
      }
      if (ws.dist[w] == ws.dist[v] + 1) ws.sigma[w] += ws.sigma[v];
    }
  }
  // Predecessors of w are the neighbors one hop closer to s.
  for (auto it = ws.order.rbegin(); it != ws.order.rend(); ++it) {
    const NodeId w = *it;
    for (const auto& nb : g.neighbors(w)) {
      const NodeId v = nb.node;
      if (ws.dist[v] == ws.dist[w] - 1) {
        ws.delta[v] += ws.sigma[v] / ws.sigma[w] * (1.0 + ws.delta[w]);
      }
    }
  }
  ws.delta[s] = 0.0;
}

std::size_t largest_component_root(const std::vector<std::vector<NodeId>>& comps) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i) {
    if (comps[i].size() > comps[best].size()) best = i;
  }
  return best;
}

// Shared driver; `parallel` only changes how the mat-vec rows are scheduled.
EigenvectorResult power_iteration(const WeightedGraph& g, double tol, int max_iter, bool parallel) {
  if (g.empty()) throw ArgumentError("eigenvector centrality of an empty graph");
  if (!(tol > 0.0) || max_iter <= 0) throw ArgumentError("tol and max_iter must be positive");

  const auto comps = connected_components(g);
  const auto& comp = comps[largest_component_root(comps)];
  const std::size_t k = comp.size();
  std::vector<long> local(g.num_nodes(), -1);
  for (std::size_t i = 0; i < k; ++i) local[comp[i]] = static_cast<long>(i);

  std::vector<double> x(k, 1.0 / std::sqrt(static_cast<double>(k)));
  std::vector<double> y(k, 0.0);
  EigenvectorResult result;

  auto multiply = [&](const std::vector<double>& in, std::vector<double>& out, bool shift) {
    const long rows = static_cast<long>(k);
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < rows; ++i) {
      double acc = shift ? in[i] : 0.0;
      for (const auto& nb : g.neighbors(comp[i])) acc += nb.weight * in[local[nb.node]];
      out[i] = acc;
    }
  };

  for (int it = 1; it <= max_iter; ++it) {
    multiply(x, y, true);
    double norm = 0.0;
    for (double v : y) norm += v * v;  // serial: keeps the result reproducible
    norm = std::sqrt(norm);
    double diff = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      y[i] /= norm;
      diff = std::max(diff, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    result.iterations = it;
    if (diff < tol) {
      result.converged = true;
      break;
    }
  }

  multiply(x, y, false);
  double rayleigh = 0.0;
  for (std::size_t i = 0; i < k; ++i) rayleigh += x[i] * y[i];
  result.eigenvalue = rayleigh;
  result.scores.assign(g.num_nodes(), 0.0);
  for (std::size_t i = 0; i < k; ++i) result.scores[comp[i]] = x[i];
  return result;
}

}  // namespace

std::vector<double> betweenness_centrality_serial(const WeightedGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<double> bc(n, 0.0);
  BrandesWorkspace ws(n);
  for (NodeId s = 0; s < n; ++s) {
    single_source_dependency(g, s, ws);
    for (std::size_t v = 0; v < n; ++v) bc[v] += ws.delta[v];
  }
  for (auto& v : bc) v /= 2.0;
  return bc;
}

std::vector<double> betweenness_centrality(const WeightedGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<double> bc(n, 0.0);
  if (n == 0) return bc;
  std::vector<double> block(kSourceBlock * n);

  for (std::size_t base = 0; base < n; base += kSourceBlock) {
    const long count = static_cast<long>(std::min(kSourceBlock, n - base));
#pragma omp parallel
    {
      BrandesWorkspace ws(n);
#pragma omp for schedule(dynamic, 1)
      for (long j = 0; j < count; ++j) {
        single_source_dependency(g, static_cast<NodeId>(base + j), ws);
        std::copy(ws.delta.begin(), ws.delta.end(), block.begin() + j * static_cast<long>(n));
      }
    }
    // Merge in source order, exactly as the serial loop adds them.
    for (long j = 0; j < count; ++j) {
      const double* row = block.data() + j * static_cast<long>(n);
      for (std::size_t v = 0; v < n; ++v) bc[v] += row[v];
    }
  }
  for (auto& v : bc) v /= 2.0;
  return bc;
}

EigenvectorResult eigenvector_centrality(const WeightedGraph& g, double tol, int max_iter) {
  return power_iteration(g, tol, max_iter, true);
}

EigenvectorResult eigenvector_centrality_serial(const WeightedGraph& g, double tol, int max_iter) {
  return power_iteration(g, tol, max_iter, false);
}

std::vector<double> total_degree_centrality(const WeightedGraph& g) {
  std::vector<double> deg(g.num_nodes(), 0.0);
  for (NodeId n = 0; n < g.num_nodes(); ++n) {
    for (const auto& nb : g.neighbors(n)) deg[n] += nb.weight;
  }
  return deg;
}

std::vector<std::vector<NodeId>> connected_components(const WeightedGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<NodeId>> comps;
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<NodeId> comp;
    stack.push_back(start);
    seen[start] = true;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const auto& nb : g.neighbors(v)) {
        if (!seen[nb.node]) {
          seen[nb.node] = true;
          stack.push_back(nb.node);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

CentralityScores compute_centralities(const WeightedGraph& g) {
  CentralityScores c;
  c.betweenness = betweenness_centrality(g);
  c.total_degree = total_degree_centrality(g);
  if (!g.empty()) c.eigenvector = eigenvector_centrality(g);
  return c;
}

}  // namespace coordscope
