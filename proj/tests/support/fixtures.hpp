#pragma once

#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "coordscope/corpus.hpp"
#include "coordscope/graph.hpp"

namespace fixture {

/// Corpus from JSON lines.
inline coordscope::Corpus corpus(std::initializer_list<std::string> lines) {
  std::stringstream ss;
  for (const auto& l : lines) ss << l << '\n';
  return coordscope::read_corpus(ss);
}

/// Undirected graph from "a-b" pairs, unit weights.
coordscope::WeightedGraph graph(std::initializer_list<std::pair<const char*, const char*>> edges,
                                std::initializer_list<const char*> extra_nodes = {});

/// Two k-cliques joined by one bridge edge: labels a0..a{k-1}, b0..b{k-1}.
coordscope::WeightedGraph two_cliques(std::size_t k);

/// Fresh empty directory under the system temp dir.
std::string temp_dir(const std::string& name);

}  // namespace fixture
