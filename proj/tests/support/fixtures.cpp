#include "fixtures.hpp"

#include <filesystem>

namespace fixture {

coordscope::WeightedGraph graph(std::initializer_list<std::pair<const char*, const char*>> edges,
                                std::initializer_list<const char*> extra_nodes) {
  coordscope::GraphBuilder b;
  for (const auto* n : extra_nodes) b.add_node(n);
  for (const auto& [u, v] : edges) {
    b.add_node(u);
    b.add_node(v);
    b.add_edge(u, v);
  }
  return b.build();
}

coordscope::WeightedGraph two_cliques(std::size_t k) {
  coordscope::GraphBuilder b;
  for (char side : {'a', 'b'}) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        b.add_edge(side + std::to_string(i), side + std::to_string(j));
      }
    }
  }
  b.add_edge("a0", "b0");
  return b.build();
}

std::string temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("coordscope_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace fixture
