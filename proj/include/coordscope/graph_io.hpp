#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "coordscope/graph.hpp"

namespace coordscope {

enum class GraphFormat { graphml, dot, edgelist };

GraphFormat parse_graph_format(std::string_view name);

/// Optional per-node attributes, indexed by NodeId.
struct NodeAttributes {
  std::optional<std::vector<int>> community;
  std::optional<std::vector<bool>> discovered;
};

void write_graph(std::ostream& out, const WeightedGraph& g, GraphFormat format,
                 const NodeAttributes& attrs = {});
/// Throws IoError when the file cannot be written.
void export_graph(const WeightedGraph& g, GraphFormat format, const std::filesystem::path& path,
                  const NodeAttributes& attrs = {});

/// Reads "u v weight" lines; '#' lines are comments. Nodes without edges
/// are not representable in this format.
WeightedGraph read_edgelist(std::istream& in);

}  // namespace coordscope
