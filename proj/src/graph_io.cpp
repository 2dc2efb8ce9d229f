#include "coordscope/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "coordscope/error.hpp"

namespace coordscope {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void check_sizes(const WeightedGraph& g, const NodeAttributes& a) {
  if ((a.community && a.community->size() != g.num_nodes()) ||
      (a.discovered && a.discovered->size() != g.num_nodes())) {
    throw ArgumentError("node attribute vector does not match the graph");
  }
}

void write_graphml(std::ostream& out, const WeightedGraph& g, const NodeAttributes& a) {
  const bool freq = !g.frequency().empty();
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
  if (freq) out << "  <key id=\"frequency\" for=\"node\" attr.name=\"frequency\" attr.type=\"double\"/>\n";
  if (a.community) out << "  <key id=\"community\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n";
  if (a.discovered) out << "  <key id=\"discovered\" for=\"node\" attr.name=\"discovered\" attr.type=\"boolean\"/>\n";
  out << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    out << "    <node id=\"" << xml_escape(g.label(v)) << "\">";
    if (freq) out << fmt::format("<data key=\"frequency\">{}</data>", g.frequency()[v]);
    if (a.community) out << "<data key=\"community\">" << (*a.community)[v] << "</data>";
    if (a.discovered) out << "<data key=\"discovered\">" << ((*a.discovered)[v] ? "true" : "false") << "</data>";
    out << "</node>\n";
  }
  for (const auto& e : g.edges()) {
    out << "    <edge source=\"" << xml_escape(g.label(e.u)) << "\" target=\"" << xml_escape(g.label(e.v))
        << "\">" << fmt::format("<data key=\"weight\">{}</data>", e.weight) << "</edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_dot(std::ostream& out, const WeightedGraph& g, const NodeAttributes& a) {
  const bool freq = !g.frequency().empty();
  out << "graph G {\n";
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    out << "  " << dot_quote(g.label(v));
    std::vector<std::string> attrs;
    if (freq) attrs.push_back(fmt::format("frequency={}", g.frequency()[v]));
    if (a.community) attrs.push_back(fmt::format("community={}", (*a.community)[v]));
    if (a.discovered) attrs.push_back((*a.discovered)[v] ? "discovered=true" : "discovered=false");
    if (!attrs.empty()) out << " [" << fmt::format("{}", fmt::join(attrs, ", ")) << "]";
    out << ";\n";
  }
  for (const auto& e : g.edges()) {
    out << "  " << dot_quote(g.label(e.u)) << " -- " << dot_quote(g.label(e.v))
        << fmt::format(" [weight={}];\n", e.weight);
  }
  out << "}\n";
}

void write_edgelist(std::ostream& out, const WeightedGraph& g) {
  out << "# u v weight\n";
  // fmt's shortest round-trip representation keeps weights exact.
  for (const auto& e : g.edges()) {
    out << g.label(e.u) << ' ' << g.label(e.v) << ' ' << fmt::format("{}", e.weight) << '\n';
  }
}

}  // namespace

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "graphml") return GraphFormat::graphml;
  if (name == "dot") return GraphFormat::dot;
  if (name == "edgelist") return GraphFormat::edgelist;
  throw ArgumentError("unknown graph format '" + std::string(name) + "'");
}

void write_graph(std::ostream& out, const WeightedGraph& g, GraphFormat format,
                 const NodeAttributes& attrs) {
  check_sizes(g, attrs);
  switch (format) {
    case GraphFormat::graphml: write_graphml(out, g, attrs); break;
    case GraphFormat::dot: write_dot(out, g, attrs); break;
    case GraphFormat::edgelist: write_edgelist(out, g); break;
  }
}

void export_graph(const WeightedGraph& g, GraphFormat format, const std::filesystem::path& path,
                  const NodeAttributes& attrs) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write graph to " + path.string());
  write_graph(out, g, format, attrs);
  if (!out) throw IoError("write failure on " + path.string());
}

WeightedGraph read_edgelist(std::istream& in) {
  GraphBuilder b;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string u, v;
    double w = 0.0;
    if (!(ss >> u >> v >> w)) throw ParseError(line_no, "expected 'u v weight'");
    if (!(w > 0.0)) throw ParseError(line_no, "edge weight must be positive");
    b.add_edge(u, v, w);
  }
  return b.build();
}

}  // namespace coordscope
