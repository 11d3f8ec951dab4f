#include "graph.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "error.hpp"
#include "text.hpp"

namespace mwec {

namespace {

std::string edge_label(const Edge& e) {
  return "(" + std::to_string(e.source) + "," + std::to_string(e.target) + ")";
}

}  // namespace

Graph::Graph(std::size_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.source >= node_count_ || e.target >= node_count_)
      throw invalid_argument("edge " + std::to_string(i) + " " +
                             edge_label(e) + " has endpoint outside [0," +
                             std::to_string(node_count_) + ")");
    if (e.source == e.target)
      throw invalid_argument("edge " + std::to_string(i) + " " +
                             edge_label(e) + " is a self-loop");
    if (!seen.emplace(e.source, e.target).second)
      throw invalid_argument("edge " + std::to_string(i) + " " +
                             edge_label(e) + " is a duplicate");
  }

  offsets_.assign(node_count_ + 1, 0);
  for (const Edge& e : edges_) ++offsets_[e.source + 1];
  for (std::size_t u = 0; u < node_count_; ++u) offsets_[u + 1] += offsets_[u];
  arcs_.resize(edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    arcs_[cursor[e.source]++] = Arc{e.target, e.prob, i};
  }
}

std::span<const Arc> Graph::out_neighbors(NodeId u) const {
  if (u >= node_count_)
    throw invalid_argument("node " + std::to_string(u) + " out of range [0," +
                           std::to_string(node_count_) + ")");
  return std::span<const Arc>(arcs_).subspan(offsets_[u],
                                             offsets_[u + 1] - offsets_[u]);
}

std::size_t Graph::stochastic_edge_count() const {
  std::size_t count = 0;
  for (const Edge& e : edges_)
    if (e.prob.is_stochastic()) ++count;
  return count;
}

std::string Graph::serialize() const {
  std::ostringstream out;
  out << "n " << node_count_ << "\n";
  for (const Edge& e : edges_)
    out << e.source << " " << e.target << " " << e.prob.to_string() << "\n";
  return out.str();
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
    return false;
  for (std::size_t i = 0; i < a.edge_count(); ++i) {
    const Edge& x = a.edges()[i];
    const Edge& y = b.edges()[i];
    if (x.source != y.source || x.target != y.target || !(x.prob == y.prob))
      return false;
  }
  return true;
}

Graph load_graph(std::string_view text) {
  std::size_t node_count = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::set<std::pair<NodeId, NodeId>> seen;

  for_each_content_line(text, [&](std::size_t line_no,
                                  const std::vector<std::string_view>& tok) {
    if (!have_header) {
      if (tok.size() != 2 || tok[0] != "n")
        throw ParseError(line_no, "expected header 'n <node_count>'");
      node_count = parse_index(tok[1], line_no, "node count");
      have_header = true;
      return;
    }
    if (tok.size() != 3)
      throw ParseError(line_no, "expected '<u> <v> <p>'");
    std::size_t u = parse_index(tok[0], line_no, "source node id");
    std::size_t v = parse_index(tok[1], line_no, "target node id");
    if (u >= node_count || v >= node_count)
      throw ParseError(line_no, "node id out of range [0," +
                                    std::to_string(node_count) + ")");
    Probability p;
    try {
      p = Probability::parse(tok[2]);
    } catch (const Error& err) {
      throw ParseError(line_no, err.what());
    }
    if (u == v) throw ParseError(line_no, "self-loop on node " + std::to_string(u));
    if (!seen.emplace(static_cast<NodeId>(u), static_cast<NodeId>(v)).second)
      throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " +
                                    std::to_string(v));
    edges.push_back(Edge{static_cast<NodeId>(u), static_cast<NodeId>(v), p});
  });

  if (!have_header) throw ParseError(0, "missing header 'n <node_count>'");
  return Graph(node_count, std::move(edges));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

Graph load_graph_file(const std::string& path) {
  return load_graph(read_text_file(path));
}

}  // namespace mwec
