#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exact.hpp"

namespace mwec {

using NodeId = std::uint32_t;

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  Probability prob;
};

// Out-adjacency entry; edge_index points back into Graph::edges().
struct Arc {
  NodeId target = 0;
  Probability prob;
  std::size_t edge_index = 0;
};

// Directed voter network with per-edge activation probabilities. Immutable
// after construction, so one instance can be shared by concurrent readers.
class Graph {
 public:
  Graph() = default;

  // Validates endpoints, duplicates and self-loops; throws
  // Error(kInvalidArgument) naming the offending edge index.
  Graph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  // Successors of u in insertion order. Throws on u out of range.
  std::span<const Arc> out_neighbors(NodeId u) const;

  // Number of edges with 0 < p < 1.
  std::size_t stochastic_edge_count() const;

  // Text in the graph file format; load_graph(serialize()) reproduces *this.
  std::string serialize() const;

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
};

bool operator==(const Graph& a, const Graph& b);

// Parses the graph file format: first non-comment line `n <count>`, then one
// `<u> <v> <p>` line per edge. `#` starts a comment line, blank lines are
// skipped. Errors are ParseError with the 1-based line number.
Graph load_graph(std::string_view text);

Graph load_graph_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace mwec
