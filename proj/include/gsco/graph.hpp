#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gsco {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

class SupportSet;

// Undirected simple graph over dense node ids 0..d-1. Edges are stored with
// u < v in the order they were supplied; that order is part of the graph's
// identity because the top-g visiting oracles scan edges in it.
class Graph {
public:
  /// Builds a graph from canonical edges. Throws ConfigError on d == 0 and on
  /// self-loops, duplicates or non-canonical (u >= v) pairs; RangeError on ids >= d.
  Graph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> adj_offsets_;
  std::vector<NodeId> adj_;
};

/// Reads the edge-list format: a "nodes N" header, then one "u v" pair per
/// line. Blank lines and lines starting with '#' are skipped. Pairs are
/// canonicalised to u < v and repeated edges keep their first occurrence.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

/// Writes `graph` in the format read by load_edge_list.
void write_edge_list(std::ostream& out, const Graph& graph);
void write_edge_list_file(const std::string& path, const Graph& graph);

/// Number of connected components of the subgraph induced by `nodes`.
std::size_t connected_component_count(const Graph& graph, const SupportSet& nodes);

}  // namespace gsco
