#include "gsco/graph_gen.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "gsco/error.hpp"

namespace gsco {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

Edge canonical(NodeId u, NodeId v) { return u < v ? Edge{u, v} : Edge{v, u}; }

}  // namespace

Graph small_world_graph(std::size_t node_count, std::size_t edge_count,
                        double rewire_probability, Rng& rng) {
  if (node_count < 3) {
    throw ConfigError("small-world graph needs at least 3 nodes");
  }
  if (rewire_probability < 0.0 || rewire_probability > 1.0) {
    throw ConfigError("rewire probability must be in [0, 1]");
  }
  const std::size_t k = edge_count / node_count;
  const std::size_t remainder = edge_count % node_count;
  const std::size_t widest = k + (remainder > 0 ? 1 : 0);
  if (2 * widest >= node_count) {
    throw ConfigError("small-world graph: " + std::to_string(edge_count) +
                      " edges is too dense for " + std::to_string(node_count) + " nodes");
  }

  std::vector<Edge> edges;
  edges.reserve(edge_count);
  std::vector<NodeId> near_end;  // the lattice node that keeps its endpoint
  near_end.reserve(edge_count);
  std::unordered_set<std::uint64_t> present;
  present.reserve(edge_count * 2);
  for (std::size_t i = 0; i < node_count; ++i) {
    const std::size_t reach = k + (i < remainder ? 1 : 0);
    for (std::size_t j = 1; j <= reach; ++j) {
      auto u = static_cast<NodeId>(i);
      auto v = static_cast<NodeId>((i + j) % node_count);
      edges.push_back(canonical(u, v));
      near_end.push_back(u);
      present.insert(edge_key(u, v));
    }
  }

  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (rng.uniform() >= rewire_probability) continue;
    const NodeId u = near_end[e];
    // A bounded number of attempts; the edge stays put if all collide.
    for (int attempt = 0; attempt < 32; ++attempt) {
      auto w = static_cast<NodeId>(rng.uniform_index(node_count));
      if (w == u || present.count(edge_key(u, w))) continue;
      present.erase(edge_key(edges[e].first, edges[e].second));
      present.insert(edge_key(u, w));
      edges[e] = canonical(u, w);
      break;
    }
  }
  return Graph(node_count, std::move(edges));
}

Graph random_connected_graph(std::size_t node_count, std::size_t extra_edges, Rng& rng) {
  if (node_count == 0) {
    throw ConfigError("graph must have at least one node");
  }
  std::vector<NodeId> order(node_count);
  std::iota(order.begin(), order.end(), NodeId{0});
  for (std::size_t i = node_count; i > 1; --i) {
    std::swap(order[i - 1], order[rng.uniform_index(i)]);
  }

  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> present;
  for (std::size_t i = 1; i < node_count; ++i) {
    NodeId parent = order[rng.uniform_index(i)];
    edges.push_back(canonical(order[i], parent));
    present.insert(edge_key(order[i], parent));
  }

  const std::size_t max_edges = node_count * (node_count - 1) / 2;
  const std::size_t target = std::min(max_edges, edges.size() + extra_edges);
  while (edges.size() < target) {
    auto u = static_cast<NodeId>(rng.uniform_index(node_count));
    auto v = static_cast<NodeId>(rng.uniform_index(node_count));
    if (u == v || !present.insert(edge_key(u, v)).second) continue;
    edges.push_back(canonical(u, v));
  }
  return Graph(node_count, std::move(edges));
}

Graph path_graph(std::size_t node_count) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < node_count; ++i) {
    edges.emplace_back(static_cast<NodeId>(i - 1), static_cast<NodeId>(i));
  }
  return Graph(node_count, std::move(edges));
}

Graph star_graph(std::size_t node_count) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < node_count; ++i) {
    edges.emplace_back(NodeId{0}, static_cast<NodeId>(i));
  }
  return Graph(node_count, std::move(edges));
}

Graph complete_graph(std::size_t node_count) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < node_count; ++u) {
    for (std::size_t v = u + 1; v < node_count; ++v) {
      edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
  }
  return Graph(node_count, std::move(edges));
}

}  // namespace gsco
