#include "gsco/graph.hpp"

#include <charconv>
#include <fstream>
#include <algorithm>
#include <cctype>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "gsco/error.hpp"
#include "gsco/support_set.hpp"

namespace gsco {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

// Splits a line on whitespace.
std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_integer(std::string_view text, long long& value) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

}  // namespace

Graph::Graph(std::size_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ == 0) {
    throw ConfigError("graph must have at least one node");
  }
  if (node_count_ > std::numeric_limits<NodeId>::max()) {
    throw ConfigError("graph too large for 32-bit node ids");
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  std::vector<std::size_t> degree(node_count_, 0);
  for (const auto& [u, v] : edges_) {
    if (u >= node_count_ || v >= node_count_) {
      throw RangeError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") out of range for " + std::to_string(node_count_) + " nodes");
    }
    if (u == v) {
      throw ConfigError("self-loop at node " + std::to_string(u));
    }
    if (u > v) {
      throw ConfigError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                        ") is not canonical (u < v)");
    }
    if (!seen.insert(edge_key(u, v)).second) {
      throw ConfigError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    ++degree[u];
    ++degree[v];
  }
  adj_offsets_.assign(node_count_ + 1, 0);
  for (std::size_t i = 0; i < node_count_; ++i) {
    adj_offsets_[i + 1] = adj_offsets_[i] + degree[i];
  }
  adj_.resize(adj_offsets_.back());
  std::vector<std::size_t> fill(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adj_[fill[u]++] = v;
    adj_[fill[v]++] = u;
  }
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
  if (v >= node_count_) {
    throw RangeError("node " + std::to_string(v) + " out of range");
  }
  return {adj_.data() + adj_offsets_[v], adj_offsets_[v + 1] - adj_offsets_[v]};
}

Graph load_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> node_count;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto parts = tokens(line);
    if (parts.empty() || parts.front().front() == '#') {
      continue;
    }
    if (!node_count) {
      long long n = 0;
      if (parts.size() != 2 || parts[0] != "nodes" || !parse_integer(parts[1], n)) {
        throw ParseError("expected header \"nodes N\"", line_no);
      }
      if (n <= 0) {
        throw ConfigError("line " + std::to_string(line_no) + ": node count must be positive");
      }
      node_count = static_cast<std::size_t>(n);
      continue;
    }
    long long a = 0;
    long long b = 0;
    if (parts.size() != 2 || !parse_integer(parts[0], a) || !parse_integer(parts[1], b) ||
        a < 0 || b < 0) {
      throw ParseError("expected \"u v\" with non-negative integer ids", line_no);
    }
    if (static_cast<unsigned long long>(a) >= *node_count ||
        static_cast<unsigned long long>(b) >= *node_count) {
      throw RangeError("line " + std::to_string(line_no) + ": node id out of range for " +
                       std::to_string(*node_count) + " nodes");
    }
    if (a == b) {
      throw ParseError("self-loop at node " + std::to_string(a), line_no);
    }
    auto u = static_cast<NodeId>(std::min(a, b));
    auto v = static_cast<NodeId>(std::max(a, b));
    if (seen.insert(edge_key(u, v)).second) {
      edges.emplace_back(u, v);
    }
  }
  if (!node_count) {
    throw ParseError("missing \"nodes N\" header", 0);
  }
  return Graph(*node_count, std::move(edges));
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open edge list " + path);
  }
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  out << "nodes " << graph.node_count() << '\n';
  for (const auto& [u, v] : graph.edges()) {
    out << u << ' ' << v << '\n';
  }
}

void write_edge_list_file(const std::string& path, const Graph& graph) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write edge list " + path);
  }
  write_edge_list(out, graph);
  if (!out) {
    throw IoError("failed writing edge list " + path);
  }
}

std::size_t connected_component_count(const Graph& graph, const SupportSet& nodes) {
  nodes.check_range(graph.node_count());
  if (nodes.empty()) {
    return 0;
  }
  // 0: outside the set, 1: member not yet reached, 2: reached
  std::vector<std::uint8_t> state(graph.node_count(), 0);
  for (NodeId v : nodes) state[v] = 1;

  std::size_t components = 0;
  std::vector<NodeId> stack;
  for (NodeId start : nodes) {
    if (state[start] != 1) continue;
    ++components;
    state[start] = 2;
    stack.push_back(start);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : graph.neighbors(v)) {
        if (state[w] == 1) {
          state[w] = 2;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

}  // namespace gsco
