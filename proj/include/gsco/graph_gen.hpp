#pragma once

#include <cstddef>

#include "gsco/graph.hpp"
#include "gsco/rng.hpp"

namespace gsco {

// Small-world graph with exactly `edge_count` edges: a ring lattice where
// node i links to i+1..i+k (k = edge_count / d), the first edge_count mod d
// nodes also link to i+k+1, then each edge's far endpoint is rewired with
// probability `rewire_probability` to a uniform node that creates neither a
// self-loop nor a duplicate. Edge order is the lattice order.
Graph small_world_graph(std::size_t node_count, std::size_t edge_count,
                        double rewire_probability, Rng& rng);

// Random recursive tree over a shuffled node order (each node attaches to a
// uniform earlier node), followed by `extra_edges` distinct random extra
// edges, capped at the complete graph. Always connected.
Graph random_connected_graph(std::size_t node_count, std::size_t extra_edges, Rng& rng);

Graph path_graph(std::size_t node_count);
Graph star_graph(std::size_t node_count);
Graph complete_graph(std::size_t node_count);

}  // namespace gsco
