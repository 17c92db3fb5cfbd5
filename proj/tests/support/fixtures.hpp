#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "curvband/graph.hpp"

namespace fixtures {

/// 5-vertex worked example: edges {(0,1),(0,2),(1,2),(0,3),(1,4),(3,4)},
/// degrees (3,3,2,2,2). Edge (0,1) has one triangle and one cross edge.
inline curvband::Graph graph_h() {
  std::vector<std::pair<curvband::Vertex, curvband::Vertex>> edges{
      {0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 4}, {3, 4}};
  return curvband::Graph::from_edges(5, edges);
}

/// Simple-graph invariants: symmetric sorted adjacency, no loops or
/// duplicates, edge count consistent with adjacency length.
inline void check_graph_invariants(const curvband::Graph& g) {
  std::size_t total_adjacency = 0;
  for (curvband::Vertex u = 0; u < g.vertex_count(); ++u) {
    auto nbrs = g.neighbors(u);
    total_adjacency += nbrs.size();
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] == u) throw std::logic_error("self-loop");
      if (i + 1 < nbrs.size() && nbrs[i] >= nbrs[i + 1])
        throw std::logic_error("adjacency not strictly increasing");
      if (!g.has_edge(nbrs[i], u)) throw std::logic_error("asymmetric adjacency");
    }
  }
  if (total_adjacency != 2 * g.edge_count())
    throw std::logic_error("edge count mismatch");
}

}  // namespace fixtures
