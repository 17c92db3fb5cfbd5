#pragma once

#include <cstdint>
#include <vector>

namespace curvband {

/// Maximum-cardinality matching of a bipartite graph, Hopcroft-Karp,
/// O(E * sqrt(V)). adj_left[i] lists right-side endpoints of left vertex i.
std::size_t max_bipartite_matching(std::size_t n_left, std::size_t n_right,
                                   const std::vector<std::vector<std::uint32_t>>& adj_left);

}  // namespace curvband
