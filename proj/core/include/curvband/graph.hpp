#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace curvband {

using Vertex = std::uint32_t;

/// Canonically oriented edge: u < v.
struct EdgeKey {
  Vertex u{0};
  Vertex v{0};

  EdgeKey() = default;
  EdgeKey(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Immutable simple undirected graph with sorted adjacency, the substrate of
/// every computation here. All read accessors are pure and thread-safe.
class Graph {
public:
  Graph() = default;

  /// Builds from an explicit edge list over vertices 0..n-1.
  /// Throws GraphError on self-loops, duplicate edges, or out-of-range ids.
  static Graph from_edges(std::size_t vertex_count,
                          std::span<const std::pair<Vertex, Vertex>> edges);

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::size_t degree(Vertex u) const;
  std::size_t max_degree() const;

  /// Strictly increasing neighbor ids.
  std::span<const Vertex> neighbors(Vertex u) const;

  bool has_vertex(Vertex u) const { return u < adj_.size(); }
  bool has_edge(Vertex u, Vertex v) const;

  /// All edges in canonical order (ascending u, then v).
  std::vector<EdgeKey> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
};

struct LoadResult {
  Graph graph;
  /// Dense id -> original input id (identity for already-dense inputs).
  std::vector<std::uint64_t> original_ids;
  /// Duplicate input lines discarded (only nonzero when dedup was requested).
  std::size_t duplicates_dropped = 0;
};

/// Reads whitespace-separated "u v" lines; '#' starts a comment line.
/// Ids may be sparse and are remapped to a dense 0-based range (sorted by
/// original id); the mapping is returned alongside the graph.
/// Self-loops always reject. Duplicate edges reject unless dedup is set.
LoadResult load_edge_list(std::istream& in, bool dedup = false);

/// Writes the same edge-list format (one "u v" per line, canonical order).
/// Comment strings are emitted first, one per '#' line.
void write_edge_list(std::ostream& out, const Graph& g,
                     std::span<const std::string> comments = {});

constexpr std::int32_t kUnreachable = -1;

/// Breadth-first distances from each source, truncated at max_depth hops.
/// result[s][v] is the hop distance from sources[s] to v, or kUnreachable
/// when v is farther than max_depth (or in another component).
std::vector<std::vector<std::int32_t>> truncated_distances(
    const Graph& g, std::span<const Vertex> sources, int max_depth);

}  // namespace curvband
