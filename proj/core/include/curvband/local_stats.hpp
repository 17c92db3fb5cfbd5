#pragma once

#include <cstdint>
#include <vector>

#include "curvband/graph.hpp"

namespace curvband {

/// Disjoint split of the two endpoint neighborhoods of an edge (i,j):
/// common = N(i) & N(j), unique_i = N(i) \ (N(j) + {j}), unique_j symmetric.
struct NeighborhoodPartition {
  std::vector<Vertex> common;
  std::vector<Vertex> unique_i;
  std::vector<Vertex> unique_j;
};

/// Per-edge 2-hop combinatorial summary. Everything downstream (curvatures,
/// envelopes, transfer moduli) is a function of these numbers.
struct LocalStats {
  std::uint32_t deg_i = 0;
  std::uint32_t deg_j = 0;
  std::uint32_t triangles = 0;          // common neighbor count
  std::vector<Vertex> cross_incident_i; // unique-i vertices touching a cross edge
  std::vector<Vertex> cross_incident_j; // unique-j vertices touching a cross edge
  std::uint32_t cross_incident = 0;     // |cross_incident_i| + |cross_incident_j|
  /// Largest number of opposite-side unique neighbors any single vertex
  /// adjacent to an endpoint reaches. The maximizing vertex ranges over ALL
  /// neighbors of the endpoint (common neighbors included), while the
  /// vertices being counted are always the other endpoint's unique side.
  std::uint32_t max_box_count = 0;
  std::uint32_t box_capacity = 0;       // max_box_count * max degree
  std::uint32_t cross_edges = 0;        // |E(U_i, U_j)|
  std::uint32_t matching_size = 0;      // maximum matching of the cross-edge bipartite graph
  double four_cycle_coeff = 0.0;        // cross_incident / box_capacity, 0 when no cross edges

  std::uint32_t deg_min() const { return deg_i < deg_j ? deg_i : deg_j; }
  std::uint32_t deg_max() const { return deg_i > deg_j ? deg_i : deg_j; }
  std::uint32_t unique_i_size() const { return deg_i - 1 - triangles; }
  std::uint32_t unique_j_size() const { return deg_j - 1 - triangles; }
};

/// Vertex idleness schedule. The default makes the one-step measure uniform
/// on the closed neighborhood; the constant schedule uses one alpha < 1 for
/// every vertex.
class AlphaProfile {
public:
  static AlphaProfile degree_default() { return AlphaProfile(true, 0.0); }
  static AlphaProfile constant(double alpha);

  double alpha_for_degree(std::size_t degree) const {
    return degree_default_ ? 1.0 / (static_cast<double>(degree) + 1.0) : value_;
  }
  bool is_default() const { return degree_default_; }
  double constant_value() const { return value_; }

private:
  AlphaProfile(bool degree_default, double value)
      : degree_default_(degree_default), value_(value) {}
  bool degree_default_;
  double value_;
};

/// Laziness-derived per-edge quantities feeding the transport envelopes.
struct LazyParams {
  double alpha_i = 0, alpha_j = 0;
  double weight_i = 0, weight_j = 0;   // per-neighbor supply (1-alpha)/deg
  double weight_meet = 0;              // min of the two weights
  double conductance_sum = 0;          // 1/weight_i + 1/weight_j
  double absorb_i = 0, absorb_j = 0;   // zero-cost endpoint mass
  double residual_i = 0, coresidual_i = 0;
  double residual_j = 0, coresidual_j = 0;
  double alpha_min = 0, alpha_max = 0;
  double delta = 0;                    // alpha_max - alpha_min

  double residual_sum() const { return residual_i + coresidual_i + residual_j + coresidual_j; }
};

/// Degree/overlap comparison parameters plus the square-matching ratio.
struct ComparisonModuli {
  double degree_shift = 0;     // 2/deg_i + 2/deg_j - 2
  double triangle_coeff = 0;   // 2/deg_max + 1/deg_min
  double residual_factor = 0;  // 1 - 1/deg_min - 1/deg_max
  double overlap_by_max = 0;   // triangles / deg_max
  double overlap_by_min = 0;   // triangles / deg_min
  double match_ratio = 0;      // matching_size / deg_max
};

/// Reusable per-thread engine for the 2-hop statistics; holds O(n) scratch so
/// evaluating an edge costs only its own neighborhood volume. A fresh
/// analyzer per thread keeps parallel edge sweeps safe.
class LocalAnalyzer {
public:
  explicit LocalAnalyzer(const Graph& g);

  const Graph& graph() const { return *graph_; }

  /// Both endpoints' neighborhoods split by sorted-list intersection.
  NeighborhoodPartition partition(EdgeKey e) const;

  LocalStats local_stats(EdgeKey e);

private:
  void check_edge(EdgeKey e) const;

  const Graph* graph_;
  std::vector<std::uint8_t> mark_;
  std::vector<std::uint32_t> box_i_, box_j_;
  std::vector<std::int32_t> left_index_, right_index_;
  std::vector<Vertex> touched_;
  std::vector<std::vector<std::uint32_t>> cross_adj_;
};

NeighborhoodPartition partition(const Graph& g, EdgeKey e);
LocalStats local_stats(const Graph& g, EdgeKey e);

/// Graph-wide 4-cycle constant: max edgewise coefficient. Errors on graphs
/// with no edges.
double c4_graph(const Graph& g);

LazyParams lazy_params(const Graph& g, EdgeKey e, const AlphaProfile& profile);
LazyParams lazy_params_for_degrees(std::size_t deg_i, std::size_t deg_j,
                                   const AlphaProfile& profile);

ComparisonModuli comparison_moduli(const LocalStats& stats);

}  // namespace curvband
