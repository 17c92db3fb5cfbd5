#pragma once

#include <cstdint>
#include <vector>

#include "curvband/graph.hpp"
#include "curvband/local_stats.hpp"

namespace curvband {

/// Finitely supported probability measure: distinct vertices, positive
/// masses, total mass 1 within 1e-12.
struct SparseMeasure {
  struct Atom {
    Vertex vertex;
    double mass;
  };
  std::vector<Atom> support;

  double total_mass() const;
};

/// Feasible coupling between two sparse measures plus its transport cost.
struct TransportPlan {
  struct Entry {
    Vertex src;
    Vertex dst;
    double mass;
  };
  std::vector<Entry> entries;
  double objective = 0.0;
};

/// One-step lazy random-walk measure at u: alpha_u at u, (1-alpha_u)/deg at
/// each neighbor. Errors on isolated vertices.
SparseMeasure lazy_measure(const Graph& g, Vertex u, const AlphaProfile& profile);

/// Neighbor-uniform (non-lazy) law at u.
SparseMeasure neighbor_measure(const Graph& g, Vertex u);

/// Exact optimal transport between mu and nu for the given support-pair
/// costs (cost[a][b] pairs mu.support[a] with nu.support[b]). Unreachable
/// pairs may be flagged with a negative cost entry and raise
/// ConnectivityError; unbalanced inputs raise NormalizationError.
TransportPlan w1_exact(const SparseMeasure& mu, const SparseMeasure& nu,
                       const std::vector<std::vector<double>>& cost);

/// Support-pair graph distances for feeding w1_exact; Unreachable pairs are
/// returned as -1.
std::vector<std::vector<double>> support_distances(const Graph& g, const SparseMeasure& mu,
                                                   const SparseMeasure& nu);

/// Exact per-edge curvature oracle with reusable scratch. One instance per
/// thread; all methods are deterministic functions of the graph and edge.
class TransportOracle {
public:
  explicit TransportOracle(const Graph& g);

  /// 1 - W1(m_i, m_j) for the lazy measures under the profile.
  double or_curvature(EdgeKey e, const AlphaProfile& profile);

  /// 1 - W1(nu_i, nu_j) for the neighbor-uniform measures.
  double or0_curvature(EdgeKey e);

private:
  double curvature_from(const SparseMeasure& mu, const SparseMeasure& nu);

  const Graph* graph_;
  std::vector<std::int32_t> dist_;
  std::vector<Vertex> touched_, queue_;
};

double or_curvature(const Graph& g, EdgeKey e, const AlphaProfile& profile);
double or0_curvature(const Graph& g, EdgeKey e);

/// Number of transportation solves performed since process start. The fast
/// bound pipeline must leave this untouched; tests assert exactly that.
std::uint64_t transport_solve_count();

}  // namespace curvband
