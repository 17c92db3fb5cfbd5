#pragma once

#include <vector>

#include "curvband/bounds.hpp"
#include "curvband/graph.hpp"
#include "curvband/local_stats.hpp"

namespace curvband {

/// Everything the transfer moduli need about one edge.
struct EdgeBundle {
  LocalStats stats;
  LazyParams lazy;
  ComparisonModuli moduli;
};

EdgeBundle edge_bundle(const Graph& g, EdgeKey e, const AlphaProfile& profile);
EdgeBundle edge_bundle(LocalAnalyzer& analyzer, EdgeKey e, const AlphaProfile& profile);

enum class Direction { kBfToOr, kOrToBf };

/// Two-sided interval produced by a transfer modulus at a given input level.
struct TransferBand {
  EdgeKey edge;
  Direction direction = Direction::kBfToOr;
  double input_level = 0;
  double lower = 0;
  double upper = 0;
};

/// Lower transfer: BF >= zeta implies OR >= phi_bf_to_or(zeta).
/// Nondecreasing in zeta.
double phi_bf_to_or(const EdgeBundle& b, double zeta);

/// Upper transfer: BF <= zeta implies OR <= psi_bf_to_or(zeta), the maximum
/// of a piecewise-affine envelope over the budget-feasible triangle range,
/// taken over the finite knot set.
double psi_bf_to_or(const EdgeBundle& b, double zeta);

/// The piecewise-affine envelope behind psi_bf_to_or, evaluated at one
/// triangle value (exposed so tests can grid-check the knot maximization).
double psi_bf_to_or_profile(const EdgeBundle& b, double zeta, double triangles);

/// Budget-feasible triangle range [0, max] for psi_bf_to_or.
double psi_bf_to_or_tri_max(const EdgeBundle& b, double zeta);

/// Candidate maximizers of the envelope: always contains 0 and the range
/// end; knots with vanishing denominators are omitted.
std::vector<double> psi_bf_to_or_knots(const EdgeBundle& b, double zeta);

struct OrToBfLower {
  double value = 0;
  /// Set when the requested level exceeds the coverage envelope's ceiling
  /// for these degrees, so no such edge can exist and the bound is vacuous.
  bool vacuous = false;
};

/// Lower transfer: OR >= theta_level implies BF >= value. Requires both
/// degrees >= 2 (std::domain_error otherwise); depends only on degrees and
/// laziness.
OrToBfLower phi_or_to_bf(const EdgeBundle& b, double theta_level);

/// Upper transfer: OR <= theta_level implies BF <= psi_or_to_bf(theta_level).
/// Nondecreasing in the level.
double psi_or_to_bf(const EdgeBundle& b, double theta_level);

/// Both ends of one direction at one input level. The or->bf direction
/// inherits phi_or_to_bf's degree requirement (std::domain_error at pendant
/// edges; psi_or_to_bf alone still works there).
TransferBand band_at(const EdgeBundle& b, EdgeKey e, Direction direction, double level);

}  // namespace curvband
