#pragma once

#include <optional>

#include "curvband/graph.hpp"
#include "curvband/local_stats.hpp"

namespace curvband {

/// Balanced Forman curvature of the edge summarized by stats: zero at
/// pendant edges, otherwise degree shift + triangle term + 4-cycle term.
double bf_curvature(const LocalStats& stats);

/// Affine coverage envelope pieces and the two upper bounds they induce.
struct EnvelopeTerms {
  double intercept = 0;       // constant part of the coverage envelope
  double slope = 0;           // per-triangle gain (strictly positive)
  double envelope_value = 0;  // transport envelope using the true cross stats
  double theta_value = 0;     // intercept + slope * triangles
};

/// Transport envelope with the exact per-edge cross statistics; the tighter
/// of the two upper bounds.
double envelope_upper(const LazyParams& lazy, const LocalStats& stats);

/// Coverage envelope: intercept/slope depend only on degrees and laziness
/// (the cross statistic is replaced by its structural cap), which keeps the
/// map invertible in the triangle count.
EnvelopeTerms coverage_envelope(const LazyParams& lazy, const LocalStats& stats);

/// Matching-augmented lower bound on the non-lazy curvature.
double jl_lower_nonlazy(const ComparisonModuli& moduli);

/// Turns any valid lower bound on the non-lazy curvature into a lazy one:
/// best of the two unconditionally valid idleness choices.
double lazy_transfer_lower(double nonlazy_lower, const LazyParams& lazy);

double jl_lower_lazy(const ComparisonModuli& moduli, const LazyParams& lazy);

/// Per-edge curvature values and bounds, the unit every consumer reads.
struct CurvatureRecord {
  EdgeKey edge;
  double bf = 0;
  std::optional<double> or_exact;
  std::optional<double> or0_exact;
  double theta_upper = 0;
  double envelope_upper = 0;
  double jl_lower_nonlazy = 0;
  double jl_lower_lazy = 0;
};

}  // namespace curvband
