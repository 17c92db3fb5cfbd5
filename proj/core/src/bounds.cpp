#include "curvband/bounds.hpp"

#include <algorithm>

namespace curvband {

namespace {

double clamp_pos(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

double bf_curvature(const LocalStats& stats) {
  if (stats.deg_min() <= 1) return 0.0;
  ComparisonModuli m = comparison_moduli(stats);
  return m.degree_shift + m.triangle_coeff * stats.triangles + stats.four_cycle_coeff;
}

double envelope_upper(const LazyParams& lazy, const LocalStats& stats) {
  const double ui = stats.unique_i_size(), uj = stats.unique_j_size();
  const double uu_cap =
      std::min({ui * lazy.weight_i, uj * lazy.weight_j,
                stats.cross_incident / lazy.conductance_sum});
  const double mix_cap = std::min(
      stats.triangles * std::abs(lazy.weight_i - lazy.weight_j),
      ui * lazy.weight_i + uj * lazy.weight_j);
  return -1.0 + 2.0 * (lazy.absorb_i + lazy.absorb_j) + lazy.residual_sum() +
         2.0 * stats.triangles * lazy.weight_meet + uu_cap + mix_cap;
}

EnvelopeTerms coverage_envelope(const LazyParams& lazy, const LocalStats& stats) {
  EnvelopeTerms t;
  t.intercept = -1.0 + 2.0 * (lazy.absorb_i + lazy.absorb_j) + lazy.residual_sum() +
                (stats.deg_i + stats.deg_j - 2.0) / lazy.conductance_sum;
  t.slope = lazy.weight_i + lazy.weight_j - 2.0 / lazy.conductance_sum;
  t.theta_value = t.intercept + t.slope * stats.triangles;
  t.envelope_value = envelope_upper(lazy, stats);
  return t;
}

double jl_lower_nonlazy(const ComparisonModuli& m) {
  return -clamp_pos(m.residual_factor - m.overlap_by_max - m.match_ratio) -
         clamp_pos(m.residual_factor - m.overlap_by_min - m.match_ratio) + m.overlap_by_max;
}

double lazy_transfer_lower(double nonlazy_lower, const LazyParams& lazy) {
  // both endpoints of the idleness interval give a valid bound; keep the best
  return std::max((1.0 - lazy.alpha_min) * nonlazy_lower,
                  (1.0 - lazy.alpha_max) * nonlazy_lower) -
         lazy.delta;
}

double jl_lower_lazy(const ComparisonModuli& moduli, const LazyParams& lazy) {
  return lazy_transfer_lower(jl_lower_nonlazy(moduli), lazy);
}

}  // namespace curvband
