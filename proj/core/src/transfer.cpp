#include "curvband/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace curvband {

namespace {

double clamp_pos(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

EdgeBundle edge_bundle(LocalAnalyzer& analyzer, EdgeKey e, const AlphaProfile& profile) {
  EdgeBundle b;
  b.stats = analyzer.local_stats(e);
  b.lazy = lazy_params_for_degrees(b.stats.deg_i, b.stats.deg_j, profile);
  b.moduli = comparison_moduli(b.stats);
  return b;
}

EdgeBundle edge_bundle(const Graph& g, EdgeKey e, const AlphaProfile& profile) {
  LocalAnalyzer analyzer(g);
  return edge_bundle(analyzer, e, profile);
}

double phi_bf_to_or(const EdgeBundle& b, double zeta) {
  const ComparisonModuli& m = b.moduli;
  const LocalStats& s = b.stats;
  const double forced_tri =
      std::max(0.0, (zeta - m.degree_shift - s.four_cycle_coeff) / m.triangle_coeff);
  const double zbar_max = forced_tri / s.deg_max();
  const double zbar_min = forced_tri / s.deg_min();
  const double match_floor =
      std::max(0.5 * s.four_cycle_coeff,
               0.5 * clamp_pos(zeta - m.degree_shift -
                               m.triangle_coeff * (s.deg_min() - 1.0)));
  const double nonlazy = -clamp_pos(m.residual_factor - zbar_max - match_floor) -
                         clamp_pos(m.residual_factor - zbar_min - match_floor) + zbar_max;
  return lazy_transfer_lower(nonlazy, b.lazy);
}

namespace {

struct PsiPieces {
  double budget;    // positive part of zeta - degree_shift
  double tri_max;   // admissible triangle range end
  double thstar;    // degree-only cap on the box capacity
};

PsiPieces psi_pieces(const EdgeBundle& b, double zeta) {
  PsiPieces p;
  p.budget = clamp_pos(zeta - b.moduli.degree_shift);
  p.tri_max = std::min(b.stats.deg_min() - 1.0, p.budget / b.moduli.triangle_coeff);
  p.thstar = static_cast<double>(b.stats.deg_max()) * (b.stats.deg_max() - 1.0);
  return p;
}

}  // namespace

double psi_bf_to_or_profile(const EdgeBundle& b, double zeta, double tri) {
  const PsiPieces p = psi_pieces(b, zeta);
  const LazyParams& z = b.lazy;
  const LocalStats& s = b.stats;
  const double a_i = (s.deg_i - 1.0 - tri) * z.weight_i;
  const double a_j = (s.deg_j - 1.0 - tri) * z.weight_j;
  const double b_cap = p.thstar / z.conductance_sum * (p.budget - b.moduli.triangle_coeff * tri);
  const double d_cap = (s.deg_i + s.deg_j - 2.0 - 2.0 * tri) / z.conductance_sum;
  const double mix = std::min(tri * std::abs(z.weight_i - z.weight_j), a_i + a_j);
  return -1.0 + 2.0 * (z.absorb_i + z.absorb_j) + z.residual_sum() +
         2.0 * z.weight_meet * tri + clamp_pos(std::min({a_i, a_j, b_cap, d_cap})) + mix;
}

double psi_bf_to_or_tri_max(const EdgeBundle& b, double zeta) {
  return psi_pieces(b, zeta).tri_max;
}

std::vector<double> psi_bf_to_or_knots(const EdgeBundle& b, double zeta) {
  const PsiPieces p = psi_pieces(b, zeta);
  const LazyParams& z = b.lazy;
  const LocalStats& s = b.stats;
  const double wi = z.weight_i, wj = z.weight_j;
  const double di = s.deg_i, dj = s.deg_j;
  const double sum_deg = di + dj - 2.0;
  const double bs = p.thstar / z.conductance_sum;  // slope scale of the budget cap

  std::vector<double> knots{0.0, p.tri_max};
  auto add = [&](double numer, double denom) {
    if (denom == 0.0) return;  // parallel pieces: no crossing knot
    double t = numer / denom;
    if (std::isfinite(t) && t > 0.0 && t < p.tri_max) knots.push_back(t);
  };

  if (wi != wj) add(wj * (dj - 1.0) - wi * (di - 1.0), wj - wi);
  add(bs * p.budget - wi * (di - 1.0), bs * b.moduli.triangle_coeff - wi);
  add(bs * p.budget - wj * (dj - 1.0), bs * b.moduli.triangle_coeff - wj);
  add(sum_deg - z.conductance_sum * wi * (di - 1.0), 2.0 - z.conductance_sum * wi);
  add(sum_deg - z.conductance_sum * wj * (dj - 1.0), 2.0 - z.conductance_sum * wj);
  add(sum_deg - p.thstar * p.budget, 2.0 - p.thstar * b.moduli.triangle_coeff);
  add(wi * (di - 1.0) + wj * (dj - 1.0), wi + wj + std::abs(wi - wj));
  return knots;
}

double psi_bf_to_or(const EdgeBundle& b, double zeta) {
  double best = -std::numeric_limits<double>::infinity();
  for (double t : psi_bf_to_or_knots(b, zeta))
    best = std::max(best, psi_bf_to_or_profile(b, zeta, t));
  return best;
}

OrToBfLower phi_or_to_bf(const EdgeBundle& b, double theta_level) {
  if (b.stats.deg_min() < 2)
    throw std::domain_error("phi_or_to_bf needs both endpoint degrees >= 2");
  const EnvelopeTerms env = coverage_envelope(b.lazy, b.stats);
  const double tri_cap = b.stats.deg_min() - 1.0;
  OrToBfLower out;
  const double forced = clamp_pos((theta_level - env.intercept) / env.slope);
  out.value = b.moduli.degree_shift + b.moduli.triangle_coeff * std::min(forced, tri_cap);
  out.vacuous = theta_level > env.intercept + env.slope * tri_cap;
  return out;
}

double psi_or_to_bf(const EdgeBundle& b, double theta_level) {
  const LazyParams& z = b.lazy;
  const ComparisonModuli& m = b.moduli;
  const double dmin = b.stats.deg_min(), dmax = b.stats.deg_max();

  // tightest unconditionally valid non-lazy proxy over the two idleness ends
  const double s0 = std::min((theta_level + z.delta) / (1.0 - z.alpha_min),
                             (theta_level + z.delta) / (1.0 - z.alpha_max));
  const double deficit = clamp_pos(m.residual_factor - m.match_ratio);
  const double breakpoint = deficit * (2.0 * dmin / dmax - 1.0);

  double tri_env;
  if (s0 <= -2.0 * deficit)
    tri_env = 0.0;
  else if (s0 <= breakpoint)
    tri_env = (s0 + 2.0 * deficit) / m.triangle_coeff;
  else if (s0 <= deficit)
    tri_env = 0.5 * dmax * (s0 + deficit);
  else
    tri_env = dmax * s0;

  // the structural triangle cap only tightens the bound
  tri_env = std::min(tri_env, dmin - 1.0);
  return m.degree_shift + m.triangle_coeff * tri_env + b.stats.four_cycle_coeff;
}

TransferBand band_at(const EdgeBundle& b, EdgeKey e, Direction direction, double level) {
  TransferBand band;
  band.edge = e;
  band.direction = direction;
  band.input_level = level;
  if (direction == Direction::kBfToOr) {
    band.lower = phi_bf_to_or(b, level);
    band.upper = psi_bf_to_or(b, level);
  } else {
    band.lower = phi_or_to_bf(b, level).value;
    band.upper = psi_or_to_bf(b, level);
  }
  return band;
}

}  // namespace curvband
