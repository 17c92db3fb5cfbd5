#include "curvband/local_stats.hpp"

#include <algorithm>

#include "curvband/errors.hpp"
#include "curvband/matching.hpp"

namespace curvband {

namespace {

enum Mark : std::uint8_t { kNone = 0, kCommon = 1, kUniqueI = 2, kUniqueJ = 3 };

}  // namespace

AlphaProfile AlphaProfile::constant(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw ParameterError("alpha must lie in [0,1); alpha=1 leaves no neighbor mass");
  return AlphaProfile(false, alpha);
}

LocalAnalyzer::LocalAnalyzer(const Graph& g)
    : graph_(&g),
      mark_(g.vertex_count(), kNone),
      box_i_(g.vertex_count(), 0),
      box_j_(g.vertex_count(), 0),
      left_index_(g.vertex_count(), -1),
      right_index_(g.vertex_count(), -1) {}

void LocalAnalyzer::check_edge(EdgeKey e) const {
  if (!graph_->has_edge(e.u, e.v))
    throw GraphError("(" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                     ") is not an edge");
}

NeighborhoodPartition LocalAnalyzer::partition(EdgeKey e) const {
  check_edge(e);
  NeighborhoodPartition out;
  auto ni = graph_->neighbors(e.u);
  auto nj = graph_->neighbors(e.v);
  std::size_t a = 0, b = 0;
  while (a < ni.size() || b < nj.size()) {
    if (b == nj.size() || (a < ni.size() && ni[a] < nj[b])) {
      if (ni[a] != e.v) out.unique_i.push_back(ni[a]);
      ++a;
    } else if (a == ni.size() || nj[b] < ni[a]) {
      if (nj[b] != e.u) out.unique_j.push_back(nj[b]);
      ++b;
    } else {
      out.common.push_back(ni[a]);
      ++a;
      ++b;
    }
  }
  return out;
}

LocalStats LocalAnalyzer::local_stats(EdgeKey e) {
  NeighborhoodPartition part = partition(e);
  const Graph& g = *graph_;

  LocalStats stats;
  stats.deg_i = static_cast<std::uint32_t>(g.degree(e.u));
  stats.deg_j = static_cast<std::uint32_t>(g.degree(e.v));
  stats.triangles = static_cast<std::uint32_t>(part.common.size());

  touched_.clear();
  auto set_mark = [&](Vertex x, Mark m) {
    mark_[x] = m;
    touched_.push_back(x);
  };
  for (Vertex x : part.common) set_mark(x, kCommon);
  for (Vertex x : part.unique_i) set_mark(x, kUniqueI);
  for (Vertex x : part.unique_j) set_mark(x, kUniqueJ);

  // Box counts: for k adjacent to an endpoint, how many opposite-side unique
  // neighbors k closes a 4-cycle with. One scan over each unique side covers
  // every such pair.
  std::uint32_t max_box = 0;
  std::size_t left_used = 0, right_used = 0;
  stats.cross_edges = 0;
  for (Vertex w : part.unique_j) {
    for (Vertex x : g.neighbors(w)) {
      Mark m = static_cast<Mark>(mark_[x]);
      if (m == kCommon || m == kUniqueI) {
        max_box = std::max(max_box, ++box_i_[x]);
        if (m == kUniqueI) {
          // cross edge (x, w): record bipartite arc for the matching
          if (left_index_[x] < 0) {
            left_index_[x] = static_cast<std::int32_t>(left_used);
            stats.cross_incident_i.push_back(x);
            if (cross_adj_.size() <= left_used) cross_adj_.emplace_back();
            cross_adj_[left_used].clear();
            ++left_used;
          }
          if (right_index_[w] < 0) {
            right_index_[w] = static_cast<std::int32_t>(right_used);
            stats.cross_incident_j.push_back(w);
            ++right_used;
          }
          cross_adj_[static_cast<std::size_t>(left_index_[x])].push_back(
              static_cast<std::uint32_t>(right_index_[w]));
          ++stats.cross_edges;
        }
      }
    }
  }
  for (Vertex x : part.unique_i)
    for (Vertex y : g.neighbors(x)) {
      Mark m = static_cast<Mark>(mark_[y]);
      if (m == kCommon || m == kUniqueJ) max_box = std::max(max_box, ++box_j_[y]);
    }

  std::sort(stats.cross_incident_i.begin(), stats.cross_incident_i.end());
  std::sort(stats.cross_incident_j.begin(), stats.cross_incident_j.end());
  stats.cross_incident =
      static_cast<std::uint32_t>(stats.cross_incident_i.size() + stats.cross_incident_j.size());
  stats.max_box_count = max_box;
  stats.box_capacity = max_box * stats.deg_max();
  stats.matching_size = static_cast<std::uint32_t>(
      max_bipartite_matching(left_used, right_used, cross_adj_));
  stats.four_cycle_coeff =
      stats.cross_incident > 0
          ? static_cast<double>(stats.cross_incident) / static_cast<double>(stats.box_capacity)
          : 0.0;

  for (Vertex x : touched_) {
    mark_[x] = kNone;
    box_i_[x] = 0;
    box_j_[x] = 0;
    left_index_[x] = -1;
    right_index_[x] = -1;
  }
  return stats;
}

NeighborhoodPartition partition(const Graph& g, EdgeKey e) {
  return LocalAnalyzer(g).partition(e);
}

LocalStats local_stats(const Graph& g, EdgeKey e) {
  LocalAnalyzer analyzer(g);
  return analyzer.local_stats(e);
}

double c4_graph(const Graph& g) {
  if (g.edge_count() == 0) throw GraphError("c4_graph requires at least one edge");
  LocalAnalyzer analyzer(g);
  double best = 0.0;
  for (const EdgeKey& e : g.edges())
    best = std::max(best, analyzer.local_stats(e).four_cycle_coeff);
  return best;
}

LazyParams lazy_params_for_degrees(std::size_t deg_i, std::size_t deg_j,
                                   const AlphaProfile& profile) {
  if (deg_i == 0 || deg_j == 0)
    throw GraphError("lazy parameters need positive degrees at both endpoints");
  LazyParams p;
  p.alpha_i = profile.alpha_for_degree(deg_i);
  p.alpha_j = profile.alpha_for_degree(deg_j);
  // under the default schedule (1-alpha)/deg equals alpha identically; using
  // alpha directly keeps the equal-degree residuals at exact zero
  p.weight_i = profile.is_default() ? p.alpha_i : (1.0 - p.alpha_i) / static_cast<double>(deg_i);
  p.weight_j = profile.is_default() ? p.alpha_j : (1.0 - p.alpha_j) / static_cast<double>(deg_j);
  p.weight_meet = std::min(p.weight_i, p.weight_j);
  p.conductance_sum = 1.0 / p.weight_i + 1.0 / p.weight_j;
  p.absorb_i = std::min(p.alpha_i, p.weight_j);
  p.absorb_j = std::min(p.alpha_j, p.weight_i);
  p.residual_i = std::max(0.0, p.alpha_i - p.weight_j);
  p.coresidual_i = std::max(0.0, p.weight_j - p.alpha_i);
  p.residual_j = std::max(0.0, p.alpha_j - p.weight_i);
  p.coresidual_j = std::max(0.0, p.weight_i - p.alpha_j);
  p.alpha_min = std::min(p.alpha_i, p.alpha_j);
  p.alpha_max = std::max(p.alpha_i, p.alpha_j);
  p.delta = p.alpha_max - p.alpha_min;
  return p;
}

LazyParams lazy_params(const Graph& g, EdgeKey e, const AlphaProfile& profile) {
  if (!g.has_edge(e.u, e.v))
    throw GraphError("(" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                     ") is not an edge");
  return lazy_params_for_degrees(g.degree(e.u), g.degree(e.v), profile);
}

ComparisonModuli comparison_moduli(const LocalStats& stats) {
  ComparisonModuli m;
  const double di = stats.deg_i, dj = stats.deg_j;
  const double dmin = stats.deg_min(), dmax = stats.deg_max();
  m.degree_shift = 2.0 / di + 2.0 / dj - 2.0;
  m.triangle_coeff = 2.0 / dmax + 1.0 / dmin;
  m.residual_factor = 1.0 - 1.0 / dmin - 1.0 / dmax;
  m.overlap_by_max = stats.triangles / dmax;
  m.overlap_by_min = stats.triangles / dmin;
  m.match_ratio = stats.matching_size / dmax;
  return m;
}

}  // namespace curvband
