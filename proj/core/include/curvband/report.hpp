#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvband/graph.hpp"
#include "curvband/local_stats.hpp"

namespace curvband {

/// One CSV row per edge. Field names double as the CSV header.
struct EdgeReport {
  Vertex u = 0, v = 0;
  std::uint32_t deg_u = 0, deg_v = 0;
  std::uint32_t tri = 0;
  std::uint32_t xi = 0;       // cross-incident vertex count
  std::uint32_t pi_max = 0;   // best box count
  std::uint32_t sho_max = 0;  // box capacity
  std::uint32_t matching = 0;
  double c_bf = 0;
  std::optional<double> c_or;
  std::optional<double> c_or0;
  double theta_upper = 0;
  double envelope_upper = 0;
  double jl_lower_lazy = 0;
  std::optional<double> bf2or_lower, bf2or_upper;  // band at the edge's own BF level
  std::optional<double> or2bf_lower, or2bf_upper;  // band at the edge's own OR level
};

struct ReportOptions {
  bool exact_or = false;                             // run the transport oracle per edge
  AlphaProfile profile = AlphaProfile::degree_default();
  bool bands_bf2or = true;
  bool bands_or2bf = true;  // effective only with exact_or (needs the OR level)
  unsigned threads = 0;     // 0 = hardware concurrency
};

/// One report per edge, canonical edge order, computed by a parallel map.
std::vector<EdgeReport> compute_edge_reports(const Graph& g, const ReportOptions& options);

struct DirectionStats {
  std::optional<double> width_max, width_p95;
  std::optional<double> slack_p50, slack_p95;
};

struct SummaryStats {
  std::size_t edge_count = 0;
  std::optional<double> pearson_r;  // null when either curvature is edgewise constant
  std::optional<double> or_range;
  std::optional<double> bf_range;
  DirectionStats bf2or, or2bf;
};

/// Width = band upper - lower at the edge's own source level; slack =
/// distance from the target curvature to the nearest band end. Percentiles
/// interpolate linearly between closest ranks.
SummaryStats summarize(std::span<const EdgeReport> reports);

/// Deterministic CSV: fixed header, '.' decimal separator, 12 significant
/// digits, empty cells for absent optional values.
void write_reports_csv(std::ostream& out, std::span<const EdgeReport> reports);

/// Summary as JSON with the fixed key set
/// {edge_count, pearson_r, or_range, bf_range, bf2or:{...}, or2bf:{...}}.
void write_summary_json(std::ostream& out, const SummaryStats& stats);

struct AuditResult {
  std::size_t violations = 0;
  std::vector<std::string> messages;  // capped, one line per offending check
};

/// Re-derives every soundness inequality with the exact oracle switched on
/// and reports rows that violate any of them beyond the tolerance.
AuditResult audit_graph(const Graph& g, const AlphaProfile& profile, double tol = 1e-9,
                        unsigned threads = 0);

}  // namespace curvband
