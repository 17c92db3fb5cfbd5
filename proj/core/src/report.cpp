#include "curvband/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "curvband/bounds.hpp"
#include "curvband/errors.hpp"
#include "curvband/transfer.hpp"
#include "curvband/transport.hpp"

namespace curvband {

namespace {

EdgeReport report_row(LocalAnalyzer& analyzer, TransportOracle& oracle, EdgeKey e,
                      const ReportOptions& options) {
  EdgeBundle b = edge_bundle(analyzer, e, options.profile);
  EdgeReport row;
  row.u = e.u;
  row.v = e.v;
  row.deg_u = b.stats.deg_i;
  row.deg_v = b.stats.deg_j;
  row.tri = b.stats.triangles;
  row.xi = b.stats.cross_incident;
  row.pi_max = b.stats.max_box_count;
  row.sho_max = b.stats.box_capacity;
  row.matching = b.stats.matching_size;
  row.c_bf = bf_curvature(b.stats);
  EnvelopeTerms env = coverage_envelope(b.lazy, b.stats);
  row.theta_upper = env.theta_value;
  row.envelope_upper = env.envelope_value;
  row.jl_lower_lazy = jl_lower_lazy(b.moduli, b.lazy);

  if (options.exact_or) {
    row.c_or = oracle.or_curvature(e, options.profile);
    row.c_or0 = oracle.or0_curvature(e);
  }
  if (options.bands_bf2or) {
    row.bf2or_lower = phi_bf_to_or(b, row.c_bf);
    row.bf2or_upper = psi_bf_to_or(b, row.c_bf);
  }
  if (options.bands_or2bf && row.c_or) {
    if (b.stats.deg_min() >= 2) row.or2bf_lower = phi_or_to_bf(b, *row.c_or).value;
    row.or2bf_upper = psi_or_to_bf(b, *row.c_or);
  }
  return row;
}

}  // namespace

std::vector<EdgeReport> compute_edge_reports(const Graph& g, const ReportOptions& options) {
  const std::vector<EdgeKey> edges = g.edges();
  std::vector<EdgeReport> rows(edges.size());

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, 64));
  if (edges.size() < 256) threads = 1;

  if (threads == 1) {
    LocalAnalyzer analyzer(g);
    TransportOracle oracle(g);
    for (std::size_t i = 0; i < edges.size(); ++i)
      rows[i] = report_row(analyzer, oracle, edges[i], options);
    return rows;
  }

  std::atomic<std::size_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    LocalAnalyzer analyzer(g);
    TransportOracle oracle(g);
    try {
      for (;;) {
        std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
        if (i >= edges.size()) return;
        rows[i] = report_row(analyzer, oracle, edges[i], options);
      }
    } catch (...) {
      std::scoped_lock lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      cursor.store(edges.size(), std::memory_order_relaxed);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

namespace {

double percentile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::optional<double> range_of(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

}  // namespace

SummaryStats summarize(std::span<const EdgeReport> reports) {
  if (reports.empty()) throw ParameterError("summarize requires at least one edge report");
  SummaryStats out;
  out.edge_count = reports.size();

  std::vector<double> bf, or_vals;
  std::vector<double> bf2or_width, bf2or_slack, or2bf_width, or2bf_slack;
  for (const EdgeReport& r : reports) {
    bf.push_back(r.c_bf);
    if (r.c_or) or_vals.push_back(*r.c_or);
    if (r.bf2or_lower && r.bf2or_upper) {
      bf2or_width.push_back(*r.bf2or_upper - *r.bf2or_lower);
      if (r.c_or)
        bf2or_slack.push_back(std::min(*r.c_or - *r.bf2or_lower, *r.bf2or_upper - *r.c_or));
    }
    if (r.or2bf_lower && r.or2bf_upper) {
      or2bf_width.push_back(*r.or2bf_upper - *r.or2bf_lower);
      or2bf_slack.push_back(std::min(r.c_bf - *r.or2bf_lower, *r.or2bf_upper - r.c_bf));
    }
  }

  out.bf_range = range_of(bf);
  out.or_range = range_of(or_vals);

  // Pearson over (or, bf) pairs; undefined when either curvature is
  // edgewise constant (constant meaning range below fp noise).
  if (or_vals.size() == reports.size() && reports.size() >= 2 && *out.or_range > 1e-12 &&
      *out.bf_range > 1e-12) {
    double mean_or = 0, mean_bf = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      mean_or += or_vals[i];
      mean_bf += bf[i];
    }
    mean_or /= static_cast<double>(reports.size());
    mean_bf /= static_cast<double>(reports.size());
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const double dx = or_vals[i] - mean_or, dy = bf[i] - mean_bf;
      sxy += dx * dy;
      sxx += dx * dx;
      syy += dy * dy;
    }
    out.pearson_r = sxy / std::sqrt(sxx * syy);
  }

  auto fill = [](DirectionStats& d, std::vector<double>& widths, std::vector<double>& slacks) {
    if (!widths.empty()) {
      d.width_max = *std::max_element(widths.begin(), widths.end());
      d.width_p95 = percentile(widths, 0.95);
    }
    if (!slacks.empty()) {
      d.slack_p50 = percentile(slacks, 0.50);
      d.slack_p95 = percentile(slacks, 0.95);
    }
  };
  fill(out.bf2or, bf2or_width, bf2or_slack);
  fill(out.or2bf, or2bf_width, or2bf_slack);
  return out;
}

namespace {

void append_double(std::string& line, double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  line += buf;
}

void append_opt(std::string& line, const std::optional<double>& value) {
  if (value) append_double(line, *value);
}

}  // namespace

void write_reports_csv(std::ostream& out, std::span<const EdgeReport> reports) {
  out << "u,v,deg_u,deg_v,tri,Xi,pi_max,sho_max,matching,c_bf,c_or,c_or0,"
         "theta_upper,envelope_upper,jl_lower_lazy,bf2or_lower,bf2or_upper,"
         "or2bf_lower,or2bf_upper\n";
  std::string line;
  for (const EdgeReport& r : reports) {
    line.clear();
    line += std::to_string(r.u);
    line += ',';
    line += std::to_string(r.v);
    line += ',';
    line += std::to_string(r.deg_u);
    line += ',';
    line += std::to_string(r.deg_v);
    line += ',';
    line += std::to_string(r.tri);
    line += ',';
    line += std::to_string(r.xi);
    line += ',';
    line += std::to_string(r.pi_max);
    line += ',';
    line += std::to_string(r.sho_max);
    line += ',';
    line += std::to_string(r.matching);
    line += ',';
    append_double(line, r.c_bf);
    line += ',';
    append_opt(line, r.c_or);
    line += ',';
    append_opt(line, r.c_or0);
    line += ',';
    append_double(line, r.theta_upper);
    line += ',';
    append_double(line, r.envelope_upper);
    line += ',';
    append_double(line, r.jl_lower_lazy);
    line += ',';
    append_opt(line, r.bf2or_lower);
    line += ',';
    append_opt(line, r.bf2or_upper);
    line += ',';
    append_opt(line, r.or2bf_lower);
    line += ',';
    append_opt(line, r.or2bf_upper);
    line += '\n';
    out << line;
  }
}

namespace {

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

nlohmann::ordered_json direction_json(const DirectionStats& d) {
  return {{"width_max", opt_json(d.width_max)},
          {"width_p95", opt_json(d.width_p95)},
          {"slack_p50", opt_json(d.slack_p50)},
          {"slack_p95", opt_json(d.slack_p95)}};
}

}  // namespace

void write_summary_json(std::ostream& out, const SummaryStats& stats) {
  nlohmann::ordered_json j{{"edge_count", stats.edge_count},
                           {"pearson_r", opt_json(stats.pearson_r)},
                           {"or_range", opt_json(stats.or_range)},
                           {"bf_range", opt_json(stats.bf_range)},
                           {"bf2or", direction_json(stats.bf2or)},
                           {"or2bf", direction_json(stats.or2bf)}};
  out << j.dump(2) << '\n';
}

AuditResult audit_graph(const Graph& g, const AlphaProfile& profile, double tol,
                        unsigned threads) {
  ReportOptions options;
  options.exact_or = true;
  options.profile = profile;
  options.threads = threads;
  const std::vector<EdgeReport> rows = compute_edge_reports(g, options);

  AuditResult result;
  LocalAnalyzer analyzer(g);
  auto flag = [&](const EdgeReport& r, const std::string& what) {
    ++result.violations;
    if (result.messages.size() < 20)
      result.messages.push_back("edge (" + std::to_string(r.u) + ", " + std::to_string(r.v) +
                                "): " + what);
  };

  for (const EdgeReport& r : rows) {
    EdgeBundle b = edge_bundle(analyzer, EdgeKey{r.u, r.v}, profile);
    const double jl0 = jl_lower_nonlazy(b.moduli);
    if (r.jl_lower_lazy > *r.c_or + tol) flag(r, "lazy lower bound exceeds exact OR");
    if (jl0 > *r.c_or0 + tol) flag(r, "non-lazy lower bound exceeds exact OR0");
    if (*r.c_or > r.envelope_upper + tol) flag(r, "exact OR exceeds transport envelope");
    if (r.envelope_upper > r.theta_upper + 1e-12)
      flag(r, "transport envelope exceeds coverage envelope");
    if (std::min(r.deg_u, r.deg_v) >= 2) {
      if (r.bf2or_lower && *r.bf2or_lower > *r.c_or + tol)
        flag(r, "bf2or band misses exact OR from below");
      if (r.bf2or_upper && *r.bf2or_upper < *r.c_or - tol)
        flag(r, "bf2or band misses exact OR from above");
      if (r.or2bf_lower && *r.or2bf_lower > r.c_bf + tol)
        flag(r, "or2bf band misses BF from below");
      if (r.or2bf_upper && *r.or2bf_upper < r.c_bf - tol)
        flag(r, "or2bf band misses BF from above");
    }
  }
  return result;
}

}  // namespace curvband
