// curvband: edgewise curvature bounds and transfer bands from 2-hop
// combinatorics, with an exact optimal-transport oracle for validation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "curvband/bounds.hpp"
#include "curvband/errors.hpp"
#include "curvband/generators.hpp"
#include "curvband/graph.hpp"
#include "curvband/local_stats.hpp"
#include "curvband/report.hpp"
#include "curvband/transfer.hpp"
#include "curvband/transport.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitAuditFailure = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

curvband::AlphaProfile parse_alpha(const std::string& text) {
  if (text == "default") return curvband::AlphaProfile::degree_default();
  if (text.rfind("const:", 0) == 0) {
    char* end = nullptr;
    const std::string value = text.substr(6);
    double alpha = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size())
      throw UsageError("--alpha const:<x> needs a real number");
    return curvband::AlphaProfile::constant(alpha);
  }
  throw UsageError("--alpha must be 'default' or 'const:<x>'");
}

std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    std::string item = text.substr(pos, next == std::string::npos ? next : next - pos);
    std::size_t eq = item.find('=');
    if (item.empty() || eq == std::string::npos || eq == 0)
      throw UsageError("--params expects k=v[,k=v...], got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

curvband::Graph load_graph(const std::string& path, bool dedup,
                           std::size_t* dropped = nullptr) {
  std::ifstream in(path);
  if (!in) throw curvband::GraphError("cannot open graph file: " + path);
  curvband::LoadResult loaded = curvband::load_edge_list(in, dedup);
  if (dropped) *dropped = loaded.duplicates_dropped;
  if (loaded.duplicates_dropped > 0)
    std::cerr << "warning: dropped " << loaded.duplicates_dropped
              << " duplicate edge(s) from " << path << "\n";
  return std::move(loaded.graph);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw curvband::GraphError("cannot open output file: " + path);
  return out;
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int run(int argc, char** argv) {
  CLI::App app{"edgewise curvature bounds and transfer bands"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "sample a synthetic graph family");
  std::string gen_model, gen_params, gen_out;
  std::uint64_t gen_seed = 0;
  bool gen_torus_metric = false;
  gen->add_option("--model", gen_model, "family tag (er, ba, ws, rgg, regular, hrg, sbm, cycle, grid, torus, tree, complete)")->required();
  gen->add_option("--params", gen_params, "named parameters, k=v[,k=v...]");
  gen->add_option("--seed", gen_seed, "64-bit stream seed")->required();
  gen->add_option("--out", gen_out, "output edge-list path")->required();
  gen->add_flag("--torus-metric", gen_torus_metric, "rgg only: wrap the unit square");

  // shared options for graph-consuming subcommands
  struct GraphArgs {
    std::string graph, alpha = "default";
    bool dedup = false;
    unsigned threads = 0;
  };
  auto add_graph_args = [](CLI::App* cmd, GraphArgs& args) {
    cmd->add_option("--graph", args.graph, "edge-list input path")->required();
    cmd->add_option("--alpha", args.alpha, "idleness profile: default | const:<x>");
    cmd->add_flag("--dedup", args.dedup, "drop duplicate input edges with a warning");
    cmd->add_option("--threads", args.threads, "worker threads (0 = auto)");
  };

  auto* curv = app.add_subcommand("curvature", "per-edge statistics, curvatures and bounds");
  GraphArgs curv_args;
  std::string curv_out;
  bool curv_exact = false;
  add_graph_args(curv, curv_args);
  curv->add_flag("--exact-or", curv_exact, "also run the exact transport oracle");
  curv->add_option("--out", curv_out, "output CSV path")->required();

  auto* transfer = app.add_subcommand("transfer", "transfer bands in one direction");
  GraphArgs transfer_args;
  std::string transfer_out, transfer_direction;
  std::optional<double> transfer_level;
  bool transfer_per_edge = false;
  add_graph_args(transfer, transfer_args);
  transfer->add_option("--direction", transfer_direction, "bf2or or or2bf")->required();
  transfer->add_option("--level", transfer_level, "fixed input level for every edge");
  transfer->add_flag("--per-edge", transfer_per_edge,
                     "evaluate each edge at its own source curvature");
  transfer->add_option("--out", transfer_out, "output CSV path")->required();

  auto* summ = app.add_subcommand("summarize", "distribution summary as JSON");
  GraphArgs summ_args;
  std::string summ_out;
  bool summ_exact = false;
  add_graph_args(summ, summ_args);
  summ->add_flag("--exact-or", summ_exact, "also run the exact transport oracle");
  summ->add_option("--out", summ_out, "output JSON path")->required();

  auto* audit = app.add_subcommand("audit", "verify every soundness inequality (exact OR on)");
  GraphArgs audit_args;
  add_graph_args(audit, audit_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return kExitOk;
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      curvband::ModelSpec spec = curvband::parse_model_spec(gen_model, parse_params(gen_params));
      if (gen_torus_metric) {
        auto* rgg = std::get_if<curvband::RggSpec>(&spec);
        if (!rgg) throw UsageError("--torus-metric applies to the rgg model only");
        rgg->torus_metric = true;
      }
      curvband::Graph g = curvband::generate(spec, gen_seed);
      std::ofstream out = open_output(gen_out);
      std::string comments[] = {"model: " + curvband::model_name(spec),
                                "params: " + curvband::model_params_string(spec),
                                "seed: " + std::to_string(gen_seed)};
      curvband::write_edge_list(out, g, comments);
      if (!out) throw curvband::GraphError("write failed: " + gen_out);
      return kExitOk;
    }

    if (curv->parsed()) {
      curvband::Graph g = load_graph(curv_args.graph, curv_args.dedup);
      curvband::ReportOptions options;
      options.exact_or = curv_exact;
      options.profile = parse_alpha(curv_args.alpha);
      options.threads = curv_args.threads;
      auto rows = curvband::compute_edge_reports(g, options);
      std::ofstream out = open_output(curv_out);
      curvband::write_reports_csv(out, rows);
      if (!out) throw curvband::GraphError("write failed: " + curv_out);
      return kExitOk;
    }

    if (transfer->parsed()) {
      if (transfer_level.has_value() == transfer_per_edge)
        throw UsageError("transfer needs exactly one of --level or --per-edge");
      bool bf2or = transfer_direction == "bf2or";
      if (!bf2or && transfer_direction != "or2bf")
        throw UsageError("--direction must be bf2or or or2bf");

      curvband::Graph g = load_graph(transfer_args.graph, transfer_args.dedup);
      curvband::AlphaProfile profile = parse_alpha(transfer_args.alpha);
      const curvband::Direction direction =
          bf2or ? curvband::Direction::kBfToOr : curvband::Direction::kOrToBf;
      std::ofstream out = open_output(transfer_out);
      out << "u,v,direction,input_level,lower,upper\n";
      curvband::LocalAnalyzer analyzer(g);
      curvband::TransportOracle oracle(g);
      for (const curvband::EdgeKey& e : g.edges()) {
        curvband::EdgeBundle b = curvband::edge_bundle(analyzer, e, profile);
        double level;
        if (transfer_level)
          level = *transfer_level;
        else if (bf2or)
          level = curvband::bf_curvature(b.stats);
        else
          level = oracle.or_curvature(e, profile);

        std::string lower, upper;
        if (bf2or || b.stats.deg_min() >= 2) {
          curvband::TransferBand band = curvband::band_at(b, e, direction, level);
          lower = fmt12(band.lower);
          upper = fmt12(band.upper);
        } else {
          // pendant edge: only the upper or->bf modulus is defined
          upper = fmt12(curvband::psi_or_to_bf(b, level));
        }
        out << e.u << ',' << e.v << ',' << (bf2or ? "bf2or" : "or2bf") << ','
            << fmt12(level) << ',' << lower << ',' << upper << '\n';
      }
      if (!out) throw curvband::GraphError("write failed: " + transfer_out);
      return kExitOk;
    }

    if (summ->parsed()) {
      curvband::Graph g = load_graph(summ_args.graph, summ_args.dedup);
      curvband::ReportOptions options;
      options.exact_or = summ_exact;
      options.profile = parse_alpha(summ_args.alpha);
      options.threads = summ_args.threads;
      auto rows = curvband::compute_edge_reports(g, options);
      curvband::SummaryStats stats = curvband::summarize(rows);
      std::ofstream out = open_output(summ_out);
      curvband::write_summary_json(out, stats);
      if (!out) throw curvband::GraphError("write failed: " + summ_out);
      return kExitOk;
    }

    if (audit->parsed()) {
      curvband::Graph g = load_graph(audit_args.graph, audit_args.dedup);
      curvband::AuditResult result = curvband::audit_graph(
          g, parse_alpha(audit_args.alpha), 1e-9, audit_args.threads);
      if (result.violations > 0) {
        std::cerr << "audit: " << result.violations << " violation(s)\n";
        for (const std::string& msg : result.messages) std::cerr << "  " << msg << "\n";
        return kExitAuditFailure;
      }
      std::cout << "audit: all soundness inequalities hold on " << g.edge_count()
                << " edges\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const curvband::ParameterError& e) {
    // bad values on the command line are usage problems, not data problems
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
