#include <benchmark/benchmark.h>

#include "curvband/bounds.hpp"
#include "curvband/generators.hpp"
#include "curvband/local_stats.hpp"
#include "curvband/report.hpp"
#include "curvband/rng.hpp"
#include "curvband/transfer.hpp"
#include "curvband/transport.hpp"

namespace {

using namespace curvband;

const AlphaProfile kDefault = AlphaProfile::degree_default();

Graph make_ba(std::int64_t n) { return generate(BaSpec{static_cast<std::uint32_t>(n), 5}, 1); }

void BM_LocalStats(benchmark::State& state) {
  Graph g = make_ba(state.range(0));
  LocalAnalyzer analyzer(g);
  auto edges = g.edges();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyzer.local_stats(edges[i]));
    if (++i == edges.size()) i = 0;
  }
}
BENCHMARK(BM_LocalStats)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_BoundsPerEdge(benchmark::State& state) {
  Graph g = make_ba(state.range(0));
  LocalAnalyzer analyzer(g);
  auto edges = g.edges();
  std::size_t i = 0;
  for (auto _ : state) {
    EdgeBundle b = edge_bundle(analyzer, edges[i], kDefault);
    EnvelopeTerms env = coverage_envelope(b.lazy, b.stats);
    double acc = env.theta_value + env.envelope_value + jl_lower_lazy(b.moduli, b.lazy);
    acc += psi_bf_to_or(b, bf_curvature(b.stats));
    benchmark::DoNotOptimize(acc);
    if (++i == edges.size()) i = 0;
  }
}
BENCHMARK(BM_BoundsPerEdge)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_ExactOrPerEdge(benchmark::State& state) {
  Graph g = make_ba(state.range(0));
  TransportOracle oracle(g);
  auto edges = g.edges();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.or_curvature(edges[i], kDefault));
    if (++i == edges.size()) i = 0;
  }
}
BENCHMARK(BM_ExactOrPerEdge)->Arg(1000)->Arg(4000);

void BM_FullSweepNoSolver(benchmark::State& state) {
  Graph g = make_ba(state.range(0));
  ReportOptions options;  // exact OR off
  for (auto _ : state) {
    auto rows = compute_edge_reports(g, options);
    benchmark::DoNotOptimize(rows.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_FullSweepNoSolver)->Unit(benchmark::kMillisecond)->Arg(10000)->Arg(100000);

void BM_Generate(benchmark::State& state) {
  for (auto _ : state) {
    Graph g = generate(BaSpec{static_cast<std::uint32_t>(state.range(0)), 5}, 7);
    benchmark::DoNotOptimize(g.edge_count());
  }
}
BENCHMARK(BM_Generate)->Unit(benchmark::kMillisecond)->Arg(10000)->Arg(100000);

}  // namespace
