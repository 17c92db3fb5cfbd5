#include "curvband/transport.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "curvband/errors.hpp"

namespace curvband {

namespace {

constexpr double kMassEps = 1e-13;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::atomic<std::uint64_t> g_solve_count{0};

void validate_measure(const SparseMeasure& m, const char* label) {
  double total = 0.0;
  std::vector<Vertex> seen;
  seen.reserve(m.support.size());
  for (const auto& atom : m.support) {
    if (!(atom.mass > 0.0))
      throw ParameterError(std::string(label) + ": masses must be positive");
    seen.push_back(atom.vertex);
    total += atom.mass;
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw ParameterError(std::string(label) + ": support vertices must be distinct");
  if (std::abs(total - 1.0) > 1e-12)
    throw NormalizationError(std::string(label) + ": masses must sum to 1");
}

/// Successive shortest paths with potentials on the dense bipartite
/// transportation problem. Costs are non-negative (graph distances), so the
/// initial zero potential is valid; augmentations keep reduced costs
/// non-negative, which makes every intermediate flow cost-optimal for its
/// value and the final flow an exact optimum.
double solve_transport(const std::vector<double>& supply, const std::vector<double>& demand,
                       const std::vector<std::vector<double>>& cost,
                       std::vector<std::vector<double>>* flow_out) {
  const std::size_t m = supply.size(), k = demand.size();
  const std::size_t nodes = m + k;
  std::vector<std::vector<double>> flow(m, std::vector<double>(k, 0.0));
  std::vector<double> rem_a(supply), rem_b(demand), phi(nodes, 0.0), dist(nodes);
  std::vector<std::int32_t> parent(nodes);
  std::vector<bool> settled(nodes);

  g_solve_count.fetch_add(1, std::memory_order_relaxed);

  double remaining = 0.0;
  for (double a : rem_a) remaining += a;

  const std::size_t max_rounds = 2 * nodes * nodes + 16;
  std::size_t rounds = 0;
  while (remaining > 1e-12) {
    if (++rounds > max_rounds)
      throw std::logic_error("transport solve exceeded its augmentation budget");

    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(settled.begin(), settled.end(), false);
    for (std::size_t a = 0; a < m; ++a)
      if (rem_a[a] > kMassEps) dist[a] = 0.0;

    for (;;) {
      std::size_t x = nodes;
      double best = kInf;
      for (std::size_t i = 0; i < nodes; ++i)
        if (!settled[i] && dist[i] < best) {
          best = dist[i];
          x = i;
        }
      if (x == nodes) break;
      settled[x] = true;
      if (x < m) {
        for (std::size_t b = 0; b < k; ++b) {
          double len = cost[x][b] + phi[x] - phi[m + b];
          if (dist[x] + len < dist[m + b] - 1e-15) {
            dist[m + b] = dist[x] + len;
            parent[m + b] = static_cast<std::int32_t>(x);
          }
        }
      } else {
        const std::size_t b = x - m;
        for (std::size_t a = 0; a < m; ++a) {
          if (flow[a][b] <= kMassEps) continue;
          double len = -cost[a][b] + phi[x] - phi[a];
          if (dist[x] + len < dist[a] - 1e-15) {
            dist[a] = dist[x] + len;
            parent[a] = static_cast<std::int32_t>(x);
          }
        }
      }
    }

    std::size_t target = nodes;
    double best = kInf;
    for (std::size_t b = 0; b < k; ++b)
      if (rem_b[b] > kMassEps && dist[m + b] < best) {
        best = dist[m + b];
        target = m + b;
      }
    if (target == nodes) {
      if (remaining <= 1e-9) break;  // only fp dust left on the supply side
      throw std::logic_error("transport solve found no augmenting path");
    }

    const double reach = dist[target];
    for (std::size_t i = 0; i < nodes; ++i)
      phi[i] += std::min(dist[i], reach);

    // bottleneck along the parent path
    double delta = rem_b[target - m];
    std::size_t x = target;
    while (parent[x] >= 0) {
      std::size_t p = static_cast<std::size_t>(parent[x]);
      if (x >= m) {
        // forward arc p -> x, uncapacitated
      } else {
        delta = std::min(delta, flow[x][p - m]);
      }
      x = p;
    }
    delta = std::min(delta, rem_a[x]);

    std::size_t y = target;
    while (parent[y] >= 0) {
      std::size_t p = static_cast<std::size_t>(parent[y]);
      if (y >= m)
        flow[p][y - m] += delta;
      else
        flow[y][p - m] -= delta;
      y = p;
    }
    rem_a[y] -= delta;
    rem_b[target - m] -= delta;
    remaining -= delta;
  }

  double objective = 0.0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (flow[a][b] > 0.0) objective += flow[a][b] * cost[a][b];
  if (flow_out) *flow_out = std::move(flow);
  return objective;
}

}  // namespace

double SparseMeasure::total_mass() const {
  double total = 0.0;
  for (const auto& atom : support) total += atom.mass;
  return total;
}

SparseMeasure lazy_measure(const Graph& g, Vertex u, const AlphaProfile& profile) {
  const std::size_t deg = g.degree(u);
  if (deg == 0)
    throw GraphError("lazy measure undefined at isolated vertex " + std::to_string(u));
  const double alpha = profile.alpha_for_degree(deg);
  // the default schedule is uniform on the closed neighborhood
  const double w =
      profile.is_default() ? alpha : (1.0 - alpha) / static_cast<double>(deg);
  SparseMeasure m;
  m.support.reserve(deg + 1);
  bool placed = alpha <= 0.0;  // alpha = 0 degenerates to the neighbor law
  for (Vertex v : g.neighbors(u)) {
    if (!placed && v > u) {
      m.support.push_back({u, alpha});
      placed = true;
    }
    m.support.push_back({v, w});
  }
  if (!placed) m.support.push_back({u, alpha});
  return m;
}

SparseMeasure neighbor_measure(const Graph& g, Vertex u) {
  const std::size_t deg = g.degree(u);
  if (deg == 0)
    throw GraphError("neighbor law undefined at isolated vertex " + std::to_string(u));
  SparseMeasure m;
  m.support.reserve(deg);
  const double w = 1.0 / static_cast<double>(deg);
  for (Vertex v : g.neighbors(u)) m.support.push_back({v, w});
  return m;
}

TransportPlan w1_exact(const SparseMeasure& mu, const SparseMeasure& nu,
                       const std::vector<std::vector<double>>& cost) {
  validate_measure(mu, "mu");
  validate_measure(nu, "nu");
  if (std::abs(mu.total_mass() - nu.total_mass()) > 1e-12)
    throw NormalizationError("mu and nu carry different total mass");
  if (cost.size() != mu.support.size())
    throw ParameterError("cost matrix rows must match |supp(mu)|");
  for (const auto& row : cost) {
    if (row.size() != nu.support.size())
      throw ParameterError("cost matrix cols must match |supp(nu)|");
    for (double c : row)
      if (!(c >= 0.0) || !std::isfinite(c))
        throw ConnectivityError("unreachable support pair: no finite distance");
  }

  std::vector<double> supply(mu.support.size()), demand(nu.support.size());
  for (std::size_t a = 0; a < supply.size(); ++a) supply[a] = mu.support[a].mass;
  for (std::size_t b = 0; b < demand.size(); ++b) demand[b] = nu.support[b].mass;

  std::vector<std::vector<double>> flow;
  TransportPlan plan;
  plan.objective = solve_transport(supply, demand, cost, &flow);
  for (std::size_t a = 0; a < supply.size(); ++a)
    for (std::size_t b = 0; b < demand.size(); ++b)
      if (flow[a][b] > kMassEps)
        plan.entries.push_back({mu.support[a].vertex, nu.support[b].vertex, flow[a][b]});
  return plan;
}

std::vector<std::vector<double>> support_distances(const Graph& g, const SparseMeasure& mu,
                                                   const SparseMeasure& nu) {
  std::vector<Vertex> sources;
  sources.reserve(mu.support.size());
  for (const auto& atom : mu.support) sources.push_back(atom.vertex);
  auto all = truncated_distances(g, sources, std::numeric_limits<int>::max());
  std::vector<std::vector<double>> cost(mu.support.size(),
                                        std::vector<double>(nu.support.size()));
  for (std::size_t a = 0; a < mu.support.size(); ++a)
    for (std::size_t b = 0; b < nu.support.size(); ++b)
      cost[a][b] = static_cast<double>(all[a][nu.support[b].vertex]);
  return cost;
}

TransportOracle::TransportOracle(const Graph& g)
    : graph_(&g), dist_(g.vertex_count(), kUnreachable) {}

double TransportOracle::or_curvature(EdgeKey e, const AlphaProfile& profile) {
  if (!graph_->has_edge(e.u, e.v))
    throw GraphError("(" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                     ") is not an edge");
  return curvature_from(lazy_measure(*graph_, e.u, profile),
                        lazy_measure(*graph_, e.v, profile));
}

double TransportOracle::or0_curvature(EdgeKey e) {
  if (!graph_->has_edge(e.u, e.v))
    throw GraphError("(" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                     ") is not an edge");
  return curvature_from(neighbor_measure(*graph_, e.u), neighbor_measure(*graph_, e.v));
}

double TransportOracle::curvature_from(const SparseMeasure& mu, const SparseMeasure& nu) {
  // Saturate the diagonal first: shared mass ships at zero cost and never
  // hurts optimality, so only the residuals need a transportation solve.
  SparseMeasure res_mu, res_nu;
  std::size_t a = 0, b = 0;
  while (a < mu.support.size() || b < nu.support.size()) {
    if (b == nu.support.size() ||
        (a < mu.support.size() && mu.support[a].vertex < nu.support[b].vertex)) {
      res_mu.support.push_back(mu.support[a++]);
    } else if (a == mu.support.size() || nu.support[b].vertex < mu.support[a].vertex) {
      res_nu.support.push_back(nu.support[b++]);
    } else {
      const double shared = std::min(mu.support[a].mass, nu.support[b].mass);
      if (mu.support[a].mass - shared > 0.0)
        res_mu.support.push_back({mu.support[a].vertex, mu.support[a].mass - shared});
      if (nu.support[b].mass - shared > 0.0)
        res_nu.support.push_back({nu.support[b].vertex, nu.support[b].mass - shared});
      ++a;
      ++b;
    }
  }
  if (res_mu.support.empty() || res_nu.support.empty()) return 1.0;

  std::vector<std::vector<double>> cost(res_mu.support.size(),
                                        std::vector<double>(res_nu.support.size()));
  for (std::size_t i = 0; i < res_mu.support.size(); ++i) {
    // depth-3 truncated BFS; every pair of one-step supports around an edge
    // sits within 3 hops, the full fallback only fires for exotic callers
    Vertex src = res_mu.support[i].vertex;
    for (int depth : {3, std::numeric_limits<int>::max()}) {
      touched_.clear();
      queue_.assign(1, src);
      dist_[src] = 0;
      touched_.push_back(src);
      std::size_t head = 0;
      while (head < queue_.size()) {
        Vertex x = queue_[head++];
        if (dist_[x] >= depth) continue;
        for (Vertex y : graph_->neighbors(x))
          if (dist_[y] == kUnreachable) {
            dist_[y] = dist_[x] + 1;
            touched_.push_back(y);
            queue_.push_back(y);
          }
      }
      bool complete = true;
      for (std::size_t j = 0; j < res_nu.support.size(); ++j) {
        std::int32_t d = dist_[res_nu.support[j].vertex];
        if (d == kUnreachable) complete = false;
        cost[i][j] = static_cast<double>(d);
      }
      for (Vertex x : touched_) dist_[x] = kUnreachable;
      if (complete) break;
      if (depth != 3)
        throw ConnectivityError("support vertices lie in different components");
    }
  }

  std::vector<double> supply(res_mu.support.size()), demand(res_nu.support.size());
  for (std::size_t i = 0; i < supply.size(); ++i) supply[i] = res_mu.support[i].mass;
  for (std::size_t j = 0; j < demand.size(); ++j) demand[j] = res_nu.support[j].mass;
  if (std::abs(res_mu.total_mass() - res_nu.total_mass()) > 1e-9)
    throw NormalizationError("residual measures lost balance");

  return 1.0 - solve_transport(supply, demand, cost, nullptr);
}

double or_curvature(const Graph& g, EdgeKey e, const AlphaProfile& profile) {
  TransportOracle oracle(g);
  return oracle.or_curvature(e, profile);
}

double or0_curvature(const Graph& g, EdgeKey e) {
  TransportOracle oracle(g);
  return oracle.or0_curvature(e);
}

std::uint64_t transport_solve_count() {
  return g_solve_count.load(std::memory_order_relaxed);
}

}  // namespace curvband
