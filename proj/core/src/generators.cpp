#include "curvband/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>
#include <sstream>
#include <unordered_set>

#include "curvband/errors.hpp"
#include "curvband/rng.hpp"

namespace curvband {

namespace {

using EdgeVec = std::vector<std::pair<Vertex, Vertex>>;

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

Graph build(std::size_t n, const EdgeVec& edges) {
  return Graph::from_edges(n, edges);
}

Graph gen_er(const ErSpec& s, SplitMix64& rng) {
  require(s.n >= 1, "er: n must be >= 1");
  require(s.p >= 0.0 && s.p <= 1.0, "er: p must lie in [0,1]");
  EdgeVec edges;
  for (Vertex i = 0; i < s.n; ++i)
    for (Vertex j = i + 1; j < s.n; ++j)
      if (rng.next_double() < s.p) edges.emplace_back(i, j);
  return build(s.n, edges);
}

Graph gen_ba(const BaSpec& s, SplitMix64& rng) {
  require(s.n >= 1, "ba: n must be >= 1");
  require(s.m >= 1 && s.m < s.n, "ba: m must lie in {1,...,n-1}");
  EdgeVec edges;
  // degree-proportional sampling list: every edge contributes both endpoints
  std::vector<Vertex> endpoint_pool;
  for (Vertex i = 0; i < s.m; ++i)
    for (Vertex j = i + 1; j < s.m; ++j) {
      edges.emplace_back(i, j);
      endpoint_pool.push_back(i);
      endpoint_pool.push_back(j);
    }

  const std::uint64_t redraw_budget = 10ull * s.n;
  std::vector<Vertex> chosen;
  for (Vertex t = s.m; t < s.n; ++t) {
    chosen.clear();
    for (std::uint32_t k = 0; k < s.m; ++k) {
      std::uint64_t draws = 0;
      for (;;) {
        if (++draws > redraw_budget)
          throw GenerationError("ba: re-draw budget exhausted at vertex " + std::to_string(t));
        Vertex cand;
        if (endpoint_pool.empty()) {
          // all degrees zero (only possible for the K_1 seed): fall back to uniform
          cand = static_cast<Vertex>(rng.next_below(t));
        } else {
          cand = endpoint_pool[rng.next_below(endpoint_pool.size())];
        }
        if (std::find(chosen.begin(), chosen.end(), cand) == chosen.end()) {
          chosen.push_back(cand);
          break;
        }
      }
    }
    for (Vertex u : chosen) {
      edges.emplace_back(u, t);
      endpoint_pool.push_back(u);
      endpoint_pool.push_back(t);
    }
  }
  return build(s.n, edges);
}

Graph gen_ws(const WsSpec& s, SplitMix64& rng) {
  require(s.n >= 3, "ws: n must be >= 3");
  require(s.k % 2 == 0, "ws: k must be even");
  require(s.k >= 2 && s.k <= s.n - 1, "ws: k must lie in [2, n-1]");
  require(s.beta >= 0.0 && s.beta <= 1.0, "ws: beta must lie in [0,1]");

  std::vector<std::set<Vertex>> adj(s.n);
  auto add = [&](Vertex a, Vertex b) {
    adj[a].insert(b);
    adj[b].insert(a);
  };
  auto remove = [&](Vertex a, Vertex b) {
    adj[a].erase(b);
    adj[b].erase(a);
  };
  const std::uint32_t half = s.k / 2;
  for (Vertex i = 0; i < s.n; ++i)
    for (std::uint32_t d = 1; d <= half; ++d) add(i, (i + d) % s.n);

  // rewire clockwise lattice edges lap by lap
  for (std::uint32_t d = 1; d <= half; ++d) {
    for (Vertex i = 0; i < s.n; ++i) {
      if (rng.next_double() >= s.beta) continue;
      Vertex old = (i + d) % s.n;
      std::uint64_t admissible = s.n - 1 - adj[i].size();
      if (admissible == 0) continue;  // saturated vertex: keep the edge
      std::uint64_t pick = rng.next_below(admissible);
      Vertex fresh = 0;
      for (Vertex v = 0; v < s.n; ++v) {
        if (v == i || adj[i].count(v)) continue;
        if (pick == 0) {
          fresh = v;
          break;
        }
        --pick;
      }
      remove(i, old);
      add(i, fresh);
    }
  }

  EdgeVec edges;
  for (Vertex u = 0; u < s.n; ++u)
    for (Vertex v : adj[u])
      if (v > u) edges.emplace_back(u, v);
  return build(s.n, edges);
}

Graph gen_rgg(const RggSpec& s, SplitMix64& rng) {
  require(s.n >= 1, "rgg: n must be >= 1");
  require(s.radius > 0.0, "rgg: r must be positive");
  std::vector<double> xs(s.n), ys(s.n);
  for (Vertex i = 0; i < s.n; ++i) {
    xs[i] = rng.next_double();
    ys[i] = rng.next_double();
  }
  const double r2 = s.radius * s.radius;
  EdgeVec edges;
  for (Vertex i = 0; i < s.n; ++i)
    for (Vertex j = i + 1; j < s.n; ++j) {
      double dx = std::abs(xs[i] - xs[j]);
      double dy = std::abs(ys[i] - ys[j]);
      if (s.torus_metric) {
        dx = std::min(dx, 1.0 - dx);
        dy = std::min(dy, 1.0 - dy);
      }
      if (dx * dx + dy * dy <= r2) edges.emplace_back(i, j);
    }
  return build(s.n, edges);
}

Graph gen_regular(const RegularSpec& s, SplitMix64& rng) {
  require(s.n >= 1, "regular: n must be >= 1");
  require(s.d < s.n, "regular: d must satisfy 0 <= d < n");
  require((std::uint64_t(s.n) * s.d) % 2 == 0, "regular: n*d must be even");

  constexpr int kRestartBudget = 1000;
  for (int attempt = 0; attempt < kRestartBudget; ++attempt) {
    std::vector<Vertex> stubs;
    stubs.reserve(std::size_t(s.n) * s.d);
    for (Vertex v = 0; v < s.n; ++v)
      for (std::uint32_t c = 0; c < s.d; ++c) stubs.push_back(v);
    rng.shuffle(std::span<Vertex>(stubs));

    EdgeVec edges;
    std::unordered_set<std::uint64_t> used;
    auto key = [&](Vertex a, Vertex b) {
      if (a > b) std::swap(a, b);
      return std::uint64_t(a) * s.n + b;
    };
    bool ok = true;
    while (!stubs.empty()) {
      Vertex u = stubs.back();
      stubs.pop_back();
      std::size_t partner = stubs.size();
      for (std::size_t idx = stubs.size(); idx-- > 0;) {
        Vertex v = stubs[idx];
        if (v != u && !used.count(key(u, v))) {
          partner = idx;
          break;
        }
      }
      if (partner == stubs.size()) {
        ok = false;  // dead end: discard E and reshuffle
        break;
      }
      Vertex v = stubs[partner];
      stubs.erase(stubs.begin() + static_cast<std::ptrdiff_t>(partner));
      used.insert(key(u, v));
      edges.emplace_back(u, v);
    }
    if (ok) return build(s.n, edges);
  }
  throw GenerationError("regular: restart budget exhausted");
}

Graph gen_hrg(const HrgSpec& s, SplitMix64& rng) {
  require(s.n >= 1, "hrg: n must be >= 1");
  require(s.radius > 0.0, "hrg: r must be positive");
  require(s.alpha > 0.0, "hrg: alpha must be positive");
  require(s.temperature >= 0.0, "hrg: t must be non-negative");

  const double cosh_ar_minus_1 = std::cosh(s.alpha * s.radius) - 1.0;
  std::vector<double> theta(s.n), ch(s.n), sh(s.n);
  for (Vertex i = 0; i < s.n; ++i) {
    theta[i] = 2.0 * std::numbers::pi * rng.next_double();
    // inverse CDF of the radial density alpha*sinh(alpha*r)/(cosh(alpha*R)-1)
    double u = rng.next_double();
    double arg = 1.0 + u * cosh_ar_minus_1;
    double r = std::acosh(std::max(1.0, arg)) / s.alpha;
    ch[i] = std::cosh(r);
    sh[i] = std::sinh(r);
  }

  EdgeVec edges;
  for (Vertex i = 0; i < s.n; ++i)
    for (Vertex j = i + 1; j < s.n; ++j) {
      double dt = std::abs(theta[i] - theta[j]);
      if (dt > std::numbers::pi) dt = 2.0 * std::numbers::pi - dt;
      double cosh_d = ch[i] * ch[j] - sh[i] * sh[j] * std::cos(dt);
      double d = std::acosh(std::max(1.0, cosh_d));
      if (s.temperature == 0.0) {
        if (d <= s.radius) edges.emplace_back(i, j);
      } else {
        double p = 1.0 / (1.0 + std::exp((d - s.radius) / (2.0 * s.temperature)));
        if (rng.next_double() < p) edges.emplace_back(i, j);
      }
    }
  return build(s.n, edges);
}

Graph gen_sbm(const SbmSpec& s, SplitMix64& rng) {
  require(!s.block_sizes.empty(), "sbm: at least one block required");
  require(s.p_in >= 0.0 && s.p_in <= 1.0, "sbm: p_in must lie in [0,1]");
  require(s.p_out >= 0.0 && s.p_out <= 1.0, "sbm: p_out must lie in [0,1]");
  std::vector<std::uint32_t> block_of;
  for (std::uint32_t b = 0; b < s.block_sizes.size(); ++b) {
    require(s.block_sizes[b] >= 1, "sbm: block sizes must be positive");
    for (std::uint32_t c = 0; c < s.block_sizes[b]; ++c) block_of.push_back(b);
  }
  const std::size_t n = block_of.size();
  EdgeVec edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) {
      double p = block_of[i] == block_of[j] ? s.p_in : s.p_out;
      if (rng.next_double() < p) edges.emplace_back(i, j);
    }
  return build(n, edges);
}

Graph gen_cycle(const CycleSpec& s) {
  require(s.n >= 3, "cycle: n must be >= 3");
  EdgeVec edges;
  for (Vertex i = 0; i + 1 < s.n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(s.n - 1, 0);
  return build(s.n, edges);
}

Graph gen_grid(const GridSpec& s) {
  require(s.lx >= 1 && s.ly >= 1, "grid: lx and ly must be >= 1");
  auto id = [&](std::uint32_t x, std::uint32_t y) { return Vertex(x * s.ly + y); };
  EdgeVec edges;
  for (std::uint32_t x = 0; x < s.lx; ++x)
    for (std::uint32_t y = 0; y < s.ly; ++y) {
      if (x + 1 < s.lx) edges.emplace_back(id(x, y), id(x + 1, y));
      if (y + 1 < s.ly) edges.emplace_back(id(x, y), id(x, y + 1));
    }
  return build(std::size_t(s.lx) * s.ly, edges);
}

Graph gen_torus(const TorusSpec& s) {
  require(s.lx >= 3 && s.ly >= 3, "torus: lx and ly must be >= 3 to stay simple");
  auto id = [&](std::uint32_t x, std::uint32_t y) { return Vertex(x * s.ly + y); };
  EdgeVec edges;
  for (std::uint32_t x = 0; x < s.lx; ++x)
    for (std::uint32_t y = 0; y < s.ly; ++y) {
      edges.emplace_back(id(x, y), id((x + 1) % s.lx, y));
      edges.emplace_back(id(x, y), id(x, (y + 1) % s.ly));
    }
  return build(std::size_t(s.lx) * s.ly, edges);
}

Graph gen_tree(const TreeSpec& s) {
  require(s.branching >= 2, "tree: d must be >= 2");
  require(s.height >= 1, "tree: h must be >= 1");
  std::uint64_t count = 1, level = 1;
  for (std::uint32_t l = 0; l < s.height; ++l) {
    level *= s.branching;
    count += level;
    require(count <= (1ull << 31), "tree: too many vertices");
  }
  EdgeVec edges;
  std::uint64_t internal = (count - level);
  for (std::uint64_t v = 0; v < internal; ++v)
    for (std::uint32_t c = 1; c <= s.branching; ++c)
      edges.emplace_back(Vertex(v), Vertex(v * s.branching + c));
  return build(count, edges);
}

Graph gen_complete(const CompleteSpec& s) {
  require(s.n >= 1, "complete: n must be >= 1");
  EdgeVec edges;
  for (Vertex i = 0; i < s.n; ++i)
    for (Vertex j = i + 1; j < s.n; ++j) edges.emplace_back(i, j);
  return build(s.n, edges);
}

}  // namespace

Graph generate(const ModelSpec& spec, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return std::visit(
      [&](const auto& s) -> Graph {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ErSpec>) return gen_er(s, rng);
        else if constexpr (std::is_same_v<T, BaSpec>) return gen_ba(s, rng);
        else if constexpr (std::is_same_v<T, WsSpec>) return gen_ws(s, rng);
        else if constexpr (std::is_same_v<T, RggSpec>) return gen_rgg(s, rng);
        else if constexpr (std::is_same_v<T, RegularSpec>) return gen_regular(s, rng);
        else if constexpr (std::is_same_v<T, HrgSpec>) return gen_hrg(s, rng);
        else if constexpr (std::is_same_v<T, SbmSpec>) return gen_sbm(s, rng);
        else if constexpr (std::is_same_v<T, CycleSpec>) return gen_cycle(s);
        else if constexpr (std::is_same_v<T, GridSpec>) return gen_grid(s);
        else if constexpr (std::is_same_v<T, TorusSpec>) return gen_torus(s);
        else if constexpr (std::is_same_v<T, TreeSpec>) return gen_tree(s);
        else return gen_complete(s);
      },
      spec);
}

namespace {

std::string fmt_double(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

}  // namespace

std::string model_name(const ModelSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ErSpec>) return "er";
        else if constexpr (std::is_same_v<T, BaSpec>) return "ba";
        else if constexpr (std::is_same_v<T, WsSpec>) return "ws";
        else if constexpr (std::is_same_v<T, RggSpec>) return "rgg";
        else if constexpr (std::is_same_v<T, RegularSpec>) return "regular";
        else if constexpr (std::is_same_v<T, HrgSpec>) return "hrg";
        else if constexpr (std::is_same_v<T, SbmSpec>) return "sbm";
        else if constexpr (std::is_same_v<T, CycleSpec>) return "cycle";
        else if constexpr (std::is_same_v<T, GridSpec>) return "grid";
        else if constexpr (std::is_same_v<T, TorusSpec>) return "torus";
        else if constexpr (std::is_same_v<T, TreeSpec>) return "tree";
        else return "complete";
      },
      spec);
}

std::string model_params_string(const ModelSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ErSpec>)
          return "n=" + std::to_string(s.n) + ",p=" + fmt_double(s.p);
        else if constexpr (std::is_same_v<T, BaSpec>)
          return "n=" + std::to_string(s.n) + ",m=" + std::to_string(s.m);
        else if constexpr (std::is_same_v<T, WsSpec>)
          return "n=" + std::to_string(s.n) + ",k=" + std::to_string(s.k) +
                 ",beta=" + fmt_double(s.beta);
        else if constexpr (std::is_same_v<T, RggSpec>)
          return "n=" + std::to_string(s.n) + ",r=" + fmt_double(s.radius) +
                 (s.torus_metric ? ",torus=1" : "");
        else if constexpr (std::is_same_v<T, RegularSpec>)
          return "n=" + std::to_string(s.n) + ",d=" + std::to_string(s.d);
        else if constexpr (std::is_same_v<T, HrgSpec>)
          return "n=" + std::to_string(s.n) + ",r=" + fmt_double(s.radius) +
                 ",alpha=" + fmt_double(s.alpha) + ",t=" + fmt_double(s.temperature);
        else if constexpr (std::is_same_v<T, SbmSpec>) {
          std::string blocks;
          for (std::size_t i = 0; i < s.block_sizes.size(); ++i) {
            if (i) blocks += ':';
            blocks += std::to_string(s.block_sizes[i]);
          }
          return "blocks=" + blocks + ",p_in=" + fmt_double(s.p_in) +
                 ",p_out=" + fmt_double(s.p_out);
        } else if constexpr (std::is_same_v<T, CycleSpec>)
          return "n=" + std::to_string(s.n);
        else if constexpr (std::is_same_v<T, GridSpec>)
          return "lx=" + std::to_string(s.lx) + ",ly=" + std::to_string(s.ly);
        else if constexpr (std::is_same_v<T, TorusSpec>)
          return "lx=" + std::to_string(s.lx) + ",ly=" + std::to_string(s.ly);
        else if constexpr (std::is_same_v<T, TreeSpec>)
          return "d=" + std::to_string(s.branching) + ",h=" + std::to_string(s.height);
        else
          return "n=" + std::to_string(s.n);
      },
      spec);
}

namespace {

class ParamMap {
public:
  ParamMap(const std::string& model, const std::map<std::string, std::string>& params)
      : model_(model), params_(params) {}

  std::uint32_t get_u32(const std::string& key) const {
    const std::string& raw = fetch(key);
    char* end = nullptr;
    unsigned long long v = std::strtoull(raw.c_str(), &end, 10);
    if (end != raw.c_str() + raw.size() || v > 0xFFFFFFFFull)
      throw ParameterError(model_ + ": parameter '" + key + "' must be a non-negative integer");
    return static_cast<std::uint32_t>(v);
  }

  double get_double(const std::string& key) const {
    const std::string& raw = fetch(key);
    char* end = nullptr;
    double v = std::strtod(raw.c_str(), &end);
    if (end != raw.c_str() + raw.size())
      throw ParameterError(model_ + ": parameter '" + key + "' must be a real number");
    return v;
  }

  bool get_flag(const std::string& key) const {
    auto it = params_.find(key);
    if (it == params_.end()) return false;
    used_.insert(key);
    return it->second == "1" || it->second == "true";
  }

  std::vector<std::uint32_t> get_u32_list(const std::string& key) const {
    const std::string& raw = fetch(key);
    std::vector<std::uint32_t> out;
    std::size_t pos = 0;
    while (pos <= raw.size()) {
      std::size_t next = raw.find(':', pos);
      std::string token = raw.substr(pos, next == std::string::npos ? next : next - pos);
      char* end = nullptr;
      unsigned long long v = std::strtoull(token.c_str(), &end, 10);
      if (token.empty() || end != token.c_str() + token.size() || v > 0xFFFFFFFFull)
        throw ParameterError(model_ + ": parameter '" + key +
                             "' must be a ':'-separated list of integers");
      out.push_back(static_cast<std::uint32_t>(v));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : params_)
      if (!used_.count(key))
        throw ParameterError(model_ + ": unknown parameter '" + key + "'");
  }

private:
  const std::string& fetch(const std::string& key) const {
    auto it = params_.find(key);
    if (it == params_.end())
      throw ParameterError(model_ + ": missing parameter '" + key + "'");
    used_.insert(key);
    return it->second;
  }

  std::string model_;
  const std::map<std::string, std::string>& params_;
  mutable std::set<std::string> used_;
};

}  // namespace

ModelSpec parse_model_spec(const std::string& name,
                           const std::map<std::string, std::string>& params) {
  ParamMap p(name, params);
  ModelSpec spec;
  if (name == "er") spec = ErSpec{p.get_u32("n"), p.get_double("p")};
  else if (name == "ba") spec = BaSpec{p.get_u32("n"), p.get_u32("m")};
  else if (name == "ws") spec = WsSpec{p.get_u32("n"), p.get_u32("k"), p.get_double("beta")};
  else if (name == "rgg")
    spec = RggSpec{p.get_u32("n"), p.get_double("r"), p.get_flag("torus")};
  else if (name == "regular") spec = RegularSpec{p.get_u32("n"), p.get_u32("d")};
  else if (name == "hrg")
    spec = HrgSpec{p.get_u32("n"), p.get_double("r"), p.get_double("alpha"),
                   p.get_double("t")};
  else if (name == "sbm")
    spec = SbmSpec{p.get_u32_list("blocks"), p.get_double("p_in"), p.get_double("p_out")};
  else if (name == "cycle") spec = CycleSpec{p.get_u32("n")};
  else if (name == "grid") spec = GridSpec{p.get_u32("lx"), p.get_u32("ly")};
  else if (name == "torus") spec = TorusSpec{p.get_u32("lx"), p.get_u32("ly")};
  else if (name == "tree") spec = TreeSpec{p.get_u32("d"), p.get_u32("h")};
  else if (name == "complete") spec = CompleteSpec{p.get_u32("n")};
  else throw ParameterError("unknown model '" + name + "'");
  p.finish();
  return spec;
}

}  // namespace curvband
