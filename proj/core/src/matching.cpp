#include "curvband/matching.hpp"

#include <limits>

namespace curvband {

namespace {

constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

struct HopcroftKarp {
  const std::vector<std::vector<std::uint32_t>>& adj;
  std::vector<std::uint32_t> match_left, match_right, layer;
  std::vector<std::uint32_t> queue;

  explicit HopcroftKarp(std::size_t n_left, std::size_t n_right,
                        const std::vector<std::vector<std::uint32_t>>& adj_left)
      : adj(adj_left),
        match_left(n_left, kFree),
        match_right(n_right, kFree),
        layer(n_left, kInf) {}

  bool bfs() {
    queue.clear();
    for (std::uint32_t u = 0; u < match_left.size(); ++u) {
      if (match_left[u] == kFree) {
        layer[u] = 0;
        queue.push_back(u);
      } else {
        layer[u] = kInf;
      }
    }
    bool reached_free = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t u = queue[head];
      for (std::uint32_t w : adj[u]) {
        std::uint32_t u2 = match_right[w];
        if (u2 == kFree) {
          reached_free = true;
        } else if (layer[u2] == kInf) {
          layer[u2] = layer[u] + 1;
          queue.push_back(u2);
        }
      }
    }
    return reached_free;
  }

  bool dfs(std::uint32_t u) {
    for (std::uint32_t w : adj[u]) {
      std::uint32_t u2 = match_right[w];
      if (u2 == kFree || (layer[u2] == layer[u] + 1 && dfs(u2))) {
        match_left[u] = w;
        match_right[w] = u;
        return true;
      }
    }
    layer[u] = kInf;
    return false;
  }

  std::size_t run() {
    std::size_t size = 0;
    while (bfs())
      for (std::uint32_t u = 0; u < match_left.size(); ++u)
        if (match_left[u] == kFree && dfs(u)) ++size;
    return size;
  }
};

}  // namespace

std::size_t max_bipartite_matching(std::size_t n_left, std::size_t n_right,
                                   const std::vector<std::vector<std::uint32_t>>& adj_left) {
  if (n_left == 0 || n_right == 0) return 0;
  HopcroftKarp hk(n_left, n_right, adj_left);
  return hk.run();
}

}  // namespace curvband
