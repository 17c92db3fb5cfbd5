#include "curvband/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>

#include "curvband/errors.hpp"

namespace curvband {

Graph Graph::from_edges(std::size_t vertex_count,
                        std::span<const std::pair<Vertex, Vertex>> edges) {
  Graph g;
  g.adj_.assign(vertex_count, {});
  for (auto [a, b] : edges) {
    if (a >= vertex_count || b >= vertex_count)
      throw GraphError("edge endpoint out of range: (" + std::to_string(a) + ", " +
                       std::to_string(b) + ")");
    if (a == b)
      throw GraphError("graph must be simple: self-loop at vertex " + std::to_string(a));
    g.adj_[a].push_back(b);
    g.adj_[b].push_back(a);
  }
  for (Vertex u = 0; u < vertex_count; ++u) {
    auto& nbrs = g.adj_[u];
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
      throw GraphError("graph must be simple: duplicate edge at vertex " + std::to_string(u));
  }
  g.edge_count_ = edges.size();
  return g;
}

std::size_t Graph::degree(Vertex u) const {
  if (!has_vertex(u)) throw GraphError("vertex out of range: " + std::to_string(u));
  return adj_[u].size();
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& nbrs : adj_) best = std::max(best, nbrs.size());
  return best;
}

std::span<const Vertex> Graph::neighbors(Vertex u) const {
  if (!has_vertex(u)) throw GraphError("vertex out of range: " + std::to_string(u));
  return adj_[u];
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (!has_vertex(u) || !has_vertex(v)) return false;
  const auto& nbrs = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  Vertex target = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(nbrs.begin(), nbrs.end(), target);
}

std::vector<EdgeKey> Graph::edges() const {
  std::vector<EdgeKey> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < adj_.size(); ++u)
    for (Vertex v : adj_[u])
      if (v > u) out.push_back(EdgeKey{u, v});
  return out;
}

namespace {

bool parse_u64(std::string_view token, std::uint64_t& value) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

}  // namespace

LoadResult load_edge_list(std::istream& in, bool dedup) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw_edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv(line);
    // strip trailing CR from windows-style files
    if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
    std::size_t pos = sv.find_first_not_of(" \t");
    if (pos == std::string_view::npos) continue;
    if (sv[pos] == '#') continue;
    sv.remove_prefix(pos);

    std::uint64_t ids[2];
    for (int k = 0; k < 2; ++k) {
      std::size_t end = sv.find_first_of(" \t");
      std::string_view token = sv.substr(0, end);
      if (token.empty() || !parse_u64(token, ids[k]))
        throw ParseError(line_no, "expected non-negative integer vertex id");
      sv.remove_prefix(token.size());
      pos = sv.find_first_not_of(" \t");
      sv.remove_prefix(pos == std::string_view::npos ? sv.size() : pos);
    }
    if (!sv.empty()) throw ParseError(line_no, "trailing content after edge");
    if (ids[0] == ids[1])
      throw ParseError(line_no, "graph must be simple: self-loop at vertex " +
                                    std::to_string(ids[0]));
    raw_edges.emplace_back(ids[0], ids[1]);
  }

  // Remap possibly-sparse input ids to a dense range, sorted by original id.
  std::map<std::uint64_t, Vertex> to_dense;
  for (auto [a, b] : raw_edges) {
    to_dense.emplace(a, 0);
    to_dense.emplace(b, 0);
  }
  LoadResult result;
  result.original_ids.reserve(to_dense.size());
  for (auto& [orig, dense] : to_dense) {
    dense = static_cast<Vertex>(result.original_ids.size());
    result.original_ids.push_back(orig);
  }

  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(raw_edges.size());
  for (auto [a, b] : raw_edges) edges.emplace_back(to_dense.at(a), to_dense.at(b));

  std::vector<std::pair<Vertex, Vertex>> canon(edges);
  for (auto& [a, b] : canon)
    if (a > b) std::swap(a, b);
  std::sort(canon.begin(), canon.end());
  bool has_duplicate = std::adjacent_find(canon.begin(), canon.end()) != canon.end();
  if (has_duplicate) {
    if (!dedup) throw GraphError("graph must be simple: duplicate edge in input");
    auto last = std::unique(canon.begin(), canon.end());
    result.duplicates_dropped = static_cast<std::size_t>(canon.end() - last);
    canon.erase(last, canon.end());
    edges = canon;
  }

  result.graph = Graph::from_edges(result.original_ids.size(), edges);
  return result;
}

void write_edge_list(std::ostream& out, const Graph& g,
                     std::span<const std::string> comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  for (const EdgeKey& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::vector<std::vector<std::int32_t>> truncated_distances(
    const Graph& g, std::span<const Vertex> sources, int max_depth) {
  std::vector<std::vector<std::int32_t>> result;
  result.reserve(sources.size());
  std::vector<Vertex> queue;
  for (Vertex s : sources) {
    if (!g.has_vertex(s)) throw GraphError("vertex out of range: " + std::to_string(s));
    std::vector<std::int32_t> dist(g.vertex_count(), kUnreachable);
    dist[s] = 0;
    queue.assign(1, s);
    std::size_t head = 0;
    while (head < queue.size()) {
      Vertex x = queue[head++];
      if (dist[x] >= max_depth) continue;
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] == kUnreachable) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    result.push_back(std::move(dist));
  }
  return result;
}

}  // namespace curvband
