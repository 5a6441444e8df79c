#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entdyn/errors.hpp"
#include "entdyn/matrix.hpp"

namespace entdyn {

/// Finite undirected simple graph with 0-based vertex indices.
///
/// Fixed-shape constructions use these labelings:
///  - cube: vertices 0..7 are 3-bit binary labels, edges join labels at
///    Hamming distance 1, so vertex v is antipodal to vertex 7-v;
///  - octahedron: vertices 0..5 with k and k+3 forming the three
///    antipodal (non-adjacent) pairs, every other pair joined.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), adj_(n) {
    if (n == 0) throw std::invalid_argument("graph must have at least one vertex");
    std::set<Edge> seen;
    for (auto [i, j] : edges) {
      if (i > j) std::swap(i, j);
      if (i == j) throw std::invalid_argument("self-loop on vertex " + std::to_string(i));
      if (j >= n)
        throw std::invalid_argument("edge endpoint " + std::to_string(j) +
                                    " out of range for " + std::to_string(n) + " vertices");
      if (!seen.insert({i, j}).second)
        throw std::invalid_argument("duplicate edge " + std::to_string(i) + "-" +
                                    std::to_string(j));
    }
    edges_.assign(seen.begin(), seen.end());
    for (auto [i, j] : edges_) {
      adj_[i].push_back(j);
      adj_[j].push_back(i);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  }

  static Graph complete(std::size_t n) {
    require_size(n, 2, "complete");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) e.push_back({i, j});
    return Graph(n, std::move(e));
  }

  static Graph path(std::size_t n) {
    require_size(n, 2, "path");
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return Graph(n, std::move(e));
  }

  static Graph cycle(std::size_t n) {
    require_size(n, 3, "cycle");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
    return Graph(n, std::move(e));
  }

  /// 3-hypercube: binary vertex labels, edges between labels differing in
  /// exactly one bit.
  static Graph cube() {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = i + 1; j < 8; ++j)
        if (popcount3(i ^ j) == 1) e.push_back({i, j});
    return Graph(8, std::move(e));
  }

  /// Octahedron as the complete tripartite graph on the pairs
  /// {0,3}, {1,4}, {2,5}: every edge present except within a pair.
  static Graph octahedron() {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j)
        if (j - i != 3) e.push_back({i, j});
    return Graph(6, std::move(e));
  }

  static Graph two_vertex() { return complete(2); }

  std::size_t vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_.at(v); }
  std::size_t degree(std::size_t v) const { return adj_.at(v).size(); }

  bool adjacent(std::size_t i, std::size_t j) const {
    const auto& nb = adj_.at(i);
    return std::binary_search(nb.begin(), nb.end(), j);
  }

  bool is_complete() const { return edges_.size() == n_ * (n_ - 1) / 2; }

  Matrix adjacency() const {
    Matrix a(n_, n_);
    for (auto [i, j] : edges_) {
      a(i, j) = 1.0;
      a(j, i) = 1.0;
    }
    return a;
  }

  /// L = Deg - A; positive semidefinite with zero row sums.
  Matrix laplacian() const {
    Matrix l(n_, n_);
    for (auto [i, j] : edges_) {
      l(i, i) += 1.0;
      l(j, j) += 1.0;
      l(i, j) -= 1.0;
      l(j, i) -= 1.0;
    }
    return l;
  }

  bool connected() const {
    const auto dist = distances_from(0);
    return std::find(dist.begin(), dist.end(), kUnreached) == dist.end();
  }

  /// BFS distances from src; kUnreached marks the other components.
  std::vector<std::size_t> distances_from(std::size_t src) const {
    std::vector<std::size_t> dist(n_, kUnreached);
    std::queue<std::size_t> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::size_t w : adj_[v]) {
        if (dist[w] == kUnreached) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
      }
    }
    return dist;
  }

  static constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);

 private:
  static void require_size(std::size_t n, std::size_t least, const char* family) {
    if (n < least)
      throw std::invalid_argument(std::string(family) + " graph needs at least " +
                                  std::to_string(least) + " vertices");
  }

  static int popcount3(std::size_t x) {
    int c = 0;
    for (; x; x >>= 1) c += static_cast<int>(x & 1);
    return c;
  }

  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
};

struct PathStats {
  std::size_t distance = 0;
  std::uint64_t count = 0;  // number of distinct shortest paths
};

/// Graph distance and shortest-path multiplicity, by BFS layer counting.
/// Throws DomainError when j is unreachable from i.
inline PathStats shortest_path_stats(const Graph& g, std::size_t i, std::size_t j) {
  const std::size_t n = g.vertex_count();
  if (i >= n || j >= n) throw std::invalid_argument("vertex index out of range");
  if (i == j) return {0, 1};
  const auto dist = g.distances_from(i);
  constexpr auto unreached = static_cast<std::size_t>(-1);
  if (dist[j] == unreached)
    throw DomainError("vertices " + std::to_string(i) + " and " + std::to_string(j) +
                      " are disconnected");
  // Path counts accumulate along BFS layers: count(v) = sum of counts of
  // predecessors one layer closer to the source.
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(),
            [&dist](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  std::vector<std::uint64_t> count(n, 0);
  count[i] = 1;
  for (std::size_t v : order) {
    if (v == i || dist[v] == unreached) continue;
    for (std::size_t w : g.neighbors(v))
      if (dist[w] + 1 == dist[v]) count[v] += count[w];
  }
  return {dist[j], count[j]};
}

/// Vertex pairs grouped by (distance, shortest-path count). On
/// distance-transitive graphs all pairs in a class are equivalent, so one
/// representative stands for the whole class.
struct DistanceClass {
  std::size_t distance;
  std::uint64_t path_count;
  std::pair<std::size_t, std::size_t> representative;  // lexicographically smallest
  std::size_t pair_count;
};

inline std::vector<DistanceClass> distance_classes(const Graph& g) {
  if (!g.connected()) throw DomainError("graph is disconnected");
  std::map<std::pair<std::size_t, std::uint64_t>, DistanceClass> classes;
  const std::size_t n = g.vertex_count();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const PathStats ps = shortest_path_stats(g, i, j);
      auto [it, fresh] = classes.try_emplace(
          {ps.distance, ps.count}, DistanceClass{ps.distance, ps.count, {i, j}, 0});
      it->second.pair_count += 1;
      if (!fresh && std::pair{i, j} < it->second.representative)
        it->second.representative = {i, j};
    }
  }
  std::vector<DistanceClass> out;
  for (auto& [key, cls] : classes) out.push_back(cls);
  return out;
}

/// Canonical graph families. `size` is required for the sized families
/// (complete, meanfield, path, cycle) and rejected for the fixed ones
/// (two, cube, octahedron). "meanfield" is an alias of "complete".
inline Graph build_family(std::string_view family, std::optional<std::size_t> size = {}) {
  const bool sized = family == "complete" || family == "meanfield" || family == "path" ||
                     family == "cycle";
  const bool fixed = family == "two" || family == "cube" || family == "octahedron";
  if (!sized && !fixed)
    throw std::invalid_argument("unknown graph family '" + std::string(family) + "'");
  if (sized && !size)
    throw std::invalid_argument("graph family '" + std::string(family) +
                                "' requires a size");
  if (fixed && size)
    throw std::invalid_argument("graph family '" + std::string(family) +
                                "' has a fixed size");
  if (family == "complete" || family == "meanfield") return Graph::complete(*size);
  if (family == "path") return Graph::path(*size);
  if (family == "cycle") return Graph::cycle(*size);
  if (family == "cube") return Graph::cube();
  if (family == "octahedron") return Graph::octahedron();
  return Graph::two_vertex();
}

/// Edge-file format: first non-comment line `n <N>`, then one `<i> <j>`
/// per line with 0 <= i < j < N. `#` starts a comment line; blank lines
/// and CR line endings are tolerated.
inline Graph load_edge_list(std::istream& in) {
  std::string line;
  bool have_header = false;
  std::size_t n = 0;
  std::vector<Graph::Edge> edges;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag;
      long long count = -1;
      if (!(ls >> tag >> count) || tag != "n" || count < 1)
        throw std::invalid_argument("edge file line " + std::to_string(lineno) +
                                    ": expected header 'n <N>'");
      n = static_cast<std::size_t>(count);
      have_header = true;
      continue;
    }
    long long i = -1, j = -1;
    if (!(ls >> i >> j) || i < 0 || j < 0)
      throw std::invalid_argument("edge file line " + std::to_string(lineno) +
                                  ": expected '<i> <j>'");
    if (i == j)
      throw std::invalid_argument("edge file line " + std::to_string(lineno) +
                                  ": self-loop on vertex " + std::to_string(i));
    if (i > j)
      throw std::invalid_argument("edge file line " + std::to_string(lineno) +
                                  ": endpoints must satisfy i < j");
    if (static_cast<std::size_t>(j) >= n)
      throw std::invalid_argument("edge file line " + std::to_string(lineno) +
                                  ": vertex " + std::to_string(j) + " out of range");
    edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
  }
  if (!have_header) throw std::invalid_argument("edge file: missing 'n <N>' header");
  std::set<Graph::Edge> dedup(edges.begin(), edges.end());
  if (dedup.size() != edges.size())
    throw std::invalid_argument("edge file: duplicate edge");
  return Graph(n, std::move(edges));
}

}  // namespace entdyn
