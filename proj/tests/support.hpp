#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pmv/edge_list.hpp"
#include "pmv/engine.hpp"
#include "pmv/partitioner.hpp"

namespace pmv::testing {

// Six-vertex example over original ids 1..6, stored densely as id - 1.
// In-neighbors of vertex 4 are 1, 3 and 6.
inline EdgeList six_vertex_graph() {
  const std::pair<VertexId, VertexId> edges[] = {{1, 4}, {3, 4}, {6, 4}, {4, 2}, {4, 5},
                                                 {2, 3}, {2, 1}, {5, 6}, {5, 1}};
  EdgeList list;
  for (auto [s, d] : edges) list.edges.push_back({s - 1, d - 1, 1.0});
  list.vertex_count = 6;
  return list;
}

inline PartitionPlan plan_of(BlockIndex b, Theta theta = Theta::infinite(), PsiKind psi = PsiKind::hash) {
  PartitionPlan p;
  p.blocks = b;
  p.theta = theta;
  p.psi = psi;
  return p;
}

/// Uniform random edges (duplicates and self-loops possible). Integer weights
/// in [1, 9] keep shortest-path sums exact.
inline EdgeList random_graph(std::uint64_t n, std::uint64_t m, std::uint64_t seed, bool weighted = false) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, n - 1);
  std::uniform_int_distribution<int> w(1, 9);
  EdgeList list;
  list.vertex_count = n;
  list.edges.reserve(m);
  for (std::uint64_t k = 0; k < m; ++k) {
    const VertexId s = pick(rng), d = pick(rng);
    list.edges.push_back({s, d, weighted ? static_cast<double>(w(rng)) : 1.0});
  }
  return list;
}

/// G(n, p) over ordered pairs (self-loops included) by geometric skipping.
inline EdgeList gnp_graph(std::uint64_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EdgeList list;
  list.vertex_count = n;
  if (p <= 0.0) return list;
  const std::uint64_t cells = n * n;
  if (p >= 1.0) {
    for (std::uint64_t c = 0; c < cells; ++c) list.edges.push_back({c / n, c % n, 1.0});
    return list;
  }
  std::geometric_distribution<std::uint64_t> skip(p);
  for (std::uint64_t c = skip(rng); c < cells; c += 1 + skip(rng)) list.edges.push_back({c / n, c % n, 1.0});
  return list;
}

inline EdgeList symmetrized(const EdgeList& in) {
  EdgeList out = in;
  for (const Edge& e : in.edges) out.edges.push_back({e.dst, e.src, e.weight});
  return out;
}

inline EdgeList path_graph(std::uint64_t n, bool both_ways) {
  EdgeList list;
  list.vertex_count = n;
  for (VertexId i = 0; i + 1 < n; ++i) {
    list.edges.push_back({i, i + 1, 1.0});
    if (both_ways) list.edges.push_back({i + 1, i, 1.0});
  }
  return list;
}

/// Smallest vertex id of each weakly connected component.
inline std::vector<std::int64_t> union_find_labels(const EdgeList& g) {
  std::vector<VertexId> parent(g.vertex_count);
  std::iota(parent.begin(), parent.end(), VertexId{0});
  auto find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : g.edges) {
    const VertexId a = find(e.src), b = find(e.dst);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::int64_t> out(g.vertex_count);
  for (VertexId v = 0; v < g.vertex_count; ++v) out[v] = static_cast<std::int64_t>(find(v));
  return out;
}

/// Dijkstra over the first weight of each (src, dst) pair.
inline std::vector<double> dijkstra(const EdgeList& g, VertexId source) {
  std::vector<std::vector<std::pair<VertexId, double>>> adj(g.vertex_count);
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const Edge& e : g.edges) {
    if (seen.emplace(e.src, e.dst).second) adj[e.src].push_back({e.dst, e.weight});
  }
  std::vector<double> dist(g.vertex_count, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[source] = 0.0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        pq.push({dist[v], v});
      }
    }
  }
  return dist;
}

inline bool close_relative(double a, double b, double rel) {
  if (a == b) return true;
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

template <typename T>
bool vectors_match(const std::vector<T>& a, const std::vector<T>& b, double rel) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if constexpr (std::is_floating_point_v<T>) {
      if (rel == 0.0 ? a[i] != b[i] : !close_relative(a[i], b[i], rel)) return false;
    } else {
      if (a[i] != b[i]) return false;
    }
  }
  return true;
}

}  // namespace pmv::testing
