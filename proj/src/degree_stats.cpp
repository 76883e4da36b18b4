#include "pmv/degree_stats.hpp"

#include <algorithm>
#include <utility>

namespace pmv {

double DegreeStats::p_in(std::uint64_t d) const {
  if (vertex_count == 0) return 0.0;
  auto it = in_hist.find(d);
  return it == in_hist.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(vertex_count);
}

std::uint64_t DegreeStats::count_out_below(Theta theta) const {
  if (theta.is_infinite()) return vertex_count;
  std::uint64_t n = 0;
  for (auto it = out_hist.begin(); it != out_hist.end() && it->first < theta.value(); ++it) n += it->second;
  return n;
}

double DegreeStats::p_out_below(Theta theta) const {
  if (theta.is_infinite()) return 1.0;
  if (vertex_count == 0) return 0.0;
  return static_cast<double>(count_out_below(theta)) / static_cast<double>(vertex_count);
}

DegreeStats stats_from_degrees(const std::vector<std::uint64_t>& in_degree,
                               const std::vector<std::uint64_t>& out_degree) {
  DegreeStats s;
  s.vertex_count = in_degree.size();
  for (auto d : in_degree) {
    ++s.in_hist[d];
    s.edge_count += d;
  }
  for (auto d : out_degree) ++s.out_hist[d];
  return s;
}

DegreeStats degree_histograms(const EdgeList& edges) {
  std::uint64_t n = edges.vertex_count;
  if (n == 0) {
    for (const auto& e : edges.edges) n = std::max<std::uint64_t>(n, std::max(e.src, e.dst) + 1);
  }
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(edges.edges.size());
  for (const auto& e : edges.edges) {
    if (e.src >= n || e.dst >= n) throw InvalidVertex("edge endpoint outside the vertex universe");
    pairs.emplace_back(e.src, e.dst);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<std::uint64_t> in_degree(n, 0);
  std::vector<std::uint64_t> out_degree(n, 0);
  for (const auto& [src, dst] : pairs) {
    ++out_degree[src];
    ++in_degree[dst];
  }
  return stats_from_degrees(in_degree, out_degree);
}

}  // namespace pmv
