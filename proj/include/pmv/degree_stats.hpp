#pragma once

#include <cstdint>
#include <map>

#include "pmv/common.hpp"
#include "pmv/edge_list.hpp"

namespace pmv {

/// In-degree histogram and out-degree histogram over the whole id universe
/// (vertices without edges count as degree 0).
struct DegreeStats {
  std::map<std::uint64_t, std::uint64_t> in_hist;   // degree -> vertex count
  std::map<std::uint64_t, std::uint64_t> out_hist;  // degree -> vertex count
  std::uint64_t vertex_count = 0;
  std::uint64_t edge_count = 0;

  /// Fraction of vertices with in-degree exactly d.
  double p_in(std::uint64_t d) const;
  /// Fraction of vertices with out-degree < theta. P_out(0) = 0, P_out(inf) = 1.
  double p_out_below(Theta theta) const;
  /// Number of vertices with out-degree < theta.
  std::uint64_t count_out_below(Theta theta) const;
};

/// Exact histograms of the deduplicated edge set. Ids must be dense
/// (< vertex_count); vertex_count 0 means max id + 1.
DegreeStats degree_histograms(const EdgeList& edges);

DegreeStats stats_from_degrees(const std::vector<std::uint64_t>& in_degree,
                               const std::vector<std::uint64_t>& out_degree);

}  // namespace pmv
