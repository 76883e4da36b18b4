#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmv/common.hpp"
#include "pmv/degree_stats.hpp"
#include "pmv/edge_list.hpp"

namespace pmv {

enum class PsiKind { hash, contiguous_range };

std::string to_string(PsiKind kind);
PsiKind parse_psi(const std::string& name);

/// Vertex partitioning function psi: dense id -> block index in [0, b).
class VertexPartitioner {
 public:
  VertexPartitioner(PsiKind kind, BlockIndex blocks, std::uint64_t vertex_count);

  BlockIndex operator()(VertexId id) const;

  PsiKind kind() const { return kind_; }
  BlockIndex blocks() const { return blocks_; }

 private:
  PsiKind kind_;
  BlockIndex blocks_;
  std::uint64_t vertex_count_;
};

/// b = W if |v| / budget < W, else ceil(|v| / budget).
BlockIndex choose_block_count(std::uint64_t vertex_count, std::uint32_t workers, std::uint64_t memory_budget);

struct PartitionPlan {
  BlockIndex blocks = 0;  // 0 = choose from workers and memory budget
  PsiKind psi = PsiKind::hash;
  Theta theta = Theta::infinite();
  bool theta_auto = false;  // pick theta with choose_theta over the default grid
  std::uint32_t workers = 1;
  std::uint64_t memory_budget = std::uint64_t{1} << 40;
};

/// Pre-partitioned graph: b x b matrix blocks and b vector blocks, each split
/// into sparse and dense regions. Matrix values are raw edge weights; the
/// engine maps them through the program's MatrixValueRule.
class PartitionedGraph {
 public:
  PartitionPlan plan;  // blocks and theta resolved
  DegreeStats stats;
  std::uint64_t input_records = 0;
  std::uint64_t duplicates_removed = 0;
  std::vector<std::uint64_t> out_degree;  // per dense vertex

  BlockIndex blocks() const { return plan.blocks; }
  Theta theta() const { return plan.theta; }
  std::uint64_t vertex_count() const { return stats.vertex_count; }
  std::uint64_t edge_count() const { return stats.edge_count; }

  const MatrixBlock& block(BlockIndex row, BlockIndex col, Region region) const {
    return matrix_[matrix_slot(row, col, region)];
  }
  MatrixBlock& block(BlockIndex row, BlockIndex col, Region region) {
    return matrix_[matrix_slot(row, col, region)];
  }
  /// Sorted vertex ids of v^(i) in the given region.
  const std::vector<VertexId>& members(BlockIndex index, Region region) const {
    return members_[vector_slot(index, region)];
  }
  std::vector<VertexId>& members(BlockIndex index, Region region) { return members_[vector_slot(index, region)]; }

  const std::vector<MatrixBlock>& all_blocks() const { return matrix_; }

  /// Allocates empty regions for b blocks.
  void reset_layout(BlockIndex blocks);

 private:
  std::size_t matrix_slot(BlockIndex row, BlockIndex col, Region region) const {
    return (static_cast<std::size_t>(row) * plan.blocks + col) * 2 + static_cast<std::size_t>(region);
  }
  std::size_t vector_slot(BlockIndex index, Region region) const {
    return static_cast<std::size_t>(index) * 2 + static_cast<std::size_t>(region);
  }

  std::vector<MatrixBlock> matrix_;
  std::vector<std::vector<VertexId>> members_;
};

/// Builds blocks M^(psi(p), psi(q)) from edges q -> p. Duplicate (p, q) pairs
/// keep the first weight; self-loops are kept. Ids must be dense; a zero
/// vertex_count is inferred as max id + 1. Throws EmptyGraph when there are
/// neither edges nor vertices.
PartitionedGraph partition(const EdgeList& edges, const PartitionPlan& plan);

/// Re-splits every block and vector block by out(q) vs theta.
void split_by_degree(PartitionedGraph& graph, Theta theta);

/// Union of both regions of every block, sorted by (row, col).
std::vector<Triple> merged_triples(const PartitionedGraph& graph);

}  // namespace pmv
