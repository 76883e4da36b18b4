#pragma once

#include <filesystem>
#include <string>

#include "pmv/edge_list.hpp"
#include "pmv/partitioner.hpp"

namespace pmv {

// Block directory layout:
//   plan.json                      b, psi, theta, worker count, memory budget, summary
//   stats.json                     {"inHist": [[d, count], ...], "outHist": [[d, count], ...]}
//   blocks/M_<i>_<j>_<s|d>.bin     matrix triples (u64 row, u64 col, f64 weight)
//   vectors/v_<i>_<s|d>.bin        vector entries (u64 id, f64 value)
//   idmap.bin                      u64 original id per dense id
// Block indices in file names are 0-based.

std::string matrix_block_filename(BlockIndex row, BlockIndex col, Region region);
std::string vector_block_filename(BlockIndex index, Region region);

struct Dataset {
  PartitionedGraph graph;
  IdMap ids;
};

/// Writes the full directory. Vector files hold region membership with a
/// 0.0 placeholder value; programs initialize values at run time.
void save_dataset(const std::filesystem::path& dir, const PartitionedGraph& graph, const IdMap& ids);

/// Reads a directory written by save_dataset. Degrees are recomputed from
/// the blocks and checked against stats.json.
Dataset load_dataset(const std::filesystem::path& dir);

}  // namespace pmv
