#include "pmv/dataset.hpp"

#include "pmv/binary_io.hpp"
#include "pmv/json_io.hpp"

namespace pmv {

namespace fs = std::filesystem;
using json = Json;

std::string matrix_block_filename(BlockIndex row, BlockIndex col, Region region) {
  return "M_" + std::to_string(row) + "_" + std::to_string(col) + "_" + region_tag(region) + ".bin";
}

std::string vector_block_filename(BlockIndex index, Region region) {
  return "v_" + std::to_string(index) + "_" + region_tag(region) + ".bin";
}

void save_dataset(const fs::path& dir, const PartitionedGraph& graph, const IdMap& ids) {
  fs::create_directories(dir / "blocks");
  fs::create_directories(dir / "vectors");

  json plan;
  plan["blocks"] = graph.blocks();
  plan["psi"] = {{"kind", to_string(graph.plan.psi)}, {"blocks", graph.blocks()}};
  plan["theta"] = theta_to_json(graph.theta());
  plan["workers"] = graph.plan.workers;
  plan["memoryBudget"] = graph.plan.memory_budget;
  plan["vertexCount"] = graph.vertex_count();
  plan["edgeCount"] = graph.edge_count();
  plan["inputRecords"] = graph.input_records;
  plan["duplicatesRemoved"] = graph.duplicates_removed;
  plan["duplicatePolicy"] = "dedup (dst, src), keep first weight";
  plan["blockIndexBase"] = 0;
  write_json_file(dir / "plan.json", plan);
  write_json_file(dir / "stats.json", stats_to_json(graph.stats));

  for (const auto& m : graph.all_blocks()) {
    binio::write_file(dir / "blocks" / matrix_block_filename(m.row_block, m.col_block, m.region),
                      binio::encode_triples(m.triples));
  }
  for (BlockIndex i = 0; i < graph.blocks(); ++i) {
    for (Region r : kRegions) {
      PartialVector<double> entries;
      entries.reserve(graph.members(i, r).size());
      for (VertexId v : graph.members(i, r)) entries.push_back({v, 0.0});
      binio::write_file(dir / "vectors" / vector_block_filename(i, r), binio::encode_entries(entries));
    }
  }
  ids.save(dir / "idmap.bin");
}

Dataset load_dataset(const fs::path& dir) {
  if (!fs::exists(dir / "plan.json")) throw FormatError(dir.string() + " is not a partition directory (no plan.json)");
  const json plan = read_json_file(dir / "plan.json");

  Dataset ds;
  auto& g = ds.graph;
  try {
    g.plan.psi = parse_psi(plan.at("psi").at("kind").get<std::string>());
    g.plan.theta = theta_from_json(plan.at("theta"));
    g.plan.workers = plan.at("workers").get<std::uint32_t>();
    g.plan.memory_budget = plan.at("memoryBudget").get<std::uint64_t>();
    g.input_records = plan.value("inputRecords", std::uint64_t{0});
    g.duplicates_removed = plan.value("duplicatesRemoved", std::uint64_t{0});
    g.reset_layout(plan.at("blocks").get<BlockIndex>());
  } catch (const json::exception& e) {
    throw FormatError(std::string("plan.json: ") + e.what());
  }
  const std::uint64_t n = plan.at("vertexCount").get<std::uint64_t>();
  const BlockIndex b = g.blocks();

  std::vector<std::uint64_t> in_degree(n, 0);
  g.out_degree.assign(n, 0);
  for (BlockIndex i = 0; i < b; ++i) {
    for (BlockIndex j = 0; j < b; ++j) {
      for (Region r : kRegions) {
        const auto name = matrix_block_filename(i, j, r);
        auto& m = g.block(i, j, r);
        m.triples = binio::decode_triples(binio::read_file(dir / "blocks" / name), name);
        for (const Triple& t : m.triples) {
          if (t.row >= n || t.col >= n) throw FormatError(name + ": vertex id out of range");
          ++in_degree[t.row];
          ++g.out_degree[t.col];
        }
      }
    }
  }
  std::uint64_t members = 0;
  for (BlockIndex i = 0; i < b; ++i) {
    for (Region r : kRegions) {
      const auto name = vector_block_filename(i, r);
      const auto entries = binio::decode_entries<double>(binio::read_file(dir / "vectors" / name), name);
      auto& ids = g.members(i, r);
      ids.reserve(entries.size());
      for (const auto& e : entries) ids.push_back(e.id);
      members += ids.size();
    }
  }
  if (members != n) throw FormatError("vector blocks hold " + std::to_string(members) + " vertices, plan says " +
                                      std::to_string(n));
  g.stats = stats_from_degrees(in_degree, g.out_degree);

  if (fs::exists(dir / "stats.json")) {
    const DegreeStats saved = stats_from_json(read_json_file(dir / "stats.json"));
    if (saved.in_hist != g.stats.in_hist || saved.out_hist != g.stats.out_hist) {
      throw FormatError("stats.json does not match the block files");
    }
  }
  ds.ids = fs::exists(dir / "idmap.bin") ? IdMap::load(dir / "idmap.bin") : identity_id_map(n);
  if (ds.ids.size() != n) throw FormatError("idmap.bin size does not match the vertex count");
  return ds;
}

}  // namespace pmv
