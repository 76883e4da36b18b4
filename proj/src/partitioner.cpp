#include "pmv/partitioner.hpp"

#include <algorithm>

#include "pmv/cost_model.hpp"

namespace pmv {

std::string to_string(PsiKind kind) { return kind == PsiKind::hash ? "hash" : "range"; }

PsiKind parse_psi(const std::string& name) {
  if (name == "hash") return PsiKind::hash;
  if (name == "range" || name == "contiguousRange") return PsiKind::contiguous_range;
  throw InvalidArgument("unknown partitioning function '" + name + "'");
}

VertexPartitioner::VertexPartitioner(PsiKind kind, BlockIndex blocks, std::uint64_t vertex_count)
    : kind_(kind), blocks_(blocks), vertex_count_(vertex_count) {
  if (blocks == 0) throw InvalidArgument("block count must be >= 1");
}

BlockIndex VertexPartitioner::operator()(VertexId id) const {
  if (kind_ == PsiKind::hash) {
    const std::uint64_t h = id * 0x9E3779B97F4A7C15ull;
    return static_cast<BlockIndex>((h >> 32) % blocks_);
  }
  if (vertex_count_ == 0) return 0;
  const auto wide = static_cast<unsigned __int128>(id) * blocks_ / vertex_count_;
  return static_cast<BlockIndex>(std::min<unsigned __int128>(wide, blocks_ - 1));
}

BlockIndex choose_block_count(std::uint64_t vertex_count, std::uint32_t workers, std::uint64_t memory_budget) {
  if (workers == 0) throw InvalidArgument("worker count must be >= 1");
  if (memory_budget == 0) throw InvalidArgument("memory budget must be >= 1");
  // |v| / M < W  <=>  |v| < W * M
  if (static_cast<unsigned __int128>(vertex_count) < static_cast<unsigned __int128>(workers) * memory_budget) {
    return workers;
  }
  return static_cast<BlockIndex>((vertex_count + memory_budget - 1) / memory_budget);
}

void PartitionedGraph::reset_layout(BlockIndex blocks) {
  plan.blocks = blocks;
  matrix_.assign(static_cast<std::size_t>(blocks) * blocks * 2, MatrixBlock{});
  for (BlockIndex i = 0; i < blocks; ++i) {
    for (BlockIndex j = 0; j < blocks; ++j) {
      for (Region r : kRegions) {
        auto& m = block(i, j, r);
        m.row_block = i;
        m.col_block = j;
        m.region = r;
      }
    }
  }
  members_.assign(static_cast<std::size_t>(blocks) * 2, {});
}

namespace {

// Fills blocks and member lists from sorted, deduplicated triples.
void distribute(PartitionedGraph& g, const std::vector<Triple>& triples) {
  const VertexPartitioner psi(g.plan.psi, g.plan.blocks, g.vertex_count());
  const Theta theta = g.plan.theta;
  for (const Triple& t : triples) {
    g.block(psi(t.row), psi(t.col), theta.region_of(g.out_degree[t.col])).triples.push_back(t);
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    g.members(psi(v), theta.region_of(g.out_degree[v])).push_back(v);
  }
}

}  // namespace

PartitionedGraph partition(const EdgeList& edges, const PartitionPlan& plan) {
  std::uint64_t n = edges.vertex_count;
  if (n == 0) {
    for (const auto& e : edges.edges) n = std::max<std::uint64_t>(n, std::max(e.src, e.dst) + 1);
  }
  if (n == 0) throw EmptyGraph("graph has no edges and no vertices");

  std::vector<Triple> triples;
  triples.reserve(edges.edges.size());
  for (const auto& e : edges.edges) {
    if (e.src >= n || e.dst >= n) {
      throw InvalidVertex("edge " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
                          " outside the vertex universe of size " + std::to_string(n));
    }
    triples.push_back({e.dst, e.src, e.weight});
  }
  std::stable_sort(triples.begin(), triples.end(),
                   [](const Triple& a, const Triple& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  const auto last = std::unique(triples.begin(), triples.end(),
                                [](const Triple& a, const Triple& b) { return a.row == b.row && a.col == b.col; });

  PartitionedGraph g;
  g.input_records = edges.edges.size();
  g.duplicates_removed = static_cast<std::uint64_t>(triples.end() - last);
  triples.erase(last, triples.end());

  std::vector<std::uint64_t> in_degree(n, 0);
  g.out_degree.assign(n, 0);
  for (const Triple& t : triples) {
    ++in_degree[t.row];
    ++g.out_degree[t.col];
  }
  g.stats = stats_from_degrees(in_degree, g.out_degree);

  g.plan = plan;
  const BlockIndex b = plan.blocks != 0 ? plan.blocks : choose_block_count(n, plan.workers, plan.memory_budget);
  if (plan.theta_auto) {
    g.plan.theta = choose_theta(b, n, g.stats).theta;
    g.plan.theta_auto = false;
  }
  g.reset_layout(b);
  distribute(g, triples);
  return g;
}

std::vector<Triple> merged_triples(const PartitionedGraph& graph) {
  std::vector<Triple> all;
  all.reserve(graph.edge_count());
  for (const auto& m : graph.all_blocks()) all.insert(all.end(), m.triples.begin(), m.triples.end());
  std::sort(all.begin(), all.end(),
            [](const Triple& a, const Triple& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  return all;
}

void split_by_degree(PartitionedGraph& graph, Theta theta) {
  const BlockIndex b = graph.blocks();
  for (BlockIndex i = 0; i < b; ++i) {
    for (BlockIndex j = 0; j < b; ++j) {
      auto& s = graph.block(i, j, Region::sparse).triples;
      auto& d = graph.block(i, j, Region::dense).triples;
      std::vector<Triple> all;
      all.reserve(s.size() + d.size());
      std::merge(s.begin(), s.end(), d.begin(), d.end(), std::back_inserter(all),
                 [](const Triple& x, const Triple& y) { return x.row != y.row ? x.row < y.row : x.col < y.col; });
      s.clear();
      d.clear();
      for (const Triple& t : all) (theta.is_dense(graph.out_degree[t.col]) ? d : s).push_back(t);
    }
    auto& vs = graph.members(i, Region::sparse);
    auto& vd = graph.members(i, Region::dense);
    std::vector<VertexId> all;
    all.reserve(vs.size() + vd.size());
    std::merge(vs.begin(), vs.end(), vd.begin(), vd.end(), std::back_inserter(all));
    vs.clear();
    vd.clear();
    for (VertexId v : all) (theta.is_dense(graph.out_degree[v]) ? vd : vs).push_back(v);
  }
  graph.plan.theta = theta;
  graph.plan.theta_auto = false;
}

}  // namespace pmv
