#include <doctest.h>

#include <filesystem>
#include <set>
#include <unistd.h>

#include "pmv/binary_io.hpp"
#include "pmv/dataset.hpp"
#include "pmv/degree_stats.hpp"
#include "support.hpp"

using namespace pmv;
using pmv::testing::six_vertex_graph;
using pmv::testing::plan_of;

namespace fs = std::filesystem;

namespace {

std::vector<Triple> dedup_oracle(const EdgeList& g) {
  std::set<std::pair<VertexId, VertexId>> seen;
  std::vector<Triple> out;
  for (const Edge& e : g.edges) {
    if (seen.emplace(e.dst, e.src).second) out.push_back({e.dst, e.src, e.weight});
  }
  std::sort(out.begin(), out.end(), [](const Triple& a, const Triple& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
  return out;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pmv_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("block count rule") {
  CHECK(choose_block_count(100, 4, 50) == 4);
  CHECK(choose_block_count(1000, 4, 100) == 10);
  CHECK(choose_block_count(1, 1, 1) == 1);
  CHECK(choose_block_count(1001, 4, 100) == 11);
  CHECK_THROWS_AS(choose_block_count(10, 0, 1), InvalidArgument);
}

TEST_CASE("six-vertex example block assignment under range partitioning") {
  const auto g = partition(six_vertex_graph(), plan_of(3, Theta::infinite(), PsiKind::contiguous_range));
  // Blocks {1,2}, {3,4}, {5,6} in original ids; 0-based indices here.
  CHECK(g.members(0, Region::sparse) == std::vector<VertexId>{0, 1});
  CHECK(g.members(1, Region::sparse) == std::vector<VertexId>{2, 3});
  CHECK(g.members(2, Region::sparse) == std::vector<VertexId>{4, 5});
  // Edge 1 -> 4 is m_{4,1}, stored in M^(2,1) (1-based), i.e. block (1, 0).
  const auto& m10 = g.block(1, 0, Region::sparse).triples;
  CHECK(std::find_if(m10.begin(), m10.end(), [](const Triple& t) { return t.row == 3 && t.col == 0; }) != m10.end());
  // Vertex 4's in-edges come from blocks 0, 1 and 2.
  for (BlockIndex j = 0; j < 3; ++j) {
    const auto& t = g.block(1, j, Region::sparse).triples;
    CHECK(std::count_if(t.begin(), t.end(), [](const Triple& x) { return x.row == 3; }) == 1);
  }
}

TEST_CASE("b = 1 keeps everything in one block") {
  const auto input = pmv::testing::random_graph(100, 400, 5);
  const auto g = partition(input, plan_of(1));
  CHECK(g.block(0, 0, Region::sparse).triples.size() == dedup_oracle(input).size());
}

TEST_CASE("partition round trip and region conservation") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto input = pmv::testing::random_graph(300, 2000, seed, true);
    for (BlockIndex b : {1u, 3u, 8u}) {
      for (Theta theta : {Theta(0), Theta(4), Theta::infinite()}) {
        const auto g = partition(input, plan_of(b, theta));
        CHECK(merged_triples(g) == dedup_oracle(input));
        std::uint64_t members = 0;
        for (BlockIndex i = 0; i < b; ++i) {
          for (Region r : kRegions) {
            for (VertexId v : g.members(i, r)) {
              CHECK(VertexPartitioner(PsiKind::hash, b, 300)(v) == i);
              CHECK(theta.region_of(g.out_degree[v]) == r);
            }
            members += g.members(i, r).size();
          }
        }
        CHECK(members == 300);
        for (const auto& m : g.all_blocks()) {
          for (const Triple& t : m.triples) {
            CHECK(theta.region_of(g.out_degree[t.col]) == m.region);
          }
        }
      }
    }
  }
}

TEST_CASE("split_by_degree endpoints and the out-star") {
  EdgeList star;
  star.vertex_count = 6;
  for (VertexId t = 1; t <= 5; ++t) star.edges.push_back({0, t, 1.0});
  auto g = partition(star, plan_of(2));
  split_by_degree(g, Theta(5));
  std::set<VertexId> dense;
  for (BlockIndex i = 0; i < 2; ++i) {
    for (VertexId v : g.members(i, Region::dense)) dense.insert(v);
  }
  CHECK(dense == std::set<VertexId>{0});
  split_by_degree(g, Theta(0));
  for (BlockIndex i = 0; i < 2; ++i) CHECK(g.members(i, Region::sparse).empty());
  split_by_degree(g, Theta::infinite());
  for (BlockIndex i = 0; i < 2; ++i) CHECK(g.members(i, Region::dense).empty());
}

TEST_CASE("degree histograms") {
  EdgeList star;
  star.vertex_count = 6;
  for (VertexId t = 1; t <= 5; ++t) star.edges.push_back({0, t, 1.0});
  star.edges.push_back({0, 1, 1.0});  // duplicate
  const auto s = degree_histograms(star);
  CHECK(s.p_in(1) == doctest::Approx(5.0 / 6));
  CHECK(s.p_in(0) == doctest::Approx(1.0 / 6));
  CHECK(s.p_out_below(Theta(1)) == doctest::Approx(5.0 / 6));
  CHECK(s.p_out_below(Theta(0)) == 0.0);
  CHECK(s.p_out_below(Theta::infinite()) == 1.0);
  CHECK(s.edge_count == 5);
}

TEST_CASE("partition validation") {
  EdgeList none;
  CHECK_THROWS_AS(partition(none, plan_of(2)), EmptyGraph);
  EdgeList bad;
  bad.vertex_count = 2;
  bad.edges = {{0, 5, 1.0}};
  CHECK_THROWS_AS(partition(bad, plan_of(2)), InvalidVertex);
  EdgeList isolated;
  isolated.vertex_count = 4;
  const auto g = partition(isolated, plan_of(2));
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("hash partitioning is deterministic and balanced") {
  const VertexPartitioner psi(PsiKind::hash, 8, 80000);
  std::vector<int> counts(8, 0);
  for (VertexId v = 0; v < 80000; ++v) {
    CHECK(psi(v) == psi(v));
    ++counts[psi(v)];
  }
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("dataset directory round trip is byte-identical") {
  const auto input = pmv::testing::random_graph(200, 1500, 9, true);
  const auto a = scratch_dir("ds_a"), b = scratch_dir("ds_b");
  const auto g1 = partition(input, plan_of(4, Theta(3)));
  const auto g2 = partition(input, plan_of(4, Theta(3)));
  save_dataset(a, g1, identity_id_map(200));
  save_dataset(b, g2, identity_id_map(200));
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), a);
    CHECK(binio::read_file(entry.path()) == binio::read_file(b / rel));
  }
  const auto loaded = load_dataset(a);
  CHECK(merged_triples(loaded.graph) == merged_triples(g1));
  CHECK(loaded.graph.theta() == Theta(3));
  CHECK(loaded.graph.stats.in_hist == g1.stats.in_hist);
  CHECK(loaded.graph.out_degree == g1.out_degree);
  for (BlockIndex i = 0; i < 4; ++i) {
    for (Region r : kRegions) CHECK(loaded.graph.members(i, r) == g1.members(i, r));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("corrupt dataset files are rejected") {
  const auto dir = scratch_dir("ds_bad");
  save_dataset(dir, partition(six_vertex_graph(), plan_of(2)), identity_id_map(6));
  binio::write_file(dir / "blocks" / matrix_block_filename(0, 0, Region::sparse), std::string(5, 'x'));
  CHECK_THROWS_AS(load_dataset(dir), FormatError);
  CHECK_THROWS_AS(load_dataset(dir / "missing"), FormatError);
  fs::remove_all(dir);
}
