#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "pmv/degree_stats.hpp"
#include "pmv/edge_list.hpp"

using namespace pmv;

TEST_CASE("edge list parsing") {
  SUBCASE("tab separated") {
    std::istringstream in("1\t4\n3\t4\n6\t4\n");
    const auto g = parse_edge_list(in);
    REQUIRE(g.edges.size() == 3);
    for (const auto& e : g.edges) CHECK(e.dst == 4);
    CHECK(g.edges[1].src == 3);
    CHECK(g.line_count == 3);
  }
  SUBCASE("weights, comments, blank lines and spaces") {
    std::istringstream in("# header\n\n1 2 2.5\n  7\t\t8  \n");
    const auto g = parse_edge_list(in);
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0] == Edge{1, 2, 2.5});
    CHECK(g.edges[1] == Edge{7, 8, 1.0});
  }
  SUBCASE("malformed lines carry their line number") {
    std::istringstream bad("a\tb\n");
    try {
      parse_edge_list(bad);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
    std::istringstream later("1 2\n# c\n3 x\n");
    try {
      parse_edge_list(later);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    std::istringstream nan_weight("1 2 nan\n");
    CHECK_THROWS_AS(parse_edge_list(nan_weight), ParseError);
    std::istringstream negative("-1 2\n");
    CHECK_THROWS_AS(parse_edge_list(negative), ParseError);
    std::istringstream extra("1 2 3 4\n");
    CHECK_THROWS_AS(parse_edge_list(extra), ParseError);
    std::istringstream single("5\n");
    CHECK_THROWS_AS(parse_edge_list(single), ParseError);
  }
  SUBCASE("empty input") {
    std::istringstream in("# nothing\n\n");
    CHECK_THROWS_AS(parse_edge_list(in), EmptyInput);
    CHECK_THROWS_AS(parse_edge_list("/nonexistent/edges.txt"), EmptyInput);
  }
}

TEST_CASE("write and re-parse round trip") {
  const auto g = generate_rmat({8, 3000, 0.57, 0.19, 0.19, 0.05, 5});
  EdgeList weighted = g;
  for (std::size_t k = 0; k < weighted.edges.size(); ++k) weighted.edges[k].weight = 1.0 / (k + 3);
  std::stringstream buf;
  write_edge_list(buf, weighted);
  const auto back = parse_edge_list(buf);
  CHECK(back.edges == weighted.edges);
}

TEST_CASE("densification preserves order and persists") {
  EdgeList g;
  g.edges = {{100, 7, 1.0}, {7, 42, 2.0}, {42, 100, 3.0}};
  const auto d = densify(g);
  CHECK(d.ids.originals() == std::vector<VertexId>{7, 42, 100});
  CHECK(d.edges.vertex_count == 3);
  CHECK(d.edges.edges[0] == Edge{2, 0, 1.0});
  CHECK(d.ids.dense(42) == 1);
  CHECK_THROWS_AS(d.ids.dense(5), InvalidVertex);
  const auto path = std::filesystem::temp_directory_path() / ("pmv_idmap_" + std::to_string(::getpid()));
  d.ids.save(path);
  CHECK(IdMap::load(path).originals() == d.ids.originals());
  std::filesystem::remove(path);
}

TEST_CASE("rmat generation") {
  SUBCASE("exact edge count and determinism") {
    const RmatParams p{10, 10000, 0.57, 0.19, 0.19, 0.05, 42};
    const auto a = generate_rmat(p), b = generate_rmat(p);
    CHECK(a.edges.size() == 10000);
    CHECK(a.vertex_count == 1024);
    CHECK(a.edges == b.edges);
    RmatParams q = p;
    q.seed = 43;
    CHECK(generate_rmat(q).edges != a.edges);
  }
  SUBCASE("out-degrees are heavy tailed") {
    const auto g = generate_rmat({10, 10000, 0.57, 0.19, 0.19, 0.05, 1});
    std::vector<std::uint64_t> out(g.vertex_count, 0);
    for (const auto& e : g.edges) ++out[e.src];
    const double mean = 10000.0 / 1024.0;
    CHECK(*std::max_element(out.begin(), out.end()) > 20.0 * mean);
  }
  SUBCASE("equal probabilities give uniform quadrants") {
    // Pooled chi-square over 10 seeds: 30 degrees of freedom, 1% critical value 50.892.
    double chi2 = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto g = generate_rmat({10, 20000, 0.25, 0.25, 0.25, 0.25, seed});
      double counts[4] = {0, 0, 0, 0};
      for (const auto& e : g.edges) ++counts[(e.src >= 512 ? 2 : 0) + (e.dst >= 512 ? 1 : 0)];
      for (double c : counts) chi2 += (c - 5000.0) * (c - 5000.0) / 5000.0;
    }
    CHECK(chi2 < 50.892);
  }
  SUBCASE("skewed parameters weight the top-left quadrant") {
    const auto g = generate_rmat({10, 50000, 0.57, 0.19, 0.19, 0.05, 3});
    double counts[4] = {0, 0, 0, 0};
    for (const auto& e : g.edges) ++counts[(e.src >= 512 ? 2 : 0) + (e.dst >= 512 ? 1 : 0)];
    CHECK(counts[0] / 50000 == doctest::Approx(0.57).epsilon(0.02));
    CHECK(counts[3] / 50000 == doctest::Approx(0.05).epsilon(0.1));
  }
  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(RmatParams({10, 10, 0.5, 0.5, 0.5, 0.5, 1}).validate(), InvalidArgument);
    CHECK_THROWS_AS(RmatParams({10, 10, 1.2, -0.2, 0.0, 0.0, 1}).validate(), InvalidArgument);
  }
}
