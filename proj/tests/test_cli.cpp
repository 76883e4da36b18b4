#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "pmv/json_io.hpp"

namespace fs = std::filesystem;
using pmv::cli::cli_main;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() : dir(fs::temp_directory_path() / ("pmv_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

void write_text(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

const char* kSixVertex = "1\t4\n3\t4\n6\t4\n4\t2\n4\t5\n2\t3\n2\t1\n5\t6\n5\t1\n";

}  // namespace

TEST_CASE("partition, run and report on the six-vertex graph") {
  Sandbox sb;
  write_text(sb.path("g.txt"), kSixVertex);
  auto r = invoke({"partition", "--input", sb.path("g.txt"), "--output", sb.path("ds"), "--blocks", "3", "--psi",
                   "range", "--theta", "2"});
  REQUIRE(r.code == 0);
  r = invoke({"run", "--data", sb.path("ds"), "--algorithm", "pagerank", "--strategy", "hybrid", "--iterations", "8",
              "--report", sb.path("report.json"), "--ledger-csv", sb.path("ledger.csv")});
  REQUIRE(r.code == 0);
  const auto report = pmv::read_json_file(sb.path("report.json"));
  CHECK(report["iterations"] == 8);
  CHECK(report["ledger"]["total"].size() == 8);
  CHECK(report["strategy"] == "hybrid");
  CHECK(fs::exists(sb.dir / "vectors" / "v_0_s.bin"));
  std::ifstream csv(sb.path("ledger.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "iteration,strategy,theta,vectorRead,intermediateWrite,intermediateRead,vectorWrite,total");
}

TEST_CASE("selective on an edgeless dataset records vertical") {
  Sandbox sb;
  write_text(sb.path("g.txt"), "1 2\n");
  REQUIRE(invoke({"partition", "--input", sb.path("g.txt"), "--output", sb.path("ds"), "--blocks", "2"}).code == 0);
  // Drop the only edge so |M| = 0 while the vertices remain.
  for (const auto& e : fs::directory_iterator(sb.dir / "ds" / "blocks")) {
    std::ofstream(e.path(), std::ios::trunc);
  }
  fs::remove(sb.dir / "ds" / "stats.json");
  const auto r = invoke({"run", "--data", sb.path("ds"), "--algorithm", "pagerank", "--strategy", "selective",
                         "--iterations", "2", "--report", sb.path("report.json")});
  REQUIRE(r.code == 0);
  CHECK(pmv::read_json_file(sb.path("report.json"))["strategy"] == "vertical");
}

TEST_CASE("theta sweep includes the horizontal endpoint") {
  Sandbox sb;
  write_text(sb.path("g.txt"), kSixVertex);
  REQUIRE(invoke({"partition", "--input", sb.path("g.txt"), "--output", sb.path("ds"), "--blocks", "3"}).code == 0);
  const auto r = invoke({"estimate", "--data", sb.path("ds"), "--theta-sweep"});
  REQUIRE(r.code == 0);
  const auto j = pmv::Json::parse(r.out);
  const auto& sweep = j["thetaSweep"];
  CHECK(sweep.size() == pmv::default_theta_candidates().size());
  CHECK(sweep[0]["theta"] == 0);
  CHECK(sweep[0]["expectedElements"].get<double>() == j["horizontal"]["expectedElements"].get<double>());
}

TEST_CASE("sources are original ids") {
  Sandbox sb;
  write_text(sb.path("g.txt"), "10 20 2\n20 30 5\n");
  REQUIRE(invoke({"partition", "--input", sb.path("g.txt"), "--output", sb.path("ds"), "--blocks", "2"}).code == 0);
  auto r = invoke({"run", "--data", sb.path("ds"), "--algorithm", "sssp", "--source", "20", "--strategy", "vertical",
                   "--iterations", "5", "--report", sb.path("r.json")});
  REQUIRE(r.code == 0);
  CHECK(pmv::read_json_file(sb.path("r.json"))["converged"] == true);
  r = invoke({"run", "--data", sb.path("ds"), "--algorithm", "sssp", "--source", "99", "--report", sb.path("r.json")});
  CHECK(r.code == 2);
}

TEST_CASE("exit codes") {
  Sandbox sb;
  write_text(sb.path("g.txt"), kSixVertex);
  write_text(sb.path("bad.txt"), "1 2\nx y\n");
  CHECK(invoke({}).code == 1);
  auto r = invoke({"partition", "--input", sb.path("g.txt"), "--output", sb.path("ds"), "--psi", "modulo"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--psi") != std::string::npos);
  r = invoke({"partition", "--input", sb.path("g.txt"), "--output", sb.path("ds"), "--bogus", "1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--bogus") != std::string::npos);
  r = invoke({"partition", "--input", sb.path("bad.txt"), "--output", sb.path("ds")});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(invoke({"stats", "--data", sb.path("missing")}).code == 2);
  r = invoke({"run", "--data", sb.path("missing"), "--strategy", "diagonal"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--strategy") != std::string::npos);
  CHECK(invoke({"run", "--data", sb.path("missing"), "--algorithm", "sssp"}).code == 1);
  CHECK(invoke({"generate", "rmat", "--scale", "4", "--edges", "10", "--a", "0.9", "--output", sb.path("r.txt")})
            .code == 1);
}

TEST_CASE("generate and stats") {
  Sandbox sb;
  auto r = invoke({"generate", "rmat", "--scale", "8", "--edges", "2000", "--seed", "3", "--output", sb.path("r.txt")});
  REQUIRE(r.code == 0);
  REQUIRE(invoke({"partition", "--input", sb.path("r.txt"), "--output", sb.path("ds"), "--blocks", "4", "--theta",
                  "auto"})
              .code == 0);
  r = invoke({"stats", "--data", sb.path("ds")});
  REQUIRE(r.code == 0);
  const auto j = pmv::Json::parse(r.out);
  CHECK(j["blocks"] == 4);
  CHECK(j["edgeCount"].get<std::uint64_t>() <= 2000);
}
