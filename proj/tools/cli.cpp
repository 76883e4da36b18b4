#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>

#include "pmv/binary_io.hpp"
#include "pmv/cost_model.hpp"
#include "pmv/dataset.hpp"
#include "pmv/edge_list.hpp"
#include "pmv/engine.hpp"
#include "pmv/json_io.hpp"
#include "pmv/partitioner.hpp"

namespace pmv::cli {

namespace fs = std::filesystem;

namespace {

/// Bad flag value detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  UsageError(const std::string& flag, const std::string& reason) : std::runtime_error(flag + ": " + reason) {}
};

template <typename Fn>
auto flag_value(const std::string& flag, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    throw UsageError(flag, e.what());
  }
}

struct PartitionArgs {
  std::string input;
  std::string output;
  std::string blocks = "auto";
  std::string theta = "auto";
  std::uint32_t workers = 1;
  std::uint64_t memory_budget = std::uint64_t{1} << 40;
  std::string psi = "hash";
};

struct RunArgs {
  std::string data;
  std::string algorithm = "pagerank";
  std::string strategy = "hybrid";
  std::uint64_t iterations = 8;
  std::optional<double> epsilon;
  std::optional<VertexId> source;
  std::string report = "report.json";
  std::string vectors_out;
  std::string ledger_csv;
  std::uint32_t workers = 1;
  std::string theta;
  std::string init = "uniform";
  std::optional<std::uint64_t> schedule_seed;
};

struct EstimateArgs {
  std::string data;
  bool theta_sweep = false;
};

struct GenerateArgs {
  RmatParams params;
  std::string output;
};

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int do_partition(const PartitionArgs& a, std::ostream& out) {
  PartitionPlan plan;
  plan.workers = a.workers;
  plan.memory_budget = a.memory_budget;
  plan.psi = flag_value("--psi", [&] { return parse_psi(a.psi); });
  if (a.blocks != "auto") {
    plan.blocks = flag_value("--blocks", [&] {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(a.blocks, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != a.blocks.size() || v == 0 || v > 1u << 16) {
        throw InvalidArgument("expected a block count in [1, 65536] or 'auto'");
      }
      return static_cast<BlockIndex>(v);
    });
  }
  if (a.theta == "auto") {
    plan.theta_auto = true;
  } else {
    plan.theta = flag_value("--theta", [&] { return Theta::parse(a.theta); });
  }
  if (plan.workers == 0) throw UsageError("--workers", "must be >= 1");
  if (plan.memory_budget == 0) throw UsageError("--memory-budget", "must be >= 1");

  const EdgeList raw = parse_edge_list(a.input);
  const DenseEdgeList dense = densify(raw);
  const PartitionedGraph g = partition(dense.edges, plan);
  save_dataset(a.output, g, dense.ids);

  Json j;
  j["output"] = a.output;
  j["blocks"] = g.blocks();
  j["psi"] = to_string(g.plan.psi);
  j["theta"] = theta_to_json(g.theta());
  j["thetaSource"] = plan.theta_auto ? "auto" : "given";
  j["vertexCount"] = g.vertex_count();
  j["edgeCount"] = g.edge_count();
  j["inputRecords"] = g.input_records;
  j["duplicatesRemoved"] = g.duplicates_removed;
  print_json(out, j);
  return kExitOk;
}

template <typename T>
void write_vectors(const fs::path& dir, const PartitionedGraph& g, const std::vector<T>& values) {
  fs::create_directories(dir);
  for (BlockIndex i = 0; i < g.blocks(); ++i) {
    for (Region r : kRegions) {
      PartialVector<T> entries;
      entries.reserve(g.members(i, r).size());
      for (VertexId v : g.members(i, r)) entries.push_back({v, values[v]});
      binio::write_file(dir / vector_block_filename(i, r), binio::encode_entries(entries));
    }
  }
}

template <typename T>
int finish_run(const RunArgs& a, const Dataset& ds, const GimvProgram<T>& program, const RunConfig& config,
               std::ostream& out) {
  const RunReport<T> report = run(ds.graph, program, config);
  Json j = report_to_json(report);
  j["dataset"] = a.data;
  if (a.source) j["source"] = *a.source;
  write_json_file(a.report, j);

  const fs::path vectors_dir =
      a.vectors_out.empty() ? fs::absolute(a.report).parent_path() / "vectors" : fs::path(a.vectors_out);
  write_vectors(vectors_dir, ds.graph, report.final_vector);
  if (!a.ledger_csv.empty()) {
    std::ofstream csv(a.ledger_csv);
    if (!csv) throw FormatError("cannot write " + a.ledger_csv);
    write_ledger_csv(csv, report.ledgers, report.executed, report.theta);
  }

  Json summary;
  summary["report"] = a.report;
  summary["strategy"] = to_string(report.executed);
  summary["iterations"] = report.iterations;
  summary["converged"] = report.converged;
  summary["total"] = report.total_ledger().total();
  print_json(out, summary);
  return kExitOk;
}

int do_run(const RunArgs& a, std::ostream& out) {
  RunConfig config;
  config.strategy = flag_value("--strategy", [&] { return parse_strategy(a.strategy); });
  config.max_iterations = a.iterations;
  config.workers = a.workers;
  config.schedule_seed = a.schedule_seed;
  if (!a.theta.empty()) config.theta = flag_value("--theta", [&] { return Theta::parse(a.theta); });
  if (a.iterations == 0) throw UsageError("--iterations", "must be >= 1");
  if (a.workers == 0) throw UsageError("--workers", "must be >= 1");
  if (a.epsilon && !(*a.epsilon >= 0.0)) throw UsageError("--epsilon", "must be >= 0");
  PagerankInit init = PagerankInit::inverse_vertex_count;
  if (a.init == "one") {
    init = PagerankInit::one;
  } else if (a.init != "uniform") {
    throw UsageError("--init", "expected 'uniform' or 'one'");
  }
  const bool needs_source = a.algorithm == "rwr" || a.algorithm == "sssp";
  if (needs_source && !a.source) throw UsageError("--source", "required for " + a.algorithm);

  const Dataset ds = load_dataset(a.data);
  const VertexId source = a.source ? ds.ids.dense(*a.source) : 0;
  const AnyProgram any = flag_value("--algorithm", [&] {
    return catalog_program(a.algorithm, source, a.epsilon.value_or(0.0), init);
  });
  if (a.epsilon && (a.algorithm == "sssp" || a.algorithm == "cc")) {
    config.convergence = ConvergenceRule::no_element_changed();
  }
  return std::visit([&](const auto& program) { return finish_run(a, ds, program, config, out); }, any);
}

int do_estimate(const EstimateArgs& a, std::ostream& out) {
  const Dataset ds = load_dataset(a.data);
  const auto& g = ds.graph;
  const std::uint64_t b = g.blocks(), n = g.vertex_count(), m = g.edge_count();

  Json j;
  j["blocks"] = b;
  j["vertexCount"] = n;
  j["edgeCount"] = m;
  j["emptyRowProbability"] = empty_row_probability(b, n, m);
  j["horizontal"] = cost_to_json(cost_horizontal(b, n));
  j["vertical"] = cost_to_json(cost_vertical(b, n, m));
  j["selective"] = to_string(select_strategy(b, n, m));
  j["hybrid"] = cost_to_json(cost_hybrid(b, n, g.theta(), g.stats));
  const ThetaChoice best = choose_theta(b, n, g.stats);
  j["bestTheta"] = theta_to_json(best.theta);
  j["bestHybrid"] = cost_to_json(best.cost);
  if (a.theta_sweep) {
    Json rows = Json::array();
    for (Theta t : default_theta_candidates()) {
      const CostEstimate c = cost_hybrid(b, n, t, g.stats);
      Json row;
      row["theta"] = theta_to_json(t);
      row["pOut"] = g.stats.p_out_below(t);
      row["expectedElements"] = c.expected_elements();
      rows.push_back(row);
    }
    j["thetaSweep"] = rows;
  }
  print_json(out, j);
  return kExitOk;
}

int do_generate(const GenerateArgs& a, std::ostream& out) {
  flag_value("--a/--b/--c/--d", [&] {
    a.params.validate();
    return 0;
  });
  if (a.params.scale == 0 || a.params.scale > 40) throw UsageError("--scale", "expected a value in [1, 40]");
  const EdgeList edges = generate_rmat(a.params);
  write_edge_list(a.output, edges);
  Json j;
  j["output"] = a.output;
  j["vertexCount"] = edges.vertex_count;
  j["edgeCount"] = edges.edges.size();
  j["duplicates"] = "kept; removed at partition time";
  j["seed"] = a.params.seed;
  print_json(out, j);
  return kExitOk;
}

int do_stats(const std::string& data, std::ostream& out) {
  const Dataset ds = load_dataset(data);
  const auto& g = ds.graph;
  Json j;
  j["blocks"] = g.blocks();
  j["psi"] = to_string(g.plan.psi);
  j["theta"] = theta_to_json(g.theta());
  j["vertexCount"] = g.vertex_count();
  j["edgeCount"] = g.edge_count();
  j["denseVertices"] = g.vertex_count() - g.stats.count_out_below(g.theta());
  j["pOut"] = g.stats.p_out_below(g.theta());
  std::uint64_t max_in = g.stats.in_hist.empty() ? 0 : g.stats.in_hist.rbegin()->first;
  std::uint64_t max_out = g.stats.out_hist.empty() ? 0 : g.stats.out_hist.rbegin()->first;
  j["maxInDegree"] = max_in;
  j["maxOutDegree"] = max_out;
  Json blocks = Json::array();
  for (const auto& m : g.all_blocks()) {
    if (m.triples.empty()) continue;
    blocks.push_back({{"row", m.row_block}, {"col", m.col_block}, {"region", std::string(1, region_tag(m.region))},
                      {"elements", m.triples.size()}});
  }
  j["nonEmptyBlocks"] = blocks;
  j["degrees"] = stats_to_json(g.stats);
  print_json(out, j);
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partitioned iterative matrix-vector multiplication", "pmv"};
  app.require_subcommand(1);

  PartitionArgs pa;
  auto* part = app.add_subcommand("partition", "Partition an edge list into a block directory");
  part->add_option("--input", pa.input, "Edge list (src dst [weight])")->required();
  part->add_option("--output", pa.output, "Block directory")->required();
  part->add_option("--blocks", pa.blocks, "Block count or 'auto'");
  part->add_option("--theta", pa.theta, "Out-degree threshold: N, 'inf' or 'auto'");
  part->add_option("--workers", pa.workers, "Worker count used by --blocks auto");
  part->add_option("--memory-budget", pa.memory_budget, "Per-worker vertex budget used by --blocks auto");
  part->add_option("--psi", pa.psi, "Vertex partitioning: hash or range");

  RunArgs ra;
  auto* runc = app.add_subcommand("run", "Run an algorithm over a block directory");
  runc->add_option("--data", ra.data, "Block directory")->required();
  runc->add_option("--algorithm", ra.algorithm, "pagerank, rwr, sssp or cc");
  runc->add_option("--strategy", ra.strategy, "horizontal, vertical, selective or hybrid");
  runc->add_option("--iterations", ra.iterations, "Maximum iterations");
  runc->add_option("--epsilon", ra.epsilon, "L1 convergence threshold (pagerank, rwr)");
  runc->add_option("--source", ra.source, "Source vertex, original id (rwr, sssp)");
  runc->add_option("--report", ra.report, "Report JSON path");
  runc->add_option("--vectors-out", ra.vectors_out, "Final vector directory (default: vectors/ next to the report)");
  runc->add_option("--ledger-csv", ra.ledger_csv, "Per-iteration ledger CSV path");
  runc->add_option("--workers", ra.workers, "Execution lanes");
  runc->add_option("--theta", ra.theta, "Hybrid threshold override: N or 'inf'");
  runc->add_option("--init", ra.init, "Initial vector for pagerank/rwr: uniform (1/|v|) or one");
  runc->add_option("--schedule-seed", ra.schedule_seed, "Randomize worker scheduling with this seed");

  EstimateArgs ea;
  auto* est = app.add_subcommand("estimate", "Expected per-iteration I/O of each strategy");
  est->add_option("--data", ea.data, "Block directory")->required();
  est->add_flag("--theta-sweep", ea.theta_sweep, "Add a hybrid cost row per theta candidate");

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "Generate a synthetic graph");
  gen->require_subcommand(1);
  auto* rmat = gen->add_subcommand(
      "rmat", "RMAT edge list; --edges is the number of draws, duplicates are kept and removed at partition time");
  rmat->add_option("--scale", ga.params.scale, "log2 of the vertex count")->required();
  rmat->add_option("--edges", ga.params.edge_count, "Number of edges drawn")->required();
  rmat->add_option("--a", ga.params.a, "Quadrant probability a");
  rmat->add_option("--b", ga.params.b, "Quadrant probability b");
  rmat->add_option("--c", ga.params.c, "Quadrant probability c");
  rmat->add_option("--d", ga.params.d, "Quadrant probability d");
  rmat->add_option("--seed", ga.params.seed, "Random seed");
  rmat->add_option("--output", ga.output, "Edge list path")->required();

  std::string stats_data;
  auto* stats = app.add_subcommand("stats", "Summarize a block directory");
  stats->add_option("--data", stats_data, "Block directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*part) return do_partition(pa, out);
    if (*runc) return do_run(ra, out);
    if (*est) return do_estimate(ea, out);
    if (*rmat) return do_generate(ga, out);
    if (*stats) return do_stats(stats_data, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace pmv::cli
