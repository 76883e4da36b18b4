#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmv/cost_model.hpp"
#include "pmv/degree_stats.hpp"
#include "pmv/engine.hpp"
#include "pmv/storage.hpp"

namespace pmv {

using Json = nlohmann::ordered_json;

/// Integer, or the string "inf".
Json theta_to_json(Theta theta);
Theta theta_from_json(const Json& j);

/// {"inHist": [[d, count], ...], "outHist": [[d, count], ...], ...}
Json stats_to_json(const DegreeStats& stats);
DegreeStats stats_from_json(const Json& j);

Json ledger_to_json(const IoLedger& ledger);
/// Per-iteration arrays of the four counters plus totals.
Json ledgers_to_json(const std::vector<IoLedger>& ledgers);
Json cost_to_json(const CostEstimate& cost);

/// iteration,strategy,theta,vectorRead,intermediateWrite,intermediateRead,vectorWrite,total
void write_ledger_csv(std::ostream& out, const std::vector<IoLedger>& ledgers, Strategy strategy, Theta theta);

template <typename T>
Json report_to_json(const RunReport<T>& report) {
  Json j;
  j["program"] = report.program;
  j["requestedStrategy"] = to_string(report.requested);
  j["strategy"] = to_string(report.executed);
  j["theta"] = theta_to_json(report.theta);
  j["blocks"] = report.blocks;
  j["vertexCount"] = report.vertex_count;
  j["edgeCount"] = report.edge_count;
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  j["changedCounts"] = report.changed_counts;
  j["l1Deltas"] = report.l1_deltas;
  j["ledger"] = ledgers_to_json(report.ledgers);
  return j;
}

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace pmv
