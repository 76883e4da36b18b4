#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "pmv/cost_model.hpp"
#include "pmv/partitioner.hpp"
#include "pmv/program.hpp"
#include "pmv/storage.hpp"

namespace pmv {

struct RunConfig {
  Strategy strategy = Strategy::hybrid;
  std::uint64_t max_iterations = 8;
  /// Replaces the program's convergence rule when set.
  std::optional<ConvergenceRule> convergence;
  /// Execution lanes; the b logical workers are multiplexed onto them.
  std::uint32_t workers = 1;
  /// Hybrid threshold; defaults to the partition's theta.
  std::optional<Theta> theta;
  /// Shuffles worker order and injects yields in every phase.
  std::optional<std::uint64_t> schedule_seed;
  bool record_vectors = false;
  bool log_events = false;
  /// Directory-backed store instead of the in-memory one.
  std::optional<std::filesystem::path> store_dir;

  void validate() const;
};

template <typename T>
struct RunReport {
  std::string program;
  Strategy requested = Strategy::hybrid;
  Strategy executed = Strategy::hybrid;  // horizontal or vertical for selective
  Theta theta;                           // region split used by the run
  std::uint64_t blocks = 0;
  std::uint64_t vertex_count = 0;
  std::uint64_t edge_count = 0;
  std::uint64_t iterations = 0;
  bool converged = false;
  std::vector<IoLedger> ledgers;  // one per executed iteration
  std::vector<std::uint64_t> changed_counts;
  std::vector<double> l1_deltas;
  std::vector<T> final_vector;              // indexed by dense id
  std::vector<std::vector<T>> iterates;     // per iteration, when recorded
  std::vector<StoreEvent> events;           // when logged
  bool barrier_safe = true;

  IoLedger total_ledger() const {
    IoLedger t;
    for (const auto& l : ledgers) t += l;
    return t;
  }
};

/// True when the rule fires after `iteration` (1-based) with the given global
/// changed count and L1 delta.
bool convergence_reached(const ConvergenceRule& rule, std::uint64_t iteration, std::uint64_t changed_count,
                         double l1_delta);

/// Runs iterative multiplication with the configured strategy until the
/// convergence rule fires or max_iterations is reached.
template <typename T>
RunReport<T> run(const PartitionedGraph& graph, const GimvProgram<T>& program, const RunConfig& config);

template <typename T>
RunReport<T> run_horizontal(const PartitionedGraph& graph, const GimvProgram<T>& program, RunConfig config) {
  config.strategy = Strategy::horizontal;
  return run(graph, program, config);
}
template <typename T>
RunReport<T> run_vertical(const PartitionedGraph& graph, const GimvProgram<T>& program, RunConfig config) {
  config.strategy = Strategy::vertical;
  return run(graph, program, config);
}
template <typename T>
RunReport<T> run_selective(const PartitionedGraph& graph, const GimvProgram<T>& program, RunConfig config) {
  config.strategy = Strategy::selective;
  return run(graph, program, config);
}
template <typename T>
RunReport<T> run_hybrid(const PartitionedGraph& graph, const GimvProgram<T>& program, RunConfig config) {
  config.strategy = Strategy::hybrid;
  return run(graph, program, config);
}

}  // namespace pmv
