#include "pmv/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace pmv {

void RunConfig::validate() const {
  if (max_iterations < 1) throw InvalidArgument("max iterations must be >= 1");
  if (workers < 1) throw InvalidArgument("worker count must be >= 1");
  if (convergence && convergence->epsilon < 0.0) throw InvalidArgument("epsilon must be >= 0");
}

bool convergence_reached(const ConvergenceRule& rule, std::uint64_t iteration, std::uint64_t changed_count,
                         double l1_delta) {
  switch (rule.kind) {
    case ConvergenceRule::Kind::l1_norm_below: return l1_delta < rule.epsilon;
    case ConvergenceRule::Kind::no_element_changed: return changed_count == 0;
    case ConvergenceRule::Kind::fixed_iterations: return iteration >= rule.iterations;
  }
  return false;
}

namespace {

/// Runs fn(worker) for every logical worker on up to `lanes` threads. Returning
/// from this call is the barrier.
class LaneScheduler {
 public:
  LaneScheduler(std::uint32_t lanes, std::optional<std::uint64_t> seed) : lanes_(lanes) {
    if (seed) rng_.emplace(*seed);
  }

  template <typename Fn>
  void run_phase(BlockIndex workers, Fn&& fn) {
    std::vector<BlockIndex> order(workers);
    for (BlockIndex j = 0; j < workers; ++j) order[j] = j;
    std::vector<unsigned> yields(workers, 0);
    if (rng_) {
      std::shuffle(order.begin(), order.end(), *rng_);
      std::uniform_int_distribution<unsigned> dist(0, 3);
      for (auto& y : yields) y = dist(*rng_);
    }

    const std::uint32_t threads = std::min<std::uint32_t>(lanes_, workers);
    if (threads <= 1) {
      for (BlockIndex k = 0; k < workers; ++k) fn(order[k]);
      return;
    }

    std::atomic<BlockIndex> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto lane = [&] {
      for (BlockIndex k = next++; k < workers; k = next++) {
        for (unsigned y = 0; y < yields[k]; ++y) std::this_thread::yield();
        try {
          fn(order[k]);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (std::uint32_t t = 0; t < threads; ++t) pool.emplace_back(lane);
    }
    if (failure) std::rethrow_exception(failure);
  }

 private:
  std::uint32_t lanes_;
  std::optional<std::mt19937_64> rng_;
};

template <typename T>
struct WorkerState {
  std::shared_ptr<const PartialVector<T>> own_sparse;
  std::shared_ptr<const PartialVector<T>> own_dense;
  PartialVector<T> diagonal;
  std::uint64_t changed = 0;
  double l1 = 0.0;
};

template <typename T>
class Execution {
 public:
  Execution(const PartitionedGraph& graph, const GimvProgram<T>& program, const RunConfig& config,
            Strategy strategy)
      : graph_(graph),
        program_(program),
        config_(config),
        strategy_(strategy),
        b_(graph.blocks()),
        store_(config.store_dir ? std::make_unique<BlockStore<T>>(*config.store_dir)
                                : std::make_unique<BlockStore<T>>()),
        lanes_(config.workers, config.schedule_seed),
        workers_(graph.blocks()) {
    store_->set_event_logging(config.log_events);
  }

  RunReport<T> execute() {
    RunReport<T> report;
    report.program = program_.name;
    report.requested = config_.strategy;
    report.executed = strategy_;
    report.theta = graph_.theta();
    report.blocks = b_;
    report.vertex_count = graph_.vertex_count();
    report.edge_count = graph_.edge_count();

    seed_vectors();
    const ConvergenceRule rule = config_.convergence.value_or(program_.convergence);

    std::uint64_t t = 0;
    while (t < config_.max_iterations) {
      ++t;
      store_->begin_iteration(t);
      if (t == 1) charge_matrix_reads();
      for (auto& w : workers_) w = WorkerState<T>{};

      switch (strategy_) {
        case Strategy::horizontal: iterate_horizontal(t); break;
        case Strategy::vertical: iterate_vertical(t); break;
        case Strategy::hybrid: iterate_hybrid(t); break;
        case Strategy::selective: throw InvalidArgument("selective must be resolved before execution");
      }

      // Second barrier passed: global reduce of the convergence inputs.
      std::uint64_t changed = 0;
      double l1 = 0.0;
      for (const auto& w : workers_) {
        changed += w.changed;
        l1 += w.l1;
      }
      report.ledgers.push_back(store_->snapshot_ledger(t));
      report.changed_counts.push_back(changed);
      report.l1_deltas.push_back(l1);
      if (config_.record_vectors) report.iterates.push_back(gather(t));
      store_->evict_before(t);
      if (convergence_reached(rule, t, changed, l1)) {
        report.converged = true;
        break;
      }
    }
    report.iterations = t;
    report.final_vector = gather(t);
    if (config_.log_events) {
      report.events = store_->events();
      report.barrier_safe = intermediate_gets_follow_puts(report.events);
    }
    return report;
  }

 private:
  using Payload = typename BlockStore<T>::Payload;

  void seed_vectors() {
    const ProgramContext ctx{graph_.vertex_count()};
    for (BlockIndex i = 0; i < b_; ++i) {
      for (Region r : kRegions) {
        PartialVector<T> entries;
        entries.reserve(graph_.members(i, r).size());
        for (VertexId v : graph_.members(i, r)) entries.push_back({v, program_.initial(v, ctx)});
        store_->seed(StoreKey::vector(i, r, 0), std::move(entries));
      }
    }
  }

  // Each worker reads its assigned sub-matrices once per run.
  void charge_matrix_reads() {
    std::uint64_t total = 0;
    for (const auto& m : graph_.all_blocks()) total += m.triples.size();
    store_->record_matrix_read(total);
  }

  std::vector<T> gather(std::uint64_t t) {
    std::vector<T> out(graph_.vertex_count(), program_.identity);
    for (BlockIndex i = 0; i < b_; ++i) {
      for (Region r : kRegions) {
        for (const auto& e : *store_->peek(StoreKey::vector(i, r, t))) out[e.id] = e.value;
      }
    }
    return out;
  }

  PartialVector<T> multiply(BlockIndex row, BlockIndex col, Region region, const PartialVector<T>& v) {
    return sub_multiply<T>(graph_.block(row, col, region), std::span<const VectorEntry<T>>(v), program_);
  }

  // v^(row,col) over both regions.
  PartialVector<T> multiply_both(BlockIndex row, BlockIndex col, const PartialVector<T>& vs,
                                 const PartialVector<T>& vd) {
    PartialVector<T> out = multiply(row, col, Region::sparse, vs);
    merge_partial(out, multiply(row, col, Region::dense, vd), program_);
    return out;
  }

  // assign_b over v_s^(i) and v_d^(i), then store both regions for iteration t.
  void assign_and_store(BlockIndex i, std::uint64_t t, const PartialVector<T>& reduced) {
    PartialVector<T> reduced_regions[2];
    for (const auto& e : reduced) {
      reduced_regions[static_cast<int>(graph_.theta().region_of(graph_.out_degree[e.id]))].push_back(e);
    }
    auto& w = workers_[i];
    for (Region r : kRegions) {
      const auto& old = r == Region::sparse ? w.own_sparse : w.own_dense;
      VectorBlock<T> block{i, r, *old};
      auto result = assign_block(block, reduced_regions[static_cast<int>(r)], program_);
      w.changed += result.changed_count;
      w.l1 += result.l1_delta;
      store_->put(StoreKey::vector(i, r, t), std::move(result.block.entries));
    }
  }

  void iterate_horizontal(std::uint64_t t) {
    lanes_.run_phase(b_, [&](BlockIndex i) {
      auto& w = workers_[i];
      PartialVector<T> acc;
      for (BlockIndex j = 0; j < b_; ++j) {
        Payload vs = store_->get(StoreKey::vector(j, Region::sparse, t - 1));
        Payload vd = store_->get(StoreKey::vector(j, Region::dense, t - 1));
        merge_partial(acc, multiply_both(i, j, *vs, *vd), program_);
        if (j == i) {
          w.own_sparse = std::move(vs);
          w.own_dense = std::move(vd);
        }
      }
      assign_and_store(i, t, acc);
    });
  }

  void iterate_vertical(std::uint64_t t) {
    lanes_.run_phase(b_, [&](BlockIndex j) {
      auto& w = workers_[j];
      w.own_sparse = store_->get(StoreKey::vector(j, Region::sparse, t - 1));
      w.own_dense = store_->get(StoreKey::vector(j, Region::dense, t - 1));
      for (BlockIndex i = 0; i < b_; ++i) {
        PartialVector<T> partial = multiply_both(i, j, *w.own_sparse, *w.own_dense);
        if (i == j) {
          w.diagonal = std::move(partial);
        } else {
          store_->put(StoreKey::intermediate(i, j, t), std::move(partial));
        }
      }
    });
    // barrier
    lanes_.run_phase(b_, [&](BlockIndex j) {
      auto& w = workers_[j];
      PartialVector<T> acc;
      for (BlockIndex i = 0; i < b_; ++i) {
        if (i == j) {
          merge_partial(acc, w.diagonal, program_);
        } else {
          merge_partial(acc, *store_->get(StoreKey::intermediate(j, i, t)), program_);
        }
      }
      assign_and_store(j, t, acc);
    });
  }

  void iterate_hybrid(std::uint64_t t) {
    // Sparse regions, vertical placement.
    lanes_.run_phase(b_, [&](BlockIndex j) {
      auto& w = workers_[j];
      w.own_sparse = store_->get(StoreKey::vector(j, Region::sparse, t - 1));
      for (BlockIndex i = 0; i < b_; ++i) {
        PartialVector<T> partial = multiply(i, j, Region::sparse, *w.own_sparse);
        if (i == j) {
          w.diagonal = std::move(partial);
        } else {
          store_->put(StoreKey::intermediate(i, j, t), std::move(partial));
        }
      }
    });
    // barrier; then incoming sparse results and dense regions, horizontal placement.
    lanes_.run_phase(b_, [&](BlockIndex j) {
      auto& w = workers_[j];
      PartialVector<T> acc;
      for (BlockIndex i = 0; i < b_; ++i) {
        if (i == j) {
          merge_partial(acc, w.diagonal, program_);
        } else {
          merge_partial(acc, *store_->get(StoreKey::intermediate(j, i, t)), program_);
        }
      }
      for (BlockIndex i = 0; i < b_; ++i) {
        Payload vd = store_->get(StoreKey::vector(i, Region::dense, t - 1));
        merge_partial(acc, multiply(j, i, Region::dense, *vd), program_);
        if (i == j) w.own_dense = std::move(vd);
      }
      assign_and_store(j, t, acc);
    });
  }

  const PartitionedGraph& graph_;
  const GimvProgram<T>& program_;
  const RunConfig& config_;
  Strategy strategy_;
  BlockIndex b_;
  std::unique_ptr<BlockStore<T>> store_;
  LaneScheduler lanes_;
  std::vector<WorkerState<T>> workers_;
};

// Copy of the graph with program matrix values and the requested split.
PartitionedGraph prepare(const PartitionedGraph& graph, MatrixValueRule rule, Theta theta) {
  PartitionedGraph local = graph;
  if (local.theta() != theta) split_by_degree(local, theta);
  const BlockIndex b = local.blocks();
  for (BlockIndex i = 0; i < b; ++i) {
    for (BlockIndex j = 0; j < b; ++j) {
      for (Region r : kRegions) {
        for (Triple& t : local.block(i, j, r).triples) {
          t.value = matrix_value(rule, t.value, local.out_degree[t.col]);
        }
      }
    }
  }
  return local;
}

}  // namespace

template <typename T>
RunReport<T> run(const PartitionedGraph& graph, const GimvProgram<T>& program, const RunConfig& config) {
  config.validate();
  Strategy strategy = config.strategy;
  if (strategy == Strategy::selective) {
    strategy = select_strategy(graph.blocks(), graph.vertex_count(), graph.edge_count());
  }
  // Horizontal and vertical read both regions, so any split works for them.
  const Theta theta = strategy == Strategy::hybrid ? config.theta.value_or(graph.theta()) : graph.theta();
  const PartitionedGraph local = prepare(graph, program.matrix_rule, theta);
  Execution<T> exec(local, program, config, strategy);
  return exec.execute();
}

template RunReport<double> run(const PartitionedGraph&, const GimvProgram<double>&, const RunConfig&);
template RunReport<std::int64_t> run(const PartitionedGraph&, const GimvProgram<std::int64_t>&, const RunConfig&);

}  // namespace pmv
