#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pmv/common.hpp"

namespace pmv {

/// Element counts moved through the store during one iteration.
/// matrix_read is tracked separately and is not part of total().
struct IoLedger {
  std::uint64_t vector_read = 0;
  std::uint64_t vector_write = 0;
  std::uint64_t intermediate_write = 0;
  std::uint64_t intermediate_read = 0;
  std::uint64_t matrix_read = 0;

  std::uint64_t total() const { return vector_read + vector_write + intermediate_write + intermediate_read; }

  IoLedger& operator+=(const IoLedger& o) {
    vector_read += o.vector_read;
    vector_write += o.vector_write;
    intermediate_write += o.intermediate_write;
    intermediate_read += o.intermediate_read;
    matrix_read += o.matrix_read;
    return *this;
  }
  friend bool operator==(const IoLedger&, const IoLedger&) = default;
};

/// vector(i, region) or intermediate(i, j) at a given iteration. An
/// intermediate(i, j) is the sub-result of M^(i,j) (x) v^(j), consumed by the
/// owner of block i.
struct StoreKey {
  enum class Kind : std::uint8_t { vector, intermediate };

  Kind kind = Kind::vector;
  BlockIndex i = 0;
  BlockIndex j = 0;  // intermediate only
  Region region = Region::sparse;  // vector only
  std::uint64_t iteration = 0;

  static StoreKey vector(BlockIndex i, Region region, std::uint64_t iteration) {
    return {Kind::vector, i, 0, region, iteration};
  }
  static StoreKey intermediate(BlockIndex i, BlockIndex j, std::uint64_t iteration) {
    return {Kind::intermediate, i, j, Region::sparse, iteration};
  }

  std::string to_string() const;
  friend auto operator<=>(const StoreKey&, const StoreKey&) = default;
};

struct StoreEvent {
  enum class Op : std::uint8_t { put, get };

  std::uint64_t sequence;
  Op op;
  StoreKey key;
  std::uint64_t elements;
};

/// Shared key-value store for vector blocks and sub-multiplication results.
/// Every put/get is metered in elements against the current iteration.
/// Keys are write-once. Safe for concurrent use.
///
/// With a backing directory every put is also written as
/// <dir>/it<iteration>/{v_<i>_<s|d>,x_<i>_<j>}.bin in the vector-entry record
/// layout, and gets fall back to those files, so a fresh store over the same
/// directory sees everything written before.
template <typename T>
class BlockStore {
 public:
  using Payload = std::shared_ptr<const PartialVector<T>>;

  BlockStore() = default;
  explicit BlockStore(std::filesystem::path backing_dir) : backing_dir_(std::move(backing_dir)) {}

  BlockStore(const BlockStore&) = delete;
  BlockStore& operator=(const BlockStore&) = delete;

  /// Unmetered write used to materialize initial vectors.
  void seed(const StoreKey& key, PartialVector<T> data);

  /// Throws DuplicateKey; diagonal intermediates (i == j) are rejected with
  /// InvalidArgument since they never leave the producing worker.
  void put(const StoreKey& key, PartialVector<T> data);
  /// Throws MissingKey.
  Payload get(const StoreKey& key);
  /// Unmetered, unlogged read.
  Payload peek(const StoreKey& key);
  bool contains(const StoreKey& key);

  /// Subsequent traffic is charged to this iteration (1-based; 0 = setup).
  void begin_iteration(std::uint64_t iteration);
  std::uint64_t current_iteration() const { return current_.load(); }

  void record_matrix_read(std::uint64_t elements);

  /// Counters of a finished iteration; all zero for iterations with no traffic.
  IoLedger snapshot_ledger(std::uint64_t iteration) const;
  IoLedger cumulative() const;

  void set_event_logging(bool enabled) { log_events_ = enabled; }
  std::vector<StoreEvent> events() const;

  /// Drops entries older than `iteration` from memory (files are kept).
  void evict_before(std::uint64_t iteration);

 private:
  struct Counters {
    std::atomic<std::uint64_t> vector_read{0};
    std::atomic<std::uint64_t> vector_write{0};
    std::atomic<std::uint64_t> intermediate_write{0};
    std::atomic<std::uint64_t> intermediate_read{0};
    std::atomic<std::uint64_t> matrix_read{0};
  };

  Counters& counters_for(std::uint64_t iteration);
  std::optional<std::filesystem::path> file_for(const StoreKey& key) const;
  Payload load_locked(const StoreKey& key);
  void log(StoreEvent::Op op, const StoreKey& key, std::uint64_t elements);

  std::optional<std::filesystem::path> backing_dir_;
  mutable std::mutex mutex_;
  std::map<StoreKey, Payload> data_;
  mutable std::mutex ledger_mutex_;
  std::map<std::uint64_t, std::unique_ptr<Counters>> ledger_;
  std::atomic<std::uint64_t> current_{0};
  std::atomic<bool> log_events_{false};
  mutable std::mutex event_mutex_;
  std::vector<StoreEvent> events_;
  std::uint64_t next_sequence_ = 0;
};

/// True iff every intermediate get is preceded by a put of the same key.
bool intermediate_gets_follow_puts(const std::vector<StoreEvent>& events);

}  // namespace pmv
