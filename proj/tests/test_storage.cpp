#include <doctest.h>

#include <filesystem>
#include <thread>
#include <unistd.h>

#include "pmv/binary_io.hpp"
#include "pmv/storage.hpp"

using namespace pmv;
namespace fs = std::filesystem;

namespace {

PartialVector<double> entries(std::size_t n) {
  PartialVector<double> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back({k, 0.5 * k});
  return out;
}

}  // namespace

TEST_CASE("puts and gets are metered by element count") {
  BlockStore<double> store;
  store.begin_iteration(1);
  store.put(StoreKey::intermediate(2, 1, 1), entries(3));
  store.put(StoreKey::vector(1, Region::sparse, 1), {});
  auto l = store.snapshot_ledger(1);
  CHECK(l.intermediate_write == 3);
  CHECK(l.vector_write == 0);
  CHECK(store.get(StoreKey::intermediate(2, 1, 1))->size() == 3);
  l = store.snapshot_ledger(1);
  CHECK(l.intermediate_read == 3);
  CHECK(l.total() == 6);
}

TEST_CASE("store key errors") {
  BlockStore<double> store;
  store.begin_iteration(1);
  store.put(StoreKey::vector(0, Region::dense, 1), entries(2));
  CHECK_THROWS_AS(store.put(StoreKey::vector(0, Region::dense, 1), entries(2)), DuplicateKey);
  CHECK_THROWS_AS(store.get(StoreKey::intermediate(1, 1, 1)), MissingKey);
  CHECK_THROWS_AS(store.put(StoreKey::intermediate(1, 1, 1), entries(1)), InvalidArgument);
}

TEST_CASE("ledger snapshots") {
  BlockStore<double> store;
  CHECK(store.snapshot_ledger(0) == IoLedger{});
  CHECK(store.snapshot_ledger(5) == IoLedger{});
  store.seed(StoreKey::vector(0, Region::sparse, 0), entries(10));
  CHECK(store.cumulative() == IoLedger{});
  store.begin_iteration(1);
  store.get(StoreKey::vector(0, Region::sparse, 0));
  store.record_matrix_read(42);
  const auto l = store.snapshot_ledger(1);
  CHECK(l.vector_read == 10);
  CHECK(l.matrix_read == 42);
  CHECK(l.total() == 10);
}

TEST_CASE("event log orders intermediate puts before gets") {
  BlockStore<double> store;
  store.set_event_logging(true);
  store.begin_iteration(1);
  store.put(StoreKey::intermediate(0, 1, 1), entries(1));
  store.get(StoreKey::intermediate(0, 1, 1));
  CHECK(intermediate_gets_follow_puts(store.events()));

  std::vector<StoreEvent> bad{{0, StoreEvent::Op::get, StoreKey::intermediate(0, 1, 1), 1},
                              {1, StoreEvent::Op::put, StoreKey::intermediate(0, 1, 1), 1}};
  CHECK_FALSE(intermediate_gets_follow_puts(bad));
}

TEST_CASE("concurrent access is safe and fully metered") {
  BlockStore<double> store;
  store.begin_iteration(1);
  std::vector<std::jthread> threads;
  for (BlockIndex w = 0; w < 8; ++w) {
    threads.emplace_back([&store, w] {
      for (BlockIndex i = 0; i < 8; ++i) {
        if (i != w) store.put(StoreKey::intermediate(i, w, 1), entries(5));
      }
    });
  }
  threads.clear();
  for (BlockIndex w = 0; w < 8; ++w) {
    threads.emplace_back([&store, w] {
      for (BlockIndex j = 0; j < 8; ++j) {
        if (j != w) store.get(StoreKey::intermediate(w, j, 1));
      }
    });
  }
  threads.clear();
  const auto l = store.snapshot_ledger(1);
  CHECK(l.intermediate_write == 8 * 7 * 5);
  CHECK(l.intermediate_read == l.intermediate_write);
}

TEST_CASE("directory-backed store survives a restart") {
  const fs::path dir = fs::temp_directory_path() / ("pmv_store_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  {
    BlockStore<double> store(dir);
    store.begin_iteration(3);
    store.put(StoreKey::vector(2, Region::dense, 3), entries(4));
    store.put(StoreKey::intermediate(0, 2, 3), entries(2));
  }
  const auto bytes = binio::read_file(dir / "it3" / "v_2_d.bin");
  CHECK(bytes == binio::encode_entries(entries(4)));
  BlockStore<double> fresh(dir);
  fresh.begin_iteration(3);
  CHECK(*fresh.get(StoreKey::vector(2, Region::dense, 3)) == entries(4));
  CHECK(*fresh.get(StoreKey::intermediate(0, 2, 3)) == entries(2));
  fs::remove_all(dir);
}

TEST_CASE("evicted entries leave memory") {
  BlockStore<std::int64_t> store;
  store.begin_iteration(1);
  store.put(StoreKey::vector(0, Region::sparse, 1), {{0, 7}});
  store.begin_iteration(2);
  store.evict_before(2);
  CHECK_FALSE(store.contains(StoreKey::vector(0, Region::sparse, 1)));
}
