#include "pmv/storage.hpp"

#include <set>

#include "pmv/binary_io.hpp"

namespace pmv {

namespace fs = std::filesystem;

std::string StoreKey::to_string() const {
  if (kind == Kind::vector) {
    return "vector(" + std::to_string(i) + "," + region_tag(region) + ")@" + std::to_string(iteration);
  }
  return "intermediate(" + std::to_string(i) + "," + std::to_string(j) + ")@" + std::to_string(iteration);
}

template <typename T>
typename BlockStore<T>::Counters& BlockStore<T>::counters_for(std::uint64_t iteration) {
  std::lock_guard lock(ledger_mutex_);
  auto& slot = ledger_[iteration];
  if (!slot) slot = std::make_unique<Counters>();
  return *slot;
}

template <typename T>
std::optional<fs::path> BlockStore<T>::file_for(const StoreKey& key) const {
  if (!backing_dir_) return std::nullopt;
  const auto dir = *backing_dir_ / ("it" + std::to_string(key.iteration));
  if (key.kind == StoreKey::Kind::vector) {
    return dir / ("v_" + std::to_string(key.i) + "_" + region_tag(key.region) + ".bin");
  }
  return dir / ("x_" + std::to_string(key.i) + "_" + std::to_string(key.j) + ".bin");
}

template <typename T>
void BlockStore<T>::log(StoreEvent::Op op, const StoreKey& key, std::uint64_t elements) {
  if (!log_events_) return;
  std::lock_guard lock(event_mutex_);
  events_.push_back({next_sequence_++, op, key, elements});
}

template <typename T>
typename BlockStore<T>::Payload BlockStore<T>::load_locked(const StoreKey& key) {
  if (auto it = data_.find(key); it != data_.end()) return it->second;
  if (auto file = file_for(key); file && fs::exists(*file)) {
    auto payload = std::make_shared<const PartialVector<T>>(
        binio::decode_entries<T>(binio::read_file(*file), file->string()));
    data_.emplace(key, payload);
    return payload;
  }
  return nullptr;
}

template <typename T>
void BlockStore<T>::seed(const StoreKey& key, PartialVector<T> data) {
  std::lock_guard lock(mutex_);
  if (load_locked(key)) throw DuplicateKey("key " + key.to_string() + " already stored");
  auto payload = std::make_shared<const PartialVector<T>>(std::move(data));
  if (auto file = file_for(key)) binio::write_file(*file, binio::encode_entries(*payload));
  data_.emplace(key, std::move(payload));
}

template <typename T>
void BlockStore<T>::put(const StoreKey& key, PartialVector<T> data) {
  if (key.kind == StoreKey::Kind::intermediate && key.i == key.j) {
    throw InvalidArgument("diagonal sub-result " + key.to_string() + " must stay worker-local");
  }
  const std::uint64_t elements = data.size();
  {
    std::lock_guard lock(mutex_);
    if (load_locked(key)) throw DuplicateKey("key " + key.to_string() + " already stored");
    auto payload = std::make_shared<const PartialVector<T>>(std::move(data));
    if (auto file = file_for(key)) binio::write_file(*file, binio::encode_entries(*payload));
    data_.emplace(key, std::move(payload));
    log(StoreEvent::Op::put, key, elements);
  }
  auto& c = counters_for(current_.load());
  (key.kind == StoreKey::Kind::vector ? c.vector_write : c.intermediate_write) += elements;
}

template <typename T>
typename BlockStore<T>::Payload BlockStore<T>::get(const StoreKey& key) {
  Payload payload;
  {
    std::lock_guard lock(mutex_);
    payload = load_locked(key);
    if (!payload) throw MissingKey("key " + key.to_string() + " not in store");
    log(StoreEvent::Op::get, key, payload->size());
  }
  auto& c = counters_for(current_.load());
  (key.kind == StoreKey::Kind::vector ? c.vector_read : c.intermediate_read) += payload->size();
  return payload;
}

template <typename T>
typename BlockStore<T>::Payload BlockStore<T>::peek(const StoreKey& key) {
  std::lock_guard lock(mutex_);
  auto payload = load_locked(key);
  if (!payload) throw MissingKey("key " + key.to_string() + " not in store");
  return payload;
}

template <typename T>
bool BlockStore<T>::contains(const StoreKey& key) {
  std::lock_guard lock(mutex_);
  return load_locked(key) != nullptr;
}

template <typename T>
void BlockStore<T>::begin_iteration(std::uint64_t iteration) {
  current_ = iteration;
  counters_for(iteration);
}

template <typename T>
void BlockStore<T>::record_matrix_read(std::uint64_t elements) {
  counters_for(current_.load()).matrix_read += elements;
}

template <typename T>
IoLedger BlockStore<T>::snapshot_ledger(std::uint64_t iteration) const {
  std::lock_guard lock(ledger_mutex_);
  IoLedger out;
  auto it = ledger_.find(iteration);
  if (it == ledger_.end()) return out;
  const Counters& c = *it->second;
  out.vector_read = c.vector_read.load();
  out.vector_write = c.vector_write.load();
  out.intermediate_write = c.intermediate_write.load();
  out.intermediate_read = c.intermediate_read.load();
  out.matrix_read = c.matrix_read.load();
  return out;
}

template <typename T>
IoLedger BlockStore<T>::cumulative() const {
  std::vector<std::uint64_t> iterations;
  {
    std::lock_guard lock(ledger_mutex_);
    for (const auto& [it, _] : ledger_) iterations.push_back(it);
  }
  IoLedger total;
  for (auto it : iterations) total += snapshot_ledger(it);
  return total;
}

template <typename T>
std::vector<StoreEvent> BlockStore<T>::events() const {
  std::lock_guard lock(event_mutex_);
  return events_;
}

template <typename T>
void BlockStore<T>::evict_before(std::uint64_t iteration) {
  std::lock_guard lock(mutex_);
  for (auto it = data_.begin(); it != data_.end();) {
    it = it->first.iteration < iteration ? data_.erase(it) : std::next(it);
  }
}

template class BlockStore<double>;
template class BlockStore<std::int64_t>;

bool intermediate_gets_follow_puts(const std::vector<StoreEvent>& events) {
  std::vector<StoreEvent> ordered = events;
  std::sort(ordered.begin(), ordered.end(),
            [](const StoreEvent& a, const StoreEvent& b) { return a.sequence < b.sequence; });
  std::set<StoreKey> written;
  for (const auto& e : ordered) {
    if (e.key.kind != StoreKey::Kind::intermediate) continue;
    if (e.op == StoreEvent::Op::put) {
      written.insert(e.key);
    } else if (!written.count(e.key)) {
      return false;
    }
  }
  return true;
}

}  // namespace pmv
