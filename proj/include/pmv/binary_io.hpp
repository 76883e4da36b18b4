#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "pmv/common.hpp"

namespace pmv::binio {

// Fixed little-endian record layouts:
//   matrix triple  = (u64 row, u64 col, f64 value)   24 bytes
//   vector entry   = (u64 id, f64 value)             16 bytes
//   id map         = u64 original id per dense id     8 bytes

inline constexpr std::size_t kTripleBytes = 24;
inline constexpr std::size_t kEntryBytes = 16;

inline void put_u64(std::string& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.append(buf, 8);
}

inline void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

inline std::uint64_t get_u64(const char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

inline double get_f64(const char* p) { return std::bit_cast<double>(get_u64(p)); }

std::string read_file(const std::filesystem::path& path);
/// Writes via a temporary file and rename so readers never see a partial file.
void write_file(const std::filesystem::path& path, const std::string& bytes);

std::string encode_triples(const std::vector<Triple>& triples);
std::vector<Triple> decode_triples(const std::string& bytes, const std::string& what);

template <typename T>
std::string encode_entries(const PartialVector<T>& entries);
template <typename T>
PartialVector<T> decode_entries(const std::string& bytes, const std::string& what);

}  // namespace pmv::binio
