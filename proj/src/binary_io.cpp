#include "pmv/binary_io.hpp"

#include <fstream>
#include <iterator>

namespace pmv::binio {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FormatError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string encode_triples(const std::vector<Triple>& triples) {
  std::string out;
  out.reserve(triples.size() * kTripleBytes);
  for (const auto& t : triples) {
    put_u64(out, t.row);
    put_u64(out, t.col);
    put_f64(out, t.value);
  }
  return out;
}

std::vector<Triple> decode_triples(const std::string& bytes, const std::string& what) {
  if (bytes.size() % kTripleBytes != 0) throw FormatError(what + ": size is not a multiple of 24 bytes");
  std::vector<Triple> out(bytes.size() / kTripleBytes);
  const char* p = bytes.data();
  for (auto& t : out) {
    t.row = get_u64(p);
    t.col = get_u64(p + 8);
    t.value = get_f64(p + 16);
    p += kTripleBytes;
  }
  return out;
}

// Label values are stored as f64; exact for |label| < 2^53.
template <typename T>
std::string encode_entries(const PartialVector<T>& entries) {
  std::string out;
  out.reserve(entries.size() * kEntryBytes);
  for (const auto& e : entries) {
    put_u64(out, e.id);
    put_f64(out, static_cast<double>(e.value));
  }
  return out;
}

template <typename T>
PartialVector<T> decode_entries(const std::string& bytes, const std::string& what) {
  if (bytes.size() % kEntryBytes != 0) throw FormatError(what + ": size is not a multiple of 16 bytes");
  PartialVector<T> out(bytes.size() / kEntryBytes);
  const char* p = bytes.data();
  for (auto& e : out) {
    e.id = get_u64(p);
    e.value = static_cast<T>(get_f64(p + 8));
    p += kEntryBytes;
  }
  return out;
}

template std::string encode_entries(const PartialVector<double>&);
template std::string encode_entries(const PartialVector<std::int64_t>&);
template PartialVector<double> decode_entries(const std::string&, const std::string&);
template PartialVector<std::int64_t> decode_entries(const std::string&, const std::string&);

}  // namespace pmv::binio
