#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmv {

using VertexId = std::uint64_t;
using BlockIndex = std::uint32_t;

/// Sparse/dense split of a vector block or matrix block by out-degree.
enum class Region : std::uint8_t { sparse = 0, dense = 1 };

inline constexpr Region kRegions[] = {Region::sparse, Region::dense};

inline char region_tag(Region r) { return r == Region::sparse ? 's' : 'd'; }

/// Out-degree threshold. A vertex is dense iff out(p) >= theta; the infinite
/// threshold puts every vertex in the sparse region.
class Theta {
 public:
  constexpr Theta() = default;
  constexpr explicit Theta(std::uint64_t value) : value_(value) {}

  static constexpr Theta infinite() { return Theta(kInfinite); }

  constexpr bool is_infinite() const { return value_ == kInfinite; }
  constexpr std::uint64_t value() const { return value_; }

  constexpr bool is_dense(std::uint64_t out_degree) const {
    return !is_infinite() && out_degree >= value_;
  }
  constexpr Region region_of(std::uint64_t out_degree) const {
    return is_dense(out_degree) ? Region::dense : Region::sparse;
  }

  std::string to_string() const {
    return is_infinite() ? std::string("inf") : std::to_string(value_);
  }
  /// Accepts a non-negative integer, "inf" or "infinity".
  static Theta parse(const std::string& text);

  friend constexpr bool operator==(Theta, Theta) = default;
  friend constexpr auto operator<=>(Theta a, Theta b) { return a.value_ <=> b.value_; }

 private:
  static constexpr std::uint64_t kInfinite = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value_ = 0;
};

/// One non-zero m_{p,q}: the edge q -> p.
struct Triple {
  VertexId row;
  VertexId col;
  double value;

  friend bool operator==(const Triple&, const Triple&) = default;
};

template <typename T>
struct VectorEntry {
  VertexId id;
  T value;

  friend bool operator==(const VectorEntry&, const VectorEntry&) = default;
};

/// Entries sorted by id, one per vertex.
template <typename T>
using PartialVector = std::vector<VectorEntry<T>>;

/// Messages (row vertex, combine2 value); may hold several entries per row.
template <typename T>
using MessageSet = std::vector<VectorEntry<T>>;

struct MatrixBlock {
  BlockIndex row_block = 0;
  BlockIndex col_block = 0;
  Region region = Region::sparse;
  std::vector<Triple> triples;  // sorted by (row, col)
};

template <typename T>
struct VectorBlock {
  BlockIndex index = 0;
  Region region = Region::sparse;
  PartialVector<T> entries;
};

// Errors. Data errors (bad input, violated preconditions) derive from Error.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PMV_DEFINE_ERROR(Name)             \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

PMV_DEFINE_ERROR(ColumnMismatch);
PMV_DEFINE_ERROR(MissingVectorEntry);
PMV_DEFINE_ERROR(UnknownVertex);
PMV_DEFINE_ERROR(EmptyGraph);
PMV_DEFINE_ERROR(InvalidVertex);
PMV_DEFINE_ERROR(DensityOutOfRange);
PMV_DEFINE_ERROR(DuplicateKey);
PMV_DEFINE_ERROR(MissingKey);
PMV_DEFINE_ERROR(EmptyInput);
PMV_DEFINE_ERROR(InvalidArgument);
PMV_DEFINE_ERROR(FormatError);

#undef PMV_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(std::uint64_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}

  std::uint64_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::uint64_t line_;
  std::string reason_;
};

}  // namespace pmv
