#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pmv/common.hpp"

namespace pmv {

struct Edge {
  VertexId src;
  VertexId dst;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct EdgeList {
  std::vector<Edge> edges;
  /// Size of the id universe: every id is < vertex_count. Zero means
  /// unknown (ids not yet densified).
  std::uint64_t vertex_count = 0;
  std::string source_path;
  std::uint64_t line_count = 0;
};

struct ParseOptions {
  double default_weight = 1.0;
};

/// Reads a whitespace/tab separated "src dst [weight]" file. Lines starting
/// with '#' and blank lines are skipped. Ids keep their original values.
EdgeList parse_edge_list(const std::filesystem::path& path, const ParseOptions& options = {});
EdgeList parse_edge_list(std::istream& in, const ParseOptions& options = {}, const std::string& source_name = "<stream>");

/// Writes one "src\tdst\tweight" line per edge; weight is printed with
/// round-trip precision.
void write_edge_list(std::ostream& out, const EdgeList& edges);
void write_edge_list(const std::filesystem::path& path, const EdgeList& edges);

/// Maps dense id -> original id; sorted ascending, so densification
/// preserves id order.
class IdMap {
 public:
  IdMap() = default;
  explicit IdMap(std::vector<VertexId> originals);

  std::uint64_t size() const { return originals_.size(); }
  VertexId original(VertexId dense) const { return originals_.at(dense); }
  /// Throws InvalidVertex if the id was never seen.
  VertexId dense(VertexId original) const;
  const std::vector<VertexId>& originals() const { return originals_; }

  void save(const std::filesystem::path& path) const;
  static IdMap load(const std::filesystem::path& path);

 private:
  std::vector<VertexId> originals_;
};

struct DenseEdgeList {
  EdgeList edges;  // ids in [0, vertex_count)
  IdMap ids;
};

DenseEdgeList densify(const EdgeList& edges);

/// Identity id map for lists whose ids are already dense.
IdMap identity_id_map(std::uint64_t vertex_count);

struct RmatParams {
  unsigned scale = 10;
  std::uint64_t edge_count = 0;
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  double d = 0.05;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Draws exactly `edge_count` edges by recursive quadrant selection over a
/// 2^scale x 2^scale adjacency matrix (row = source). Duplicates and
/// self-loops are kept. Deterministic per seed.
EdgeList generate_rmat(const RmatParams& params);

}  // namespace pmv
