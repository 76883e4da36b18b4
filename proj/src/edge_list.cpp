#include "pmv/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "pmv/binary_io.hpp"

namespace pmv {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

VertexId parse_id(std::string_view field, std::uint64_t line) {
  VertexId v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "invalid vertex id '" + std::string(field) + "'");
  }
  return v;
}

double parse_weight(std::string_view field, std::uint64_t line) {
  double w = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), w);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "invalid weight '" + std::string(field) + "'");
  }
  if (!std::isfinite(w)) throw ParseError(line, "weight must be finite");
  return w;
}

}  // namespace

EdgeList parse_edge_list(std::istream& in, const ParseOptions& options, const std::string& source_name) {
  EdgeList list;
  list.source_path = source_name;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() < 2) throw ParseError(line_no, "expected 'src dst [weight]'");
    if (fields.size() > 3) throw ParseError(line_no, "too many fields");
    Edge e;
    e.src = parse_id(fields[0], line_no);
    e.dst = parse_id(fields[1], line_no);
    e.weight = fields.size() == 3 ? parse_weight(fields[2], line_no) : options.default_weight;
    list.edges.push_back(e);
  }
  list.line_count = line_no;
  if (list.edges.empty()) throw EmptyInput(source_name + ": no edges");
  return list;
}

EdgeList parse_edge_list(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw EmptyInput("cannot open " + path.string());
  return parse_edge_list(in, options, path.string());
}

void write_edge_list(std::ostream& out, const EdgeList& edges) {
  out << std::setprecision(17);
  for (const auto& e : edges.edges) out << e.src << '\t' << e.dst << '\t' << e.weight << '\n';
}

void write_edge_list(const std::filesystem::path& path, const EdgeList& edges) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  write_edge_list(out, edges);
}

IdMap::IdMap(std::vector<VertexId> originals) : originals_(std::move(originals)) {
  if (!std::is_sorted(originals_.begin(), originals_.end()) ||
      std::adjacent_find(originals_.begin(), originals_.end()) != originals_.end()) {
    throw FormatError("id map must be strictly increasing");
  }
}

VertexId IdMap::dense(VertexId original) const {
  auto it = std::lower_bound(originals_.begin(), originals_.end(), original);
  if (it == originals_.end() || *it != original) {
    throw InvalidVertex("vertex " + std::to_string(original) + " is not in the graph");
  }
  return static_cast<VertexId>(it - originals_.begin());
}

void IdMap::save(const std::filesystem::path& path) const {
  std::string bytes;
  bytes.reserve(originals_.size() * 8);
  for (VertexId v : originals_) binio::put_u64(bytes, v);
  binio::write_file(path, bytes);
}

IdMap IdMap::load(const std::filesystem::path& path) {
  const auto bytes = binio::read_file(path);
  if (bytes.size() % 8 != 0) throw FormatError(path.string() + ": size is not a multiple of 8 bytes");
  std::vector<VertexId> ids(bytes.size() / 8);
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = binio::get_u64(bytes.data() + 8 * i);
  return IdMap(std::move(ids));
}

DenseEdgeList densify(const EdgeList& edges) {
  std::vector<VertexId> ids;
  ids.reserve(edges.edges.size() * 2);
  for (const auto& e : edges.edges) {
    ids.push_back(e.src);
    ids.push_back(e.dst);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  DenseEdgeList out;
  out.edges.source_path = edges.source_path;
  out.edges.line_count = edges.line_count;
  out.edges.vertex_count = ids.size();
  out.edges.edges.reserve(edges.edges.size());
  auto dense_of = [&](VertexId v) {
    return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };
  for (const auto& e : edges.edges) out.edges.edges.push_back({dense_of(e.src), dense_of(e.dst), e.weight});
  out.ids = IdMap(std::move(ids));
  return out;
}

IdMap identity_id_map(std::uint64_t vertex_count) {
  std::vector<VertexId> ids(vertex_count);
  for (std::uint64_t i = 0; i < vertex_count; ++i) ids[i] = i;
  return IdMap(std::move(ids));
}

void RmatParams::validate() const {
  for (double p : {a, b, c, d}) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("RMAT probabilities must lie in [0, 1]");
  }
  if (std::abs(a + b + c + d - 1.0) > 1e-9) throw InvalidArgument("RMAT probabilities must sum to 1");
  if (scale > 62) throw InvalidArgument("RMAT scale must be at most 62");
}

EdgeList generate_rmat(const RmatParams& params) {
  params.validate();
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ab = params.a + params.b;
  const double abc = ab + params.c;

  EdgeList list;
  list.vertex_count = std::uint64_t{1} << params.scale;
  list.source_path = "rmat";
  list.edges.reserve(params.edge_count);
  for (std::uint64_t k = 0; k < params.edge_count; ++k) {
    VertexId src = 0;
    VertexId dst = 0;
    for (unsigned level = 0; level < params.scale; ++level) {
      const double r = unit(rng);
      src <<= 1;
      dst <<= 1;
      if (r < params.a) {
      } else if (r < ab) {
        dst |= 1;
      } else if (r < abc) {
        src |= 1;
      } else {
        src |= 1;
        dst |= 1;
      }
    }
    list.edges.push_back({src, dst, 1.0});
  }
  return list;
}

}  // namespace pmv
