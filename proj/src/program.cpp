#include "pmv/program.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pmv {

double matrix_value(MatrixValueRule rule, double weight, std::uint64_t out_degree_of_source) {
  switch (rule) {
    case MatrixValueRule::column_stochastic:
      return out_degree_of_source == 0 ? 0.0 : 1.0 / static_cast<double>(out_degree_of_source);
    case MatrixValueRule::edge_weight:
      return weight;
    case MatrixValueRule::unit:
      return 1.0;
  }
  return weight;
}

namespace {

AssignResult<double> real_assign_result(double old_value, double new_value) {
  // inf - inf is NaN, which compares false: an unchanged infinite distance is unchanged.
  const bool changed = std::abs(new_value - old_value) > kDefaultAssignEpsilon;
  return {new_value, changed};
}

std::function<double(VertexId, const ProgramContext&)> uniform_init(PagerankInit init) {
  if (init == PagerankInit::one) {
    return [](VertexId, const ProgramContext&) { return 1.0; };
  }
  return [](VertexId, const ProgramContext& ctx) {
    return ctx.vertex_count == 0 ? 0.0 : 1.0 / static_cast<double>(ctx.vertex_count);
  };
}

}  // namespace

RealProgram pagerank(double l1_epsilon, PagerankInit init) {
  RealProgram p;
  p.name = "pagerank";
  p.combine2 = [](double m, double v) { return m * v; };
  p.identity = 0.0;
  p.reduce = [](double a, double b) { return a + b; };
  p.assign = [](VertexId, double old_value, double r) { return real_assign_result(old_value, 0.15 + 0.85 * r); };
  p.initial = uniform_init(init);
  p.matrix_rule = MatrixValueRule::column_stochastic;
  p.convergence = ConvergenceRule::l1_norm_below(l1_epsilon);
  return p;
}

RealProgram rwr(VertexId source, double restart, double l1_epsilon, PagerankInit init) {
  if (!(restart >= 0.0 && restart <= 1.0)) throw InvalidArgument("restart probability must lie in [0, 1]");
  RealProgram p;
  p.name = "rwr";
  p.combine2 = [](double m, double v) { return m * v; };
  p.identity = 0.0;
  p.reduce = [](double a, double b) { return a + b; };
  const double walk = 1.0 - restart;
  p.assign = [source, restart, walk](VertexId id, double old_value, double r) {
    const double next = id == source ? restart + walk * r : walk * r;
    return real_assign_result(old_value, next);
  };
  p.initial = uniform_init(init);
  p.matrix_rule = MatrixValueRule::column_stochastic;
  p.convergence = ConvergenceRule::l1_norm_below(l1_epsilon);
  return p;
}

RealProgram sssp(VertexId source) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  RealProgram p;
  p.name = "sssp";
  p.combine2 = [](double m, double v) { return m + v; };
  p.identity = inf;
  p.reduce = [](double a, double b) { return std::min(a, b); };
  p.assign = [](VertexId, double old_value, double r) { return real_assign_result(old_value, std::min(old_value, r)); };
  p.initial = [source](VertexId id, const ProgramContext&) { return id == source ? 0.0 : inf; };
  p.matrix_rule = MatrixValueRule::edge_weight;
  p.convergence = ConvergenceRule::no_element_changed();
  return p;
}

LabelProgram connected_components() {
  LabelProgram p;
  p.name = "cc";
  p.combine2 = [](double, std::int64_t v) { return v; };
  p.identity = std::numeric_limits<std::int64_t>::max();
  p.reduce = [](std::int64_t a, std::int64_t b) { return std::min(a, b); };
  p.assign = [](VertexId, std::int64_t old_value, std::int64_t r) {
    const std::int64_t next = std::min(old_value, r);
    return AssignResult<std::int64_t>{next, next != old_value};
  };
  p.initial = [](VertexId id, const ProgramContext&) { return static_cast<std::int64_t>(id); };
  p.matrix_rule = MatrixValueRule::unit;
  p.convergence = ConvergenceRule::no_element_changed();
  return p;
}

AnyProgram catalog_program(const std::string& name, VertexId source, double l1_epsilon, PagerankInit init) {
  if (name == "pagerank") return pagerank(l1_epsilon, init);
  if (name == "rwr") return rwr(source, 0.15, l1_epsilon, init);
  if (name == "sssp") return sssp(source);
  if (name == "cc") return connected_components();
  throw InvalidArgument("unknown algorithm '" + name + "'");
}

template <typename T>
MessageSet<T> combine2_block(const MatrixBlock& block, const VectorBlock<T>& vector, const GimvProgram<T>& program) {
  if (block.col_block != vector.index || block.region != vector.region) {
    throw ColumnMismatch("matrix block column " + std::to_string(block.col_block) + region_tag(block.region) +
                         " does not match vector block " + std::to_string(vector.index) + region_tag(vector.region));
  }
  MessageSet<T> out;
  out.reserve(block.triples.size());
  const auto& entries = vector.entries;
  for (const Triple& t : block.triples) {
    auto it = std::lower_bound(entries.begin(), entries.end(), t.col,
                               [](const VectorEntry<T>& e, VertexId id) { return e.id < id; });
    if (it == entries.end() || it->id != t.col) {
      throw MissingVectorEntry("vertex " + std::to_string(t.col) + " missing from vector block " +
                               std::to_string(vector.index));
    }
    out.push_back({t.row, program.combine2(t.value, it->value)});
  }
  return out;
}

namespace {

template <typename T>
const VectorEntry<T>& find_entry(std::span<const VectorEntry<T>> entries, VertexId id) {
  auto it = std::lower_bound(entries.begin(), entries.end(), id,
                             [](const VectorEntry<T>& e, VertexId v) { return e.id < v; });
  if (it == entries.end() || it->id != id) {
    throw MissingVectorEntry("vertex " + std::to_string(id) + " missing from vector block");
  }
  return *it;
}

}  // namespace

template <typename T>
PartialVector<T> sub_multiply(const MatrixBlock& block, std::span<const VectorEntry<T>> vector,
                              const GimvProgram<T>& program) {
  PartialVector<T> out;
  for (const Triple& t : block.triples) {
    const T x = program.combine2(t.value, find_entry(vector, t.col).value);
    if (out.empty() || out.back().id != t.row) {
      out.push_back({t.row, program.reduce(program.identity, x)});
    } else {
      out.back().value = program.reduce(out.back().value, x);
    }
  }
  return out;
}

template <typename T>
PartialVector<T> combine_all_block(const MessageSet<T>& messages, const GimvProgram<T>& program) {
  const auto by_id = [](const VectorEntry<T>& a, const VectorEntry<T>& b) { return a.id < b.id; };
  const MessageSet<T>* input = &messages;
  MessageSet<T> sorted;
  if (!std::is_sorted(messages.begin(), messages.end(), by_id)) {
    sorted = messages;
    std::stable_sort(sorted.begin(), sorted.end(), by_id);
    input = &sorted;
  }
  PartialVector<T> out;
  for (const auto& m : *input) {
    if (out.empty() || out.back().id != m.id) {
      out.push_back({m.id, program.reduce(program.identity, m.value)});
    } else {
      out.back().value = program.reduce(out.back().value, m.value);
    }
  }
  return out;
}

template <typename T>
double abs_delta(T new_value, T old_value) {
  if (new_value == old_value) return 0.0;
  return std::abs(static_cast<double>(new_value) - static_cast<double>(old_value));
}

template <typename T>
AssignBlockResult<T> assign_block(const VectorBlock<T>& vector, const PartialVector<T>& reduced,
                                  const GimvProgram<T>& program) {
  AssignBlockResult<T> result;
  result.block.index = vector.index;
  result.block.region = vector.region;
  result.block.entries.reserve(vector.entries.size());
  auto r = reduced.begin();
  for (const auto& e : vector.entries) {
    T incoming = program.identity;
    if (r != reduced.end() && r->id < e.id) {
      throw UnknownVertex("vertex " + std::to_string(r->id) + " not in vector block " + std::to_string(vector.index));
    }
    if (r != reduced.end() && r->id == e.id) {
      incoming = r->value;
      ++r;
    }
    const auto a = program.assign(e.id, e.value, incoming);
    result.block.entries.push_back({e.id, a.value});
    if (a.changed) ++result.changed_count;
    result.l1_delta += abs_delta(a.value, e.value);
  }
  if (r != reduced.end()) {
    throw UnknownVertex("vertex " + std::to_string(r->id) + " not in vector block " + std::to_string(vector.index));
  }
  return result;
}

template <typename T>
void merge_partial(PartialVector<T>& acc, const PartialVector<T>& incoming, const GimvProgram<T>& program) {
  if (incoming.empty()) return;
  if (acc.empty()) {
    acc = incoming;
    return;
  }
  PartialVector<T> out;
  out.reserve(acc.size() + incoming.size());
  auto a = acc.begin();
  auto b = incoming.begin();
  while (a != acc.end() || b != incoming.end()) {
    if (b == incoming.end() || (a != acc.end() && a->id < b->id)) {
      out.push_back(*a++);
    } else if (a == acc.end() || b->id < a->id) {
      out.push_back({b->id, program.reduce(program.identity, b->value)});
      ++b;
    } else {
      out.push_back({a->id, program.reduce(a->value, b->value)});
      ++a;
      ++b;
    }
  }
  acc = std::move(out);
}

#define PMV_INSTANTIATE(T)                                                                                    \
  template MessageSet<T> combine2_block(const MatrixBlock&, const VectorBlock<T>&, const GimvProgram<T>&);   \
  template PartialVector<T> combine_all_block(const MessageSet<T>&, const GimvProgram<T>&);                  \
  template AssignBlockResult<T> assign_block(const VectorBlock<T>&, const PartialVector<T>&,                 \
                                             const GimvProgram<T>&);                                         \
  template void merge_partial(PartialVector<T>&, const PartialVector<T>&, const GimvProgram<T>&);            \
  template double abs_delta(T, T);                                                                          \
  template PartialVector<T> sub_multiply(const MatrixBlock&, std::span<const VectorEntry<T>>, const GimvProgram<T>&);

PMV_INSTANTIATE(double)
PMV_INSTANTIATE(std::int64_t)

#undef PMV_INSTANTIATE

}  // namespace pmv
