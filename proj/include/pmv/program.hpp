#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>

#include "pmv/common.hpp"

namespace pmv {

/// How an edge q -> p of weight w becomes the matrix element m_{p,q}.
enum class MatrixValueRule {
  column_stochastic,  // 1 / out(q)
  edge_weight,        // w
  unit,               // 1
};

double matrix_value(MatrixValueRule rule, double weight, std::uint64_t out_degree_of_source);

struct ConvergenceRule {
  enum class Kind { l1_norm_below, no_element_changed, fixed_iterations };

  Kind kind = Kind::no_element_changed;
  double epsilon = 0.0;
  std::uint64_t iterations = 0;

  static ConvergenceRule l1_norm_below(double epsilon) { return {Kind::l1_norm_below, epsilon, 0}; }
  static ConvergenceRule no_element_changed() { return {Kind::no_element_changed, 0.0, 0}; }
  static ConvergenceRule fixed_iterations(std::uint64_t n) { return {Kind::fixed_iterations, 0.0, n}; }
};

template <typename T>
struct AssignResult {
  T value;
  bool changed;
};

struct ProgramContext {
  std::uint64_t vertex_count = 0;
};

/// A GIM-V vertex program over values of type T (double for real-valued
/// programs, std::int64_t for label programs).
///
/// `reduce` must be commutative and associative with `identity` as its
/// neutral element; the engines fold partial results in arbitrary groupings.
template <typename T>
struct GimvProgram {
  using value_type = T;

  std::string name;
  std::function<T(double matrix_value, T vector_value)> combine2;
  T identity{};
  std::function<T(T, T)> reduce;
  std::function<AssignResult<T>(VertexId, T old_value, T reduced)> assign;
  std::function<T(VertexId, const ProgramContext&)> initial;
  MatrixValueRule matrix_rule = MatrixValueRule::unit;
  ConvergenceRule convergence;
};

using RealProgram = GimvProgram<double>;
using LabelProgram = GimvProgram<std::int64_t>;
using AnyProgram = std::variant<RealProgram, LabelProgram>;

inline constexpr double kDefaultAssignEpsilon = 1e-12;

enum class PagerankInit {
  inverse_vertex_count,  // v_i = 1/|v|
  one,                   // v_i = 1
};

// Built-in catalog. Operations follow the standard GIM-V formulations:
//   pagerank: m*v, sum, 0.15 + 0.85*r
//   rwr:      m*v, sum, restart + (1-restart)*r at the source, (1-restart)*r elsewhere
//   sssp:     m+v, min, min(v, r)
//   cc:       v,   min, min(v, r)

RealProgram pagerank(double l1_epsilon = 0.0, PagerankInit init = PagerankInit::inverse_vertex_count);
RealProgram rwr(VertexId source, double restart = 0.15, double l1_epsilon = 0.0,
                PagerankInit init = PagerankInit::inverse_vertex_count);
RealProgram sssp(VertexId source);
LabelProgram connected_components();

/// Looks up a catalog program by name ("pagerank", "rwr", "sssp", "cc").
AnyProgram catalog_program(const std::string& name, VertexId source = 0, double l1_epsilon = 0.0,
                           PagerankInit init = PagerankInit::inverse_vertex_count);

// Block operators.

/// Emits one (p, combine2(m_{p,q}, v_q)) per triple, in triple order.
template <typename T>
MessageSet<T> combine2_block(const MatrixBlock& block, const VectorBlock<T>& vector,
                             const GimvProgram<T>& program);

/// Folds messages per row vertex, starting from the identity. Output is sorted
/// by vertex; messages are folded in their input order.
template <typename T>
PartialVector<T> combine_all_block(const MessageSet<T>& messages, const GimvProgram<T>& program);

/// combine_all_block(combine2_block(block, vector)) without materializing the
/// message set. Relies on triples being sorted by row.
template <typename T>
PartialVector<T> sub_multiply(const MatrixBlock& block, std::span<const VectorEntry<T>> vector,
                              const GimvProgram<T>& program);

template <typename T>
struct AssignBlockResult {
  VectorBlock<T> block;
  std::uint64_t changed_count = 0;
  double l1_delta = 0.0;
};

/// Applies assign to every vertex of the block; vertices absent from
/// `reduced` receive the identity.
template <typename T>
AssignBlockResult<T> assign_block(const VectorBlock<T>& vector, const PartialVector<T>& reduced,
                                  const GimvProgram<T>& program);

/// Merges two sorted partial vectors, reducing entries present in both as
/// reduce(acc, incoming).
template <typename T>
void merge_partial(PartialVector<T>& acc, const PartialVector<T>& incoming, const GimvProgram<T>& program);

/// |new - old| contribution for the L1 convergence rule (0 when equal).
template <typename T>
double abs_delta(T new_value, T old_value);

}  // namespace pmv
