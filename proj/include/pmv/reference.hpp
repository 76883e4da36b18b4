#pragma once

#include <cstdint>
#include <vector>

#include "pmv/edge_list.hpp"
#include "pmv/program.hpp"

namespace pmv {

/// Serial v' = M (x) v on a single worker, the correctness oracle for every
/// strategy. Edges are deduplicated on (src, dst) keeping the first weight,
/// and matrix values follow the program's rule. Returns the vector after
/// each of the `iterations` steps.
template <typename T>
std::vector<std::vector<T>> reference_iterates(const EdgeList& edges, std::vector<T> initial,
                                               const GimvProgram<T>& program, std::uint64_t iterations);

template <typename T>
std::vector<T> reference_multiply(const EdgeList& edges, std::vector<T> initial, const GimvProgram<T>& program,
                                  std::uint64_t iterations) {
  if (iterations == 0) return initial;
  return reference_iterates(edges, std::move(initial), program, iterations).back();
}

/// Initial vector of a program over `vertex_count` dense ids.
template <typename T>
std::vector<T> initial_vector(const GimvProgram<T>& program, std::uint64_t vertex_count) {
  std::vector<T> v(vertex_count);
  const ProgramContext ctx{vertex_count};
  for (std::uint64_t i = 0; i < vertex_count; ++i) v[i] = program.initial(i, ctx);
  return v;
}

}  // namespace pmv
