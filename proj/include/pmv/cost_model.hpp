#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmv/common.hpp"
#include "pmv/degree_stats.hpp"

namespace pmv {

enum class Strategy { horizontal, vertical, selective, hybrid };

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& name);

/// Expected vector-element I/O of one iteration.
struct CostEstimate {
  Strategy strategy = Strategy::horizontal;
  Theta theta;  // meaningful for hybrid
  double vector_read = 0.0;
  double intermediate_transfer = 0.0;  // writes + reads of sub-multiplication results
  double vector_write = 0.0;

  double expected_elements() const { return vector_read + intermediate_transfer + vector_write; }
};

/// (b + 1)|v|: every worker reads the whole vector, the result is written once.
CostEstimate cost_horizontal(std::uint64_t blocks, std::uint64_t vertex_count);

/// 2|v| (1 + (b-1)(1 - (1 - |M|/|v|^2)^(|v|/b))). Throws DensityOutOfRange
/// when |M| > |v|^2.
CostEstimate cost_vertical(std::uint64_t blocks, std::uint64_t vertex_count, std::uint64_t edge_count);

/// (1 - |M|/|v|^2)^(|v|/b), the probability that a row of a sub-matrix is empty
/// under uniformly spread non-zeros.
double empty_row_probability(std::uint64_t blocks, std::uint64_t vertex_count, std::uint64_t edge_count);

/// Horizontal iff empty_row_probability < 0.5; a tie goes to vertical.
Strategy select_strategy(std::uint64_t blocks, std::uint64_t vertex_count, std::uint64_t edge_count);

/// Degree-aware hybrid cost:
///   |v| (P + b(1 - P) + 1) + 2|v|(b-1) sum_d (1 - (1 - P/b)^d) p_in(d),  P = P_out(theta).
/// The sum runs over the observed in-degree histogram keys.
CostEstimate cost_hybrid(std::uint64_t blocks, std::uint64_t vertex_count, Theta theta, const DegreeStats& stats);

/// {0, 1, 2, 4, ..., 2^20, inf}
std::vector<Theta> default_theta_candidates();

struct ThetaChoice {
  Theta theta;
  CostEstimate cost;
};

/// Argmin of cost_hybrid over the candidates; ties go to the smaller theta.
ThetaChoice choose_theta(std::uint64_t blocks, std::uint64_t vertex_count, const DegreeStats& stats,
                         const std::vector<Theta>& candidates = default_theta_candidates());

}  // namespace pmv
