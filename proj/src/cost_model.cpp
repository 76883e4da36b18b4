#include "pmv/cost_model.hpp"

#include <cmath>

namespace pmv {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::horizontal: return "horizontal";
    case Strategy::vertical: return "vertical";
    case Strategy::selective: return "selective";
    case Strategy::hybrid: return "hybrid";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "horizontal") return Strategy::horizontal;
  if (name == "vertical") return Strategy::vertical;
  if (name == "selective") return Strategy::selective;
  if (name == "hybrid") return Strategy::hybrid;
  throw InvalidArgument("unknown strategy '" + name + "'");
}

namespace {

// (1 - x)^k in log space; |v|/b can be in the millions.
double pow_one_minus(double x, double k) {
  if (k == 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  if (x <= 0.0) return 1.0;
  return std::exp(k * std::log1p(-x));
}

}  // namespace

CostEstimate cost_horizontal(std::uint64_t blocks, std::uint64_t vertex_count) {
  if (blocks == 0) throw InvalidArgument("block count must be >= 1");
  const double n = static_cast<double>(vertex_count);
  CostEstimate c;
  c.strategy = Strategy::horizontal;
  c.theta = Theta(0);
  c.vector_read = static_cast<double>(blocks) * n;
  c.vector_write = n;
  return c;
}

double empty_row_probability(std::uint64_t blocks, std::uint64_t vertex_count, std::uint64_t edge_count) {
  if (blocks == 0) throw InvalidArgument("block count must be >= 1");
  const double n = static_cast<double>(vertex_count);
  const double m = static_cast<double>(edge_count);
  if (m > n * n) {
    throw DensityOutOfRange("edge count " + std::to_string(edge_count) + " exceeds |v|^2 for |v| = " +
                            std::to_string(vertex_count));
  }
  if (vertex_count == 0) return 1.0;
  return pow_one_minus(m / (n * n), n / static_cast<double>(blocks));
}

CostEstimate cost_vertical(std::uint64_t blocks, std::uint64_t vertex_count, std::uint64_t edge_count) {
  const double base = empty_row_probability(blocks, vertex_count, edge_count);
  const double n = static_cast<double>(vertex_count);
  const double b = static_cast<double>(blocks);
  CostEstimate c;
  c.strategy = Strategy::vertical;
  c.theta = Theta::infinite();
  c.vector_read = n;
  // 2 b (b-1) E|v^(i,j)| with E|v^(i,j)| = (|v|/b)(1 - base)
  c.intermediate_transfer = 2.0 * (b - 1.0) * n * (1.0 - base);
  c.vector_write = n;
  return c;
}

Strategy select_strategy(std::uint64_t blocks, std::uint64_t vertex_count, std::uint64_t edge_count) {
  return empty_row_probability(blocks, vertex_count, edge_count) < 0.5 ? Strategy::horizontal : Strategy::vertical;
}

CostEstimate cost_hybrid(std::uint64_t blocks, std::uint64_t vertex_count, Theta theta, const DegreeStats& stats) {
  if (blocks == 0) throw InvalidArgument("block count must be >= 1");
  const double n = static_cast<double>(vertex_count);
  const double b = static_cast<double>(blocks);
  const double p_out = stats.p_out_below(theta);

  double expected_fill = 0.0;  // E over in-degrees of P(row receives a sparse sub-result)
  if (stats.vertex_count > 0) {
    for (const auto& [d, count] : stats.in_hist) {
      const double p_in = static_cast<double>(count) / static_cast<double>(stats.vertex_count);
      expected_fill += (1.0 - pow_one_minus(p_out / b, static_cast<double>(d))) * p_in;
    }
  }

  CostEstimate c;
  c.strategy = Strategy::hybrid;
  c.theta = theta;
  c.vector_read = n * p_out + b * n * (1.0 - p_out);
  c.intermediate_transfer = 2.0 * n * (b - 1.0) * expected_fill;
  c.vector_write = n;
  return c;
}

std::vector<Theta> default_theta_candidates() {
  std::vector<Theta> out{Theta(0)};
  for (unsigned k = 0; k <= 20; ++k) out.emplace_back(std::uint64_t{1} << k);
  out.push_back(Theta::infinite());
  return out;
}

ThetaChoice choose_theta(std::uint64_t blocks, std::uint64_t vertex_count, const DegreeStats& stats,
                         const std::vector<Theta>& candidates) {
  if (candidates.empty()) throw InvalidArgument("theta candidate list is empty");
  ThetaChoice best{candidates.front(), cost_hybrid(blocks, vertex_count, candidates.front(), stats)};
  for (const Theta t : candidates) {
    const CostEstimate c = cost_hybrid(blocks, vertex_count, t, stats);
    const double cost = c.expected_elements();
    const double best_cost = best.cost.expected_elements();
    if (cost < best_cost || (cost == best_cost && t < best.theta)) best = {t, c};
  }
  return best;
}

}  // namespace pmv
