#include "pmv/reference.hpp"

#include <set>
#include <utility>

namespace pmv {

template <typename T>
std::vector<std::vector<T>> reference_iterates(const EdgeList& edges, std::vector<T> initial,
                                               const GimvProgram<T>& program, std::uint64_t iterations) {
  const std::size_t n = initial.size();
  std::set<std::pair<VertexId, VertexId>> seen;
  std::vector<Edge> unique;
  std::vector<std::uint64_t> out_degree(n, 0);
  for (const Edge& e : edges.edges) {
    if (e.src >= n || e.dst >= n) throw InvalidVertex("edge endpoint outside the vector");
    if (seen.emplace(e.src, e.dst).second) {
      unique.push_back(e);
      ++out_degree[e.src];
    }
  }
  std::vector<double> m(unique.size());
  for (std::size_t k = 0; k < unique.size(); ++k) {
    m[k] = matrix_value(program.matrix_rule, unique[k].weight, out_degree[unique[k].src]);
  }

  std::vector<std::vector<T>> out;
  std::vector<T> v = std::move(initial);
  for (std::uint64_t it = 0; it < iterations; ++it) {
    std::vector<T> r(n, program.identity);
    for (std::size_t k = 0; k < unique.size(); ++k) {
      r[unique[k].dst] = program.reduce(r[unique[k].dst], program.combine2(m[k], v[unique[k].src]));
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = program.assign(i, v[i], r[i]).value;
    out.push_back(v);
  }
  return out;
}

template std::vector<std::vector<double>> reference_iterates(const EdgeList&, std::vector<double>,
                                                             const GimvProgram<double>&, std::uint64_t);
template std::vector<std::vector<std::int64_t>> reference_iterates(const EdgeList&, std::vector<std::int64_t>,
                                                                   const GimvProgram<std::int64_t>&, std::uint64_t);

}  // namespace pmv
