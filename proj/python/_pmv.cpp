#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pmv/cost_model.hpp"
#include "pmv/dataset.hpp"
#include "pmv/edge_list.hpp"
#include "pmv/engine.hpp"
#include "pmv/json_io.hpp"
#include "pmv/partitioner.hpp"
#include "pmv/reference.hpp"

namespace py = pybind11;
using namespace pmv;

namespace {

Theta to_theta(const py::object& value) {
  if (value.is_none()) return Theta::infinite();
  if (py::isinstance<py::str>(value)) return Theta::parse(value.cast<std::string>());
  const auto v = value.cast<long long>();
  if (v < 0) throw InvalidArgument("theta must be non-negative");
  return Theta(static_cast<std::uint64_t>(v));
}

py::object from_theta(Theta t) {
  if (t.is_infinite()) return py::str("inf");
  return py::int_(t.value());
}

EdgeList make_edges(const std::vector<std::tuple<VertexId, VertexId, double>>& edges, std::uint64_t vertex_count) {
  EdgeList list;
  list.vertex_count = vertex_count;
  list.edges.reserve(edges.size());
  for (const auto& [s, d, w] : edges) list.edges.push_back({s, d, w});
  return list;
}

std::vector<std::tuple<VertexId, VertexId, double>> edge_tuples(const EdgeList& list) {
  std::vector<std::tuple<VertexId, VertexId, double>> out;
  out.reserve(list.edges.size());
  for (const auto& e : list.edges) out.emplace_back(e.src, e.dst, e.weight);
  return out;
}

PartitionedGraph do_partition(const EdgeList& edges, BlockIndex blocks, const std::string& psi,
                              const py::object& theta, std::uint32_t workers, std::uint64_t memory_budget) {
  PartitionPlan plan;
  plan.blocks = blocks;
  plan.psi = parse_psi(psi);
  plan.workers = workers;
  plan.memory_budget = memory_budget;
  if (py::isinstance<py::str>(theta) && theta.cast<std::string>() == "auto") {
    plan.theta_auto = true;
  } else {
    plan.theta = to_theta(theta);
  }
  return partition(edges, plan);
}

template <typename T>
py::tuple finish(const RunReport<T>& r) {
  std::vector<double> values(r.final_vector.begin(), r.final_vector.end());
  return py::make_tuple(report_to_json(r).dump(), values);
}

py::tuple do_run(const PartitionedGraph& graph, const std::string& algorithm, const std::string& strategy,
                 std::uint64_t iterations, std::optional<double> epsilon, VertexId source, const py::object& theta,
                 std::uint32_t workers, std::optional<std::uint64_t> schedule_seed, const std::string& init) {
  RunConfig config;
  config.strategy = parse_strategy(strategy);
  config.max_iterations = iterations;
  config.workers = workers;
  config.schedule_seed = schedule_seed;
  if (!theta.is_none()) config.theta = to_theta(theta);
  if (init != "uniform" && init != "one") throw InvalidArgument("init must be 'uniform' or 'one'");
  const PagerankInit pinit = init == "one" ? PagerankInit::one : PagerankInit::inverse_vertex_count;
  const AnyProgram program = catalog_program(algorithm, source, epsilon.value_or(0.0), pinit);
  py::tuple out;
  std::visit(
      [&](const auto& p) {
        using T = typename std::decay_t<decltype(p)>::value_type;
        RunReport<T> report;
        {
          py::gil_scoped_release release;
          report = run(graph, p, config);
        }
        out = finish(report);
      },
      program);
  return out;
}

std::vector<double> do_reference(const EdgeList& edges, const std::string& algorithm, std::uint64_t iterations,
                                 VertexId source) {
  const AnyProgram program = catalog_program(algorithm, source);
  return std::visit(
      [&](const auto& p) {
        using T = typename std::decay_t<decltype(p)>::value_type;
        const auto v = reference_multiply<T>(edges, initial_vector(p, edges.vertex_count), p, iterations);
        return std::vector<double>(v.begin(), v.end());
      },
      program);
}

py::dict cost_dict(const CostEstimate& c) {
  py::dict d;
  d["strategy"] = to_string(c.strategy);
  d["theta"] = from_theta(c.theta);
  d["vector_read"] = c.vector_read;
  d["intermediate_transfer"] = c.intermediate_transfer;
  d["vector_write"] = c.vector_write;
  d["expected_elements"] = c.expected_elements();
  return d;
}

}  // namespace

PYBIND11_MODULE(_pmv, m) {
  m.doc() = "Partitioned iterative matrix-vector multiplication engine";

  py::register_exception<Error>(m, "PmvError", PyExc_ValueError);

  py::class_<EdgeList>(m, "EdgeList")
      .def(py::init(&make_edges), py::arg("edges"), py::arg("vertex_count") = 0)
      .def_readonly("vertex_count", &EdgeList::vertex_count)
      .def_property_readonly("edges", &edge_tuples)
      .def("__len__", [](const EdgeList& e) { return e.edges.size(); });

  py::class_<PartitionedGraph>(m, "PartitionedGraph")
      .def_property_readonly("blocks", &PartitionedGraph::blocks)
      .def_property_readonly("theta", [](const PartitionedGraph& g) { return from_theta(g.theta()); })
      .def_property_readonly("vertex_count", &PartitionedGraph::vertex_count)
      .def_property_readonly("edge_count", &PartitionedGraph::edge_count)
      .def_readonly("duplicates_removed", &PartitionedGraph::duplicates_removed)
      .def("members", [](const PartitionedGraph& g, BlockIndex i, bool dense) {
        if (i >= g.blocks()) throw py::index_error("block index out of range");
        return g.members(i, dense ? Region::dense : Region::sparse);
      }, py::arg("block"), py::arg("dense") = false)
      .def("block_size", [](const PartitionedGraph& g, BlockIndex i, BlockIndex j) {
        if (i >= g.blocks() || j >= g.blocks()) throw py::index_error("block index out of range");
        return g.block(i, j, Region::sparse).triples.size() + g.block(i, j, Region::dense).triples.size();
      }, py::arg("row"), py::arg("col"));

  m.def("parse_edge_list", [](const std::string& path) { return parse_edge_list(path); }, py::arg("path"));
  m.def("densify", [](const EdgeList& e) { return densify(e).edges; }, py::arg("edges"));
  m.def("generate_rmat",
        [](unsigned scale, std::uint64_t edges, double a, double b, double c, double d, std::uint64_t seed) {
          return generate_rmat({scale, edges, a, b, c, d, seed});
        },
        py::arg("scale"), py::arg("edges"), py::arg("a") = 0.57, py::arg("b") = 0.19, py::arg("c") = 0.19,
        py::arg("d") = 0.05, py::arg("seed") = 1);

  m.def("partition", &do_partition, py::arg("edges"), py::arg("blocks") = 0, py::arg("psi") = "hash",
        py::arg("theta") = py::str("inf"), py::arg("workers") = 1, py::arg("memory_budget") = std::uint64_t{1} << 40);
  m.def("save_dataset", [](const std::string& dir, const PartitionedGraph& g) {
    save_dataset(dir, g, identity_id_map(g.vertex_count()));
  }, py::arg("directory"), py::arg("graph"));
  m.def("load_dataset", [](const std::string& dir) { return load_dataset(dir).graph; }, py::arg("directory"));

  m.def("run", &do_run, py::arg("graph"), py::arg("algorithm") = "pagerank", py::arg("strategy") = "hybrid",
        py::arg("iterations") = 8, py::arg("epsilon") = py::none(), py::arg("source") = 0,
        py::arg("theta") = py::none(), py::arg("workers") = 1, py::arg("schedule_seed") = py::none(),
        py::arg("init") = "uniform");
  m.def("reference_multiply", &do_reference, py::arg("edges"), py::arg("algorithm"), py::arg("iterations"),
        py::arg("source") = 0);

  m.def("cost_horizontal", [](std::uint64_t b, std::uint64_t n) { return cost_dict(cost_horizontal(b, n)); },
        py::arg("blocks"), py::arg("vertex_count"));
  m.def("cost_vertical",
        [](std::uint64_t b, std::uint64_t n, std::uint64_t e) { return cost_dict(cost_vertical(b, n, e)); },
        py::arg("blocks"), py::arg("vertex_count"), py::arg("edge_count"));
  m.def("select_strategy",
        [](std::uint64_t b, std::uint64_t n, std::uint64_t e) { return to_string(select_strategy(b, n, e)); },
        py::arg("blocks"), py::arg("vertex_count"), py::arg("edge_count"));
  m.def("cost_hybrid", [](const PartitionedGraph& g, const py::object& theta) {
    return cost_dict(cost_hybrid(g.blocks(), g.vertex_count(), to_theta(theta), g.stats));
  }, py::arg("graph"), py::arg("theta"));
  m.def("choose_theta", [](const PartitionedGraph& g) {
    const auto c = choose_theta(g.blocks(), g.vertex_count(), g.stats);
    return py::make_tuple(from_theta(c.theta), cost_dict(c.cost));
  }, py::arg("graph"));
}
