#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "moocd/encoding.hpp"
#include "moocd/harness.hpp"
#include "moocd/metrics.hpp"
#include "moocd/moea.hpp"
#include "moocd/objectives.hpp"
#include "moocd/pareto.hpp"

namespace py = pybind11;
using namespace moocd;

namespace {

py::dict raw_dict(const RawObjectives& r) {
  py::dict d;
  d["kkm"] = r.kkm;
  d["rc"] = r.rc;
  d["cf"] = r.cf;
  d["cs"] = r.cs;
  d["q"] = r.q;
  return d;
}

py::dict member_dict(const Individual& ind) {
  py::dict d;
  d["objectives"] = ind.objectives.values;
  d["raw"] = raw_dict(ind.objectives.raw);
  d["genes"] = ind.genotype.genes;
  d["assignment"] = ind.partition.assignment();
  d["communities"] = ind.partition.community_count();
  return d;
}

Partition partition_of(const Graph& g, const std::vector<NodeId>& assignment) {
  if (assignment.size() != g.node_count()) throw ValidationError("assignment length differs from node count");
  return Partition(assignment);
}

}  // namespace

PYBIND11_MODULE(_moocd, m) {
  m.doc() = "Multi-objective evolutionary community detection";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ModularityUndefined>(m, "ModularityUndefined", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Graph::Edge>& edges) { return Graph::from_edges(n, edges); }),
           py::arg("node_count"), py::arg("edges"))
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("labels", &Graph::labels)
      .def("edges", &Graph::edges)
      .def("neighbors", [](const Graph& g, NodeId v) {
        if (v < 0 || static_cast<std::size_t>(v) >= g.node_count()) throw py::index_error("node out of range");
        auto s = g.neighbors(v);
        return std::vector<NodeId>(s.begin(), s.end());
      });

  m.def(
      "load_dataset",
      [](const std::string& path, const std::string& labels) {
        Dataset d = load_dataset(path, labels);
        std::optional<std::vector<NodeId>> truth;
        if (d.ground_truth) truth = d.ground_truth->assignment();
        return py::make_tuple(std::move(d.graph), truth);
      },
      py::arg("path"), py::arg("labels") = "",
      "Load an edge list or GML file; returns (graph, ground-truth assignment or None).");

  m.def("decode", [](const Graph& g, const std::vector<NodeId>& genes) {
    Genotype x{genes};
    if (genes.size() != g.node_count() || !is_feasible(g, x)) throw ValidationError("infeasible genotype");
    return decode(g, x).assignment();
  });

  m.def(
      "objectives",
      [](const Graph& g, const std::vector<NodeId>& assignment, double alpha, double r) {
        return raw_dict(compute_objectives(g, partition_of(g, assignment), {alpha, r}));
      },
      py::arg("graph"), py::arg("assignment"), py::arg("alpha") = 1.0, py::arg("r") = 1.0);

  m.def("modularity", [](const Graph& g, const std::vector<NodeId>& assignment) {
    return modularity(g, partition_of(g, assignment));
  });

  m.def("nmi", [](const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
    return nmi(Partition(a), Partition(b));
  });

  m.def("igd", [](const std::vector<ObjectivePoint>& front, const std::vector<ObjectivePoint>& ref) {
    return igd(front, ref);
  });
  m.def("hypervolume", [](const std::vector<ObjectivePoint>& front, const ObjectivePoint& reference_point) {
    return hypervolume(front, reference_point);
  });
  m.def("hv_reference_point", [](const std::vector<ObjectivePoint>& front, const std::vector<ObjectivePoint>& ref) {
    return hv_reference_point(front, ref);
  });
  m.def("hv_igd_ratio", [](const std::vector<ObjectivePoint>& front, const std::vector<ObjectivePoint>& ref,
                           const ObjectivePoint& nadir) { return hv_igd_ratio(front, ref, nadir); });
  m.def("nondominated_sort", [](const std::vector<ObjectivePoint>& pts) { return fast_nondominated_sort(pts); });

  m.def(
      "run",
      [](const Graph& g, const std::string& variant, const std::string& algorithm, int population, int generations,
         double crossover, double mutation, std::uint64_t seed, double alpha, double r) {
        RunConfig c;
        c.variant = parse_variant(variant);
        c.algorithm = parse_algorithm(algorithm);
        c.population_size = population;
        c.generations = generations;
        c.crossover_prob = crossover;
        c.mutation_prob = mutation;
        c.seed = seed;
        c.params = {alpha, r};
        RunResult result;
        {
          py::gil_scoped_release release;
          result = run(g, c);
        }
        py::list front;
        for (const auto& ind : result.final_front) front.append(member_dict(ind));
        py::dict out;
        out["front"] = front;
        out["history"] = result.history;
        out["mutation_prob"] = c.mutation_rate_for(g);
        return out;
      },
      py::arg("graph"), py::arg("variant") = "krm", py::arg("algorithm") = "nsga3", py::arg("population") = 100,
      py::arg("generations") = 100, py::arg("crossover") = 0.8, py::arg("mutation") = -1.0, py::arg("seed") = 1,
      py::arg("alpha") = 1.0, py::arg("r") = 1.0,
      "Run one optimisation. A negative mutation rate means 1/n.");
}
