#include <coarse_minor/distortion.hpp>
#include <coarse_minor/generators.hpp>
#include <coarse_minor/json_io.hpp>
#include <coarse_minor/minor_check.hpp>
#include <coarse_minor/partition.hpp>
#include <coarse_minor/theta_finder.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace coarse_minor;

namespace {

// Documents cross the boundary as plain dicts, going through the same JSON
// schemas the command line tool writes.
py::object to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Json from_py(const py::object& o) {
  auto text = py::module_::import("json").attr("dumps")(o).cast<std::string>();
  return Json::parse(text);
}

ProfileMode parse_mode(const std::string& mode) {
  if (mode == "paper") return ProfileMode::PaperExact;
  if (mode == "scaled") return ProfileMode::Scaled;
  throw std::invalid_argument("profile must be 'paper' or 'scaled', got '" + mode + "'");
}

ConstantsProfile make_profile(std::uint32_t t, std::uint64_t k, const std::string& mode) {
  return parse_mode(mode) == ProfileMode::Scaled ? scaled_profile(t, k) : compute_constants(t, k);
}

PatternGraph parse_pattern(const std::string& family, std::uint32_t n) {
  if (family == "k2t") return PatternGraph::k2t(n);
  if (family == "theta") return PatternGraph::theta(n);
  if (family == "cycle") return PatternGraph::cycle(n);
  throw std::invalid_argument("unknown pattern family '" + family + "'");
}

VertexSet as_set(const std::vector<Vertex>& v) { return VertexSet::from_unsorted(v); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fat minors, layered partitions and distortion bounds for undirected graphs.";

  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
  py::register_exception<PartitionError>(m, "PartitionError", PyExc_ValueError);
  py::register_exception<AuditError>(m, "AuditError", PyExc_ValueError);
  py::register_exception<JsonFormatError>(m, "JsonFormatError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Edge>& edges) { return Graph(n, edges); }),
           py::arg("vertex_count"), py::arg("edges"))
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("edges", &Graph::edges)
      .def("neighbors", [](const Graph& g, Vertex v) {
        g.check_vertex(v);
        auto nb = g.neighbors(v);
        return std::vector<Vertex>(nb.begin(), nb.end());
      })
      .def("has_edge", &Graph::has_edge)
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.vertex_count()) + " m=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("generate", &generate, py::arg("spec"),
        "Build a graph from a generator spec such as 'path:10' or 'theta:3,50'.");

  m.def("distance", [](const Graph& g, Vertex u, Vertex v) -> py::object {
    Distance d = distance(g, u, v);
    if (d == kInfinity) return py::none();
    return py::int_(d);
  });
  m.def("set_distance", [](const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b) -> py::object {
    Distance d = distance_sets(g, as_set(a), as_set(b));
    if (d == kInfinity) return py::none();
    return py::int_(d);
  });
  m.def("is_connected", &is_connected);

  m.def("compute_constants", [](std::uint32_t t, std::uint64_t k, const std::string& mode) {
    return to_py(to_json(make_profile(t, k, mode)));
  }, py::arg("t"), py::arg("k"), py::arg("profile") = "paper");

  m.def("verify_fat_model", [](const Graph& g, const py::object& model, Distance k) {
    return to_py(to_json(verify_fat_model(g, model_from_json(from_py(model)), k)));
  }, py::arg("graph"), py::arg("model"), py::arg("k"));

  m.def("find_dispersed_tuple", [](const Graph& g, const std::vector<Vertex>& s, std::uint32_t t,
                                   Distance sep) -> py::object {
    auto found = find_dispersed_tuple(g, as_set(s), t, sep);
    if (!found) return py::none();
    return py::cast(found->vector());
  }, py::arg("graph"), py::arg("vertices"), py::arg("t"), py::arg("sep"));

  m.def("theta_from_dispersion", [](const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y,
                                    std::uint32_t t, Distance k) {
    return to_py(to_json(theta_from_dispersion(g, {as_set(x), as_set(y), t, k})));
  }, py::arg("graph"), py::arg("x_set"), py::arg("y_set"), py::arg("t"), py::arg("k"));

  m.def("build_partition", [](const Graph& g, std::uint32_t t, std::uint64_t k, const std::string& mode,
                              std::optional<Vertex> root) {
    auto profile = make_profile(t, k, mode);
    BuildOutcome out;
    {
      py::gil_scoped_release release;
      out = build_partition(g, profile, {root, false});
    }
    py::dict d;
    d["profile"] = to_py(to_json(profile));
    if (out.partition) {
      d["kind"] = "partition";
      d["partition"] = to_py(to_json(*out.partition, profile));
    } else {
      d["kind"] = "witness";
      d["rule"] = out.witness_rule;
      d["witness"] = to_py(to_json(*out.witness));
    }
    return d;
  }, py::arg("graph"), py::arg("t") = 3, py::arg("k") = 1, py::arg("profile") = "paper",
     py::arg("root") = std::nullopt);

  m.def("verify_partition", [](const Graph& g, const py::object& partition) {
    auto doc = partition_from_json(from_py(partition));
    if (!doc.profile) throw JsonFormatError("partition document carries no profile");
    return to_py(to_json(verify_partition(g, doc.partition, *doc.profile)));
  }, py::arg("graph"), py::arg("partition"));

  m.def("quasi_isometry", [](const Graph& g, const py::object& partition) {
    auto doc = partition_from_json(from_py(partition));
    return to_py(to_json(quasi_isometry(g, doc.partition)));
  }, py::arg("graph"), py::arg("partition"));

  m.def("has_minor", [](const Graph& g, const std::string& family, std::uint32_t n, std::uint64_t max_nodes) {
    MinorQuery q;
    q.host = &g;
    q.pattern = parse_pattern(family, n);
    q.budget.max_nodes = max_nodes;
    MinorResult r;
    {
      py::gil_scoped_release release;
      r = has_minor(q);
    }
    return to_py(to_json(r));
  }, py::arg("graph"), py::arg("family"), py::arg("n"), py::arg("max_nodes") = 200'000'000);

  m.def("approximate_distortion", [](const Graph& g, std::uint32_t t, const std::string& mode, bool exhaustive,
                                     bool paranoid, unsigned jobs, std::uint64_t max_k) {
    DistortionOptions o;
    o.t = t;
    o.mode = parse_mode(mode);
    o.exhaustive = exhaustive;
    o.paranoid = paranoid;
    o.jobs = jobs;
    o.max_k = max_k;
    DistortionReport r;
    {
      py::gil_scoped_release release;
      r = approximate_distortion(g, o);
    }
    return to_py(to_json(r));
  }, py::arg("graph"), py::arg("t") = 3, py::arg("profile") = "paper", py::arg("exhaustive") = false,
     py::arg("paranoid") = false, py::arg("jobs") = 1, py::arg("max_k") = 0);
}
