#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "lpakit/ktheory.hpp"
#include "lpakit/matrixalg.hpp"

namespace py = pybind11;
using namespace lpakit;

namespace {

using PyGraph = std::shared_ptr<WeightedGraph>;

PyGraph graph_from_text(const std::string& text) {
  return std::make_shared<WeightedGraph>(WeightedGraph::parse(text));
}

PyGraph graph_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return graph_from_text(buf.str());
}

py::dict head_dict(const WeightedGraph& g, const HeadDescriptor& h) {
  py::dict d;
  d["base"] = g.vertex_name(h.base);
  switch (h.kind) {
    case HeadDescriptor::Kind::Cycle:
      d["kind"] = "cycle";
      d["length"] = h.cycle_length();
      break;
    case HeadDescriptor::Kind::Rose:
      d["kind"] = "rose";
      d["petals"] = h.petal_count();
      d["weights"] = h.weights;
      break;
    case HeadDescriptor::Kind::Sink:
      d["kind"] = "sink";
      break;
  }
  return d;
}

py::dict classify_py(const WeightedGraph& g) {
  GraphClass cls = classify(g);
  py::dict d;
  d["class"] = to_string(cls.tag);
  py::list heads;
  for (const auto& h : cls.heads) heads.append(head_dict(g, h));
  d["heads"] = heads;
  if (!cls.is_polycephaly()) d["reason"] = cls.reason;
  return d;
}

py::dict decompose_py(const WeightedGraph& g, const std::vector<std::string>& bases) {
  std::vector<VertexId> ids;
  for (const std::string& name : bases) {
    auto v = g.find_vertex(name);
    if (!v) throw std::invalid_argument("unknown vertex '" + name + "'");
    ids.push_back(*v);
  }
  DecompositionDescriptor dec = decompose(make_graph(g), ids);
  py::dict d;
  d["text"] = dec.to_string();
  py::list blocks;
  for (const Block& b : dec.blocks) {
    py::dict jb;
    jb["size"] = b.size;
    jb["base_ring"] = b.base.to_string();
    jb["shifts"] = b.shifts.entries;
    jb["modulus"] = b.shifts.modulus;
    jb["head"] = head_dict(*dec.graph, b.head);
    blocks.append(jb);
  }
  d["blocks"] = blocks;
  return d;
}

std::string graded_iso_py(const WeightedGraph& a, const WeightedGraph& b) {
  return to_string(graded_iso(decompose(make_graph(a)), decompose(make_graph(b))).verdict);
}

py::dict crossed_py(const WeightedGraph& g) {
  RingFormDescriptor r = crossed_product_status(decompose(make_graph(g)));
  py::dict d;
  d["form"] = to_string(r.form);
  if (!r.note.empty()) d["note"] = r.note;
  py::list ws;
  for (const auto& w : r.witnesses) {
    py::dict jw;
    jw["block"] = w.block;
    jw["permutation"] = w.permutation;
    jw["exponents"] = w.exponents;
    jw["pure_cycle"] = w.pure_cycle;
    ws.append(jw);
  }
  d["witnesses"] = ws;
  return d;
}

py::dict dim_py(const WeightedGraph& g, long long degree) {
  DecompositionDescriptor dec = decompose(make_graph(g));
  py::list blocks;
  bool infinite = false;
  std::size_t total = 0;
  for (const Block& b : dec.blocks) {
    if (b.base.kind == BlockBase::Kind::Rose || b.base.kind == BlockBase::Kind::WeightedRose) {
      infinite = true;
      blocks.append(py::none());
    } else {
      std::size_t n = component_dim(b.shifts, degree);
      total += n;
      blocks.append(n);
    }
  }
  py::dict d;
  d["degree"] = degree;
  d["blocks"] = blocks;
  if (infinite)
    d["total"] = py::none();
  else
    d["total"] = total;
  return d;
}

py::dict k0_py(const WeightedGraph& g) {
  AbelianGroupDescriptor k = k0(g);
  py::dict d;
  d["free_rank"] = k.free_rank;
  py::list fs;
  for (const auto& f : k.invariant_factors) fs.append(f.convert_to<long long>());
  d["invariant_factors"] = fs;
  d["text"] = k.to_string();
  return d;
}

py::dict monoid_py(const WeightedGraph& g) {
  MonoidPresentation p = monoid_presentation(make_graph(g));
  py::dict d;
  d["generators"] = p.generators;
  py::list rels;
  for (const auto& r : p.relations)
    rels.append(py::make_tuple(p.element_to_string(r.lhs), p.element_to_string(r.rhs)));
  d["relations"] = rels;
  return d;
}

py::dict monoid_check_py(const WeightedGraph& g, const std::string& property, std::size_t bound) {
  if (property != "refinement" && property != "separative")
    throw std::invalid_argument("property must be 'refinement' or 'separative'");
  MonoidPresentation p = monoid_presentation(make_graph(g));
  MonoidProperty prop =
      property == "refinement" ? MonoidProperty::Refinement : MonoidProperty::Separative;
  PropertyResult r = monoid_property_search(p, prop, bound);
  py::dict d;
  d["property"] = property;
  d["holds_up_to_bound"] = r.holds;
  d["bound"] = r.bound;
  py::list ws;
  for (const auto& w : r.witness) ws.append(p.element_to_string(w));
  d["witness"] = ws;
  return d;
}

py::dict monoid_eq_py(const WeightedGraph& g, const std::string& a, const std::string& b,
                      std::size_t bound) {
  MonoidPresentation p = monoid_presentation(make_graph(g));
  EqResult r = monoid_equal(p, p.parse_element(a), p.parse_element(b), bound);
  py::dict d;
  d["verdict"] = to_string(r.verdict);
  if (r.verdict == EqVerdict::Equal) {
    py::list chain;
    for (const auto& x : r.chain) chain.append(p.element_to_string(x));
    d["chain"] = chain;
  } else if (r.verdict == EqVerdict::Distinct) {
    d["functional"] = r.functional;
    d["modulus"] = r.modulus.convert_to<long long>();
    d["value_a"] = r.value_a.convert_to<long long>();
    d["value_b"] = r.value_b.convert_to<long long>();
  }
  return d;
}

py::dict reduce_py(const WeightedGraph& g, const std::string& expr) {
  Element nf = normal_form(parse_element(make_graph(g), expr));
  py::dict d;
  d["reduced"] = element_to_string(nf);
  auto deg = degree_of(nf);
  if (deg)
    d["degree"] = *deg;
  else
    d["degree"] = py::none();
  return d;
}

} // namespace

PYBIND11_MODULE(_lpakit, m) {
  m.doc() = "graded structure of (weighted) Leavitt path algebras";

  py::register_exception<parse_error>(m, "GraphParseError", PyExc_ValueError);
  py::register_exception<unsupported_error>(m, "UnsupportedError", PyExc_ValueError);

  py::class_<WeightedGraph, PyGraph>(m, "Graph")
      .def_static("parse", &graph_from_text, py::arg("text"))
      .def_static("load", &graph_from_file, py::arg("path"))
      .def("vertex_names",
           [](const WeightedGraph& g) {
             std::vector<std::string> names;
             for (VertexId v = 0; v < g.vertex_count(); ++v) names.push_back(g.vertex_name(v));
             return names;
           })
      .def("edges",
           [](const WeightedGraph& g) {
             py::list es;
             for (EdgeId e = 0; e < g.sedge_count(); ++e) {
               const SEdge& s = g.sedge(e);
               es.append(py::make_tuple(s.name, g.vertex_name(s.src), g.vertex_name(s.dst),
                                        s.weight));
             }
             return es;
           })
      .def("is_unweighted", &WeightedGraph::is_unweighted)
      .def("to_text", &WeightedGraph::to_text)
      .def("opposite",
           [](const WeightedGraph& g) { return std::make_shared<WeightedGraph>(opposite(g)); })
      .def("associated_weighted",
           [](const WeightedGraph& g) {
             return std::make_shared<WeightedGraph>(associated_weighted(g));
           })
      .def("tensor",
           [](const WeightedGraph& g, const WeightedGraph& h) {
             return std::make_shared<WeightedGraph>(tensor_attach(g, h));
           })
      .def("__repr__", [](const WeightedGraph& g) {
        std::ostringstream os;
        os << "<lpakit.Graph " << g.vertex_count() << " vertices, " << g.sedge_count()
           << " structured edges>";
        return os.str();
      });

  m.def("classify", &classify_py, py::arg("graph"));
  m.def("strongly_graded", &is_strongly_graded, py::arg("graph"));
  m.def("decompose", &decompose_py, py::arg("graph"),
        py::arg("base_vertices") = std::vector<std::string>{});
  m.def("graded_iso", &graded_iso_py, py::arg("graph1"), py::arg("graph2"));
  m.def("crossed_product", &crossed_py, py::arg("graph"));
  m.def("component_dims", &dim_py, py::arg("graph"), py::arg("degree"));
  m.def("k0", &k0_py, py::arg("graph"));
  m.def("monoid_presentation", &monoid_py, py::arg("graph"));
  m.def("monoid_check", &monoid_check_py, py::arg("graph"), py::arg("property"),
        py::arg("bound") = 12);
  m.def("monoid_eq", &monoid_eq_py, py::arg("graph"), py::arg("expr1"), py::arg("expr2"),
        py::arg("bound") = 12);
  m.def("reduce", &reduce_py, py::arg("graph"), py::arg("expr"));
}
