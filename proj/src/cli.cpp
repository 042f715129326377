#include "lpakit/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "lpakit/classify.hpp"
#include "lpakit/element.hpp"
#include "lpakit/graph.hpp"
#include "lpakit/ktheory.hpp"
#include "lpakit/structure.hpp"

namespace lpakit {

namespace {

using json = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

GraphPtr load_graph(const std::string& path) {
  try {
    return make_graph(WeightedGraph::parse(slurp(path)));
  } catch (const parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string join_ll(const std::vector<long long>& xs, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(xs[i]);
  }
  return s;
}

json head_to_json(const WeightedGraph& g, const HeadDescriptor& h) {
  json j;
  switch (h.kind) {
    case HeadDescriptor::Kind::Cycle:
      j["kind"] = "cycle";
      j["base"] = g.vertex_name(h.base);
      j["length"] = h.cycle_length();
      break;
    case HeadDescriptor::Kind::Rose:
      j["kind"] = "rose";
      j["base"] = g.vertex_name(h.base);
      j["petals"] = h.petal_count();
      j["weights"] = h.weights;
      break;
    case HeadDescriptor::Kind::Sink:
      j["kind"] = "sink";
      j["base"] = g.vertex_name(h.base);
      break;
  }
  return j;
}

void print_head(std::ostream& out, const WeightedGraph& g, std::size_t i, const HeadDescriptor& h) {
  out << "head " << i << ": ";
  switch (h.kind) {
    case HeadDescriptor::Kind::Cycle:
      out << "cycle of length " << h.cycle_length() << " at base " << g.vertex_name(h.base);
      break;
    case HeadDescriptor::Kind::Rose: {
      out << "rose with " << h.petal_count() << " petals at base " << g.vertex_name(h.base);
      if (h.weighted()) {
        out << " (weights";
        for (auto w : h.weights) out << " " << w;
        out << ")";
      }
      break;
    }
    case HeadDescriptor::Kind::Sink:
      out << "sink " << g.vertex_name(h.base);
      break;
  }
  out << "\n";
}

int cmd_classify(const std::string& file, bool as_json, std::ostream& out) {
  GraphPtr g = load_graph(file);
  GraphClass cls = classify(*g);
  if (as_json) {
    json j;
    j["class"] = to_string(cls.tag);
    j["heads"] = json::array();
    for (const auto& h : cls.heads) j["heads"].push_back(head_to_json(*g, h));
    if (!cls.is_polycephaly()) j["reason"] = cls.reason;
    out << j.dump() << "\n";
    return 0;
  }
  out << "class: " << to_string(cls.tag) << "\n";
  if (!cls.is_polycephaly()) {
    out << "reason: " << cls.reason << "\n";
    return 0;
  }
  for (std::size_t i = 0; i < cls.heads.size(); ++i) print_head(out, *g, i, cls.heads[i]);
  return 0;
}

int cmd_strongly_graded(const std::string& file, bool as_json, std::ostream& out) {
  GraphPtr g = load_graph(file);
  bool sg = is_strongly_graded(*g);
  if (as_json)
    out << json{{"strongly_graded", sg}}.dump() << "\n";
  else
    out << "strongly-graded: " << (sg ? "true" : "false") << "\n";
  return 0;
}

std::vector<VertexId> parse_base_overrides(const WeightedGraph& g,
                                           const std::vector<std::string>& specs) {
  std::vector<VertexId> bases;
  if (specs.empty()) return bases;
  GraphClass cls = classify(g);
  for (const std::string& spec : specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--base-vertex expects CYCLE=V, got '" + spec + "'");
    std::string cname = spec.substr(0, eq), vname = spec.substr(eq + 1);
    auto c = g.find_vertex(cname);
    auto v = g.find_vertex(vname);
    if (!c) throw std::invalid_argument("unknown vertex '" + cname + "'");
    if (!v) throw std::invalid_argument("unknown vertex '" + vname + "'");
    bool same = false;
    for (const auto& h : cls.heads) {
      if (h.kind != HeadDescriptor::Kind::Cycle) continue;
      bool has_c = false, has_v = false;
      for (VertexId w : h.cycle_vertices) {
        has_c |= w == *c;
        has_v |= w == *v;
      }
      if (has_c && has_v) same = true;
    }
    if (!same)
      throw std::invalid_argument("vertices '" + cname + "' and '" + vname +
                                  "' are not on the same cycle");
    bases.push_back(*v);
  }
  return bases;
}

int cmd_decompose(const std::string& file, const std::vector<std::string>& base_specs,
                  bool as_json, std::ostream& out) {
  GraphPtr g = load_graph(file);
  DecompositionDescriptor d = decompose(g, parse_base_overrides(*g, base_specs));
  if (as_json) {
    out << d.to_json() << "\n";
    return 0;
  }
  out << "L(E) = " << d.to_string() << "\n";
  for (std::size_t b = 0; b < d.blocks.size(); ++b) {
    const Block& blk = d.blocks[b];
    out << "block " << b << ": ";
    switch (blk.head.kind) {
      case HeadDescriptor::Kind::Cycle:
        out << "cycle of length " << blk.head.cycle_length();
        break;
      case HeadDescriptor::Kind::Rose:
        out << "rose with " << blk.head.petal_count() << " petals";
        break;
      case HeadDescriptor::Kind::Sink:
        out << "sink";
        break;
    }
    out << " at base " << d.graph->vertex_name(blk.head.base) << ", base ring "
        << blk.base.to_string() << ", shifts (" << join_ll(blk.shifts.entries) << ")\n";
  }
  return 0;
}

int cmd_iso(const std::string& f1, const std::string& f2, bool as_json, std::ostream& out) {
  DecompositionDescriptor a = decompose(load_graph(f1));
  DecompositionDescriptor b = decompose(load_graph(f2));
  GradedIsoResult r = graded_iso(a, b);
  if (as_json) {
    json j;
    j["graded_isomorphic"] = to_string(r.verdict);
    j["rose_tag_level"] = r.rose_tag_level;
    out << j.dump() << "\n";
  } else {
    out << "graded-isomorphic: " << to_string(r.verdict) << "\n";
    if (r.rose_tag_level)
      out << "note: rose blocks matched by (petals, size, shifts); sufficient, not proven "
             "necessary\n";
  }
  return r.verdict == IsoVerdict::Undecided ? 3 : 0;
}

int cmd_crossed(const std::string& file, bool as_json, std::ostream& out) {
  DecompositionDescriptor d = decompose(load_graph(file));
  RingFormDescriptor r = crossed_product_status(d);
  const char* crossed = "false";
  if (r.form == RingForm::GroupRing || r.form == RingForm::SkewGroupRing ||
      r.form == RingForm::CrossedProduct)
    crossed = "true";
  else if (r.form == RingForm::Undecided)
    crossed = "undecided";
  if (as_json) {
    json j;
    j["form"] = to_string(r.form);
    j["crossed"] = crossed;
    if (!r.note.empty()) j["note"] = r.note;
    j["witnesses"] = json::array();
    for (const auto& w : r.witnesses) {
      json jw;
      jw["block"] = w.block;
      jw["permutation"] = w.permutation;
      jw["exponents"] = w.exponents;
      jw["pure_cycle"] = w.pure_cycle;
      j["witnesses"].push_back(jw);
    }
    out << j.dump() << "\n";
  } else {
    out << "form: " << to_string(r.form) << "\n";
    out << "crossed-product: " << crossed << "\n";
    if (!r.note.empty()) out << "note: " << r.note << "\n";
    for (const auto& w : r.witnesses) {
      out << "witness block " << w.block << ": pi = (";
      for (std::size_t i = 0; i < w.permutation.size(); ++i)
        out << (i ? " " : "") << w.permutation[i];
      out << "), exponents = (" << join_ll(w.exponents) << ")";
      if (w.pure_cycle) out << " [coordinate-shift automorphism]";
      out << "\n";
    }
  }
  return r.form == RingForm::Undecided ? 3 : 0;
}

int cmd_dim(const std::string& file, long long degree, bool as_json, std::ostream& out) {
  DecompositionDescriptor d = decompose(load_graph(file));
  json jblocks = json::array();
  bool infinite = false;
  std::size_t total = 0;
  std::vector<std::string> lines;
  for (const Block& b : d.blocks) {
    if (b.base.kind == BlockBase::Kind::Rose || b.base.kind == BlockBase::Kind::WeightedRose) {
      infinite = true;
      jblocks.push_back(nullptr);
      lines.push_back("infinite");
    } else {
      std::size_t n = component_dim(b.shifts, degree);
      total += n;
      jblocks.push_back(n);
      lines.push_back(std::to_string(n));
    }
  }
  if (as_json) {
    json j;
    j["degree"] = degree;
    j["blocks"] = jblocks;
    if (infinite)
      j["total"] = nullptr;
    else
      j["total"] = total;
    out << j.dump() << "\n";
  } else {
    out << "degree: " << degree << "\n";
    for (std::size_t i = 0; i < lines.size(); ++i) out << "block " << i << ": " << lines[i] << "\n";
    out << "total: " << (infinite ? "infinite" : std::to_string(total)) << "\n";
  }
  return 0;
}

int cmd_k0(const std::string& file, bool as_json, std::ostream& out) {
  GraphPtr g = load_graph(file);
  AbelianGroupDescriptor k = k0(*g);
  if (as_json)
    out << k.to_json() << "\n";
  else
    out << "K0: " << k.to_string() << "\n";
  return 0;
}

int cmd_monoid(const std::string& file, const std::string& check, std::size_t bound, bool as_json,
               std::ostream& out) {
  GraphPtr g = load_graph(file);
  MonoidPresentation p = monoid_presentation(g);
  if (check.empty()) {
    if (as_json) {
      json j;
      j["generators"] = p.generators;
      j["relations"] = json::array();
      for (const auto& r : p.relations) {
        json jr;
        jr["lhs"] = p.element_to_string(r.lhs);
        jr["rhs"] = p.element_to_string(r.rhs);
        j["relations"].push_back(jr);
      }
      out << j.dump() << "\n";
      return 0;
    }
    out << "generators: ";
    for (std::size_t i = 0; i < p.generators.size(); ++i)
      out << (i ? ", " : "") << p.generators[i];
    out << "\n";
    for (const auto& r : p.relations)
      out << "relation: " << p.element_to_string(r.lhs) << " = " << p.element_to_string(r.rhs)
          << "\n";
    return 0;
  }
  MonoidProperty prop =
      check == "refinement" ? MonoidProperty::Refinement : MonoidProperty::Separative;
  PropertyResult r = monoid_property_search(p, prop, bound);
  if (as_json) {
    json j;
    j["property"] = check;
    j["holds_up_to_bound"] = r.holds;
    j["bound"] = r.bound;
    j["witness"] = json::array();
    for (const auto& w : r.witness) j["witness"].push_back(p.element_to_string(w));
    out << j.dump() << "\n";
  } else {
    out << check << ": " << r.describe(p) << "\n";
  }
  return r.holds ? 3 : 0;
}

int cmd_eq(const std::string& file, const std::string& e1, const std::string& e2,
           std::size_t bound, bool as_json, std::ostream& out) {
  GraphPtr g = load_graph(file);
  MonoidPresentation p = monoid_presentation(g);
  MonoidVec a = p.parse_element(e1), b = p.parse_element(e2);
  EqResult r = monoid_equal(p, a, b, bound);
  if (as_json) {
    json j;
    j["verdict"] = to_string(r.verdict);
    if (r.verdict == EqVerdict::Equal) {
      j["chain"] = json::array();
      for (const auto& x : r.chain) j["chain"].push_back(p.element_to_string(x));
    } else if (r.verdict == EqVerdict::Distinct) {
      j["functional"] = r.functional;
      j["modulus"] = r.modulus.str();
      j["value_a"] = r.value_a.str();
      j["value_b"] = r.value_b.str();
    }
    out << j.dump() << "\n";
  } else {
    out << "verdict: " << to_string(r.verdict) << "\n";
    if (r.verdict == EqVerdict::Equal) {
      out << "chain: ";
      for (std::size_t i = 0; i < r.chain.size(); ++i)
        out << (i ? " -> " : "") << p.element_to_string(r.chain[i]);
      out << "\n";
    } else if (r.verdict == EqVerdict::Distinct) {
      out << "certificate: phi = (" << join_ll(r.functional) << ")";
      if (r.modulus != 0) out << " mod " << r.modulus.str();
      out << "; phi(a) = " << r.value_a.str() << ", phi(b) = " << r.value_b.str() << "\n";
    } else {
      out << "note: no decision within coefficient-sum bound " << bound << "\n";
    }
  }
  return r.verdict == EqVerdict::Unknown ? 3 : 0;
}

int cmd_reduce(const std::string& file, const std::string& expr, bool as_json, std::ostream& out) {
  GraphPtr g = load_graph(file);
  Element a = parse_element(g, expr);
  Element nf = normal_form(a);
  auto deg = degree_of(nf);
  if (as_json) {
    json j;
    j["reduced"] = element_to_string(nf);
    if (deg && !nf.zero())
      j["degree"] = *deg;
    else if (nf.zero())
      j["degree"] = 0;
    else
      j["degree"] = nullptr;
    out << j.dump() << "\n";
  } else {
    out << element_to_string(nf) << "\n";
  }
  return 0;
}

int cmd_transform(const std::string& file, const std::string& op, const std::string& file2,
                  bool as_json, std::ostream& out) {
  GraphPtr g = load_graph(file);
  WeightedGraph result;
  if (op == "opposite") {
    if (!file2.empty()) throw std::invalid_argument("--op opposite takes a single graph");
    result = opposite(*g);
  } else if (op == "weighted") {
    if (!file2.empty()) throw std::invalid_argument("--op weighted takes a single graph");
    result = associated_weighted(*g);
  } else {
    if (file2.empty()) throw std::invalid_argument("--op tensor needs a second graph file");
    result = tensor_attach(*g, *load_graph(file2));
  }
  if (as_json)
    out << result.to_json() << "\n";
  else
    out << result.to_text();
  return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"graded structure of (weighted) Leavitt path algebras"};
  app.name("lpakit");
  app.require_subcommand(1);

  bool as_json = false;
  std::string file, file2, expr1, expr2, check, op;
  std::vector<std::string> base_specs;
  long long degree = 0;
  std::size_t bound = 12;
  int rc = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", as_json, "machine-readable output");
    return sub;
  };

  auto* c_classify = add_common(app.add_subcommand("classify", "polycephaly classification"));
  c_classify->add_option("file", file, "graph file")->required();
  c_classify->callback([&] { rc = cmd_classify(file, as_json, out); });

  auto* c_sg = add_common(app.add_subcommand("strongly-graded", "strong gradedness test"));
  c_sg->add_option("file", file, "graph file")->required();
  c_sg->callback([&] { rc = cmd_strongly_graded(file, as_json, out); });

  auto* c_dec = add_common(app.add_subcommand("decompose", "graded matrix decomposition"));
  c_dec->add_option("file", file, "graph file")->required();
  c_dec->add_option("--base-vertex", base_specs, "CYCLE=V replaces the base vertex of a cycle");
  c_dec->callback([&] { rc = cmd_decompose(file, base_specs, as_json, out); });

  auto* c_iso = add_common(app.add_subcommand("iso", "graded isomorphism of two algebras"));
  c_iso->add_option("file1", file, "first graph file")->required();
  c_iso->add_option("file2", file2, "second graph file")->required();
  c_iso->callback([&] { rc = cmd_iso(file, file2, as_json, out); });

  auto* c_cross = add_common(app.add_subcommand("crossed", "crossed product detection"));
  c_cross->add_option("file", file, "graph file")->required();
  c_cross->callback([&] { rc = cmd_crossed(file, as_json, out); });

  auto* c_dim = add_common(app.add_subcommand("dim", "graded component dimensions"));
  c_dim->add_option("file", file, "graph file")->required();
  c_dim->add_option("--degree", degree, "degree of the component")->required();
  c_dim->callback([&] { rc = cmd_dim(file, degree, as_json, out); });

  auto* c_k0 = add_common(app.add_subcommand("k0", "graded Grothendieck group"));
  c_k0->add_option("file", file, "graph file")->required();
  c_k0->callback([&] { rc = cmd_k0(file, as_json, out); });

  auto* c_mon = add_common(app.add_subcommand("monoid", "V-monoid presentation and properties"));
  c_mon->add_option("file", file, "graph file")->required();
  c_mon->add_option("--check", check, "property to search")
      ->check(CLI::IsMember({"refinement", "separative"}));
  c_mon->add_option("--bound", bound, "coefficient-sum bound (default 12)")
      ->check(CLI::PositiveNumber);
  c_mon->callback([&] { rc = cmd_monoid(file, check, bound, as_json, out); });

  auto* c_eq = add_common(app.add_subcommand("eq", "V-monoid element equality"));
  c_eq->add_option("file", file, "graph file")->required();
  c_eq->add_option("expr1", expr1, "first element, e.g. \"2u + t\"")->required();
  c_eq->add_option("expr2", expr2, "second element")->required();
  c_eq->add_option("--bound", bound, "coefficient-sum bound (default 12)")
      ->check(CLI::PositiveNumber);
  c_eq->callback([&] { rc = cmd_eq(file, expr1, expr2, bound, as_json, out); });

  auto* c_red = add_common(app.add_subcommand("reduce", "normal form of an algebra element"));
  c_red->add_option("file", file, "graph file")->required();
  c_red->add_option("expr", expr1, "element expression, e.g. \"f g h* + 2 u\"")->required();
  c_red->callback([&] { rc = cmd_reduce(file, expr1, as_json, out); });

  auto* c_tr = add_common(app.add_subcommand("transform", "graph constructions"));
  c_tr->add_option("file", file, "graph file")->required();
  c_tr->add_option("--op", op, "opposite | weighted | tensor")
      ->required()
      ->check(CLI::IsMember({"opposite", "weighted", "tensor"}));
  c_tr->add_option("file2", file2, "second graph file (tensor)");
  c_tr->callback([&] { rc = cmd_transform(file, op, file2, as_json, out); });

  std::vector<const char*> argv;
  argv.push_back("lpakit");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const unsupported_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

} // namespace lpakit
