#include "lpakit/element.hpp"

#include <cctype>
#include <sstream>

#include "lpakit/classify.hpp"

namespace lpakit {

ReductionContext::ReductionContext(GraphPtr g) : graph(std::move(g)) {
  GraphClass cls = classify(*graph);
  if (!cls.is_polycephaly())
    throw unsupported_error("graph is not polycephaly: " + cls.reason);
  const std::size_t n = graph->vertex_count();
  is_base.assign(n, 0);
  head_kind.assign(n, -1);
  cycle_word.resize(n);
  petals.resize(n);
  for (const HeadDescriptor& h : cls.heads) {
    bases.push_back(h.base);
    is_base[h.base] = 1;
    switch (h.kind) {
      case HeadDescriptor::Kind::Sink:
        head_kind[h.base] = 0;
        break;
      case HeadDescriptor::Kind::Cycle:
        head_kind[h.base] = 1;
        cycle_word[h.base] = h.cycle_edges;
        banned.insert(h.cycle_edges.front());
        break;
      case HeadDescriptor::Kind::Rose:
        head_kind[h.base] = 2;
        petals[h.base] = h.petals;
        for (EdgeId e : h.petals) banned.insert(e);
        break;
    }
  }
}

const std::vector<Path>& ReductionContext::orbit_of(VertexId v) const {
  auto it = orbit_cache_.find(v);
  if (it == orbit_cache_.end()) {
    OrbitResult orb = orbit_filtered(*graph, v, bases, banned);
    it = orbit_cache_.emplace(v, std::move(orb.paths)).first;
  }
  return it->second;
}

namespace {

bool numeric_token(const std::string& t) {
  bool seen_slash = false;
  if (t.empty()) return false;
  for (char ch : t) {
    if (ch == '/' && !seen_slash) {
      seen_slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return std::isdigit(static_cast<unsigned char>(t.front())) &&
         std::isdigit(static_cast<unsigned char>(t.back()));
}

Rational parse_rational(const std::string& t) {
  auto slash = t.find('/');
  if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(t));
  boost::multiprecision::cpp_int num(t.substr(0, slash)), den(t.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in coefficient '" + t + "'");
  return Rational(num, den);
}

} // namespace

Element parse_element(GraphPtr g, const std::string& text) {
  std::string padded;
  for (char ch : text) {
    if (ch == '+' || ch == '-') {
      padded += ' ';
      padded += ch;
      padded += ' ';
    } else {
      padded += ch;
    }
  }
  std::istringstream in(padded);
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);

  Element result(g);
  std::size_t pos = 0;
  while (pos < toks.size()) {
    Rational coeff = 1;
    while (pos < toks.size() && (toks[pos] == "+" || toks[pos] == "-")) {
      if (toks[pos] == "-") coeff = -coeff;
      ++pos;
    }
    std::optional<Element> acc;
    bool any = false;
    while (pos < toks.size() && toks[pos] != "+" && toks[pos] != "-") {
      const std::string& t = toks[pos++];
      any = true;
      if (numeric_token(t)) {
        coeff *= parse_rational(t);
        continue;
      }
      bool ghost = !t.empty() && t.back() == '*';
      std::string name = ghost ? t.substr(0, t.size() - 1) : t;
      Element factor(g);
      if (auto v = g->find_vertex(name)) {
        factor = Element::vertex(g, *v);
      } else if (auto e = g->find_sedge(name)) {
        factor = Element::edge(g, *e, ghost);
      } else {
        throw std::invalid_argument("unknown name '" + name + "' in expression");
      }
      acc = acc ? *acc * factor : factor;
    }
    if (!any) throw std::invalid_argument("dangling sign in expression");
    if (!acc) throw std::invalid_argument("a term needs at least one vertex or edge factor");
    result = result + *acc * coeff;
  }
  return result;
}

std::string element_to_string(const Element& a) {
  if (a.zero()) return "0";
  const WeightedGraph& g = *a.graph();
  std::string out;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    Rational mag = c;
    bool neg = c < 0;
    if (neg) mag = -mag;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    if (mag != 1) out += mag.str() + " ";
    if (m.real.edges.empty() && m.ghost.edges.empty()) {
      out += g.vertex_name(m.real.source);
      continue;
    }
    std::vector<std::string> parts;
    for (EdgeId e : m.real.edges) parts.push_back(g.sedge(e).name);
    for (auto it = m.ghost.edges.rbegin(); it != m.ghost.edges.rend(); ++it)
      parts.push_back(g.sedge(*it).name + "*");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += " ";
      out += parts[i];
    }
  }
  return out;
}

} // namespace lpakit
