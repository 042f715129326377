#include "lpakit/classify.hpp"

#include <algorithm>
#include <functional>

namespace lpakit {

const char* to_string(GraphClass::Tag t) {
  switch (t) {
    case GraphClass::Tag::Acyclic: return "Acyclic";
    case GraphClass::Tag::CnComet: return "CnComet";
    case GraphClass::Tag::MultiHeadedComet: return "MultiHeadedComet";
    case GraphClass::Tag::MultiHeadedRose: return "MultiHeadedRose";
    case GraphClass::Tag::Polycephaly: return "Polycephaly";
    case GraphClass::Tag::NotPolycephaly: return "NotPolycephaly";
  }
  return "?";
}

namespace {

GraphClass reject(std::string reason) {
  GraphClass c;
  c.tag = GraphClass::Tag::NotPolycephaly;
  c.reason = std::move(reason);
  return c;
}

// Tarjan SCC, iterative enough for desk-scale inputs via recursion.
std::vector<std::vector<VertexId>> sccs(const WeightedGraph& g) {
  std::vector<int> index(g.vertex_count(), -1), low(g.vertex_count(), 0);
  std::vector<char> onstack(g.vertex_count(), 0);
  std::vector<VertexId> stack;
  std::vector<std::vector<VertexId>> comps;
  int next = 0;
  std::function<void(VertexId)> strongconnect = [&](VertexId v) {
    index[v] = low[v] = next++;
    stack.push_back(v);
    onstack[v] = 1;
    for (EdgeId e : g.out_edges(v)) {
      VertexId w = g.sedge(e).dst;
      if (index[w] < 0) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (onstack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<VertexId> comp;
      for (;;) {
        VertexId w = stack.back();
        stack.pop_back();
        onstack[w] = 0;
        comp.push_back(w);
        if (w == v) break;
      }
      comps.push_back(std::move(comp));
    }
  };
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (index[v] < 0) strongconnect(v);
  return comps;
}

} // namespace

GraphClass classify(const WeightedGraph& g) {
  if (g.vertex_count() == 0) throw std::invalid_argument("empty graph");
  g.require_connected();

  GraphClass cls;
  std::vector<char> is_rose(g.vertex_count(), 0);

  // Vertices carrying loops must be exit-free rose candidates.
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<EdgeId> loops, other;
    for (EdgeId e : g.out_edges(v))
      (g.sedge(e).dst == v ? loops : other).push_back(e);
    if (loops.empty()) continue;
    if (!other.empty())
      return reject("head at '" + g.vertex_name(v) + "' has exit edge '" +
                    g.sedge(other.front()).name + "'");
    is_rose[v] = 1;
    HeadDescriptor h;
    h.base = v;
    std::sort(loops.begin(), loops.end(),
              [&g](EdgeId a, EdgeId b) { return g.sedge(a).name < g.sedge(b).name; });
    if (loops.size() == 1 && g.sedge(loops[0]).weight == 1) {
      h.kind = HeadDescriptor::Kind::Cycle; // single plain loop: a C_1 comet head
      h.cycle_vertices = {v};
      h.cycle_edges = {loops[0]};
    } else {
      h.kind = HeadDescriptor::Kind::Rose;
      h.petals = loops;
      for (EdgeId e : loops) h.weights.push_back(g.sedge(e).weight);
    }
    cls.heads.push_back(std::move(h));
  }

  // Multi-vertex cycles: every nontrivial SCC must be a plain exit-free cycle.
  for (const auto& comp : sccs(g)) {
    if (comp.size() < 2) continue;
    for (VertexId v : comp) {
      const auto& out = g.out_edges(v);
      if (out.size() != 1)
        return reject("cycles through '" + g.vertex_name(v) + "' are not disjoint or have an exit");
      if (g.sedge(out[0]).weight != 1)
        return reject("cycle edge '" + g.sedge(out[0]).name + "' carries weight > 1");
    }
    HeadDescriptor h;
    h.kind = HeadDescriptor::Kind::Cycle;
    VertexId base = *std::min_element(comp.begin(), comp.end(), [&g](VertexId a, VertexId b) {
      return g.vertex_name(a) < g.vertex_name(b);
    });
    h.base = base;
    VertexId at = base;
    do {
      EdgeId e = g.out_edges(at)[0];
      if (std::find(comp.begin(), comp.end(), g.sedge(e).dst) == comp.end())
        return reject("cycle at '" + g.vertex_name(base) + "' is not closed");
      h.cycle_vertices.push_back(at);
      h.cycle_edges.push_back(e);
      at = g.sedge(e).dst;
    } while (at != base);
    if (h.cycle_vertices.size() != comp.size())
      return reject("cycles through '" + g.vertex_name(base) + "' are not disjoint or have an exit");
    cls.heads.push_back(std::move(h));
  }

  // Sinks are zero-petal heads.
  for (VertexId v : g.sinks()) {
    HeadDescriptor h;
    h.kind = HeadDescriptor::Kind::Sink;
    h.base = v;
    cls.heads.push_back(std::move(h));
  }

  // Weights above 1 are only allowed on rose petals.
  for (EdgeId e = 0; e < g.sedge_count(); ++e) {
    const SEdge& se = g.sedge(e);
    if (se.weight > 1 && !(se.src == se.dst && is_rose[se.src]))
      return reject("edge '" + se.name + "' carries weight > 1 outside a rose head");
  }

  std::sort(cls.heads.begin(), cls.heads.end(),
            [](const HeadDescriptor& a, const HeadDescriptor& b) { return a.base < b.base; });

  std::size_t cycles = 0, roses = 0, sinks = 0;
  for (const auto& h : cls.heads) {
    switch (h.kind) {
      case HeadDescriptor::Kind::Cycle: ++cycles; break;
      case HeadDescriptor::Kind::Rose: ++roses; break;
      case HeadDescriptor::Kind::Sink: ++sinks; break;
    }
  }
  // Every vertex of a finite graph reaches a sink, a cycle or a rose, so the
  // head conditions checked above already settle polycephaly.
  if (cycles && !roses && !sinks)
    cls.tag = cycles == 1 ? GraphClass::Tag::CnComet : GraphClass::Tag::MultiHeadedComet;
  else if (roses && !cycles && !sinks)
    cls.tag = GraphClass::Tag::MultiHeadedRose;
  else if (sinks && !cycles && !roses)
    cls.tag = GraphClass::Tag::Acyclic;
  else
    cls.tag = GraphClass::Tag::Polycephaly;
  return cls;
}

} // namespace lpakit
