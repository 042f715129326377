#include "lpakit/graph.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace lpakit {

namespace {

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

} // namespace

WeightedGraph::WeightedGraph(std::vector<std::string> vertices, std::vector<SEdge> sedges)
    : vertices_(std::move(vertices)), sedges_(std::move(sedges)) {
  build_index();
}

void WeightedGraph::build_index() {
  vertex_index_.clear();
  edge_index_.clear();
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (!valid_id(vertices_[v])) throw std::invalid_argument("bad vertex id '" + vertices_[v] + "'");
    if (!vertex_index_.emplace(vertices_[v], v).second)
      throw std::invalid_argument("duplicate name '" + vertices_[v] + "'");
  }
  for (EdgeId e = 0; e < sedges_.size(); ++e) {
    const SEdge& se = sedges_[e];
    if (!valid_id(se.name)) throw std::invalid_argument("bad edge id '" + se.name + "'");
    if (vertex_index_.count(se.name) || !edge_index_.emplace(se.name, e).second)
      throw std::invalid_argument("duplicate name '" + se.name + "'");
    if (se.src >= vertices_.size() || se.dst >= vertices_.size())
      throw std::invalid_argument("edge '" + se.name + "' has a dangling endpoint");
    if (se.weight < 1) throw std::invalid_argument("edge '" + se.name + "' has weight < 1");
  }
  out_.assign(vertices_.size(), {});
  in_.assign(vertices_.size(), {});
  for (EdgeId e = 0; e < sedges_.size(); ++e) {
    out_[sedges_[e].src].push_back(e);
    in_[sedges_[e].dst].push_back(e);
  }
}

WeightedGraph WeightedGraph::parse(const std::string& text) {
  std::vector<std::string> vertices;
  std::vector<SEdge> sedges;
  std::map<std::string, VertexId> vidx;
  std::map<std::string, std::size_t> names; // name -> declaring line

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::tuple<std::size_t, std::string, std::string, std::string, std::uint64_t>> edge_decls;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "vertex") {
      std::string id, extra;
      if (!(ls >> id)) throw parse_error(lineno, "expected 'vertex ID'");
      if (ls >> extra) throw parse_error(lineno, "trailing token '" + extra + "'");
      if (!valid_id(id)) throw parse_error(lineno, "bad id '" + id + "'");
      if (!names.emplace(id, lineno).second) throw parse_error(lineno, "duplicate name '" + id + "'");
      vidx.emplace(id, static_cast<VertexId>(vertices.size()));
      vertices.push_back(id);
    } else if (kw == "edge") {
      std::string id, src, dst, wtok, extra;
      if (!(ls >> id >> src >> dst)) throw parse_error(lineno, "expected 'edge ID SRC DST [WEIGHT]'");
      std::uint64_t w = 1;
      if (ls >> wtok) {
        if (ls >> extra) throw parse_error(lineno, "trailing token '" + extra + "'");
        try {
          std::size_t pos = 0;
          long long sw = std::stoll(wtok, &pos);
          if (pos != wtok.size()) throw std::invalid_argument(wtok);
          if (sw < 1) throw parse_error(lineno, "weight < 1");
          w = static_cast<std::uint64_t>(sw);
        } catch (const parse_error&) {
          throw;
        } catch (const std::exception&) {
          throw parse_error(lineno, "bad weight '" + wtok + "'");
        }
      }
      if (!valid_id(id)) throw parse_error(lineno, "bad id '" + id + "'");
      if (!names.emplace(id, lineno).second) throw parse_error(lineno, "duplicate name '" + id + "'");
      edge_decls.emplace_back(lineno, id, src, dst, w);
    } else {
      throw parse_error(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (vertices.empty()) throw parse_error(lineno, "graph needs at least one vertex");
  std::vector<SEdge> edges;
  for (const auto& [ln, id, src, dst, w] : edge_decls) {
    auto s = vidx.find(src), d = vidx.find(dst);
    if (s == vidx.end()) throw parse_error(ln, "edge '" + id + "' has dangling endpoint '" + src + "'");
    if (d == vidx.end()) throw parse_error(ln, "edge '" + id + "' has dangling endpoint '" + dst + "'");
    edges.push_back(SEdge{id, s->second, d->second, w});
  }
  return WeightedGraph(std::move(vertices), std::move(edges));
}

std::optional<VertexId> WeightedGraph::find_vertex(const std::string& name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> WeightedGraph::find_sedge(const std::string& name) const {
  auto it = edge_index_.find(name);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<VertexId> WeightedGraph::sinks() const {
  std::vector<VertexId> r;
  for (VertexId v = 0; v < vertices_.size(); ++v)
    if (out_[v].empty()) r.push_back(v);
  return r;
}

bool WeightedGraph::is_unweighted() const {
  return std::all_of(sedges_.begin(), sedges_.end(), [](const SEdge& e) { return e.weight == 1; });
}

std::uint64_t WeightedGraph::max_out_weight(VertexId v) const {
  std::uint64_t m = 0;
  for (EdgeId e : out_.at(v)) m = std::max(m, sedges_[e].weight);
  return m;
}

bool WeightedGraph::is_connected() const {
  if (vertices_.empty()) return true;
  std::vector<char> seen(vertices_.size(), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : out_[v])
      if (!seen[sedges_[e].dst]) seen[sedges_[e].dst] = 1, stack.push_back(sedges_[e].dst);
    for (EdgeId e : in_[v])
      if (!seen[sedges_[e].src]) seen[sedges_[e].src] = 1, stack.push_back(sedges_[e].src);
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

void WeightedGraph::require_connected() const {
  if (!is_connected())
    throw std::invalid_argument("graph is not connected; analyze its components separately");
}

std::string WeightedGraph::to_text() const {
  std::ostringstream os;
  for (const auto& v : vertices_) os << "vertex " << v << "\n";
  for (const auto& e : sedges_) {
    os << "edge " << e.name << " " << vertices_[e.src] << " " << vertices_[e.dst];
    if (e.weight != 1) os << " " << e.weight;
    os << "\n";
  }
  return os.str();
}

std::string WeightedGraph::to_json() const {
  nlohmann::ordered_json j;
  j["vertices"] = vertices_;
  j["sedges"] = nlohmann::ordered_json::array();
  for (const auto& e : sedges_) {
    nlohmann::ordered_json je;
    je["name"] = e.name;
    je["src"] = vertices_[e.src];
    je["dst"] = vertices_[e.dst];
    je["weight"] = e.weight;
    j["sedges"].push_back(je);
  }
  return j.dump();
}

bool WeightedGraph::operator==(const WeightedGraph& o) const {
  if (vertices_ != o.vertices_) return false;
  if (sedges_.size() != o.sedges_.size()) return false;
  for (std::size_t i = 0; i < sedges_.size(); ++i) {
    const SEdge &a = sedges_[i], &b = o.sedges_[i];
    if (a.name != b.name || a.src != b.src || a.dst != b.dst || a.weight != b.weight) return false;
  }
  return true;
}

WeightedGraph opposite(const WeightedGraph& g) {
  std::vector<SEdge> edges = g.sedges();
  for (auto& e : edges) std::swap(e.src, e.dst);
  return WeightedGraph(g.vertices(), std::move(edges));
}

WeightedGraph associated_weighted(const WeightedGraph& g) {
  if (!g.is_unweighted())
    throw unsupported_error("associated weighted graph is defined for unweighted input");
  std::vector<SEdge> merged;
  std::map<std::pair<VertexId, VertexId>, std::size_t> cls; // (src,dst) -> merged index
  for (const SEdge& e : g.sedges()) {
    auto key = std::make_pair(e.src, e.dst);
    auto it = cls.find(key);
    if (it == cls.end()) {
      cls.emplace(key, merged.size());
      merged.push_back(SEdge{e.name, e.src, e.dst, 1});
    } else {
      ++merged[it->second].weight;
    }
  }
  return WeightedGraph(g.vertices(), std::move(merged));
}

WeightedGraph tensor_attach(const WeightedGraph& e, const WeightedGraph& f) {
  if (!e.is_unweighted()) throw std::invalid_argument("tensor_attach: left graph must be unweighted");
  e.require_connected();
  auto esinks = e.sinks();
  if (esinks.size() != 1) throw std::invalid_argument("tensor_attach: left graph needs a unique sink");
  // acyclicity of e: Kahn
  {
    std::vector<std::size_t> indeg(e.vertex_count(), 0);
    for (const SEdge& se : e.sedges()) ++indeg[se.dst];
    std::vector<VertexId> q;
    for (VertexId v = 0; v < e.vertex_count(); ++v)
      if (indeg[v] == 0) q.push_back(v);
    std::size_t done = 0;
    while (!q.empty()) {
      VertexId v = q.back();
      q.pop_back();
      ++done;
      for (EdgeId id : e.out_edges(v))
        if (--indeg[e.sedge(id).dst] == 0) q.push_back(e.sedge(id).dst);
    }
    if (done != e.vertex_count()) throw std::invalid_argument("tensor_attach: left graph must be acyclic");
  }
  VertexId esink = esinks[0];

  std::vector<std::string> vertices = f.vertices();
  std::vector<SEdge> edges = f.sedges();
  std::map<std::string, char> taken;
  for (const auto& n : vertices) taken[n] = 1;
  for (const auto& se : edges) taken[se.name] = 1;
  auto fresh = [&taken](std::string n) {
    while (taken.count(n)) n += "_";
    taken[n] = 1;
    return n;
  };

  for (VertexId fv = 0; fv < f.vertex_count(); ++fv) {
    std::vector<VertexId> imap(e.vertex_count());
    for (VertexId u = 0; u < e.vertex_count(); ++u) {
      if (u == esink) {
        imap[u] = fv;
      } else {
        imap[u] = static_cast<VertexId>(vertices.size());
        vertices.push_back(fresh(f.vertex_name(fv) + "__" + e.vertex_name(u)));
      }
    }
    for (const SEdge& se : e.sedges())
      edges.push_back(SEdge{fresh(f.vertex_name(fv) + "__" + se.name), imap[se.src], imap[se.dst], 1});
  }
  return WeightedGraph(std::move(vertices), std::move(edges));
}

} // namespace lpakit
