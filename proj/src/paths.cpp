#include "lpakit/paths.hpp"

#include <algorithm>
#include <functional>

namespace lpakit {

void check_path(const WeightedGraph& g, const Path& p) {
  if (p.source >= g.vertex_count()) throw std::invalid_argument("path source out of range");
  VertexId at = p.source;
  for (EdgeId e : p.edges) {
    if (e >= g.sedge_count()) throw std::invalid_argument("path edge out of range");
    if (g.sedge(e).src != at) throw std::invalid_argument("path edges do not compose");
    at = g.sedge(e).dst;
  }
}

bool path_is_acyclic(const WeightedGraph& g, const Path& p) {
  std::set<VertexId> seen{p.source};
  VertexId at = p.source;
  for (EdgeId e : p.edges) {
    at = g.sedge(e).dst;
    if (!seen.insert(at).second) return false;
  }
  return true;
}

Path concat(const WeightedGraph& g, const Path& p, const Path& q) {
  if (p.range(g) != q.source) throw std::invalid_argument("paths do not compose");
  Path r = p;
  r.edges.insert(r.edges.end(), q.edges.begin(), q.edges.end());
  return r;
}

std::string path_to_string(const WeightedGraph& g, const Path& p) {
  if (p.edges.empty()) return g.vertex_name(p.source);
  std::string s;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) s += ".";
    s += g.sedge(p.edges[i]).name;
  }
  return s;
}

bool path_less(const WeightedGraph& g, const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  for (std::size_t i = 0; i < a.length(); ++i) {
    const std::string &an = g.sedge(a.edges[i]).name, &bn = g.sedge(b.edges[i]).name;
    if (an != bn) return an < bn;
  }
  return g.vertex_name(a.source) < g.vertex_name(b.source);
}

std::vector<Path> paths_into_filtered(const WeightedGraph& g, VertexId v,
                                      const std::set<EdgeId>& banned) {
  if (v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
  // cycle check on the pruned graph: DFS from v along in-edges
  {
    std::vector<int> color(g.vertex_count(), 0);
    std::function<void(VertexId)> dfs = [&](VertexId u) {
      color[u] = 1;
      for (EdgeId e : g.in_edges(u)) {
        if (banned.count(e)) continue;
        VertexId w = g.sedge(e).src;
        if (color[w] == 1) throw std::invalid_argument("paths_into requires an acyclic graph");
        if (color[w] == 0) dfs(w);
      }
      color[u] = 2;
    };
    dfs(v);
  }
  std::vector<Path> out;
  std::function<void(VertexId, std::vector<EdgeId>&)> walk = [&](VertexId u, std::vector<EdgeId>& suffix) {
    Path p;
    p.source = u;
    p.edges.assign(suffix.rbegin(), suffix.rend());
    out.push_back(std::move(p));
    for (EdgeId e : g.in_edges(u)) {
      if (banned.count(e)) continue;
      suffix.push_back(e);
      walk(g.sedge(e).src, suffix);
      suffix.pop_back();
    }
  };
  std::vector<EdgeId> suffix;
  walk(v, suffix);
  std::sort(out.begin(), out.end(), [&g](const Path& a, const Path& b) { return path_less(g, a, b); });
  return out;
}

std::vector<Path> paths_into(const WeightedGraph& g, VertexId v) {
  return paths_into_filtered(g, v, {});
}

std::vector<Path> escape_paths(const WeightedGraph& g, const Path& p) {
  check_path(g, p);
  if (p.edges.empty()) throw std::invalid_argument("escape paths need a nonempty path");
  if (!path_is_acyclic(g, p)) throw std::invalid_argument("escape paths need an acyclic path");
  std::vector<Path> out;
  const std::size_t k = p.edges.size();
  VertexId at = p.source;
  for (std::size_t t = 0; t < k; ++t) {
    // exits at s(mu_{t+1}); mu_k counts as an exit of itself
    for (EdgeId e : g.out_edges(at)) {
      if (e == p.edges[t] && t + 1 != k) continue;
      Path q;
      q.source = p.source;
      q.edges.assign(p.edges.begin(), p.edges.begin() + static_cast<std::ptrdiff_t>(t));
      q.edges.push_back(e);
      out.push_back(std::move(q));
    }
    at = g.sedge(p.edges[t]).dst;
  }
  std::sort(out.begin(), out.end(), [&g](const Path& a, const Path& b) { return path_less(g, a, b); });
  return out;
}

OrbitResult orbit_filtered(const WeightedGraph& g, VertexId v, const std::vector<VertexId>& P,
                           const std::set<EdgeId>& banned) {
  if (P.empty()) throw std::invalid_argument("orbit needs a nonempty target set");
  std::vector<char> inP(g.vertex_count(), 0);
  for (VertexId w : P) {
    if (w >= g.vertex_count()) throw std::invalid_argument("orbit: target set is not a vertex subset");
    inP[w] = 1;
  }
  if (v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");

  OrbitResult res;
  if (inP[v]) {
    res.bounded = true;
    res.paths.push_back(Path{v, {}});
    res.bound = 0;
    return res;
  }
  // cycle reachable before P?  DFS over the region of non-P vertices.
  {
    std::vector<int> color(g.vertex_count(), 0);
    std::function<bool(VertexId)> dfs = [&](VertexId u) -> bool {
      color[u] = 1;
      for (EdgeId e : g.out_edges(u)) {
        if (banned.count(e)) continue;
        VertexId w = g.sedge(e).dst;
        if (inP[w]) continue;
        if (color[w] == 1) return true;
        if (color[w] == 0 && dfs(w)) return true;
      }
      color[u] = 2;
      return false;
    };
    if (dfs(v)) return res; // unbounded
  }
  std::function<void(VertexId, std::vector<EdgeId>&)> walk = [&](VertexId u, std::vector<EdgeId>& pre) {
    for (EdgeId e : g.out_edges(u)) {
      if (banned.count(e)) continue;
      VertexId w = g.sedge(e).dst;
      pre.push_back(e);
      if (inP[w]) {
        res.paths.push_back(Path{v, pre});
        res.bound = std::max(res.bound, pre.size());
      } else {
        walk(w, pre);
      }
      pre.pop_back();
    }
  };
  std::vector<EdgeId> pre;
  walk(v, pre);
  res.bounded = true;
  std::sort(res.paths.begin(), res.paths.end(),
            [&g](const Path& a, const Path& b) { return path_less(g, a, b); });
  return res;
}

OrbitResult orbit(const WeightedGraph& g, VertexId v, const std::vector<VertexId>& P) {
  return orbit_filtered(g, v, P, {});
}

} // namespace lpakit
