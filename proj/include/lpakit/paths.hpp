#pragma once

#include <set>
#include <string>
#include <vector>

#include "lpakit/graph.hpp"

namespace lpakit {

// A finite path p = e_1 ... e_k with r(e_i) = s(e_{i+1}).  A trivial path is
// the empty edge list anchored at `source`.
struct Path {
  VertexId source = 0;
  std::vector<EdgeId> edges;

  std::size_t length() const { return edges.size(); }
  bool trivial() const { return edges.empty(); }
  VertexId range(const WeightedGraph& g) const {
    return edges.empty() ? source : g.sedge(edges.back()).dst;
  }
  bool operator==(const Path& o) const { return source == o.source && edges == o.edges; }
  bool operator!=(const Path& o) const { return !(*this == o); }
};

// Validates r(e_i) = s(e_{i+1}) and endpoints; throws std::invalid_argument.
void check_path(const WeightedGraph& g, const Path& p);

bool path_is_acyclic(const WeightedGraph& g, const Path& p); // no repeated vertex

Path concat(const WeightedGraph& g, const Path& p, const Path& q);

std::string path_to_string(const WeightedGraph& g, const Path& p);

// Deterministic path order: length first, then the edge-name sequence
// lexicographically, then the source vertex name.
bool path_less(const WeightedGraph& g, const Path& a, const Path& b);

// All paths of g with range v, for acyclic g; includes the trivial path.
// Sorted by path_less.  n(v) is the size of this list.
std::vector<Path> paths_into(const WeightedGraph& g, VertexId v);

// Internal variant used on pruned graphs: edges in `banned` are ignored.
std::vector<Path> paths_into_filtered(const WeightedGraph& g, VertexId v,
                                      const std::set<EdgeId>& banned);

// Esc(p) for a nonempty acyclic path p (Def. of escape paths): every exit
// edge at s(p), and every prefix mu_1..mu_t followed by an exit edge at
// s(mu_{t+1}); the path itself is its own final escape path.
std::vector<Path> escape_paths(const WeightedGraph& g, const Path& p);

struct OrbitResult {
  bool bounded = false;
  std::vector<Path> paths; // immediate paths from v to P, sorted by path_less
  std::size_t bound = 0;   // max length over paths; 0 when v is in P
};

// O_P(v): all immediate paths from v into the nonempty vertex set P.  Not
// bounded when a cycle is reachable from v before touching P.
OrbitResult orbit(const WeightedGraph& g, VertexId v, const std::vector<VertexId>& P);

OrbitResult orbit_filtered(const WeightedGraph& g, VertexId v, const std::vector<VertexId>& P,
                           const std::set<EdgeId>& banned);

} // namespace lpakit
