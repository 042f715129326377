#pragma once

#include <string>
#include <vector>

#include "lpakit/graph.hpp"

namespace lpakit {

// One head of a polycephaly graph.  Single loops of weight 1 are normalized
// to length-1 cycle heads, never to one-petal roses.
struct HeadDescriptor {
  enum class Kind { Cycle, Rose, Sink };
  Kind kind = Kind::Sink;
  VertexId base = 0; // default base vertex (smallest-name cycle vertex)
  // Cycle heads
  std::vector<VertexId> cycle_vertices; // starting at base, in cycle order
  std::vector<EdgeId> cycle_edges;      // cycle_edges[i] leaves cycle_vertices[i]
  // Rose heads
  std::vector<EdgeId> petals;         // loop edges at base, name order
  std::vector<std::uint64_t> weights; // parallel to petals

  std::size_t cycle_length() const { return cycle_edges.size(); }
  std::size_t petal_count() const { return petals.size(); }
  bool weighted() const {
    for (auto w : weights)
      if (w > 1) return true;
    return false;
  }
};

struct GraphClass {
  enum class Tag { Acyclic, CnComet, MultiHeadedComet, MultiHeadedRose, Polycephaly, NotPolycephaly };
  Tag tag = Tag::NotPolycephaly;
  std::vector<HeadDescriptor> heads; // ordered by base vertex declaration index
  std::string reason;                // set only for NotPolycephaly

  bool is_polycephaly() const { return tag != Tag::NotPolycephaly; }
};

const char* to_string(GraphClass::Tag t);

// Decides whether g is a polycephaly graph (disjoint exit-free cycles and
// roses heading an acyclic body) and lists its heads.  Weights above 1 are
// admitted on rose petals only.
GraphClass classify(const WeightedGraph& g);

} // namespace lpakit
