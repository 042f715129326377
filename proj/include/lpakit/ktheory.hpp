#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpakit/graph.hpp"
#include "lpakit/snf.hpp"

namespace lpakit {

// N' and I'_w over the vertex order "non-sinks first, then sinks" (each kept
// in declaration order); n and iw are already transposed with sink columns
// removed, so k0 = coker(n - iw) on Z^{E0}.
struct IntegerMatrixPair {
  std::vector<VertexId> order; // row order: non-sinks, then sinks
  std::size_t nonsinks = 0;
  IntMatrix adjacency; // N': order x order, structured-edge counts
  IntMatrix iweight;   // I'_w: diag(n_v), 0 at sinks
  IntMatrix n;         // N^t with sink columns dropped
  IntMatrix iw;        // I_w with sink columns dropped
};

IntegerMatrixPair build_matrices(const WeightedGraph& g);

struct AbelianGroupDescriptor {
  std::size_t free_rank = 0;
  std::vector<Int> invariant_factors; // each >= 2, divisibility chain
  bool trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  std::string to_string() const; // "Z^r x Z/d1 x Z/d2 ..." or "0"
  std::string to_json() const;   // {"free_rank": r, "invariant_factors": [...]}
  bool operator==(const AbelianGroupDescriptor& o) const {
    return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
  }
};

AbelianGroupDescriptor k0(const WeightedGraph& g);

// V-monoid presentation: one generator per vertex, one relation
// n_v * v = sum of r(alpha) over structured edges out of v, per non-sink v.
using MonoidVec = std::vector<long long>; // coefficients over the generators

struct MonoidRelation {
  VertexId vertex = 0;
  MonoidVec lhs, rhs;
};

struct MonoidPresentation {
  GraphPtr graph;
  std::vector<std::string> generators; // vertex names, declaration order
  std::vector<MonoidRelation> relations;

  MonoidVec parse_element(const std::string& text) const; // "2u + t"
  std::string element_to_string(const MonoidVec& x) const;
  // coker of the relation matrix; agrees with k0 of the graph
  AbelianGroupDescriptor group_completion() const;
};

MonoidPresentation monoid_presentation(GraphPtr g);

enum class EqVerdict { Equal, Distinct, Unknown };
const char* to_string(EqVerdict v);

struct EqResult {
  EqVerdict verdict = EqVerdict::Unknown;
  std::vector<MonoidVec> chain; // witness rewrite chain a -> ... -> b
  // Distinct certificate: a conserved functional u (a row of the SNF
  // transform) with u.a != u.b modulo its invariant factor (0 = free).
  MonoidVec functional;
  Int modulus = 0;
  Int value_a = 0, value_b = 0;
};

// Bidirectional breadth-first search through single-relation rewrites over
// states of coefficient-sum <= bound; Distinct only from the sound
// group-completion invariant, never from search exhaustion.
EqResult monoid_equal(const MonoidPresentation& p, const MonoidVec& a, const MonoidVec& b,
                      std::size_t bound = 12);

enum class MonoidProperty { Refinement, Separative };

struct PropertyResult {
  bool holds = false; // "no counterexample with elements of sum <= bound"
  std::size_t bound = 0;
  std::vector<MonoidVec> witness; // refinement: x1,x2,y1,y2; separative: x,y,z
  std::string describe(const MonoidPresentation& p) const;
};

// Exhaustive bounded search in declaration-major element order; equality is
// the bounded congruence on states of coefficient-sum <= 2*bound.
PropertyResult monoid_property_search(const MonoidPresentation& p, MonoidProperty prop,
                                      std::size_t bound = 12);

} // namespace lpakit
