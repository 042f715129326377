#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpakit/classify.hpp"
#include "lpakit/graph.hpp"
#include "lpakit/paths.hpp"
#include "lpakit/shift.hpp"

namespace lpakit {

// Base ring of one matrix block of the decomposition.
struct BlockBase {
  enum class Kind { Field, Laurent, Rose, WeightedRose };
  Kind kind = Kind::Field;
  long long laurent_power = 0;        // l for K[x^l, x^-l]
  std::size_t petals = 0;             // Rose / WeightedRose
  std::vector<std::uint64_t> weights; // WeightedRose, petal-name order

  bool operator==(const BlockBase& o) const {
    return kind == o.kind && laurent_power == o.laurent_power && petals == o.petals &&
           weights == o.weights;
  }
  std::string to_string() const; // "K", "K[x^2,x^-2]", "L(1,3)", "L(2,2)", ...
};

struct Block {
  std::size_t size = 0; // n(v_s)
  BlockBase base;
  ShiftVector shifts;        // |p_i| in path order; modulus from the base ring
  HeadDescriptor head;       // the head this block comes from
  std::vector<Path> paths;   // the p_i, in E_1, sorted by path_less
  std::optional<EdgeId> removed_edge; // c_s for cycle heads
};

struct DecompositionDescriptor {
  GraphPtr graph;
  GraphClass cls;
  std::vector<Block> blocks; // canonical order (base kind, parameters, size, shifts)
  std::string to_string() const;
  std::string to_json() const;
};

// Theorem sthfin for finite connected unweighted graphs: strongly graded iff
// every vertex is connected to a cycle.
bool is_strongly_graded(const WeightedGraph& g);

// Decomposition of L(g) into graded matrix blocks over K, K[x^l,x^-l] and
// (weighted) Leavitt algebras, one block per head.  `base_override` replaces
// the default base vertex of the cycle containing the given vertex.
DecompositionDescriptor decompose(GraphPtr g,
                                  const std::vector<VertexId>& base_override = {});

// Group-ring form: all heads single loops, L(g) = (+)_s M_{n(v_s)}(K)[Z].
struct GroupRingForm {
  bool yes = false;
  std::vector<std::size_t> sizes;
  std::string to_string() const;
};
GroupRingForm is_group_ring(const WeightedGraph& g);

enum class RingForm {
  GroupRing,
  SkewGroupRing,
  CrossedProduct,
  StronglyGradedOnly,
  NotStronglyGraded,
  Undecided,
};
const char* to_string(RingForm f);

struct BlockWitness {
  std::size_t block = 0;
  // permutation pi with entry (i, pi(i)) = x^{1 + d_pi(i) - d_i}
  std::vector<std::size_t> permutation;
  std::vector<long long> exponents;
  bool pure_cycle = false; // witness is the coordinate-shift automorphism
};

struct RingFormDescriptor {
  RingForm form = RingForm::Undecided;
  std::vector<BlockWitness> witnesses; // one per Laurent block when crossed
  std::string note;
  std::string to_string() const;
};

// Crossed-product detection on a descriptor whose blocks are Field/Laurent;
// Rose blocks yield Undecided (not settled for Leavitt algebras).
RingFormDescriptor crossed_product_status(const DecompositionDescriptor& d);

enum class IsoVerdict { No, Yes, Undecided };
const char* to_string(IsoVerdict v);

struct GradedIsoResult {
  IsoVerdict verdict = IsoVerdict::Undecided;
  // Rose blocks are matched by petal count, size and shifts only; that
  // matching is sufficient for isomorphism but not proven necessary.
  bool rose_tag_level = false;
};

GradedIsoResult graded_iso(const DecompositionDescriptor& a, const DecompositionDescriptor& b);

// The pruned graph E_1: g minus removed cycle edges and rose petals.
std::set<EdgeId> pruned_edges(const DecompositionDescriptor& d);

} // namespace lpakit
