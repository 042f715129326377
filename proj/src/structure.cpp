#include "lpakit/structure.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace lpakit {

std::string BlockBase::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Field: return "K";
    case Kind::Laurent:
      if (laurent_power == 1) return "K[x,x^-1]";
      os << "K[x^" << laurent_power << ",x^-" << laurent_power << "]";
      return os.str();
    case Kind::Rose: os << "L(1," << petals << ")"; return os.str();
    case Kind::WeightedRose: {
      bool uniform = true;
      for (auto w : weights) uniform = uniform && w == weights.front();
      std::uint64_t n = weights.empty() ? 1 : weights.front();
      if (uniform && petals + 1 >= n + 1 && petals >= n) {
        // n+k-1 petals of weight n is the Leavitt algebra L(n,k)
        os << "L(" << n << "," << (petals - n + 1) << ")";
        return os.str();
      }
      os << "wL(petals=" << petals << ",weights=";
      for (std::size_t i = 0; i < weights.size(); ++i) os << (i ? "," : "") << weights[i];
      os << ")";
      return os.str();
    }
  }
  return "?";
}

std::string DecompositionDescriptor::to_string() const {
  std::ostringstream os;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) os << " + ";
    os << "M" << blocks[b].size << "(" << blocks[b].base.to_string() << ")(";
    for (std::size_t i = 0; i < blocks[b].shifts.entries.size(); ++i)
      os << (i ? "," : "") << blocks[b].shifts.entries[i];
    os << ")";
  }
  return os.str();
}

namespace {

nlohmann::ordered_json head_json(const WeightedGraph& g, const HeadDescriptor& h) {
  nlohmann::ordered_json j;
  switch (h.kind) {
    case HeadDescriptor::Kind::Cycle: {
      j["kind"] = "cycle";
      j["length"] = h.cycle_length();
      j["base"] = g.vertex_name(h.base);
      auto verts = nlohmann::ordered_json::array();
      for (VertexId v : h.cycle_vertices) verts.push_back(g.vertex_name(v));
      j["vertices"] = verts;
      break;
    }
    case HeadDescriptor::Kind::Rose: {
      j["kind"] = "rose";
      j["base"] = g.vertex_name(h.base);
      j["petals"] = h.petal_count();
      j["weights"] = h.weights;
      break;
    }
    case HeadDescriptor::Kind::Sink:
      j["kind"] = "sink";
      j["base"] = g.vertex_name(h.base);
      break;
  }
  return j;
}

nlohmann::ordered_json base_json(const BlockBase& b) {
  switch (b.kind) {
    case BlockBase::Kind::Field: return "field";
    case BlockBase::Kind::Laurent: return {{"laurent", b.laurent_power}};
    case BlockBase::Kind::Rose: return {{"rose", b.petals}};
    case BlockBase::Kind::WeightedRose: {
      auto ws = b.weights;
      std::sort(ws.begin(), ws.end());
      return {{"wrose", {{"petals", b.petals}, {"weights", ws}}}};
    }
  }
  return nullptr;
}

} // namespace

std::string DecompositionDescriptor::to_json() const {
  nlohmann::ordered_json j;
  j["blocks"] = nlohmann::ordered_json::array();
  for (const auto& b : blocks) {
    nlohmann::ordered_json jb;
    jb["size"] = b.size;
    jb["base"] = base_json(b.base);
    jb["shifts"] = b.shifts.entries;
    jb["head"] = head_json(*graph, b.head);
    j["blocks"].push_back(jb);
  }
  return j.dump();
}

bool is_strongly_graded(const WeightedGraph& g) {
  if (!g.is_unweighted())
    throw std::invalid_argument("strong gradedness is implemented for unweighted graphs");
  g.require_connected();
  // vertices on cycles
  std::vector<char> on_cycle(g.vertex_count(), 0);
  {
    // v is on a cycle iff v is reachable from one of its successors
    std::function<bool(VertexId, VertexId, std::vector<char>&)> reach =
        [&](VertexId from, VertexId target, std::vector<char>& seen) -> bool {
      if (from == target) return true;
      if (seen[from]) return false;
      seen[from] = 1;
      for (EdgeId e : g.out_edges(from))
        if (reach(g.sedge(e).dst, target, seen)) return true;
      return false;
    };
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      for (EdgeId e : g.out_edges(v)) {
        std::vector<char> seen(g.vertex_count(), 0);
        if (reach(g.sedge(e).dst, v, seen)) {
          on_cycle[v] = 1;
          break;
        }
      }
  }
  // every vertex connected (forward) to a cycle?
  std::function<bool(VertexId, std::vector<char>&)> to_cycle = [&](VertexId v,
                                                                   std::vector<char>& seen) -> bool {
    if (on_cycle[v]) return true;
    if (seen[v]) return false;
    seen[v] = 1;
    for (EdgeId e : g.out_edges(v))
      if (to_cycle(g.sedge(e).dst, seen)) return true;
    return false;
  };
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<char> seen(g.vertex_count(), 0);
    if (!to_cycle(v, seen)) return false;
  }
  return true;
}

namespace {

int base_rank(BlockBase::Kind k) {
  switch (k) {
    case BlockBase::Kind::Field: return 0;
    case BlockBase::Kind::Laurent: return 1;
    case BlockBase::Kind::Rose: return 2;
    case BlockBase::Kind::WeightedRose: return 3;
  }
  return 4;
}

bool block_less(const WeightedGraph& g, const Block& a, const Block& b) {
  int ra = base_rank(a.base.kind), rb = base_rank(b.base.kind);
  if (ra != rb) return ra < rb;
  if (a.base.laurent_power != b.base.laurent_power) return a.base.laurent_power < b.base.laurent_power;
  if (a.base.petals != b.base.petals) return a.base.petals < b.base.petals;
  if (a.base.weights != b.base.weights) return a.base.weights < b.base.weights;
  if (a.size != b.size) return a.size < b.size;
  if (a.shifts.entries != b.shifts.entries) return a.shifts.entries < b.shifts.entries;
  return g.vertex_name(a.head.base) < g.vertex_name(b.head.base);
}

} // namespace

DecompositionDescriptor decompose(GraphPtr g, const std::vector<VertexId>& base_override) {
  DecompositionDescriptor d;
  d.graph = g;
  d.cls = classify(*g);
  if (!d.cls.is_polycephaly())
    throw unsupported_error("graph is not polycephaly: " + d.cls.reason);

  for (VertexId v : base_override) {
    bool found = false;
    for (auto& h : d.cls.heads) {
      if (h.kind != HeadDescriptor::Kind::Cycle) continue;
      auto it = std::find(h.cycle_vertices.begin(), h.cycle_vertices.end(), v);
      if (it == h.cycle_vertices.end()) continue;
      std::size_t off = static_cast<std::size_t>(it - h.cycle_vertices.begin());
      std::rotate(h.cycle_vertices.begin(), h.cycle_vertices.begin() + off, h.cycle_vertices.end());
      std::rotate(h.cycle_edges.begin(), h.cycle_edges.begin() + off, h.cycle_edges.end());
      h.base = v;
      found = true;
      break;
    }
    if (!found)
      throw std::invalid_argument("base vertex '" + g->vertex_name(v) + "' is not on a cycle");
  }

  // prune: drop each cycle's edge out of its base and all petals
  std::set<EdgeId> banned;
  for (const auto& h : d.cls.heads) {
    if (h.kind == HeadDescriptor::Kind::Cycle) banned.insert(h.cycle_edges.front());
    for (EdgeId e : h.petals) banned.insert(e);
  }

  for (const auto& h : d.cls.heads) {
    Block b;
    b.head = h;
    b.paths = paths_into_filtered(*g, h.base, banned);
    b.size = b.paths.size();
    for (const Path& p : b.paths) b.shifts.entries.push_back(static_cast<long long>(p.length()));
    switch (h.kind) {
      case HeadDescriptor::Kind::Sink:
        b.base.kind = BlockBase::Kind::Field;
        b.shifts.modulus = 0;
        break;
      case HeadDescriptor::Kind::Cycle:
        b.base.kind = BlockBase::Kind::Laurent;
        b.base.laurent_power = static_cast<long long>(h.cycle_length());
        b.shifts.modulus = b.base.laurent_power;
        b.removed_edge = h.cycle_edges.front();
        break;
      case HeadDescriptor::Kind::Rose:
        b.base.kind = h.weighted() ? BlockBase::Kind::WeightedRose : BlockBase::Kind::Rose;
        b.base.petals = h.petal_count();
        if (h.weighted()) b.base.weights = h.weights;
        b.shifts.modulus = 0; // only permutation and common translates are certified
        break;
    }
    d.blocks.push_back(std::move(b));
  }
  std::sort(d.blocks.begin(), d.blocks.end(),
            [&g](const Block& a, const Block& b) { return block_less(*g, a, b); });
  return d;
}

std::set<EdgeId> pruned_edges(const DecompositionDescriptor& d) {
  std::set<EdgeId> banned;
  for (const auto& b : d.blocks) {
    if (b.removed_edge) banned.insert(*b.removed_edge);
    for (EdgeId e : b.head.petals) banned.insert(e);
  }
  return banned;
}

std::string GroupRingForm::to_string() const {
  if (!yes) return "no";
  std::ostringstream os;
  os << "yes, ";
  for (std::size_t i = 0; i < sizes.size();) {
    std::size_t j = i;
    while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
    if (i) os << " + ";
    os << "M" << sizes[i] << "(K)";
    if (j - i > 1) os << "^" << (j - i);
    os << "[Z]";
    i = j;
  }
  return os.str();
}

GroupRingForm is_group_ring(const WeightedGraph& g) {
  GraphClass cls = classify(g);
  if (!cls.is_polycephaly())
    throw unsupported_error("graph is not polycephaly: " + cls.reason);
  GroupRingForm r;
  for (const auto& h : cls.heads)
    if (h.kind != HeadDescriptor::Kind::Cycle || h.cycle_length() != 1) return r;
  auto d = decompose(make_graph(g));
  r.yes = true;
  for (const auto& b : d.blocks) r.sizes.push_back(b.size);
  std::sort(r.sizes.begin(), r.sizes.end());
  return r;
}

const char* to_string(RingForm f) {
  switch (f) {
    case RingForm::GroupRing: return "GroupRing";
    case RingForm::SkewGroupRing: return "SkewGroupRing";
    case RingForm::CrossedProduct: return "CrossedProduct";
    case RingForm::StronglyGradedOnly: return "StronglyGradedOnly";
    case RingForm::NotStronglyGraded: return "NotStronglyGraded";
    case RingForm::Undecided: return "Undecided";
  }
  return "?";
}

std::string RingFormDescriptor::to_string() const {
  std::string s = lpakit::to_string(form);
  if (!note.empty()) s += " (" + note + ")";
  return s;
}

RingFormDescriptor crossed_product_status(const DecompositionDescriptor& d) {
  RingFormDescriptor r;
  bool rose = false, field = false;
  for (const auto& b : d.blocks) {
    if (b.base.kind == BlockBase::Kind::Rose || b.base.kind == BlockBase::Kind::WeightedRose)
      rose = true;
    if (b.base.kind == BlockBase::Kind::Field) field = true;
  }
  // a field block already rules strong gradedness out, rose blocks or not
  if (field) {
    r.form = RingForm::NotStronglyGraded;
    r.note = "field blocks have trivial support";
    return r;
  }
  if (rose) {
    r.form = RingForm::Undecided;
    r.note = "crossed-product structure of Leavitt algebra blocks is not settled";
    return r;
  }
  bool all_crossed = true;
  bool all_loops = true;
  for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
    const Block& b = d.blocks[bi];
    long long l = b.base.laurent_power;
    if (l != 1) all_loops = false;
    // residue classes of the shifts
    std::map<long long, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < b.shifts.entries.size(); ++i)
      classes[((b.shifts.entries[i] % l) + l) % l].push_back(i);
    bool crossed = classes.size() == static_cast<std::size_t>(l);
    for (const auto& [res, idx] : classes)
      crossed = crossed && idx.size() == b.size / static_cast<std::size_t>(l);
    if (!crossed || b.size % static_cast<std::size_t>(l) != 0) {
      all_crossed = false;
      continue;
    }
    // an invertible homogeneous matrix of degree 1: position i of class res
    // maps to the matching position of class res - 1
    BlockWitness w;
    w.block = bi;
    w.permutation.assign(b.size, 0);
    w.exponents.assign(b.size, 0);
    for (const auto& [res, idx] : classes) {
      const auto& to = classes.at(((res - 1) % l + l) % l);
      for (std::size_t k = 0; k < idx.size(); ++k) {
        w.permutation[idx[k]] = to[k];
        w.exponents[idx[k]] = 1 + b.shifts.entries[to[k]] - b.shifts.entries[idx[k]];
      }
    }
    // pure cycle: the comet is the bare cycle, shifts 0..l-1
    std::vector<long long> sorted = b.shifts.entries;
    std::sort(sorted.begin(), sorted.end());
    w.pure_cycle = b.size == static_cast<std::size_t>(l);
    for (std::size_t i = 0; i < sorted.size() && w.pure_cycle; ++i)
      w.pure_cycle = sorted[i] == static_cast<long long>(i);
    r.witnesses.push_back(std::move(w));
  }
  if (!all_crossed) {
    r.form = RingForm::StronglyGradedOnly;
    r.witnesses.clear();
    r.note = "some block has unbalanced residue classes";
    return r;
  }
  if (all_loops) {
    r.form = RingForm::GroupRing;
    r.note = "all heads are single loops";
    return r;
  }
  r.form = RingForm::SkewGroupRing;
  bool pure = !r.witnesses.empty();
  for (const auto& w : r.witnesses) pure = pure && w.pure_cycle;
  r.note = pure ? "cyclic coordinate-shift automorphism" : "permutation witness per block";
  return r;
}

const char* to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::No: return "false";
    case IsoVerdict::Yes: return "true";
    case IsoVerdict::Undecided: return "undecided";
  }
  return "?";
}

GradedIsoResult graded_iso(const DecompositionDescriptor& a, const DecompositionDescriptor& b) {
  GradedIsoResult r;
  for (const auto* d : {&a, &b})
    for (const auto& blk : d->blocks)
      if (blk.base.kind == BlockBase::Kind::WeightedRose) {
        r.verdict = IsoVerdict::Undecided;
        return r;
      }
  // canonical key per block; Field blocks compare exact sorted shifts (both
  // lists contain 0, so a common translate is forced to be trivial), Laurent
  // blocks compare mod l, Rose blocks up to a common translate.
  auto keys = [&r](const DecompositionDescriptor& d) {
    std::vector<std::string> ks;
    for (const auto& blk : d.blocks) {
      std::ostringstream os;
      os << base_rank(blk.base.kind) << "|" << blk.base.laurent_power << "|" << blk.base.petals
         << "|" << blk.size << "|";
      std::vector<long long> canon;
      if (blk.base.kind == BlockBase::Kind::Field) {
        canon = blk.shifts.entries;
        std::sort(canon.begin(), canon.end());
      } else {
        canon = canonical_shift(blk.shifts).entries;
        if (blk.base.kind == BlockBase::Kind::Rose) r.rose_tag_level = true;
      }
      for (long long e : canon) os << e << ",";
      ks.push_back(os.str());
    }
    std::sort(ks.begin(), ks.end());
    return ks;
  };
  r.verdict = keys(a) == keys(b) ? IsoVerdict::Yes : IsoVerdict::No;
  if (r.verdict == IsoVerdict::No) r.rose_tag_level = false;
  return r;
}

} // namespace lpakit
