#include "lpakit/matrixalg.hpp"

#include <sstream>

namespace lpakit {

std::string LaurentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1 || e == 0) out += mag.str();
    if (e != 0) {
      if (mag != 1) out += " ";
      out += e == 1 ? "x" : "x^" + std::to_string(e);
    }
  }
  return out;
}

bool MatrixBlockElement::Entry::zero(BlockBase::Kind k) const {
  switch (k) {
    case BlockBase::Kind::Field: return scalar == 0;
    case BlockBase::Kind::Laurent: return laurent.zero();
    default: return !rose || rose->zero();
  }
}

namespace {

// Rewrites petal words at a rose base into normal form (designated petal is
// the name-largest one).
Element reduce_rose_words(const Element& a, VertexId base, const std::vector<EdgeId>& petals) {
  ReductionContext cx;
  cx.graph = a.graph();
  cx.bases = {base};
  cx.is_base.assign(a.graph()->vertex_count(), 1); // words never leave the base
  cx.head_kind.assign(a.graph()->vertex_count(), 0);
  cx.cycle_word.resize(a.graph()->vertex_count());
  cx.petals.resize(a.graph()->vertex_count());
  cx.head_kind[base] = 2;
  cx.petals[base] = petals;
  return normal_form_in(cx, a);
}

bool entries_equal(BlockBase::Kind k, const MatrixBlockElement::Entry& a,
                   const MatrixBlockElement::Entry& b) {
  switch (k) {
    case BlockBase::Kind::Field: return a.scalar == b.scalar;
    case BlockBase::Kind::Laurent: return a.laurent == b.laurent;
    default:
      if (!a.rose || !b.rose) return !a.rose == !b.rose;
      return *a.rose == *b.rose;
  }
}

} // namespace

std::vector<BlockMatrixElement::BlockMeta> BlockMatrixElement::meta_of(
    const DecompositionDescriptor& d) {
  std::vector<BlockMeta> meta;
  for (const Block& b : d.blocks) {
    BlockMeta m;
    m.base = b.base;
    m.shifts = b.shifts.entries;
    m.head_base = b.head.base;
    m.petals = b.head.petals;
    meta.push_back(std::move(m));
  }
  return meta;
}

void BlockMatrixElement::add_scalar(std::size_t block, std::size_t i, std::size_t j,
                                    const Rational& c) {
  auto& e = blocks_.at(block).entries[{i, j}];
  e.scalar += c;
  if (e.zero(meta_[block].base.kind)) blocks_[block].entries.erase({i, j});
}

void BlockMatrixElement::add_laurent(std::size_t block, std::size_t i, std::size_t j,
                                     long long exp, const Rational& c) {
  auto& e = blocks_.at(block).entries[{i, j}];
  e.laurent.add(exp, c);
  if (e.zero(meta_[block].base.kind)) blocks_[block].entries.erase({i, j});
}

void BlockMatrixElement::add_rose(std::size_t block, std::size_t i, std::size_t j,
                                  const Element& word) {
  auto& e = blocks_.at(block).entries[{i, j}];
  e.rose = e.rose ? *e.rose + word : word;
  if (e.zero(meta_[block].base.kind)) blocks_[block].entries.erase({i, j});
}

BlockMatrixElement BlockMatrixElement::operator+(const BlockMatrixElement& o) const {
  if (blocks_.size() != o.blocks_.size())
    throw std::invalid_argument("block matrix shapes differ");
  BlockMatrixElement r = *this;
  for (std::size_t b = 0; b < o.blocks_.size(); ++b)
    for (const auto& [ij, e] : o.blocks_[b].entries) {
      switch (meta_[b].base.kind) {
        case BlockBase::Kind::Field: r.add_scalar(b, ij.first, ij.second, e.scalar); break;
        case BlockBase::Kind::Laurent:
          for (const auto& [exp, c] : e.laurent.coeffs()) r.add_laurent(b, ij.first, ij.second, exp, c);
          break;
        default: r.add_rose(b, ij.first, ij.second, *e.rose); break;
      }
    }
  return r;
}

BlockMatrixElement BlockMatrixElement::operator-(const BlockMatrixElement& o) const {
  BlockMatrixElement neg(o.meta_);
  for (std::size_t b = 0; b < o.blocks_.size(); ++b)
    for (const auto& [ij, e] : o.blocks_[b].entries) {
      switch (o.meta_[b].base.kind) {
        case BlockBase::Kind::Field: neg.add_scalar(b, ij.first, ij.second, -e.scalar); break;
        case BlockBase::Kind::Laurent:
          for (const auto& [exp, c] : e.laurent.coeffs()) neg.add_laurent(b, ij.first, ij.second, exp, -c);
          break;
        default: neg.add_rose(b, ij.first, ij.second, *e.rose * Rational(-1)); break;
      }
    }
  return *this + neg;
}

BlockMatrixElement BlockMatrixElement::operator*(const BlockMatrixElement& o) const {
  if (blocks_.size() != o.blocks_.size())
    throw std::invalid_argument("block matrix shapes differ");
  BlockMatrixElement r(meta_);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto kind = meta_[b].base.kind;
    for (const auto& [ik, e1] : blocks_[b].entries)
      for (const auto& [kj, e2] : o.blocks_[b].entries) {
        if (ik.second != kj.first) continue;
        std::size_t i = ik.first, j = kj.second;
        switch (kind) {
          case BlockBase::Kind::Field:
            r.add_scalar(b, i, j, e1.scalar * e2.scalar);
            break;
          case BlockBase::Kind::Laurent: {
            LaurentPoly prod = e1.laurent * e2.laurent;
            for (const auto& [exp, c] : prod.coeffs()) r.add_laurent(b, i, j, exp, c);
            break;
          }
          default:
            r.add_rose(b, i, j,
                       reduce_rose_words(*e1.rose * *e2.rose, meta_[b].head_base, meta_[b].petals));
            break;
        }
      }
  }
  return r;
}

bool BlockMatrixElement::operator==(const BlockMatrixElement& o) const {
  if (blocks_.size() != o.blocks_.size()) return false;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& ea = blocks_[b].entries;
    const auto& eb = o.blocks_[b].entries;
    if (ea.size() != eb.size()) return false;
    auto ib = eb.begin();
    for (const auto& [ij, e] : ea) {
      if (ib->first != ij || !entries_equal(meta_[b].base.kind, e, ib->second)) return false;
      ++ib;
    }
  }
  return true;
}

bool BlockMatrixElement::zero() const {
  for (const auto& b : blocks_)
    if (!b.entries.empty()) return false;
  return true;
}

std::optional<long long> BlockMatrixElement::degree() const {
  std::optional<long long> d;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& shifts = meta_[b].shifts;
    for (const auto& [ij, e] : blocks_[b].entries) {
      std::optional<long long> w;
      switch (meta_[b].base.kind) {
        case BlockBase::Kind::Field: w = 0; break;
        case BlockBase::Kind::Laurent: w = e.laurent.degree(); break;
        default: w = degree_of(*e.rose); break;
      }
      if (!w) return std::nullopt;
      long long here = *w + shifts.at(ij.first) - shifts.at(ij.second);
      if (!d) d = here;
      if (*d != here) return std::nullopt;
    }
  }
  return d ? d : std::optional<long long>(0);
}

std::string BlockMatrixElement::to_string() const {
  std::ostringstream out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out << " (+) ";
    out << "M" << meta_[b].shifts.size() << "(" << meta_[b].base.to_string() << ")[";
    bool first = true;
    for (const auto& [ij, e] : blocks_[b].entries) {
      if (!first) out << ", ";
      first = false;
      out << "(" << ij.first << "," << ij.second << "): ";
      switch (meta_[b].base.kind) {
        case BlockBase::Kind::Field: out << e.scalar.str(); break;
        case BlockBase::Kind::Laurent: out << e.laurent.to_string(); break;
        default: out << element_to_string(*e.rose); break;
      }
    }
    out << "]";
  }
  return out.str();
}

BlockMatrixElement structure_map(const Element& a, const DecompositionDescriptor& d) {
  if (*a.graph() != *d.graph)
    throw std::invalid_argument("element and descriptor live over different graphs");
  for (const Block& b : d.blocks)
    if (b.base.kind == BlockBase::Kind::WeightedRose)
      throw unsupported_error("structure map over weighted rose blocks is not supported");

  const WeightedGraph& g = *d.graph;

  // reduction context matching the descriptor's bases and pruned edges
  ReductionContext cx;
  cx.graph = d.graph;
  cx.banned = pruned_edges(d);
  cx.is_base.assign(g.vertex_count(), 0);
  cx.head_kind.assign(g.vertex_count(), -1);
  cx.cycle_word.resize(g.vertex_count());
  cx.petals.resize(g.vertex_count());
  std::vector<std::size_t> block_of(g.vertex_count(), 0);
  std::vector<std::map<std::pair<VertexId, std::vector<EdgeId>>, std::size_t>> path_index(
      d.blocks.size());
  for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
    const Block& b = d.blocks[bi];
    VertexId v = b.head.base;
    cx.bases.push_back(v);
    cx.is_base[v] = 1;
    block_of[v] = bi;
    switch (b.head.kind) {
      case HeadDescriptor::Kind::Sink: cx.head_kind[v] = 0; break;
      case HeadDescriptor::Kind::Cycle:
        cx.head_kind[v] = 1;
        cx.cycle_word[v] = b.head.cycle_edges;
        break;
      case HeadDescriptor::Kind::Rose:
        cx.head_kind[v] = 2;
        cx.petals[v] = b.head.petals;
        break;
    }
    for (std::size_t i = 0; i < b.paths.size(); ++i)
      path_index[bi].emplace(std::make_pair(b.paths[i].source, b.paths[i].edges), i);
  }

  // split a path at the first visit of the base u; returns (stem index, tail)
  auto split = [&](const Path& p, VertexId u, std::size_t bi) {
    Path stem{p.source, {}};
    std::size_t t = 0;
    VertexId at = p.source;
    while (at != u) {
      stem.edges.push_back(p.edges.at(t));
      at = g.sedge(p.edges[t]).dst;
      ++t;
    }
    Path tail{u, {p.edges.begin() + static_cast<std::ptrdiff_t>(t), p.edges.end()}};
    return std::make_pair(path_index[bi].at({stem.source, stem.edges}), tail);
  };

  BlockMatrixElement out(BlockMatrixElement::meta_of(d));
  std::vector<std::pair<Monomial, Rational>> work(a.terms().begin(), a.terms().end());
  while (!work.empty()) {
    auto [m, c] = std::move(work.back());
    work.pop_back();
    VertexId u = m.real.range(g);
    if (!cx.is_base[u]) {
      for (const Path& q : cx.orbit_of(u))
        work.emplace_back(Monomial{concat(g, m.real, q), concat(g, m.ghost, q)}, c);
      continue;
    }
    std::size_t bi = block_of[u];
    auto [i, tail_r] = split(m.real, u, bi);
    auto [j, tail_g] = split(m.ghost, u, bi);
    switch (cx.head_kind[u]) {
      case 0:
        out.add_scalar(bi, i, j, c);
        break;
      case 1: {
        long long l = static_cast<long long>(cx.cycle_word[u].size());
        long long k = static_cast<long long>(tail_r.length()) / l -
                      static_cast<long long>(tail_g.length()) / l;
        out.add_laurent(bi, i, j, k * l, c);
        break;
      }
      default: {
        Element word = Element::monomial(d.graph, tail_r, tail_g, c);
        out.add_rose(bi, i, j, reduce_rose_words(word, u, cx.petals[u]));
        break;
      }
    }
  }
  return out;
}

} // namespace lpakit
