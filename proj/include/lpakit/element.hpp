#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpakit/graph.hpp"
#include "lpakit/paths.hpp"

namespace lpakit {

using Rational = boost::multiprecision::cpp_rational;

// Prime field for stress testing the rewriting engine, p < 2^31.
template <std::uint32_t P>
struct Fp {
  static_assert(P >= 2 && P < (1u << 31), "modulus out of range");
  std::uint32_t v = 0;
  Fp() = default;
  Fp(long long x) : v(static_cast<std::uint32_t>(((x % P) + P) % P)) {}
  Fp operator+(Fp o) const { return from((std::uint64_t(v) + o.v) % P); }
  Fp operator-(Fp o) const { return from((std::uint64_t(v) + P - o.v) % P); }
  Fp operator*(Fp o) const { return from(std::uint64_t(v) * o.v % P); }
  Fp operator-() const { return from(v ? P - v : 0); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  bool operator==(Fp o) const { return v == o.v; }
  bool operator!=(Fp o) const { return v != o.v; }
  static Fp from(std::uint64_t x) {
    Fp f;
    f.v = static_cast<std::uint32_t>(x);
    return f;
  }
};

template <class K>
bool coeff_is_zero(const K& k) {
  return k == K();
}

// Monomial alpha beta* with r(alpha) = r(beta).
struct Monomial {
  Path real, ghost;
  long long degree() const {
    return static_cast<long long>(real.length()) - static_cast<long long>(ghost.length());
  }
  bool operator==(const Monomial& o) const { return real == o.real && ghost == o.ghost; }
};

struct MonomialLess {
  const WeightedGraph* g = nullptr;
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.real != b.real) return path_less(*g, a.real, b.real);
    if (a.ghost != b.ghost) return path_less(*g, a.ghost, b.ghost);
    return false;
  }
};

// K-linear combination of monomials of L(E) in the alpha beta* spanning set.
template <class K>
class ElementT {
public:
  using Terms = std::map<Monomial, K, MonomialLess>;

  ElementT() = default;
  explicit ElementT(GraphPtr g) : graph_(std::move(g)), terms_(MonomialLess{graph_.get()}) {
    if (!graph_->is_unweighted())
      throw unsupported_error("element arithmetic over weighted graphs is not supported; "
                              "weighted graphs are handled at the descriptor level");
  }

  static ElementT vertex(GraphPtr g, VertexId v) {
    ElementT e(std::move(g));
    e.add(Monomial{Path{v, {}}, Path{v, {}}}, K(1));
    return e;
  }
  static ElementT edge(GraphPtr g, EdgeId id, bool ghost) {
    ElementT e(std::move(g));
    const SEdge& se = e.graph_->sedge(id);
    Path p{se.src, {id}}, t{se.dst, {}};
    e.add(ghost ? Monomial{t, p} : Monomial{p, t}, K(1));
    return e;
  }
  static ElementT monomial(GraphPtr g, const Path& real, const Path& ghost, K coeff = K(1)) {
    ElementT e(std::move(g));
    check_path(*e.graph_, real);
    check_path(*e.graph_, ghost);
    if (real.range(*e.graph_) != ghost.range(*e.graph_))
      throw std::invalid_argument("monomial paths must share their range");
    e.add(Monomial{real, ghost}, coeff);
    return e;
  }

  const GraphPtr& graph() const { return graph_; }
  const Terms& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add(const Monomial& m, const K& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!coeff_is_zero(c)) terms_.emplace(m, c);
    } else {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  ElementT operator+(const ElementT& o) const {
    require_same_graph(o);
    ElementT r = *this;
    for (const auto& [m, c] : o.terms_) r.add(m, c);
    return r;
  }
  ElementT operator-(const ElementT& o) const {
    require_same_graph(o);
    ElementT r = *this;
    for (const auto& [m, c] : o.terms_) r.add(m, -c);
    return r;
  }
  ElementT operator*(const K& c) const {
    ElementT r(graph_);
    if (coeff_is_zero(c)) return r;
    for (const auto& [m, k] : terms_) r.add(m, k * c);
    return r;
  }
  ElementT operator*(const ElementT& o) const;
  bool operator==(const ElementT& o) const {
    return *graph_ == *o.graph_ &&
           std::equal(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                      [](const auto& a, const auto& b) { return a.first == b.first && a.second == b.second; });
  }

  void require_same_graph(const ElementT& o) const {
    if (graph_.get() != o.graph_.get() && !(*graph_ == *o.graph_))
      throw std::invalid_argument("elements live over different graphs");
  }

private:
  GraphPtr graph_;
  Terms terms_ = Terms(MonomialLess{nullptr});
};

using Element = ElementT<Rational>;

// ghost path composition rule: beta* gamma collapses by prefix comparison
template <class K>
ElementT<K> ElementT<K>::operator*(const ElementT& o) const {
  require_same_graph(o);
  const WeightedGraph& g = *graph_;
  ElementT r(graph_);
  auto prefix_of = [&g](const Path& p, const Path& q) -> std::optional<Path> {
    if (p.source != q.source || p.length() > q.length()) return std::nullopt;
    for (std::size_t i = 0; i < p.length(); ++i)
      if (p.edges[i] != q.edges[i]) return std::nullopt;
    Path rest;
    rest.source = p.range(g);
    rest.edges.assign(q.edges.begin() + static_cast<std::ptrdiff_t>(p.length()), q.edges.end());
    return rest;
  };
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      if (auto rest = prefix_of(m1.ghost, m2.real)) {
        r.add(Monomial{concat(g, m1.real, *rest), m2.ghost}, c1 * c2);
      } else if (auto rest2 = prefix_of(m2.real, m1.ghost)) {
        r.add(Monomial{m1.real, concat(g, m2.ghost, *rest2)}, c1 * c2);
      }
    }
  return r;
}

template <class K>
ElementT<K> involute(const ElementT<K>& a) {
  ElementT<K> r(a.graph());
  for (const auto& [m, c] : a.terms()) r.add(Monomial{m.ghost, m.real}, c);
  return r;
}

// degree in the canonical Z-grading; zero is homogeneous of degree 0
template <class K>
std::optional<long long> degree_of(const ElementT<K>& a) {
  std::optional<long long> d;
  for (const auto& [m, c] : a.terms()) {
    if (!d) d = m.degree();
    if (*d != m.degree()) return std::nullopt;
  }
  return d ? d : std::optional<long long>(0);
}

// Reduction data shared by normal_form and structure_map: the heads, the
// pruned graph E_1 and per-head rewrite words.
struct ReductionContext {
  ReductionContext() = default;          // fill the fields directly (descriptor path)
  explicit ReductionContext(GraphPtr g); // throws unsupported_error if not polycephaly

  GraphPtr graph;
  std::set<EdgeId> banned;            // removed cycle edges and petals
  std::vector<VertexId> bases;        // head base vertices
  std::vector<char> is_base;          // per vertex
  std::vector<int> head_kind;         // per vertex: -1 none, 0 sink, 1 cycle, 2 rose
  std::vector<std::vector<EdgeId>> cycle_word; // per base: full cycle from base
  std::vector<std::vector<EdgeId>> petals;     // per base: petal edges, name order

  const std::vector<Path>& orbit_of(VertexId v) const; // memoized, v not a base

private:
  mutable std::map<VertexId, std::vector<Path>> orbit_cache_;
};

// Rewrites every monomial into the p C^k q* / p y z* q* / p q* basis of the
// head decomposition; a == b iff normal_form(a - b) is zero.
template <class K>
ElementT<K> normal_form_in(const ReductionContext& cx, const ElementT<K>& a) {
  const WeightedGraph& g = *cx.graph;
  ElementT<K> out(a.graph());
  std::vector<std::pair<Monomial, K>> work(a.terms().begin(), a.terms().end());
  while (!work.empty()) {
    auto [m, c] = std::move(work.back());
    work.pop_back();
    VertexId u = m.real.range(g);
    if (!cx.is_base[u]) {
      for (const Path& q : cx.orbit_of(u))
        work.emplace_back(Monomial{concat(g, m.real, q), concat(g, m.ghost, q)}, c);
      continue;
    }
    if (cx.head_kind[u] == 2) {
      const auto& ps = cx.petals[u];
      EdgeId designated = ps.back();
      if (!m.real.edges.empty() && !m.ghost.edges.empty() &&
          m.real.edges.back() == designated && m.ghost.edges.back() == designated) {
        Monomial base = m;
        base.real.edges.pop_back();
        base.ghost.edges.pop_back();
        work.emplace_back(base, c);
        for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
          Monomial swap = base;
          swap.real.edges.push_back(ps[i]);
          swap.ghost.edges.push_back(ps[i]);
          work.emplace_back(swap, -c);
        }
        continue;
      }
    } else if (cx.head_kind[u] == 1) {
      const auto& w = cx.cycle_word[u];
      auto ends_with_cycle = [&w](const Path& p) {
        if (p.length() < w.size()) return false;
        for (std::size_t i = 0; i < w.size(); ++i)
          if (p.edges[p.length() - w.size() + i] != w[i]) return false;
        return true;
      };
      if (ends_with_cycle(m.real) && ends_with_cycle(m.ghost)) {
        Monomial s = m;
        s.real.edges.resize(s.real.length() - w.size());
        s.ghost.edges.resize(s.ghost.length() - w.size());
        work.emplace_back(s, c);
        continue;
      }
    }
    out.add(m, c);
  }
  return out;
}

template <class K>
ElementT<K> normal_form(const ElementT<K>& a) {
  return normal_form_in(ReductionContext(a.graph()), a);
}

// "coeff? factor+" terms joined by +/-, ghost marked by a trailing *.
Element parse_element(GraphPtr g, const std::string& text);

std::string element_to_string(const Element& a);

} // namespace lpakit
