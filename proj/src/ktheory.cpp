#include "lpakit/ktheory.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace lpakit {

IntegerMatrixPair build_matrices(const WeightedGraph& g) {
  IntegerMatrixPair r;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!g.is_sink(v)) r.order.push_back(v);
  r.nonsinks = r.order.size();
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v)) r.order.push_back(v);

  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[r.order[i]] = i;

  r.adjacency = IntMatrix(n, n);
  r.iweight = IntMatrix(n, n);
  for (const SEdge& e : g.sedges()) r.adjacency.at(pos[e.src], pos[e.dst]) += 1;
  for (std::size_t i = 0; i < r.nonsinks; ++i)
    r.iweight.at(i, i) = Int(g.max_out_weight(r.order[i]));

  // transpose, then drop sink columns
  r.n = IntMatrix(n, r.nonsinks);
  r.iw = IntMatrix(n, r.nonsinks);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r.nonsinks; ++j) {
      r.n.at(i, j) = r.adjacency.at(j, i);
      r.iw.at(i, j) = r.iweight.at(j, i);
    }
  return r;
}

namespace {

AbelianGroupDescriptor cokernel(const IntMatrix& m) {
  SnfResult s = smith_normal_form(m);
  AbelianGroupDescriptor g;
  std::size_t rank = 0;
  for (const Int& d : s.diagonal()) {
    if (d == 0) continue;
    ++rank;
    if (d >= 2) g.invariant_factors.push_back(d);
  }
  g.free_rank = m.rows() - rank;
  return g;
}

} // namespace

std::string AbelianGroupDescriptor::to_string() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank == 1) os << "Z", first = false;
  if (free_rank >= 2) os << "Z^" << free_rank, first = false;
  for (const Int& d : invariant_factors) {
    if (!first) os << " x ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

std::string AbelianGroupDescriptor::to_json() const {
  nlohmann::ordered_json j;
  j["free_rank"] = free_rank;
  auto fs = nlohmann::ordered_json::array();
  for (const Int& d : invariant_factors) fs.push_back(d.convert_to<long long>());
  j["invariant_factors"] = fs;
  return j.dump();
}

AbelianGroupDescriptor k0(const WeightedGraph& g) {
  IntegerMatrixPair p = build_matrices(g);
  IntMatrix m(p.n.rows(), p.n.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = p.n.at(i, j) - p.iw.at(i, j);
  return cokernel(m);
}

MonoidPresentation monoid_presentation(GraphPtr g) {
  MonoidPresentation p;
  p.graph = g;
  p.generators = g->vertices();
  for (VertexId v = 0; v < g->vertex_count(); ++v) {
    if (g->is_sink(v)) continue;
    MonoidRelation rel;
    rel.vertex = v;
    rel.lhs.assign(p.generators.size(), 0);
    rel.rhs.assign(p.generators.size(), 0);
    rel.lhs[v] = static_cast<long long>(g->max_out_weight(v));
    for (EdgeId e : g->out_edges(v)) rel.rhs[g->sedge(e).dst] += 1;
    p.relations.push_back(std::move(rel));
  }
  return p;
}

MonoidVec MonoidPresentation::parse_element(const std::string& text) const {
  MonoidVec x(generators.size(), 0);
  std::string term;
  auto flush = [&](std::string t) {
    // trim
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    if (t.empty()) throw std::invalid_argument("empty term in monoid element");
    // collapse inner whitespace between coefficient and name
    std::string flat;
    for (char c : t)
      if (!std::isspace(static_cast<unsigned char>(c))) flat += c;
    if (flat.find('-') != std::string::npos)
      throw std::invalid_argument("negative coefficients are not monoid elements");
    auto vid = [&](const std::string& n) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i] == n) return i;
      return std::nullopt;
    };
    if (auto v = vid(flat)) { // a bare generator name wins over coeff+name splits
      x[*v] += 1;
      return;
    }
    std::size_t d = 0;
    while (d < flat.size() && std::isdigit(static_cast<unsigned char>(flat[d]))) ++d;
    if (d == 0 || d == flat.size())
      throw std::invalid_argument("unknown generator '" + flat + "'");
    auto v = vid(flat.substr(d));
    if (!v) throw std::invalid_argument("unknown generator '" + flat.substr(d) + "'");
    x[*v] += std::stoll(flat.substr(0, d));
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '+') {
      flush(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return x;
}

std::string MonoidPresentation::element_to_string(const MonoidVec& x) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    if (!first) os << " + ";
    if (x[i] != 1) os << x[i];
    os << generators[i];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

namespace {

IntMatrix relation_matrix(const MonoidPresentation& p) {
  IntMatrix m(p.generators.size(), p.relations.size());
  for (std::size_t j = 0; j < p.relations.size(); ++j)
    for (std::size_t i = 0; i < p.generators.size(); ++i)
      m.at(i, j) = Int(p.relations[j].rhs[i] - p.relations[j].lhs[i]);
  return m;
}

long long vec_sum(const MonoidVec& x) { return std::accumulate(x.begin(), x.end(), 0LL); }

bool vec_ge(const MonoidVec& x, const MonoidVec& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < y[i]) return false;
  return true;
}

MonoidVec apply(const MonoidVec& x, const MonoidVec& sub, const MonoidVec& add) {
  MonoidVec y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += add[i] - sub[i];
  return y;
}

void check_element(const MonoidPresentation& p, const MonoidVec& x) {
  if (x.size() != p.generators.size()) throw std::invalid_argument("element has wrong arity");
  for (long long c : x)
    if (c < 0) throw std::invalid_argument("negative coefficients are not monoid elements");
}

} // namespace

const char* to_string(EqVerdict v) {
  switch (v) {
    case EqVerdict::Equal: return "equal";
    case EqVerdict::Distinct: return "distinct";
    case EqVerdict::Unknown: return "unknown";
  }
  return "?";
}

EqResult monoid_equal(const MonoidPresentation& p, const MonoidVec& a, const MonoidVec& b,
                      std::size_t bound) {
  check_element(p, a);
  check_element(p, b);
  EqResult res;
  if (a == b) {
    res.verdict = EqVerdict::Equal;
    res.chain = {a};
    return res;
  }

  // bidirectional BFS over states of coefficient-sum <= bound
  std::map<MonoidVec, std::pair<MonoidVec, int>> from; // state -> (parent, side 0=a 1=b)
  std::deque<MonoidVec> queue;
  auto seed = [&](const MonoidVec& x, int side) {
    if (vec_sum(x) <= static_cast<long long>(bound)) {
      from.emplace(x, std::make_pair(x, side));
      queue.push_back(x);
    }
  };
  seed(a, 0);
  seed(b, 1);
  while (!queue.empty()) {
    MonoidVec x = queue.front();
    queue.pop_front();
    int side = from.at(x).second;
    for (const auto& rel : p.relations) {
      for (int dir = 0; dir < 2; ++dir) {
        const MonoidVec& sub = dir ? rel.rhs : rel.lhs;
        const MonoidVec& add = dir ? rel.lhs : rel.rhs;
        if (!vec_ge(x, sub)) continue;
        MonoidVec y = apply(x, sub, add);
        if (vec_sum(y) > static_cast<long long>(bound)) continue;
        auto it = from.find(y);
        if (it == from.end()) {
          from.emplace(y, std::make_pair(x, side));
          queue.push_back(y);
        } else if (it->second.second != side) {
          // x -- y bridges the two searches; assemble a -> ... -> b
          auto trail = [&from](MonoidVec s) {
            std::vector<MonoidVec> t{s};
            while (from.at(t.back()).first != t.back()) t.push_back(from.at(t.back()).first);
            return t; // s back to its seed
          };
          std::vector<MonoidVec> ax = trail(side == 0 ? x : y); // runs to a
          std::vector<MonoidVec> bx = trail(side == 0 ? y : x); // runs to b
          std::reverse(ax.begin(), ax.end());
          res.chain = std::move(ax);
          res.chain.insert(res.chain.end(), bx.begin(), bx.end());
          res.verdict = EqVerdict::Equal;
          return res;
        }
      }
    }
  }

  // sound distinctness: group completion separates a and b
  IntMatrix m = relation_matrix(p);
  SnfResult s = smith_normal_form(m);
  const std::size_t n = p.generators.size();
  std::vector<Int> ua(n, 0), ub(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ua[i] += s.u.at(i, j) * Int(a[j]);
      ub[i] += s.u.at(i, j) * Int(b[j]);
    }
  auto diag = s.diagonal();
  for (std::size_t i = 0; i < n; ++i) {
    Int d = i < diag.size() ? diag[i] : Int(0);
    Int delta = ua[i] - ub[i];
    bool differs = d == 0 ? delta != 0 : delta % d != 0;
    if (differs) {
      res.verdict = EqVerdict::Distinct;
      res.modulus = d;
      for (std::size_t j = 0; j < n; ++j) {
        Int c = s.u.at(i, j);
        if (d != 0) c = ((c % d) + d) % d;
        res.functional.push_back(c.convert_to<long long>());
      }
      res.value_a = d == 0 ? ua[i] : ((ua[i] % d) + d) % d;
      res.value_b = d == 0 ? ub[i] : ((ub[i] % d) + d) % d;
      return res;
    }
  }
  res.verdict = EqVerdict::Unknown;
  return res;
}

AbelianGroupDescriptor MonoidPresentation::group_completion() const {
  return cokernel(relation_matrix(*this));
}

namespace {

// Bounded congruence arena: all nonnegative vectors of coefficient-sum <= cap
// with union-find over single-relation rewrites.
struct Arena {
  std::vector<MonoidVec> states;
  std::map<MonoidVec, std::size_t> index;
  std::vector<std::size_t> parent;

  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t i, std::size_t j) {
    i = find(i), j = find(j);
    if (i != j) parent[std::max(i, j)] = std::min(i, j);
  }
};

// declaration-major order: by coefficient-sum, then earlier-generator-heavy
// vectors first
bool elem_less(const MonoidVec& a, const MonoidVec& b) {
  long long sa = vec_sum(a), sb = vec_sum(b);
  if (sa != sb) return sa < sb;
  return a > b;
}

void gen_states(std::size_t gens, long long cap, MonoidVec& cur, std::size_t at,
                std::vector<MonoidVec>& out) {
  if (at == gens) {
    out.push_back(cur);
    return;
  }
  long long used = vec_sum(cur);
  for (long long c = cap - used; c >= 0; --c) {
    cur[at] = c;
    gen_states(gens, cap, cur, at + 1, out);
  }
  cur[at] = 0;
}

Arena build_arena(const MonoidPresentation& p, long long cap) {
  Arena a;
  MonoidVec cur(p.generators.size(), 0);
  gen_states(p.generators.size(), cap, cur, 0, a.states);
  std::sort(a.states.begin(), a.states.end(), elem_less);
  if (a.states.size() > 4000000)
    throw std::invalid_argument("property search space too large; lower the bound");
  for (std::size_t i = 0; i < a.states.size(); ++i) a.index.emplace(a.states[i], i);
  a.parent.resize(a.states.size());
  std::iota(a.parent.begin(), a.parent.end(), 0);
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    for (const auto& rel : p.relations) {
      if (!vec_ge(a.states[i], rel.lhs)) continue;
      MonoidVec y = apply(a.states[i], rel.lhs, rel.rhs);
      auto it = a.index.find(y);
      if (it != a.index.end()) a.unite(i, it->second);
    }
  }
  return a;
}

} // namespace

std::string PropertyResult::describe(const MonoidPresentation& p) const {
  std::ostringstream os;
  if (holds) {
    os << "holds up to bound " << bound << " (bounded search, not a theorem)";
    return os.str();
  }
  os << "fails: ";
  const char* names4[] = {"x1", "x2", "y1", "y2"};
  const char* names3[] = {"x", "y", "z"};
  for (std::size_t i = 0; i < witness.size(); ++i)
    os << (i ? ", " : "") << (witness.size() == 4 ? names4[i] : names3[i]) << " = "
       << p.element_to_string(witness[i]);
  if (witness.size() == 4)
    os << " (no completing z_ij exist)";
  else
    os << " (x + z = y + z and z <= nx, z <= ny, but x and y stay distinct)";
  return os.str();
}

PropertyResult monoid_property_search(const MonoidPresentation& p, MonoidProperty prop,
                                      std::size_t bound) {
  const long long B = static_cast<long long>(bound);
  Arena arena = build_arena(p, 2 * B);

  // the elements: classes with (minimal) representative of sum <= bound, in
  // declaration-major order of their representatives
  std::vector<std::size_t> elems; // root ids; states are sorted, so the root is minimal
  for (std::size_t i = 0; i < arena.states.size(); ++i)
    if (arena.find(i) == i && vec_sum(arena.states[i]) <= B) elems.push_back(i);

  auto rep = [&arena](std::size_t root) -> const MonoidVec& { return arena.states[root]; };
  auto sum_cls = [&](std::size_t r1, std::size_t r2) -> std::optional<std::size_t> {
    MonoidVec s = rep(r1);
    const MonoidVec& t = rep(r2);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += t[i];
    auto it = arena.index.find(s);
    if (it == arena.index.end()) return std::nullopt;
    return arena.find(it->second);
  };

  PropertyResult res;
  res.bound = bound;

  // Roots whose bounded class is provably the whole congruence class: no
  // member has a rewrite, in either direction, landing outside the arena.
  // Distinctness against a closed class is a theorem, not a bound artifact.
  std::vector<char> open_root(arena.states.size(), 0);
  for (std::size_t i = 0; i < arena.states.size(); ++i)
    for (const auto& rel : p.relations)
      for (int dir = 0; dir < 2; ++dir) {
        const MonoidVec &sub = dir ? rel.rhs : rel.lhs, &add = dir ? rel.lhs : rel.rhs;
        if (!vec_ge(arena.states[i], sub)) continue;
        if (!arena.index.count(apply(arena.states[i], sub, add)))
          open_root[arena.find(i)] = 1;
      }
  auto closed = [&](std::size_t root) { return !open_root[root]; };

  if (prop == MonoidProperty::Refinement) {
    // A completion z exists iff some members satisfy a1 + a2 = b1 + b2 as
    // vectors: the z_ij are then the componentwise mins and differences, and
    // conversely any z yields such members through its row and column sums.
    // So compare attainable member-sum states per class pair.
    std::map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < arena.states.size(); ++i)
      members[arena.find(i)].push_back(i);
    // attainable member-sum states per class pair; `complete` records whether
    // every member pair stayed inside the arena, which together with closed
    // classes upgrades a missing intersection to a theorem
    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::vector<std::size_t>, bool>>
        pair_sums;
    auto sums_of = [&](std::size_t r1,
                       std::size_t r2) -> const std::pair<std::vector<std::size_t>, bool>& {
      std::pair<std::size_t, std::size_t> key = std::minmax(r1, r2);
      auto it = pair_sums.find(key);
      if (it != pair_sums.end()) return it->second;
      std::set<std::size_t> acc;
      bool complete = true;
      for (std::size_t m1 : members[key.first])
        for (std::size_t m2 : members[key.second]) {
          MonoidVec s = arena.states[m1];
          const MonoidVec& t = arena.states[m2];
          for (std::size_t k = 0; k < s.size(); ++k) s[k] += t[k];
          auto st = arena.index.find(s);
          if (st != arena.index.end())
            acc.insert(st->second);
          else
            complete = false;
        }
      return pair_sums
          .emplace(key, std::make_pair(std::vector<std::size_t>(acc.begin(), acc.end()), complete))
          .first->second;
    };
    auto intersects = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
      std::size_t i = 0, j = 0;
      while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return true;
        a[i] < b[j] ? ++i : ++j;
      }
      return false;
    };
    // ordered pairs bucketed by sum class, in declaration-major loop order
    std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> by_sum;
    for (std::size_t y1 : elems)
      for (std::size_t y2 : elems)
        if (auto sy = sum_cls(y1, y2)) by_sum[*sy].push_back({y1, y2});
    for (std::size_t x1 : elems)
      for (std::size_t x2 : elems) {
        auto sx = sum_cls(x1, x2);
        if (!sx) continue;
        for (auto [y1, y2] : by_sum[*sx]) {
          const auto& [sums_x, complete_x] = sums_of(x1, x2);
          const auto& [sums_y, complete_y] = sums_of(y1, y2);
          if (intersects(sums_x, sums_y)) continue;
          // only report when the absence of z is provable: the four classes
          // are complete and so are their member sums
          if (closed(x1) && closed(x2) && closed(y1) && closed(y2) && complete_x && complete_y) {
            res.holds = false;
            res.witness = {rep(x1), rep(x2), rep(y1), rep(y2)};
            return res;
          }
        }
      }
    res.holds = true;
    return res;
  }

  // separative: x+z ~ y+z, z <= n*x, z <= n*y for some n >= 1, but x !~ y
  auto leq_multiple = [&](std::size_t z, std::size_t x) -> bool {
    for (long long n = 1;; ++n) {
      MonoidVec nx = rep(x);
      for (auto& c : nx) c *= n;
      if (vec_sum(nx) > 2 * B) return false;
      auto it = arena.index.find(nx);
      if (it == arena.index.end()) return false;
      std::size_t nxc = arena.find(it->second);
      for (std::size_t w : elems)
        if (auto c = sum_cls(z, w); c && *c == nxc) return true;
      if (vec_sum(rep(x)) == 0) return false;
    }
  };
  for (std::size_t x : elems)
    for (std::size_t y : elems) {
      if (x == y) continue;
      // x != y must be a theorem: one closed class settles non-membership
      if (!closed(x) && !closed(y)) continue;
      for (std::size_t z : elems) {
        auto l = sum_cls(x, z), r = sum_cls(y, z);
        if (!l || !r || *l != *r) continue;
        if (!leq_multiple(z, x) || !leq_multiple(z, y)) continue;
        res.holds = false;
        res.witness = {rep(x), rep(y), rep(z)};
        return res;
      }
    }
  res.holds = true;
  return res;
}

} // namespace lpakit
