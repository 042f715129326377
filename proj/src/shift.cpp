#include "lpakit/shift.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace lpakit {

namespace {

long long mod(long long a, long long l) {
  long long r = a % l;
  return r < 0 ? r + l : r;
}

} // namespace

ShiftVector canonical_shift(const ShiftVector& s) {
  if (s.modulus < 0) throw std::invalid_argument("negative modulus");
  ShiftVector c;
  c.modulus = s.modulus;
  if (s.entries.empty()) return c;
  if (s.modulus == 0) {
    c.entries = s.entries;
    long long m = *std::min_element(c.entries.begin(), c.entries.end());
    for (auto& e : c.entries) e -= m;
    std::sort(c.entries.begin(), c.entries.end());
    return c;
  }
  const long long l = s.modulus;
  std::vector<long long> best;
  for (long long sigma = 0; sigma < l; ++sigma) {
    std::vector<long long> cand;
    cand.reserve(s.entries.size());
    for (long long e : s.entries) cand.push_back(mod(e - sigma, l));
    std::sort(cand.begin(), cand.end());
    if (best.empty() || cand < best) best = std::move(cand);
  }
  c.entries = std::move(best);
  return c;
}

bool shift_equiv(const ShiftVector& a, const ShiftVector& b) {
  if (a.modulus != b.modulus)
    throw std::invalid_argument("shift vectors graded over different groups");
  if (a.size() != b.size()) return false;
  return canonical_shift(a).entries == canonical_shift(b).entries;
}

std::size_t component_dim(const ShiftVector& s, long long degree) {
  std::size_t n = 0;
  for (long long di : s.entries)
    for (long long dj : s.entries) {
      long long d = degree + dj - di;
      if (s.modulus == 0 ? d == 0 : d % s.modulus == 0) ++n;
    }
  return n;
}

std::vector<std::size_t> zero_component_decomp(const ShiftVector& s) {
  std::map<long long, std::size_t> classes;
  for (long long e : s.entries) ++classes[s.modulus == 0 ? e : mod(e, s.modulus)];
  std::vector<std::size_t> r;
  for (const auto& [k, c] : classes) r.push_back(c);
  std::sort(r.rbegin(), r.rend());
  return r;
}

} // namespace lpakit
