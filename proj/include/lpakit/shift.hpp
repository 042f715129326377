#pragma once

#include <cstdint>
#include <vector>

namespace lpakit {

// Shift datum of a graded matrix ring M_n(A)(d_1,...,d_n) over A with
// homogeneous-unit support Gamma = l*Z; modulus 0 means Gamma = 0.
struct ShiftVector {
  std::vector<long long> entries;
  long long modulus = 0; // l >= 0

  std::size_t size() const { return entries.size(); }
  bool operator==(const ShiftVector& o) const {
    return modulus == o.modulus && entries == o.entries;
  }
};

// Canonical representative under the allowed moves: entry permutation, a
// common translate, and per-entry translates from l*Z.  For l > 0 this is
// the lexicographically least sorted residue vector over all common
// translates; for l = 0 the sorted vector with minimum entry subtracted.
ShiftVector canonical_shift(const ShiftVector& s);

// Same length, same modulus, equal canonical forms.  Throws on modulus
// mismatch (the gradings are not comparable).
bool shift_equiv(const ShiftVector& a, const ShiftVector& b);

// K-dimension of M_n(A)_d for A = K[x^l, x^-l] (l > 0) or A = K (l = 0):
// the number of positions (i,j) with d + d_j - d_i in l*Z.
std::size_t component_dim(const ShiftVector& s, long long degree);

// Multiplicities of the residue classes of the entries, sorted descending:
// the block sizes r_l of the zero-component decomposition of M_n(A)(d).
// For l = 0 classes are exact values.
std::vector<std::size_t> zero_component_decomp(const ShiftVector& s);

} // namespace lpakit
