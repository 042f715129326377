#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpakit/element.hpp"
#include "lpakit/structure.hpp"

namespace lpakit {

// Laurent polynomial over the rationals, map exponent -> coefficient.
class LaurentPoly {
public:
  LaurentPoly() = default;
  explicit LaurentPoly(Rational c, long long exp = 0) {
    if (c != 0) coeffs_[exp] = std::move(c);
  }

  const std::map<long long, Rational>& coeffs() const { return coeffs_; }
  bool zero() const { return coeffs_.empty(); }

  void add(long long exp, const Rational& c) {
    auto it = coeffs_.find(exp);
    if (it == coeffs_.end()) {
      if (c != 0) coeffs_[exp] = c;
    } else {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  LaurentPoly operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.coeffs_) r.add(e, c);
    return r;
  }
  LaurentPoly operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.coeffs_) r.add(e, -c);
    return r;
  }
  LaurentPoly operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [e1, c1] : coeffs_)
      for (const auto& [e2, c2] : o.coeffs_) r.add(e1 + e2, c1 * c2);
    return r;
  }
  bool operator==(const LaurentPoly& o) const { return coeffs_ == o.coeffs_; }

  std::optional<long long> degree() const {
    std::optional<long long> d;
    for (const auto& [e, c] : coeffs_) {
      if (!d) d = e;
      if (*d != e) return std::nullopt;
    }
    return d ? d : std::optional<long long>(0);
  }

  std::string to_string() const;

private:
  std::map<long long, Rational> coeffs_;
};

// One matrix summand of the decomposition image. Entries over the base ring:
// scalars for fields, Laurent polynomials for cycle heads, reduced petal
// words for rose heads.
struct MatrixBlockElement {
  struct Entry {
    Rational scalar = 0;
    LaurentPoly laurent;
    std::optional<Element> rose; // normal form over the head graph
    bool zero(BlockBase::Kind k) const;
  };
  std::map<std::pair<std::size_t, std::size_t>, Entry> entries;
};

// Image of an element under the decomposition isomorphism: a tuple of
// matrices, one per block of the descriptor.
class BlockMatrixElement {
public:
  struct BlockMeta {
    BlockBase base;
    std::vector<long long> shifts;
    VertexId head_base = 0;
    std::vector<EdgeId> petals; // rose blocks: for word reduction after multiply
  };

  BlockMatrixElement() = default;
  explicit BlockMatrixElement(std::vector<BlockMeta> meta)
      : meta_(std::move(meta)), blocks_(meta_.size()) {}

  static std::vector<BlockMeta> meta_of(const DecompositionDescriptor& d);

  const std::vector<BlockMeta>& meta() const { return meta_; }
  const std::vector<MatrixBlockElement>& blocks() const { return blocks_; }

  void add_scalar(std::size_t block, std::size_t i, std::size_t j, const Rational& c);
  void add_laurent(std::size_t block, std::size_t i, std::size_t j, long long exp, const Rational& c);
  void add_rose(std::size_t block, std::size_t i, std::size_t j, const Element& word);

  BlockMatrixElement operator+(const BlockMatrixElement& o) const;
  BlockMatrixElement operator-(const BlockMatrixElement& o) const;
  BlockMatrixElement operator*(const BlockMatrixElement& o) const;
  bool operator==(const BlockMatrixElement& o) const;

  bool zero() const;

  // graded degree per the matrix grading: entry (i,j) of weight w sits in
  // degree w + shift_i - shift_j; nullopt when entries disagree
  std::optional<long long> degree() const;

  std::string to_string() const;

private:
  void prune();
  std::vector<BlockMeta> meta_;
  std::vector<MatrixBlockElement> blocks_;
};

// The isomorphism of the decomposition theorem, evaluated on one element.
BlockMatrixElement structure_map(const Element& a, const DecompositionDescriptor& d);

} // namespace lpakit
