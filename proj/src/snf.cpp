#include "lpakit/snf.hpp"

#include <cassert>
#include <stdexcept>

namespace lpakit {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shapes do not compose");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Int IntMatrix::det() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
  std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

std::vector<Int> SnfResult::diagonal() const {
  std::vector<Int> r;
  for (std::size_t i = 0; i < d.rows() && i < d.cols(); ++i) r.push_back(d.at(i, i));
  return r;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
// row[a] -= q * row[b]
void row_sub(IntMatrix& m, std::size_t a, std::size_t b, const Int& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) -= q * m.at(b, j);
}
void col_sub(IntMatrix& m, std::size_t a, std::size_t b, const Int& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, a) -= q * m.at(i, b);
}
void negate_row(IntMatrix& m, std::size_t a) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) = -m.at(a, j);
}

} // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  SnfResult s;
  s.d = m;
  s.u = IntMatrix::identity(m.rows());
  s.v = IntMatrix::identity(m.cols());
  IntMatrix& d = s.d;
  const std::size_t n = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // minimum-absolute-value nonzero pivot in the trailing submatrix
      std::size_t pi = t, pj = t;
      Int best = 0;
      for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
          if (d.at(i, j) == 0) continue;
          Int a = abs(d.at(i, j));
          if (best == 0 || a < best) best = a, pi = i, pj = j;
        }
      if (best == 0) goto done; // trailing submatrix is zero
      if (pi != t) swap_rows(d, t, pi), swap_rows(s.u, t, pi);
      if (pj != t) swap_cols(d, t, pj), swap_cols(s.v, t, pj);
      if (d.at(t, t) < 0) negate_row(d, t), negate_row(s.u, t);

      bool dirty = false;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = d.at(i, t) / d.at(t, t);
        if (q != 0) row_sub(d, i, t, q), row_sub(s.u, i, t, q);
        if (d.at(i, t) != 0) dirty = true; // remainder left, re-pivot
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = d.at(t, j) / d.at(t, t);
        if (q != 0) col_sub(d, j, t, q), col_sub(s.v, j, t, q);
        if (d.at(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // divisibility: fold any non-divisible entry into column t and retry
      bool fixed = true;
      for (std::size_t i = t + 1; i < d.rows() && fixed; ++i)
        for (std::size_t j = t + 1; j < d.cols() && fixed; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            col_sub(d, t, j, Int(-1)), col_sub(s.v, t, j, Int(-1));
            fixed = false;
          }
      if (fixed) break;
    }
  }
done:
  assert(verify_snf(m, s));
  return s;
}

bool verify_snf(const IntMatrix& m, const SnfResult& s) {
  if (!(s.u.mul(m).mul(s.v) == s.d)) return false;
  if (abs(s.u.det()) != 1 || abs(s.v.det()) != 1) return false;
  for (std::size_t i = 0; i < s.d.rows(); ++i)
    for (std::size_t j = 0; j < s.d.cols(); ++j)
      if (i != j && s.d.at(i, j) != 0) return false;
  auto diag = s.diagonal();
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
    if (diag[i] < 0) return false;
    if (diag[i] == 0 && diag[i + 1] != 0) return false;
    if (diag[i] != 0 && diag[i + 1] % diag[i] != 0) return false;
  }
  return true;
}

} // namespace lpakit
