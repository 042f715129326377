#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

namespace lpakit {

using Int = boost::multiprecision::cpp_int;

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntMatrix mul(const IntMatrix& o) const;
  IntMatrix transpose() const;
  Int det() const; // fraction-free Gaussian elimination (Bareiss)

  bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

struct SnfResult {
  IntMatrix u, d, v; // u * m * v = d, u and v unimodular
  std::vector<Int> diagonal() const;
};

// Smith normal form with minimum-absolute-value pivot selection; diagonal
// entries nonnegative with d1 | d2 | ... .
SnfResult smith_normal_form(const IntMatrix& m);

// U*M*V = D, |det U| = |det V| = 1, D diagonal with a divisibility chain.
bool verify_snf(const IntMatrix& m, const SnfResult& s);

} // namespace lpakit
