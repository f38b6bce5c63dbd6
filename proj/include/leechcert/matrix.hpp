#pragma once

#include <cstddef>
#include <vector>

#include "leechcert/rational.hpp"

namespace leechcert {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0)) : r_(rows), c_(cols), d_(rows * cols, fill) {}
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_; }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
      }
    return m;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> d_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rat(const IntMatrix& m);

// Fraction-free (Bareiss) determinant; the input is consumed.
Int det_bareiss(IntMatrix m);
Rat det(const RatMatrix& m);

// Unique solution of A x = b (A may have more rows than columns if the
// system is consistent); throws SingularSystem otherwise.
std::vector<Rat> solve(const RatMatrix& a, const std::vector<Rat>& b);
RatMatrix inverse(const RatMatrix& a);
std::size_t rank(const RatMatrix& a);
// Adjugate via det * inverse, or by cofactors when singular.
RatMatrix adjugate(const RatMatrix& a);

// Induced infinity norm: max row sum of absolute values.
Rat inf_norm(const RatMatrix& a);

}  // namespace leechcert
