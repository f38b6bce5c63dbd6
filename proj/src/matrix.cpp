#include "leechcert/matrix.hpp"

#include "leechcert/errors.hpp"

namespace leechcert {

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

Int det_bareiss(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DomainError("determinant of a non-square matrix");
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    const Int& pk = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // m(i,j) = (m(i,j) * pk - m(i,k) * m(k,j)) / prev, exact
        mpz_mul(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), pk.get_mpz_t());
        mpz_submul(m(i, j).get_mpz_t(), m(i, k).get_mpz_t(), m(k, j).get_mpz_t());
        if (prev != 1) mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = pk;
  }
  Int d = m(n - 1, n - 1);
  return sign > 0 ? d : Int(-d);
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(RatMatrix& a, std::vector<Rat>* rhs, int* swaps) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
      if (rhs) std::swap((*rhs)[piv], (*rhs)[row]);
      if (swaps) ++*swaps;
    }
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      Rat f = a(i, col) / a(row, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
      if (rhs) (*rhs)[i] -= f * (*rhs)[row];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Rat det(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  RatMatrix a = m;
  int swaps = 0;
  auto piv = echelon(a, nullptr, &swaps);
  if (piv.size() < a.rows()) return 0;
  Rat d = swaps % 2 ? Rat(-1) : Rat(1);
  for (std::size_t i = 0; i < a.rows(); ++i) d *= a(i, i);
  return d;
}

std::vector<Rat> solve(const RatMatrix& a_in, const std::vector<Rat>& b_in) {
  if (a_in.rows() != b_in.size()) throw DomainError("solve: dimension mismatch");
  RatMatrix a = a_in;
  std::vector<Rat> b = b_in;
  auto piv = echelon(a, &b, nullptr);
  if (piv.size() < a.cols()) throw SingularSystem("linear system is rank deficient");
  for (std::size_t i = piv.size(); i < a.rows(); ++i)
    if (b[i] != 0) throw SingularSystem("overdetermined linear system is inconsistent");
  std::vector<Rat> x(a.cols());
  for (std::size_t r = piv.size(); r-- > 0;) {
    Rat s = b[r];
    for (std::size_t j = r + 1; j < a.cols(); ++j) s -= a(r, j) * x[j];
    x[r] = s / a(r, r);
  }
  return x;
}

RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DomainError("inverse of a non-square matrix");
  // Gauss-Jordan on [m | I]
  RatMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) throw SingularSystem("matrix is singular");
    if (piv != col)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(piv, j), a(col, j));
    Rat inv = 1 / a(col, col);
    for (std::size_t j = col; j < 2 * n; ++j) a(col, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      Rat f = a(i, col);
      for (std::size_t j = col; j < 2 * n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  RatMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = a(i, n + j);
  return r;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return echelon(a, nullptr, nullptr).size();
}

RatMatrix adjugate(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw DomainError("adjugate of a non-square matrix");
  if (n == 1) return RatMatrix::identity(1);
  Rat d = det(a);
  if (d != 0) {
    RatMatrix inv = inverse(a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) *= d;
    return inv;
  }
  RatMatrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = a(r, c);
        }
        ++rr;
      }
      Rat v = det(minor);
      adj(i, j) = (i + j) % 2 ? Rat(-v) : v;
    }
  return adj;
}

Rat inf_norm(const RatMatrix& a) {
  Rat best = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += abs(a(i, j));
    if (s > best) best = s;
  }
  return best;
}

}  // namespace leechcert
