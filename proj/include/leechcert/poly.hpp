#pragma once

#include <string>
#include <utility>
#include <vector>

#include "leechcert/rational.hpp"

namespace leechcert {

// Dense univariate polynomial over Q; coeffs[i] multiplies z^i.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs);
  UniPoly(std::initializer_list<Rat> coeffs);
  static UniPoly constant(const Rat& c) { return UniPoly(std::vector<Rat>{c}); }
  static UniPoly monomial(const Rat& c, std::size_t k);
  static UniPoly x() { return monomial(1, 1); }
  // prod (z - r)
  static UniPoly from_roots(const std::vector<Rat>& roots);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  const Rat& leading() const { return c_.back(); }

  Rat operator()(const Rat& z) const;
  RatInterval operator()(const RatInterval& z) const;
  int sign_at(const Rat& z) const;

  UniPoly derivative() const;
  // p(a + b z)
  UniPoly compose_linear(const Rat& a, const Rat& b) const;
  UniPoly compose(const UniPoly& q) const;
  UniPoly monic() const;
  // Positive rational multiple with coprime integer coefficients.
  std::vector<Int> primitive_integer() const;

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const Rat& s);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(UniPoly a, const Rat& s) { return a *= s; }
  friend UniPoly operator*(const Rat& s, UniPoly a) { return a *= s; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  UniPoly pow(unsigned e) const;
  std::string str() const;

 private:
  void trim();
  std::vector<Rat> c_;
};

// Quotient and remainder; throws DomainError on division by zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly gcd(UniPoly a, UniPoly b);  // monic, or zero

// Yun decomposition: p = c * prod_k q_k^k with squarefree coprime q_k.
// Entry k-1 holds q_k (constant 1 when absent).
std::vector<UniPoly> squarefree_factors(const UniPoly& p);
// Product of the factors of odd multiplicity: exactly the points where p
// changes sign.
UniPoly odd_multiplicity_part(const UniPoly& p);

// Integer coefficient vectors (index = degree).  Used by the Euclidean
// algorithms, where rational arithmetic would canonicalize at every step.
namespace zpoly {
using IVec = std::vector<Int>;
void trim(IVec& v);
// Divides by the positive content; with `normalize_sign` the leading
// coefficient is also made positive.
void make_primitive(IVec& v, bool normalize_sign = true);
IVec derivative(const IVec& v);
// lc(b)^(deg a - deg b + 1) a mod b
IVec prem(IVec a, const IVec& b);
IVec gcd(IVec a, IVec b);  // primitive, positive leading coefficient
// a / b for primitive b dividing a (the quotient is then integral).
IVec exact_div(const IVec& a, const IVec& b);
IVec sub(IVec a, const IVec& b);
}  // namespace zpoly

// Integer polynomial used for sign evaluation without rational arithmetic.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(const UniPoly& p) : c_(p.primitive_integer()) {}
  explicit IntPoly(std::vector<Int> c) : c_(std::move(c)) {}
  const std::vector<Int>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  // sign of p(num/den), den > 0, using only integer operations
  int sign_at(const Int& num, const Int& den) const;
  int sign_at(const Rat& z) const { return sign_at(z.get_num(), z.get_den()); }
  // den^deg * p(num/den), an integer
  Int scaled_value(const Int& num, const Int& den) const;
  Rat value_at(const Rat& z) const;
  IntPoly derivative() const;

 private:
  std::vector<Int> c_;
};

}  // namespace leechcert
