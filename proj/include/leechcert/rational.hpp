#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace leechcert {

using Int = mpz_class;
using Rat = mpq_class;

// Parses "p/q", an integer, or a decimal literal such as "6.733e-27".  The
// decimal is read as the exact rational it denotes.
Rat parse_rat(std::string_view text);

// Canonical num/den.  Always use this instead of Rat(num, den), which leaves
// the value unreduced.
Rat frac(const Int& num, const Int& den);
inline Rat frac(long num, long den) { return frac(Int(num), Int(den)); }

std::string to_string(const Rat& x);
// Scientific rendering with `digits` significant digits, for reports only.
std::string to_sci(const Rat& x, int digits = 6);

Rat rat_pow(const Rat& base, unsigned long e);
Int int_pow(const Int& base, unsigned long e);
Rat pow10(long e);
Int floor_rat(const Rat& x);
Int ceil_rat(const Rat& x);
Int factorial(unsigned long k);
Int binomial(long n, long k);
int sgn(const Rat& x);

// Closed interval [lo, hi] with rational endpoints.
class RatInterval {
 public:
  RatInterval() = default;
  RatInterval(const Rat& lo, const Rat& hi);
  static RatInterval point(const Rat& x) { return RatInterval(x, x); }

  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  Rat width() const { return hi_ - lo_; }
  Rat mid() const { return (lo_ + hi_) / 2; }
  bool contains(const Rat& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RatInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && hi_ >= 0; }
  bool is_point() const { return lo_ == hi_; }

  RatInterval operator-() const { return {-hi_, -lo_}; }
  friend RatInterval operator+(const RatInterval& a, const RatInterval& b);
  friend RatInterval operator-(const RatInterval& a, const RatInterval& b);
  friend RatInterval operator*(const RatInterval& a, const RatInterval& b);
  // Throws DomainError when the divisor contains 0.
  friend RatInterval operator/(const RatInterval& a, const RatInterval& b);
  friend bool operator==(const RatInterval& a, const RatInterval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

  RatInterval pow(unsigned long e) const;
  std::string str() const;

 private:
  Rat lo_, hi_;
};

RatInterval hull(const RatInterval& a, const RatInterval& b);

// Shrinks the denominators of an enclosure by rounding outward to multiples of
// 2^-bits.  Keeps downstream exact arithmetic cheap.
RatInterval round_outward(const RatInterval& x, unsigned long bits);

// Certified enclosure of sqrt(x), width below 2^-bits, for x >= 0.
RatInterval sqrt_enclosure(const Rat& x, unsigned long bits);
// Enclosure of sqrt over an interval (monotone).
RatInterval sqrt_enclosure(const RatInterval& x, unsigned long bits);
// Rational upper bound for k^(k/2) (exact for even k).
Rat half_power_upper(unsigned long k, unsigned long bits = 64);

}  // namespace leechcert
