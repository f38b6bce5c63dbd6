#include "leechcert/enclosures.hpp"

#include "leechcert/errors.hpp"

namespace leechcert {

namespace {

// Fixed-point arctan(1/x) * 2^P.  Each truncated division loses < 1 ulp, and
// the first omitted term bounds the tail of the alternating series.
struct FixedSum {
  Int value;  // approximation of arctan(1/x) * 2^P
  Int error;  // |value - true| < error
};

FixedSum arctan_inv(unsigned long x, unsigned long P) {
  Int one = int_pow(Int(2), P);
  Int xx = Int(x) * Int(x);
  Int power = one / Int(x);  // floor(2^P / x)
  Int sum = 0;
  Int err = 0;
  for (unsigned long k = 0;; ++k) {
    Int term = power / Int(2 * k + 1);
    if (term == 0) {
      err += 2;  // tail below the (vanishing) next term plus rounding slack
      break;
    }
    if (k % 2 == 0)
      sum += term;
    else
      sum -= term;
    err += 2;  // one truncation in power, one in term
    power /= xx;
  }
  return {sum, err};
}

}  // namespace

RatInterval pi_enclosure(unsigned long bits) {
  if (bits < 8) bits = 8;
  const unsigned long P = bits + 32;
  // pi = 16 arctan(1/5) - 4 arctan(1/239)
  FixedSum a = arctan_inv(5, P);
  FixedSum b = arctan_inv(239, P);
  Int approx = 16 * a.value - 4 * b.value;
  Int err = 16 * a.error + 4 * b.error + 1;
  Int den = int_pow(Int(2), P);
  Rat lo(approx - err, den), hi(approx + err, den);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

RatInterval exp_neg_enclosure(const Rat& z, unsigned even_order, unsigned odd_order) {
  if (z < 0 || z > 60) throw DomainError("exp_neg_enclosure needs 0 <= z <= 60, got " + to_sci(z));
  if (even_order % 2 != 0 || odd_order % 2 != 1)
    throw DomainError("exp_neg_enclosure orders must be even/odd");
  if (z == 0) return RatInterval::point(1);
  const unsigned top = even_order > odd_order ? even_order : odd_order;
  Rat term = 1, sum = 0, s_even = 0, s_odd = 0;
  for (unsigned i = 0; i <= top; ++i) {
    if (i > 0) term *= -z / Rat(i);
    sum += term;
    if (i == even_order) s_even = sum;
    if (i == odd_order) s_odd = sum;
  }
  return {s_odd, s_even};
}

RatInterval exp_neg_interval(const RatInterval& z, unsigned long bits) {
  // Order N with z^(N+1)/(N+1)! < 2^-(bits+8): grows roughly like e*z + bits.
  auto pick = [&](const Rat& x) {
    if (x == 0) return RatInterval::point(1);
    Rat bound = pow10(-static_cast<long>(bits * 3 / 10 + 4));
    Rat term = 1;
    unsigned n = 0;
    while (true) {
      ++n;
      term *= x / Rat(n);
      if (Rat(n) > x && term < bound) break;
    }
    unsigned even = n % 2 ? n + 1 : n;
    unsigned odd = n % 2 ? n : n + 1;
    Rat cheap = x;
    // round the argument outward first so the series runs on short numbers
    return round_outward(exp_neg_enclosure(cheap, even, odd), bits);
  };
  RatInterval at_hi = pick(z.hi());
  RatInterval at_lo = pick(z.lo());
  return {at_hi.lo(), at_lo.hi()};
}

RatInterval pi_power(unsigned long k, unsigned long bits) {
  return round_outward(pi_enclosure(bits + 8 * k + 16).pow(k), bits + 8);
}

Rat sphere_volume_factor(unsigned n) {
  if (n % 2) throw DomainError("sphere volume factor implemented for even n only");
  return frac(Int(n), factorial(n / 2));
}

RatInterval sphere_volume(unsigned n, unsigned long bits) {
  return RatInterval::point(sphere_volume_factor(n)) * pi_power(n / 2, bits);
}

}  // namespace leechcert
