#include "leechcert/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "leechcert/errors.hpp"

namespace leechcert {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Int parse_int(const std::string& s) {
  std::string body = s;
  bool neg = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  if (!all_digits(body)) throw FormatError("not an integer: '" + s + "'");
  Int v(body, 10);
  return neg ? Int(-v) : v;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw FormatError("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int p = parse_int(trim(s.substr(0, slash)));
    Int q = parse_int(trim(s.substr(slash + 1)));
    if (q == 0) throw FormatError("zero denominator in '" + s + "'");
    Rat r(p, q);
    r.canonicalize();
    return r;
  }
  // decimal: [sign] digits [. digits] [e|E [sign] digits]
  bool neg = false;
  std::size_t pos = 0;
  if (s[pos] == '-' || s[pos] == '+') {
    neg = s[pos] == '-';
    ++pos;
  }
  std::string mant, frac;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) mant += s[pos++];
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) frac += s[pos++];
  }
  if (mant.empty() && frac.empty()) throw FormatError("not a number: '" + s + "'");
  long exponent = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    std::string ex = s.substr(pos);
    exponent = parse_int(ex).get_si();
    pos = s.size();
  }
  if (pos != s.size()) throw FormatError("trailing characters in '" + s + "'");
  Int digits((mant + frac).empty() ? std::string("0") : mant + frac, 10);
  Rat r = Rat(digits) * pow10(exponent - static_cast<long>(frac.size()));
  return neg ? Rat(-r) : r;
}

Rat frac(const Int& num, const Int& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  return c.get_str();
}

std::string to_sci(const Rat& x, int digits) {
  if (x == 0) return "0";
  mpf_class f(0, 512);
  f = x;
  mp_exp_t e;
  std::string m = f.get_str(e, 10, static_cast<std::size_t>(digits));
  bool neg = !m.empty() && m[0] == '-';
  if (neg) m = m.substr(1);
  std::ostringstream os;
  if (neg) os << '-';
  os << m[0];
  if (m.size() > 1) os << '.' << m.substr(1);
  os << 'e' << (e - 1);
  return os.str();
}

Rat rat_pow(const Rat& base, unsigned long e) {
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat pow10(long e) {
  Int p = int_pow(Int(10), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rat(Int(1), p) : Rat(p);
}

Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Int ceil_rat(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Int factorial(unsigned long k) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

int sgn(const Rat& x) { return ::sgn(x); }

RatInterval::RatInterval(const Rat& lo, const Rat& hi) : lo_(lo), hi_(hi) {
  if (lo_ > hi_) throw DomainError("interval with lo > hi: [" + to_string(lo) + ", " + to_string(hi) + "]");
}

RatInterval operator+(const RatInterval& a, const RatInterval& b) { return {a.lo_ + b.lo_, a.hi_ + b.hi_}; }

RatInterval operator-(const RatInterval& a, const RatInterval& b) { return {a.lo_ - b.hi_, a.hi_ - b.lo_}; }

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  if (a.lo_ >= 0 && b.lo_ >= 0) return {a.lo_ * b.lo_, a.hi_ * b.hi_};
  Rat c[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  Rat lo = c[0], hi = c[0];
  for (auto& v : c) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return {lo, hi};
}

RatInterval operator/(const RatInterval& a, const RatInterval& b) {
  if (b.contains_zero()) throw DomainError("interval division by an interval containing 0");
  return a * RatInterval(1 / b.hi_, 1 / b.lo_);
}

RatInterval RatInterval::pow(unsigned long e) const {
  if (e == 0) return point(1);
  if (lo_ >= 0) return {rat_pow(lo_, e), rat_pow(hi_, e)};
  if (hi_ <= 0) {
    Rat a = rat_pow(lo_, e), b = rat_pow(hi_, e);
    return e % 2 ? RatInterval(a, b) : RatInterval(b, a);
  }
  if (e % 2) return {rat_pow(lo_, e), rat_pow(hi_, e)};
  Rat m = std::max(Rat(rat_pow(lo_, e)), Rat(rat_pow(hi_, e)));
  return {0, m};
}

std::string RatInterval::str() const { return "[" + to_sci(lo_, 12) + ", " + to_sci(hi_, 12) + "]"; }

RatInterval hull(const RatInterval& a, const RatInterval& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

RatInterval round_outward(const RatInterval& x, unsigned long bits) {
  Int scale = int_pow(Int(2), bits);
  Rat lo = Rat(floor_rat(x.lo() * scale), scale);
  Rat hi = Rat(ceil_rat(x.hi() * scale), scale);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

RatInterval sqrt_enclosure(const Rat& x, unsigned long bits) {
  if (x < 0) throw DomainError("sqrt of a negative rational");
  // floor(sqrt(floor(y))) = floor(sqrt(y)) for y = x * 4^bits
  Int scale = int_pow(Int(2), bits);
  Int y = floor_rat(x * scale * scale);
  Int s;
  mpz_sqrt(s.get_mpz_t(), y.get_mpz_t());
  Rat lo(s, scale), hi(s + 1, scale);
  lo.canonicalize();
  hi.canonicalize();
  if (s * s == y && Rat(y) == x * scale * scale) hi = lo;
  return {lo, hi};
}

RatInterval sqrt_enclosure(const RatInterval& x, unsigned long bits) {
  return {sqrt_enclosure(x.lo(), bits).lo(), sqrt_enclosure(x.hi(), bits).hi()};
}

Rat half_power_upper(unsigned long k, unsigned long bits) {
  Rat base = rat_pow(Rat(k), k / 2);
  if (k % 2 == 0) return base;
  return base * sqrt_enclosure(Rat(k), bits).hi();
}

}  // namespace leechcert
