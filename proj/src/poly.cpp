#include "leechcert/poly.hpp"

#include <sstream>

#include "leechcert/errors.hpp"

namespace leechcert {

UniPoly::UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly::UniPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

UniPoly UniPoly::monomial(const Rat& c, std::size_t k) {
  std::vector<Rat> v(k + 1);
  v[k] = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::from_roots(const std::vector<Rat>& roots) {
  UniPoly p = constant(1);
  for (const auto& r : roots) p = p * UniPoly{-r, 1};
  return p;
}

void UniPoly::trim() {
  for (auto& v : c_) v.canonicalize();
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat UniPoly::operator()(const Rat& z) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= z;
    acc += *it;
  }
  return acc;
}

RatInterval UniPoly::operator()(const RatInterval& z) const {
  if (z.is_point()) return RatInterval::point((*this)(z.lo()));
  RatInterval acc = RatInterval::point(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + RatInterval::point(*it);
  return acc;
}

int UniPoly::sign_at(const Rat& z) const { return sgn((*this)(z)); }

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::compose_linear(const Rat& a, const Rat& b) const {
  // Horner in the polynomial ring: acc = acc*(a+bz) + c_i
  std::vector<Rat> acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    std::vector<Rat> next(acc.size() + 1);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k] += acc[k] * a;
      next[k + 1] += acc[k] * b;
    }
    next[0] += *it;
    acc.swap(next);
  }
  return UniPoly(std::move(acc));
}

UniPoly UniPoly::compose(const UniPoly& q) const {
  UniPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
  return acc;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  UniPoly r = *this;
  Rat inv = 1 / leading();
  return r *= inv;
}

std::vector<Int> UniPoly::primitive_integer() const {
  std::vector<Int> out;
  if (c_.empty()) return out;
  Int l = 1;
  for (const auto& v : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  out.reserve(c_.size());
  Int g = 0;
  for (const auto& v : c_) {
    Int t = v.get_num() * (l / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
    out.push_back(t);
  }
  if (g != 0 && g != 1)
    for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return out;
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rat& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& v : c_) v *= s;
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(r));
}

UniPoly UniPoly::pow(unsigned e) const {
  UniPoly result = constant(1), base = *this;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

std::string UniPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(c_[i]) << ")";
    if (i > 0) os << "*z^" << i;
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rat> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UniPoly{}, a};
  std::vector<Rat> q(static_cast<std::size_t>(a.degree() - db + 1));
  Rat inv = 1 / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rat f = r[static_cast<std::size_t>(k)] * inv;
    q[static_cast<std::size_t>(k - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

namespace zpoly {

void trim(IVec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

void make_primitive(IVec& v, bool normalize_sign) {
  trim(v);
  if (v.empty()) return;
  Int g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (normalize_sign && v.back() < 0) g = -g;
  if (g != 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

IVec derivative(const IVec& v) {
  IVec d;
  for (std::size_t i = 1; i < v.size(); ++i) d.push_back(v[i] * Int(static_cast<unsigned long>(i)));
  trim(d);
  return d;
}

IVec prem(IVec a, const IVec& b) {
  if (b.empty()) throw DomainError("pseudo-remainder by zero");
  const std::size_t db = b.size() - 1;
  const Int& lb = b.back();
  trim(a);
  std::size_t steps = a.size() >= b.size() ? a.size() - db : 0;
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    Int la = a.back();
    for (auto& x : a) x *= lb;
    for (std::size_t j = 0; j <= db; ++j) mpz_submul(a[shift + j].get_mpz_t(), la.get_mpz_t(), b[j].get_mpz_t());
    a.pop_back();
    --steps;
    // skipped degrees still owe a factor of lb
    while (!a.empty() && a.back() == 0 && a.size() - 1 >= db) {
      a.pop_back();
      for (auto& x : a) x *= lb;
      --steps;
    }
    trim(a);
  }
  for (; steps > 0; --steps)
    for (auto& x : a) x *= lb;
  return a;
}

IVec gcd(IVec a, IVec b) {
  make_primitive(a);
  make_primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    IVec r = prem(a, b);
    make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

IVec exact_div(const IVec& a, const IVec& b) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {};
  IVec r = a;
  IVec q(a.size() - db);
  const Int& lb = b.back();
  for (std::size_t k = a.size(); k-- > db;) {
    if (!mpz_divisible_p(r[k].get_mpz_t(), lb.get_mpz_t())) throw DomainError("exact_div: divisor does not divide");
    Int f;
    mpz_divexact(f.get_mpz_t(), r[k].get_mpz_t(), lb.get_mpz_t());
    q[k - db] = f;
    if (f != 0)
      for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[k - db + j].get_mpz_t(), f.get_mpz_t(), b[j].get_mpz_t());
  }
  trim(r);
  if (!r.empty()) throw DomainError("exact_div: nonzero remainder");
  trim(q);
  return q;
}

IVec sub(IVec a, const IVec& b) {
  if (b.size() > a.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace zpoly

namespace {
UniPoly from_ivec(const zpoly::IVec& v) { return UniPoly(std::vector<Rat>(v.begin(), v.end())); }
}  // namespace

UniPoly gcd(UniPoly a, UniPoly b) {
  if (a.is_zero() && b.is_zero()) return {};
  return from_ivec(zpoly::gcd(a.primitive_integer(), b.primitive_integer())).monic();
}

std::vector<UniPoly> squarefree_factors(const UniPoly& p) {
  // Yun's algorithm on the integer representative P; every division is by a
  // primitive factor, so all quotients stay integral and exact.
  using namespace zpoly;
  std::vector<UniPoly> out;
  if (p.degree() <= 0) return out;
  IVec P = p.primitive_integer();
  IVec D = derivative(P);
  IVec a = gcd(P, D);
  IVec b = exact_div(P, a);
  IVec c = exact_div(D, a);
  IVec d = sub(c, derivative(b));
  while (b.size() > 1) {
    IVec g = d.empty() ? b : gcd(b, d);
    if (g.back() < 0)
      for (auto& x : g) x = -x;
    out.push_back(from_ivec(g).monic());
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = sub(c, derivative(b));
  }
  return out;
}

UniPoly odd_multiplicity_part(const UniPoly& p) {
  UniPoly r = UniPoly::constant(1);
  auto f = squarefree_factors(p);
  for (std::size_t k = 0; k < f.size(); k += 2) r = r * f[k];
  return r;
}

Int IntPoly::scaled_value(const Int& num, const Int& den) const {
  // sum c_i num^i den^(d-i), Horner form
  if (c_.empty()) return 0;
  Int acc = c_.back();
  Int dpow = 1;
  for (std::size_t i = c_.size() - 1; i-- > 0;) {
    acc *= num;
    dpow *= den;
    acc += c_[i] * dpow;
  }
  return acc;
}

int IntPoly::sign_at(const Int& num, const Int& den) const { return sgn(scaled_value(num, den)); }

Rat IntPoly::value_at(const Rat& z) const {
  if (c_.empty()) return 0;
  return frac(scaled_value(z.get_num(), z.get_den()), int_pow(z.get_den(), c_.size() - 1));
}

IntPoly IntPoly::derivative() const {
  std::vector<Int> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Int(static_cast<unsigned long>(i)));
  return IntPoly(std::move(d));
}

}  // namespace leechcert
