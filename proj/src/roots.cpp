#include "leechcert/roots.hpp"

#include <algorithm>

#include "leechcert/errors.hpp"

namespace leechcert {

namespace {

int count_variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int count_sign_changes(const std::vector<Int>& c) {
  std::vector<int> s;
  s.reserve(c.size());
  for (const auto& v : c) s.push_back(sgn(v));
  return count_variations(s);
}

// In-place Taylor shift: c(z) -> c(z + shift).
void taylor_shift(std::vector<Int>& c, const Int& shift) {
  const std::size_t n = c.size();
  if (n < 2 || shift == 0) return;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) {
      if (shift == 1)
        c[j] += c[j + 1];
      else
        c[j] += shift * c[j + 1];
    }
}

// Coefficients of (1+z)^d q(z/(1+z)) from those of q: reverse, shift by 1,
// reverse.
std::vector<Int> moebius_from_unit(std::vector<Int> c) {
  std::reverse(c.begin(), c.end());
  taylor_shift(c, Int(1));
  std::reverse(c.begin(), c.end());
  return c;
}

std::string interval_text(const Rat& a, const Rat& b) { return "[" + to_sci(a, 10) + ", " + to_sci(b, 10) + "]"; }

// Strip roots of a squarefree polynomial sitting exactly at the given points.
UniPoly divide_out_points(UniPoly p, const std::vector<Rat>& pts) {
  for (const auto& x : pts) {
    while (p.degree() > 0 && p(x) == 0) p = divmod(p, UniPoly{-x, 1}).first;
  }
  return p;
}

// A rational point strictly inside (a, b) where p does not vanish.
Rat nonroot_inside(const UniPoly& p, const Rat& a, const Rat& b) {
  const int tries = std::max(p.degree(), 0) + 2;
  for (int k = 1; k <= tries + 1; ++k) {
    Rat x = a + (b - a) * frac(k, tries + 2);
    if (p(x) != 0) return x;
  }
  return (a + b) / 2;  // unreachable for nonzero p
}

}  // namespace

SturmSequence::SturmSequence(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("Sturm sequence of the zero polynomial");
  // Integer pseudo-remainders; a negative lc(b)^(k) factor flips the sign,
  // which is undone so that each member is a positive multiple of -rem.
  std::vector<std::vector<Int>> chain;
  chain.push_back(p.primitive_integer());
  if (p.degree() > 0) {
    auto d = zpoly::derivative(chain[0]);
    zpoly::make_primitive(d, false);
    chain.push_back(d);
    while (true) {
      const auto& a = chain[chain.size() - 2];
      const auto& b = chain.back();
      auto r = zpoly::prem(a, b);
      if (r.empty()) break;
      const std::size_t power = a.size() - b.size() + 1;
      const bool flip = b.back() < 0 && power % 2 == 1;
      if (!flip)
        for (auto& x : r) x = -x;
      zpoly::make_primitive(r, false);
      chain.push_back(std::move(r));
      if (chain.back().size() == 1) break;
    }
  }
  for (auto& q : chain) {
    seq_.emplace_back(std::vector<Rat>(q.begin(), q.end()));
    ints_.emplace_back(std::move(q));
  }
}

int SturmSequence::variations_at(const Rat& z) const {
  std::vector<int> s;
  s.reserve(ints_.size());
  for (const auto& q : ints_) s.push_back(q.sign_at(z));
  return count_variations(s);
}

int SturmSequence::variations_at_pos_infinity() const {
  std::vector<int> s;
  for (const auto& q : seq_) s.push_back(sgn(q.leading()));
  return count_variations(s);
}

int SturmSequence::variations_at_neg_infinity() const {
  std::vector<int> s;
  for (const auto& q : seq_) s.push_back(q.degree() % 2 ? -sgn(q.leading()) : sgn(q.leading()));
  return count_variations(s);
}

int sturm_root_count(const UniPoly& p, const RatInterval& interval) {
  if (p.is_zero()) throw DomainError("sturm_root_count on the zero polynomial");
  if (p(interval.lo()) == 0 || p(interval.hi()) == 0)
    throw EndpointRootError("polynomial vanishes at an endpoint of " + interval.str());
  if (interval.is_point()) return 0;
  SturmSequence s(p);
  return s.variations_at(interval.lo()) - s.variations_at(interval.hi());
}

int sturm_root_count_above(const UniPoly& p, const Rat& a) {
  if (p.is_zero()) throw DomainError("sturm_root_count on the zero polynomial");
  if (p(a) == 0) throw EndpointRootError("polynomial vanishes at ray endpoint " + to_sci(a));
  SturmSequence s(p);
  return s.variations_at(a) - s.variations_at_pos_infinity();
}

JacobiBound jacobi_root_bound(const UniPoly& p, const Rat& a, const Rat& b) {
  if (!(a < b)) throw DomainError("jacobi_root_bound needs a < b");
  UniPoly p1 = p.compose_linear(a, b - a);
  std::vector<Int> c = p1.primitive_integer();
  c.resize(static_cast<std::size_t>(std::max(p.degree(), 0)) + 1);
  int v = count_sign_changes(moebius_from_unit(std::move(c)));
  return {v, v % 2};
}

JacobiBound jacobi_root_bound_ray(const UniPoly& p, const Rat& a) {
  int v = count_sign_changes(p.compose_linear(a, 1).primitive_integer());
  return {v, v % 2};
}

JacobiBound jacobi_root_bound(const IntPoly& p, const Int& a, const Int& b) {
  if (!(a < b)) throw DomainError("jacobi_root_bound needs a < b");
  std::vector<Int> c = p.coeffs();
  taylor_shift(c, a);
  Int w = b - a, scale = 1;
  for (auto& v : c) {
    v *= scale;
    scale *= w;
  }
  int v = count_sign_changes(moebius_from_unit(std::move(c)));
  return {v, v % 2};
}

JacobiBound jacobi_root_bound_ray(const IntPoly& p, const Int& a) {
  std::vector<Int> c = p.coeffs();
  taylor_shift(c, a);
  int v = count_sign_changes(c);
  return {v, v % 2};
}

std::vector<RatInterval> isolate_roots(const UniPoly& p, const RatInterval& domain, const Rat& max_width) {
  if (p.is_zero()) throw DomainError("isolate_roots on the zero polynomial");
  UniPoly g = gcd(p, p.derivative());
  if (g.degree() > 0) {
    bool hits = g(domain.lo()) == 0 || g(domain.hi()) == 0;
    if (!hits && !domain.is_point()) hits = sturm_root_count(g, domain) > 0;
    if (hits) throw NotSquarefreeError("gcd(p, p') has a root in " + domain.str());
  }
  std::vector<RatInterval> out;
  if (p(domain.lo()) == 0) out.push_back(RatInterval::point(domain.lo()));
  if (domain.is_point()) return out;
  // For squarefree p, V(l) - V(r) counts the roots in (l, r] even when l or r
  // is itself a root.
  SturmSequence s(p);
  struct Piece {
    Rat l, r;
    int vl, vr;
  };
  std::vector<Piece> stack{{domain.lo(), domain.hi(), s.variations_at(domain.lo()), s.variations_at(domain.hi())}};
  while (!stack.empty()) {
    Piece pc = stack.back();
    stack.pop_back();
    const int n = pc.vl - pc.vr;
    if (n <= 0) continue;
    if (n == 1) {
      if (p(pc.r) == 0) {
        out.push_back(RatInterval::point(pc.r));
        continue;
      }
      if (pc.r - pc.l <= max_width && p(pc.l) != 0) {
        out.emplace_back(pc.l, pc.r);
        continue;
      }
    }
    Rat m = (pc.l + pc.r) / 2;
    int vm = s.variations_at(m);
    stack.push_back({m, pc.r, vm, pc.vr});
    stack.push_back({pc.l, m, pc.vl, vm});
  }
  std::sort(out.begin(), out.end(), [](const RatInterval& x, const RatInterval& y) { return x.lo() < y.lo(); });
  return out;
}

SignCheck certify_sign_on_interval(const UniPoly& p, const Rat& a, const Rat& b, int sign) {
  if (p.is_zero()) return {};
  if (a > b) throw DomainError("certify_sign_on_interval with a > b");
  if (a == b) {
    if (sign * p.sign_at(a) < 0) return {false, "point " + to_sci(a, 12)};
    return {};
  }
  UniPoly odd = divide_out_points(odd_multiplicity_part(p), {a, b});
  if (odd.degree() > 0) {
    int n = sturm_root_count(odd, RatInterval(a, b));
    if (n > 0) {
      auto iv = isolate_roots(odd, RatInterval(a, b), (b - a) / 1024);
      return {false, "sign change in " + (iv.empty() ? interval_text(a, b) : interval_text(iv.front().lo(), iv.front().hi()))};
    }
  }
  Rat x = nonroot_inside(p, a, b);
  if (sign * p.sign_at(x) < 0) return {false, "interior point " + to_sci(x, 12)};
  return {};
}

SignCheck certify_sign_on_ray(const UniPoly& p, const Rat& a, int sign) {
  if (p.is_zero()) return {};
  UniPoly odd = divide_out_points(odd_multiplicity_part(p), {a});
  if (odd.degree() > 0) {
    int n = sturm_root_count_above(odd, a);
    if (n > 0) return {false, "sign change above " + to_sci(a, 12)};
  }
  if (sign * sgn(p.leading()) < 0) return {false, "wrong sign at +infinity"};
  return {};
}

SignCheck certify_strict_sign_on_interval(const UniPoly& p, const Rat& a, const Rat& b, int sign) {
  if (p.is_zero()) return {false, "zero polynomial"};
  if (sign * p.sign_at(a) <= 0) return {false, "endpoint " + to_sci(a, 12)};
  if (sign * p.sign_at(b) <= 0) return {false, "endpoint " + to_sci(b, 12)};
  if (a < b && sturm_root_count(p, RatInterval(a, b)) > 0) return {false, "root inside " + interval_text(a, b)};
  return {};
}

}  // namespace leechcert
