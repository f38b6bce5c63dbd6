#include <doctest.h>

#include <random>

#include "leechcert/enclosures.hpp"
#include "leechcert/errors.hpp"
#include "leechcert/roots.hpp"

using namespace leechcert;

namespace {

// Independent pi: Gauss-Legendre iteration in mpf with 1024 bits.
mpf_class reference_pi() {
  const mp_bitcnt_t prec = 1024;
  mpf_class a(1, prec), b(0, prec), t(0.25, prec), p(1, prec), two(2, prec);
  b = sqrt(mpf_class(0.5, prec));
  for (int i = 0; i < 12; ++i) {
    mpf_class an(0, prec), bn(0, prec);
    an = (a + b) / 2;
    bn = sqrt(a * b);
    mpf_class d(0, prec);
    d = a - an;
    t -= p * d * d;
    p *= 2;
    a = an;
    b = bn;
  }
  mpf_class r(0, prec);
  r = (a + b) * (a + b) / (4 * t);
  return r;
}

Rat random_rat(std::mt19937_64& rng, int span) {
  std::uniform_int_distribution<int> num(-span, span), den(1, 9);
  return frac(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rat("6.733e-27") == Rat(6733) / pow10(30));
  CHECK(parse_rat("-3/6") == frac(-1, 2));
  CHECK(parse_rat(" 25.13274122 ") == frac(2513274122, 100000000));
  CHECK(parse_rat("1e3") == 1000);
  CHECK_THROWS_AS(parse_rat("abc"), FormatError);
  CHECK_THROWS_AS(parse_rat("1/0"), FormatError);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Rat a(Int(static_cast<long>(rng() >> 2)) * Int(static_cast<long>(rng() >> 2)), Int(static_cast<long>(rng() >> 3) + 1));
    Rat b(Int(static_cast<long>(rng() >> 2)), Int(static_cast<long>(rng() >> 2) + 1));
    a.canonicalize();
    b.canonicalize();
    CHECK(Rat((a + b) - b) == a);
  }
}

TEST_CASE("pi enclosure") {
  mpf_class ref = reference_pi();
  auto p8 = pi_enclosure(8);
  auto p64 = pi_enclosure(64);
  CHECK(p8.width() < frac(1, 256));
  CHECK(p64.width() < Rat(1) / rat_pow(2, 64));
  CHECK(p8.contains(p64));
  CHECK(mpf_class(p64.lo()) < ref);
  CHECK(ref < mpf_class(p64.hi()));
  CHECK(to_sci(p64.lo(), 16) == "3.141592653589793e0");
  CHECK(to_sci(p64.hi(), 16) == "3.141592653589793e0");
  auto p900 = pi_enclosure(900);
  CHECK(mpf_class(p900.lo(), 1024) < ref);
  CHECK(ref < mpf_class(p900.hi(), 1024));
  CHECK(pi_enclosure(64) == p64);
}

TEST_CASE("exp(-z) enclosure") {
  CHECK(exp_neg_enclosure(0) == RatInterval::point(1));
  auto e1 = exp_neg_enclosure(1);
  // independent: e lies in [S, S + 2/(N+1)!] with S = sum_{i<=N} 1/i!, so
  // 1/e lies in [1/(S + 2/(N+1)!), 1/S]
  Rat s = 0;
  for (unsigned i = 0; i <= 60; ++i) s += frac(Int(1), factorial(i));
  Rat e_hi = s + frac(Int(2), factorial(61));
  Rat inv_lo = 1 / e_hi, inv_hi = 1 / s;
  CHECK(e1.lo() <= inv_hi);
  CHECK(inv_lo <= e1.hi());
  const bool nested = e1.contains(RatInterval(inv_lo, inv_hi)) || RatInterval(inv_lo, inv_hi).contains(e1);
  CHECK(nested);
  auto e60 = exp_neg_enclosure(60);
  CHECK(e60.lo() >= 0);
  // first omitted term 60^351/351! bounds the width
  Rat omitted = frac(int_pow(60, 351), factorial(351));
  CHECK(e60.width() <= omitted);
  CHECK(omitted < pow10(-30));
  CHECK_THROWS_AS(exp_neg_enclosure(61), DomainError);
  CHECK_THROWS_AS(exp_neg_enclosure(-1), DomainError);
  // nesting across orders
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    Rat z = frac(static_cast<long>(rng() % 6000), 100);
    auto lowo = exp_neg_enclosure(z, 200, 201);
    auto high = exp_neg_enclosure(z, 350, 351);
    CHECK(high.lo() <= high.hi());
    CHECK(lowo.contains(high));
  }
}

TEST_CASE("sturm root counts") {
  UniPoly z2m2{-2, 0, 1};
  CHECK(sturm_root_count(z2m2, {0, 2}) == 1);
  CHECK(sturm_root_count(UniPoly::from_roots({1, 2, 3}), {0, 10}) == 3);
  CHECK(sturm_root_count(UniPoly{1, 0, 1}, {-10, 10}) == 0);
  CHECK_THROWS_AS(sturm_root_count(UniPoly::from_roots({1}), {1, 3}), EndpointRootError);
  // multiple roots count once
  CHECK(sturm_root_count(UniPoly::from_roots({1, 1, 2}), {0, 3}) == 2);
  CHECK(sturm_root_count_above(UniPoly::from_roots({1, 5, 7}), 4) == 2);
}

TEST_CASE("planted roots agree with sturm and jacobi") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    int nroots = static_cast<int>(rng() % 8) + 1;
    std::vector<Rat> roots;
    for (int i = 0; i < nroots; ++i) roots.push_back(random_rat(rng, 40));
    UniPoly p = UniPoly::from_roots(roots);
    // optional irreducible quadratic factor keeps degree up to 12
    if (rng() % 2) p = p * UniPoly{Rat(static_cast<long>(rng() % 5) + 1), 0, 1};
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    Rat a = random_rat(rng, 40) + frac(1, 97), b = a + Rat(static_cast<long>(rng() % 9) + 1) + frac(1, 89);
    if (p(a) == 0 || p(b) == 0) continue;
    int planted = 0;
    for (auto& r : roots)
      if (a < r && r < b) ++planted;
    CHECK(sturm_root_count(p, {a, b}) == planted);
    auto jb = jacobi_root_bound(p, a, b);
    CHECK(jb.bound >= planted);
    // parity is for roots with multiplicity
    int with_mult = 0;
    for (auto& r : roots)
      if (a < r && r < b) {
        UniPoly q = p;
        while (q(r) == 0) {
          q = divmod(q, UniPoly{-r, 1}).first;
          ++with_mult;
        }
      }
    CHECK(jb.bound % 2 == with_mult % 2);
    if (jb.bound == 0) CHECK(planted == 0);
  }
}

TEST_CASE("jacobi rule examples") {
  UniPoly p{2, -3, 1};
  auto j = jacobi_root_bound(p, 0, frac(3, 2));
  CHECK(j.bound == 1);
  CHECK(j.parity == 1);
  auto r = jacobi_root_bound_ray(p, 3);
  CHECK(r.bound == 0);
  CHECK(r.parity == 0);
  IntPoly ip(p);
  CHECK(jacobi_root_bound(ip, Int(0), Int(3)).bound == 2);
  CHECK(jacobi_root_bound_ray(ip, Int(3)).bound == 0);
}

TEST_CASE("root isolation") {
  auto iv = isolate_roots(UniPoly{-2, 0, 1}, {0, 10});
  REQUIRE(iv.size() == 1);
  CHECK(iv[0].lo() * iv[0].lo() <= 2);
  CHECK(iv[0].hi() * iv[0].hi() >= 2);
  auto two = isolate_roots(UniPoly::from_roots({1, 4}), {0, 10});
  REQUIRE(two.size() == 2);
  CHECK(two[0].contains(Rat(1)));
  CHECK(two[1].contains(Rat(4)));
  CHECK(two[0].hi() < two[1].lo());
  std::vector<Rat> ks;
  for (int k = 1; k <= 8; ++k) ks.push_back(k);
  auto eight = isolate_roots(UniPoly::from_roots(ks), {0, 9}, frac(1, 1000));
  REQUIRE(eight.size() == 8);
  for (int k = 0; k < 8; ++k) {
    CHECK(eight[static_cast<std::size_t>(k)].contains(Rat(k + 1)));
    CHECK(eight[static_cast<std::size_t>(k)].width() <= frac(1, 1000));
  }
  CHECK_THROWS_AS(isolate_roots(UniPoly::from_roots({2, 2}), {0, 10}), NotSquarefreeError);
  // endpoints that are roots
  auto ends = isolate_roots(UniPoly::from_roots({0, 10, 3}), {0, 10});
  CHECK(ends.size() == 3);
}

TEST_CASE("sign certification handles forced double roots") {
  // -(z-1)^2 (z-3)^2 (z-5) is <= 0 on [5, inf) and on [0,5]? no: sign flips at 5
  UniPoly p = -(UniPoly::from_roots({1, 1, 3, 3, 5}));
  CHECK(certify_sign_on_ray(p, 5, -1).ok);
  CHECK(certify_sign_on_interval(p, 0, 5, +1).ok);
  CHECK_FALSE(certify_sign_on_interval(p, 0, 6, +1).ok);
  CHECK_FALSE(certify_sign_on_ray(p, 4, -1).ok);
  CHECK(certify_strict_sign_on_interval(UniPoly{1, 0, 1}, -3, 3, +1).ok);
  CHECK_FALSE(certify_strict_sign_on_interval(UniPoly{-1, 0, 1}, -3, 3, +1).ok);
}

TEST_CASE("integer-only evaluation matches rational evaluation") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    std::vector<Rat> c;
    for (int k = 0; k < 15; ++k) c.push_back(random_rat(rng, 1000));
    UniPoly p(c);
    IntPoly ip(p);
    Rat z = random_rat(rng, 30);
    CHECK(ip.sign_at(z) == p.sign_at(z));
  }
}

TEST_CASE("squarefree decomposition") {
  UniPoly p = UniPoly::from_roots({1, 2, 2, 3, 3, 3});
  auto f = squarefree_factors(p);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == UniPoly::from_roots({1}));
  CHECK(f[1] == UniPoly::from_roots({2}));
  CHECK(f[2] == UniPoly::from_roots({3}));
  CHECK(odd_multiplicity_part(p) == UniPoly::from_roots({1, 3}));
}

TEST_CASE("sqrt enclosure") {
  auto s = sqrt_enclosure(Rat(2), 80);
  CHECK(s.lo() * s.lo() <= 2);
  CHECK(s.hi() * s.hi() >= 2);
  CHECK(s.width() <= Rat(1) / rat_pow(2, 80));
  CHECK(sqrt_enclosure(frac(9, 4), 10) == RatInterval::point(frac(3, 2)));
}
