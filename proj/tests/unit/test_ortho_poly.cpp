#include <doctest.h>

#include "leechcert/errors.hpp"
#include "leechcert/ortho_poly.hpp"

using namespace leechcert;

namespace {

Int factorial(unsigned k) {
  Int r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

// int_0^inf p(z) q(z) z^a e^{-z} dz for integer a >= 0, using Gamma(m+1) = m!.
Rat laguerre_inner(const UniPoly& p, const UniPoly& q, unsigned a) {
  UniPoly pq = p * q;
  Rat s = 0;
  for (int k = 0; k <= pq.degree(); ++k) s += pq.coeff(k) * Rat(factorial(k + a));
  return s;
}

// Moments of (1 - x^2)^(lambda - 1/2) on [-1, 1] for lambda = 1/2 (Legendre
// weight): int x^k dx = 2/(k+1) for even k.
Rat legendre_inner(const UniPoly& p, const UniPoly& q) {
  UniPoly pq = p * q;
  Rat s = 0;
  for (int k = 0; k <= pq.degree(); k += 2) s += pq.coeff(k) * frac(2, k + 1);
  return s;
}

}  // namespace

TEST_CASE("low-degree laguerre polynomials match closed forms") {
  for (int a : {0, 3, 11}) {
    Rat al = a;
    CHECK(laguerre(0, al) == UniPoly{1});
    CHECK(laguerre(1, al) == UniPoly{al + 1, -1});
    UniPoly l2{(al + 1) * (al + 2) / 2, -(al + 2), frac(1, 2)};
    CHECK(laguerre(2, al) == l2);
  }
}

TEST_CASE("laguerre orthogonality against the gamma weight") {
  for (unsigned a : {0u, 3u, 11u}) {
    auto fam = laguerre_family(6, Rat(a));
    REQUIRE(fam.size() == 7);
    for (unsigned i = 0; i <= 6; ++i)
      for (unsigned j = 0; j <= 6; ++j) {
        Rat ip = laguerre_inner(fam[i], fam[j], a);
        if (i != j) {
          CHECK(ip == 0);
        } else {
          // Gamma(i + a + 1) / i!
          CHECK(ip == Rat(factorial(i + a)) / Rat(factorial(i)));
        }
      }
  }
}

TEST_CASE("gegenbauer closed forms and legendre orthogonality") {
  Rat lam = frac(7, 3);
  CHECK(gegenbauer(1, lam) == UniPoly{0, 2 * lam});
  CHECK(gegenbauer(2, lam) == UniPoly{-lam, 0, 2 * lam * (lam + 1)});
  auto leg = gegenbauer_family(7, frac(1, 2));
  for (unsigned i = 0; i <= 7; ++i)
    for (unsigned j = 0; j < i; ++j) CHECK(legendre_inner(leg[i], leg[j]) == 0);
  CHECK(legendre_inner(leg[5], leg[5]) == frac(2, 11));
}

TEST_CASE("gegenbauer values at 1") {
  // C_i^lambda(1) = (2 lambda)_i / i!
  Rat lam = 11;
  auto fam = gegenbauer_family(9, lam);
  Rat rising = 1;
  for (unsigned i = 0; i <= 9; ++i) {
    CHECK(fam[i](Rat(1)) == rising / Rat(factorial(i)));
    rising *= 2 * lam + i;
  }
}

TEST_CASE("harmonic dimensions") {
  for (unsigned n : {3u, 8u, 24u}) {
    CHECK(harmonic_dimension(0, n) == 1);
    CHECK(harmonic_dimension(1, n) == n);
    CHECK(harmonic_dimension(2, n) == Int(n * (n + 1) / 2 - 1));
  }
  CHECK(harmonic_dimension(5, 3) == 11);
}

TEST_CASE("expansion round trip") {
  UniPoly p{3, frac(-1, 2), 0, 7, frac(2, 9), -1};
  for (Rat lam : {Rat(3), frac(1, 2), Rat(11)}) {
    auto c = gegenbauer_expand(p, lam);
    UniPoly back;
    for (std::size_t i = 0; i < c.size(); ++i) back += gegenbauer(static_cast<unsigned>(i), lam) * c[i];
    CHECK(back == p);
  }
}

TEST_CASE("axis moments of the sphere") {
  for (unsigned n : {3u, 8u, 24u}) {
    CHECK(sphere_axis_moment(0, n) == 1);
    CHECK(sphere_axis_moment(1, n) == 0);
    CHECK(sphere_axis_moment(2, n) == frac(1, n));
    CHECK(sphere_axis_moment(4, n) == frac(3, n * (n + 2)));
  }
}

TEST_CASE("normalized gegenbauer carries the sphere volume") {
  // i = 0: 1 / vol(S^{n-1}) = (n/2)! / (n pi^{n/2}) for even n.
  auto g = normalized_gegenbauer(0, 8);
  CHECK(g.pi_exponent == -4);
  CHECK(g.rational_part == UniPoly{frac(24, 8)});
}
