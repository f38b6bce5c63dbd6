#include <doctest.h>

#include "leechcert/errors.hpp"
#include "leechcert/ortho_poly.hpp"
#include "leechcert/sphere_lp.hpp"

using namespace leechcert;

TEST_CASE("kissing bounds are exact") {
  auto e8 = lp_code_bound(kissing_poly(8, 0), 8, frac(1, 2));
  CHECK(e8.bound.lo() == 240);
  CHECK(e8.bound.hi() == 240);
  auto l = lp_code_bound(kissing_poly(24, 0), 24, frac(1, 2));
  CHECK(l.bound.hi() == 196560);
  CHECK(design_slack(kissing_poly(8, 0), 240) == 0);
}

TEST_CASE("perturbed kissing bound moves up slightly") {
  Rat eps = parse_rat("1e-6");
  auto b = lp_code_bound(kissing_poly(8, eps), 8, kissing_cos_phi(eps));
  CHECK(b.bound.hi() > 240);
  CHECK(b.bound.hi() < 241);
  CHECK(kissing_cos_phi(0) == frac(1, 2));
}

TEST_CASE("bound rejects a polynomial positive beyond cos phi") {
  UniPoly f = kissing_poly(8, 0);
  // Requiring inner products only up to 0.6 leaves f positive on (1/2, 0.6].
  CHECK_THROWS_AS(lp_code_bound(f, 8, frac(6, 10)), CertificationFailed);
}

TEST_CASE("bound rejects a negative ultraspherical coefficient") {
  UniPoly f = kissing_poly(8, 0);
  // Subtracting a multiple of C_2 breaks positive definiteness but keeps the
  // sign condition on [-1, 1/2] intact for a tiny multiple.
  UniPoly bad = f - gegenbauer(2, 3) * frac(1, 1000000);
  CHECK_THROWS_AS(lp_code_bound(bad, 8, frac(1, 2)), CertificationFailed);
}

TEST_CASE("sphere moments") {
  for (unsigned n : {3u, 8u, 24u}) {
    CHECK(sphere_moment(0, 0, n) == UniPoly{1});
    CHECK(sphere_moment(1, 1, n) == UniPoly{0, frac(1, n)});
    CHECK(sphere_moment(2, 0, n) == UniPoly{frac(1, n)});
    // E <z,u>^2 <z,v>^2 = (1 + 2 g^2) / (n (n + 2))
    CHECK(sphere_moment(2, 2, n) == UniPoly{frac(1, n * (n + 2)), 0, frac(2, n * (n + 2))});
  }
}

TEST_CASE("normalized coefficients are positive for the kissing polynomial") {
  auto c = normalized_coefficients(kissing_poly(8, 0), 8);
  REQUIRE(c.size() > 2);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i].lo() >= 0);
}
