#include <doctest.h>

#include "leechcert/enclosures.hpp"
#include "leechcert/errors.hpp"
#include "leechcert/io.hpp"
#include "leechcert/ortho_poly.hpp"
#include "leechcert/radial.hpp"

using namespace leechcert;

TEST_CASE("fourier transform is an involution on the laguerre basis") {
  RadialFn f;
  f.dim = 8;
  f.coeffs = {1, frac(-1, 3), 5, 0, frac(2, 7)};
  RadialFn ff = fourier(fourier(f));
  CHECK(ff.coeffs == f.coeffs);
  RadialFn fh = fourier(f);
  CHECK(fh.coeffs[1] == frac(1, 3));
  CHECK(fh.coeffs[2] == 5);
}

TEST_CASE("radial polynomial is the weighted laguerre sum") {
  RadialFn f;
  f.dim = 24;
  f.coeffs = {2, 0, frac(1, 2)};
  // 2 L_0 + (1/2) 2! L_2 with alpha = 11
  UniPoly want = UniPoly{2} + laguerre(2, 11);
  CHECK(radial_poly(f) == want);
}

TEST_CASE("gaussian evaluation") {
  // c = (1): f(x) = e^{-pi |x|^2}; at |x| = 0 it is exactly 1.
  RadialFn g;
  g.dim = 8;
  g.coeffs = {1};
  auto v0 = evaluate_enclosure(g, RatInterval::point(0));
  CHECK(v0.lo() <= 1);
  CHECK(v0.hi() >= 1);
  CHECK(v0.hi() - v0.lo() < pow10(-30));
  auto v1 = evaluate_enclosure(g, RatInterval::point(1));
  // e^{-pi} = 0.0432139182637722...
  CHECK(v1.lo() > parse_rat("0.04321391826377"));
  CHECK(v1.hi() < parse_rat("0.04321391826378"));
}

TEST_CASE("forced roots are honoured") {
  RootSpec spec{{Rat(3), 1, Side::F}, {Rat(6), 2, Side::F}, {Rat(5), 2, Side::FHat}};
  RadialFn f = solve_forced_roots(spec, 5, 8);
  REQUIRE(f.coeffs.size() == 6);
  CHECK(f.coeffs[0] == 1);
  UniPoly p = radial_poly(f), ph = radial_poly(fourier(f));
  CHECK(p(Rat(3)) == 0);
  CHECK(p(Rat(6)) == 0);
  CHECK(p.derivative()(Rat(6)) == 0);
  CHECK(ph(Rat(5)) == 0);
  CHECK(ph.derivative()(Rat(5)) == 0);
}

TEST_CASE("wrong condition count is rejected") {
  RootSpec spec{{Rat(3), 1, Side::F}};
  CHECK_THROWS_AS(solve_forced_roots(spec, 5, 8), InputError);
}

TEST_CASE("a plain gaussian is not a packing certificate") {
  RadialFn g;
  g.dim = 8;
  g.coeffs = {1};
  // never negative, so no radius works
  CHECK_THROWS_AS(certify_packing_bound_z(g, Rat(10)), CertificationFailed);
}

TEST_CASE("constructed magic function in dimension 8 certifies") {
  auto res = newton_construct(default_magic_spec(8, 5, 6), 8);
  REQUIRE(res.certificate.valid());
  // Re-certify from the stored coefficients alone.
  auto again = certify_packing_bound_z(res.fn, res.certificate.z_threshold);
  CHECK(again.valid());
  CHECK(again.ratio.hi() >= 1);  // no function beats E8
  // Single-coefficient corruption must break a condition.
  RadialFn bad = res.fn;
  bad.coeffs[3] += bad.coeffs[3] / 1000 + 1;
  CHECK_THROWS_AS(certify_packing_bound_z(bad, res.certificate.z_threshold), CertificationFailed);
}

TEST_CASE("coefficient files round trip") {
  RadialFn f;
  f.dim = 8;
  f.scale = pow10(5);
  f.coeffs = {100000, -31415, 0, 7};
  std::string text = format_coefficients(f);
  RadialFn g = parse_coefficients(text);
  CHECK(g.dim == 8);
  CHECK(g.scale == f.scale);
  CHECK(g.coeffs == f.coeffs);
  CHECK_THROWS_AS(parse_coefficients("dim 8\nscale 2\n1\nx7\n"), FormatError);
  CHECK_THROWS_AS(parse_coefficients(""), FormatError);
}

TEST_CASE("root hint files round trip") {
  RootHints h;
  h.f_roots = {frac(31, 10), Rat(7)};
  h.fhat_roots = {frac(11, 2)};
  RootHints g = parse_roots(format_roots(h));
  CHECK(g.f_roots == h.f_roots);
  CHECK(g.fhat_roots == h.fhat_roots);
}
