#include "leechcert/sphere_lp.hpp"

#include <algorithm>

#include "leechcert/enclosures.hpp"
#include "leechcert/errors.hpp"
#include "leechcert/ortho_poly.hpp"
#include "leechcert/roots.hpp"

namespace leechcert {

namespace {

Rat lambda_for(unsigned n) {
  if (n < 4 || n % 2) throw DomainError("dimension must be even and at least 4");
  return Rat(n / 2) - 1;
}

// (p-1)!! / 2^{p/2}: the p-th moment of one coordinate under e^{-|z|^2}.
Rat gaussian_moment(unsigned p) {
  if (p % 2) return 0;
  Rat r = 1;
  for (unsigned k = 1; k < p; k += 2) r *= frac(k, 2);
  return r;
}

// E|z|^{2k} under the same density, in units matching gaussian_moment.
Rat gaussian_radial_moment(unsigned two_k, unsigned n) {
  Rat r = 1;
  for (unsigned j = 0; j < two_k / 2; ++j) r *= frac(n, 2) + j;
  return r;
}

}  // namespace

CodeBoundCertificate lp_code_bound(const UniPoly& f, unsigned n, const Rat& cos_phi) {
  CodeBoundCertificate cert;
  cert.poly = f;
  cert.n = n;
  cert.cos_phi = cos_phi;
  cert.expansion = gegenbauer_expand(f, lambda_for(n));
  if (cert.expansion.empty() || cert.expansion[0] <= 0) throw ExpansionNegative(0);
  for (std::size_t i = 1; i < cert.expansion.size(); ++i)
    if (cert.expansion[i] < 0) throw ExpansionNegative(static_cast<int>(i));
  if (cos_phi < -1) throw DomainError("cos_phi below -1");
  auto chk = certify_sign_on_interval(f, Rat(-1), cos_phi, -1);
  if (!chk.ok) throw SignViolation("code", chk.witness);
  cert.bound = RatInterval::point(f(Rat(1)) / cert.expansion[0]);
  return cert;
}

Rat kissing_cos_phi(const Rat& eps) {
  Rat t = 1 + eps;
  return 1 - 1 / (2 * t * t);
}

UniPoly kissing_poly(unsigned n, const Rat& eps) {
  if (eps < 0 || eps >= 1) throw DomainError("kissing_poly needs 0 <= eps < 1");
  std::vector<Rat> roots{-1};
  auto twice = [&](const Rat& r) { roots.push_back(r), roots.push_back(r); };
  if (n == 24) {
    twice(frac(-1, 2));
    twice(frac(-1, 4));
    twice(0);
    twice(frac(1, 4));
  } else if (n == 8) {
    twice(frac(-1, 2));
    twice(0);
  } else {
    throw DomainError("kissing_poly is defined for n = 8 and n = 24");
  }
  roots.push_back(kissing_cos_phi(eps));
  UniPoly p = UniPoly::from_roots(roots);
  Rat f0 = gegenbauer_expand(p, lambda_for(n)).at(0);
  return p * (1 / f0);
}

Rat design_slack(const UniPoly& f_eps, const Int& code_size) {
  Rat N(code_size);
  return N * f_eps(Rat(1)) - N * N;
}

std::vector<RatInterval> normalized_coefficients(const UniPoly& f, unsigned n, unsigned long bits) {
  const Rat lambda = lambda_for(n);
  auto fi = gegenbauer_expand(f, lambda);
  auto fam = gegenbauer_family(static_cast<unsigned>(fi.size() ? fi.size() - 1 : 0), lambda);
  RatInterval vol = sphere_volume(n, bits);
  std::vector<RatInterval> out;
  for (std::size_t i = 0; i < fi.size(); ++i) {
    // f_i C_i^lambda = f_i C_i^lambda(1) vol / dim_i * C_i
    Rat r = fi[i] * fam[i](Rat(1)) / Rat(harmonic_dimension(static_cast<unsigned>(i), n));
    out.push_back(RatInterval::point(r) * vol);
  }
  return out;
}

RatInterval design_defect_constant(const UniPoly& f_eps, unsigned n, const Int& code_size,
                                   const RatInterval& slack, unsigned long bits) {
  if (!slack.contains(design_slack(f_eps, code_size)))
    throw PreconditionViolation("slack interval does not contain N f(1) - N^2");
  if (slack.lo() < 0) throw PreconditionViolation("slack must be nonnegative");
  auto c = normalized_coefficients(f_eps, n, bits);
  // max_i 1/c_i is enclosed by [max 1/c_i.hi, max 1/c_i.lo]
  Rat lo = 0, hi = 0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i].lo() <= 0) throw NonpositiveCoefficient(static_cast<int>(i));
    lo = std::max<Rat>(lo, 1 / c[i].hi());
    hi = std::max<Rat>(hi, 1 / c[i].lo());
  }
  if (slack.hi() == 0) return RatInterval::point(0);
  return sqrt_enclosure(RatInterval(slack.lo() * lo, slack.hi() * hi), bits);
}

UniPoly sphere_moment(unsigned i, unsigned j, unsigned n) {
  if (n < 2) throw DomainError("sphere_moment needs n >= 2");
  // v = gamma u + s w with w orthogonal to u and s^2 = 1 - gamma^2; only even
  // powers of s survive the average.
  const UniPoly one_minus_g2{1, 0, -1};
  UniPoly out;
  for (unsigned k = 0; k <= j; k += 2) {
    const unsigned p = i + j - k;
    Rat m = gaussian_moment(p) * gaussian_moment(k) / gaussian_radial_moment(p + k, n);
    if (m == 0) continue;
    UniPoly term = UniPoly::monomial(Rat(binomial(j, k)) * m, j - k) * one_minus_g2.pow(k / 2);
    out += term;
  }
  return out;
}

Rat moment_coeff_bound(unsigned n, const Int& code_size, unsigned max_ij, const std::vector<Rat>& labels) {
  Rat best = 0;
  for (unsigned i = 0; i <= max_ij; ++i)
    for (unsigned j = 0; j <= max_ij; ++j) {
      UniPoly m = sphere_moment(i, j, n) * Rat(code_size);
      for (const auto& g0 : labels) {
        UniPoly shifted = m.compose_linear(g0, 1);
        Rat s = 0;
        for (std::size_t k = 1; k < shifted.coeffs().size(); ++k) s += abs(shifted.coeffs()[k]);
        best = std::max(best, s);
      }
    }
  return best;
}

Rat moment_coeff_bound(unsigned n) {
  if (n == 24)
    return moment_coeff_bound(24, Int(196560), 4, {frac(-1, 2), frac(-1, 4), 0, frac(1, 4), frac(1, 2)});
  if (n == 8) return moment_coeff_bound(8, Int(240), 2, {frac(-1, 2), 0, frac(1, 2)});
  throw DomainError("moment_coeff_bound has built-in parameters only for n = 8 and n = 24");
}

}  // namespace leechcert
