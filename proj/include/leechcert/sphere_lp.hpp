#pragma once

#include <vector>

#include "leechcert/poly.hpp"
#include "leechcert/rational.hpp"

namespace leechcert {

struct CodeBoundCertificate {
  UniPoly poly;
  unsigned n = 0;
  Rat cos_phi;
  RatInterval bound;           // f(1)/f_0, exact (a point interval)
  std::vector<Rat> expansion;  // ultraspherical coefficients, lambda = n/2 - 1
};

// Delsarte bound |C| <= f(1)/f_0 for codes on S^{n-1} with all inner
// products in [-1, cos_phi].  Both hypotheses are checked.
CodeBoundCertificate lp_code_bound(const UniPoly& f, unsigned n, const Rat& cos_phi);

// The kissing polynomial with its top root moved to 1 - 1/(2(1+eps)^2),
// scaled so that the zeroth ultraspherical coefficient is 1.  n is 8 or 24.
UniPoly kissing_poly(unsigned n, const Rat& eps);
Rat kissing_cos_phi(const Rat& eps);

// N f(1) - N^2: how far the code is from being tight for f.
Rat design_slack(const UniPoly& f_eps, const Int& code_size);

// sqrt(slack * max_i 1/c_i) where c_i is the coefficient of the
// addition-theorem normalized C_i in f_eps.  Bounds |sum_z ev_i(z)| summed
// in quadrature over 1 <= i <= deg.
RatInterval design_defect_constant(const UniPoly& f_eps, unsigned n, const Int& code_size,
                                   const RatInterval& slack, unsigned long bits = 128);
// The coefficients c_1..c_d themselves (index 0 holds c_0).
std::vector<RatInterval> normalized_coefficients(const UniPoly& f, unsigned n, unsigned long bits = 128);

// Average over the unit sphere of <z,u>^i <z,v>^j as a polynomial in
// gamma = <u,v>.
UniPoly sphere_moment(unsigned i, unsigned j, unsigned n);

// max over labels gamma0 and 0 <= i,j <= max_ij of the sum of |coefficients|
// of s^k, k >= 1, in code_size * sphere_moment(i,j,n)(gamma0 + s).
Rat moment_coeff_bound(unsigned n, const Int& code_size, unsigned max_ij, const std::vector<Rat>& labels);
// Built-in parameters: Leech (n=24) and E8 (n=8).
Rat moment_coeff_bound(unsigned n);

}  // namespace leechcert
