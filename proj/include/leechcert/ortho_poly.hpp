#pragma once

#include <vector>

#include "leechcert/poly.hpp"

namespace leechcert {

// L_i^alpha from the three-term recurrence
//   i L_i = (2i - 1 + alpha - z) L_{i-1} - (i + alpha - 1) L_{i-2}.
UniPoly laguerre(unsigned i, const Rat& alpha);
std::vector<UniPoly> laguerre_family(unsigned max_i, const Rat& alpha);

// C_i^lambda from  i C_i = 2(i + lambda - 1) z C_{i-1} - (i + 2 lambda - 2) C_{i-2}.
UniPoly gegenbauer(unsigned i, const Rat& lambda);
std::vector<UniPoly> gegenbauer_family(unsigned max_i, const Rat& lambda);

// Dimension of the space of degree-i spherical harmonics on S^{n-1}.
Int harmonic_dimension(unsigned i, unsigned n);

// Addition-theorem normalization  C_i(x) = C_i^lambda(x)/C_i^lambda(1) * dim_i / vol(S^{n-1}),
// lambda = n/2 - 1.  Since vol(S^{n-1}) = (n/(n/2)!) pi^{n/2}, the polynomial is
// stored as a rational part times pi^{pi_exponent} with pi_exponent = -n/2.
struct NormalizedGegenbauer {
  UniPoly rational_part;
  int pi_exponent;
};
NormalizedGegenbauer normalized_gegenbauer(unsigned i, unsigned n);

// Coefficients f_0..f_d with p = sum f_i C_i^lambda (exact triangular solve).
std::vector<Rat> gegenbauer_expand(const UniPoly& p, const Rat& lambda);

// E[x^k] for x the first coordinate of a uniform point on S^{n-1}.
Rat sphere_axis_moment(unsigned k, unsigned n);

}  // namespace leechcert
