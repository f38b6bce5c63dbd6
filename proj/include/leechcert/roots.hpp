#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leechcert/poly.hpp"

namespace leechcert {

// Sturm chain with every member rescaled to a primitive integer polynomial
// (positive rescaling does not move sign changes).
class SturmSequence {
 public:
  explicit SturmSequence(const UniPoly& p);
  int variations_at(const Rat& z) const;
  int variations_at_pos_infinity() const;
  int variations_at_neg_infinity() const;
  const UniPoly& head() const { return seq_.front(); }

 private:
  std::vector<UniPoly> seq_;
  std::vector<IntPoly> ints_;
};

// Distinct real roots in the open interval (lo, hi).
int sturm_root_count(const UniPoly& p, const RatInterval& interval);
// Distinct real roots in the open ray (a, +inf).
int sturm_root_count_above(const UniPoly& p, const Rat& a);

struct JacobiBound {
  int bound;
  int parity;
};
// Sign changes of p((a+bz)/(1+z))(1+z)^deg on (a, b).
JacobiBound jacobi_root_bound(const UniPoly& p, const Rat& a, const Rat& b);
// Sign changes of p(a+z) on the ray (a, +inf).
JacobiBound jacobi_root_bound_ray(const UniPoly& p, const Rat& a);
// Same bounds computed from integer coefficients only (for large degrees).
JacobiBound jacobi_root_bound(const IntPoly& p, const Int& a, const Int& b);
JacobiBound jacobi_root_bound_ray(const IntPoly& p, const Int& a);

// Disjoint closed intervals each holding one root of p in the closed domain.
// Exact roots come back as point intervals.
std::vector<RatInterval> isolate_roots(const UniPoly& p, const RatInterval& domain,
                                       const Rat& max_width = frac(1, 1 << 20));

// Result of a sign certification: pass, or the first offending region.
struct SignCheck {
  bool ok = true;
  std::string witness;
};

// Certifies sign * p(z) >= 0 for all z in [a, b] (sign = +1 or -1).
SignCheck certify_sign_on_interval(const UniPoly& p, const Rat& a, const Rat& b, int sign);
// Certifies sign * p(z) >= 0 for all z >= a.
SignCheck certify_sign_on_ray(const UniPoly& p, const Rat& a, int sign);
// Certifies sign * p(z) > 0 for all z in [a, b] (strict).
SignCheck certify_strict_sign_on_interval(const UniPoly& p, const Rat& a, const Rat& b, int sign);

}  // namespace leechcert
