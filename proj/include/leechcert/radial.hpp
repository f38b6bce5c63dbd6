#pragma once

#include <string>
#include <vector>

#include "leechcert/poly.hpp"
#include "leechcert/rational.hpp"

namespace leechcert {

// f(x) = (sum_i c_i i! L_i^{n/2-1}(2 pi |x|^2)) e^{-pi |x|^2} / scale
struct RadialFn {
  unsigned dim = 24;
  std::vector<Rat> coeffs;
  Rat scale = 1;
};

// Eigenvalue (-1)^i on the i-th term.
RadialFn fourier(const RadialFn& f);
// z -> sum c_i i! L_i(z); the scale is not applied.
UniPoly radial_poly(const RadialFn& f);
// Enclosure of f(x) for |x| in `radius`.
RatInterval evaluate_enclosure(const RadialFn& f, const RatInterval& radius, unsigned long bits = 160);

enum class Side { F, FHat };

struct ForcedRoot {
  Rat location;  // z = 2 pi |x|^2
  int multiplicity = 2;
  Side side = Side::F;
};
using RootSpec = std::vector<ForcedRoot>;

// Coefficients with c_0 = 1 so that radial_poly(f) and radial_poly(fourier(f))
// have the requested roots.  The condition count must equal `degree`.
RadialFn solve_forced_roots(const RootSpec& spec, unsigned degree, unsigned n);

// Root hints for large-degree functions: each hint r_i is a near-root at
// which the polynomial touches 0 from the correct side.  delta is the offset
// at which the derivative is probed.
struct RootHints {
  std::vector<Rat> f_roots;     // r_0 (the sign change), r_1, ... for f
  std::vector<Rat> fhat_roots;  // near double roots of f-hat
  Rat delta = pow10(-40);
};

struct PackingCertificate {
  RadialFn fn;
  Rat z_threshold;          // p <= 0 certified on [z_threshold, inf)
  RatInterval r;            // radius enclosure used for the density
  RatInterval density_bound;
  RatInterval ratio;        // density / density of the reference lattice
  bool normalization = false;
  bool f_sign = false;
  bool fhat_sign = false;
  std::string method;       // "sturm" or "hinted"
  bool valid() const { return normalization && f_sign && fhat_sign; }
};

// Reference minimal norm used for the density ratio: 4 for n=24, 2 for n=8,
// 0 (no ratio) otherwise.
Rat reference_min_norm(unsigned n);

// Certifies f <= 0 for |x| >= r_lo and f-hat >= 0.  Throws SignViolation or
// NormalizationError; on success the certificate is valid.
PackingCertificate certify_packing_bound(const RadialFn& f, const RatInterval& r_enclosing,
                                         unsigned long bits = 160);
// Same, with the sign threshold given directly in z = 2 pi r^2.
PackingCertificate certify_packing_bound_z(const RadialFn& f, const Rat& z0, unsigned long bits = 160);
// Integer-only verification driven by root hints (for degrees in the hundreds).
PackingCertificate certify_packing_bound_hinted(const RadialFn& f, const RootHints& hints,
                                                unsigned long bits = 160);

struct ExclusionCertificate {
  Rat budget;                     // shell_count_max * shell_value_bound
  std::vector<RatInterval> radii;
  std::vector<Rat> sup_bound;     // certified upper bound on f over each interval
};

ExclusionCertificate certify_length_exclusions(const RadialFn& f, const Int& shell_count_max,
                                               const Rat& shell_value_bound,
                                               const std::vector<RatInterval>& excluded,
                                               unsigned long bits = 160);

// Enclosure of (g-hat(0) - g(0)) / g(shell_radius), after certifying the sign
// and monotonicity hypotheses.  Throws PreconditionViolation.
RatInterval counting_lower_bound(const RadialFn& g, const Rat& shell_radius, const Rat& shell_radius_hi,
                                 const Rat& cutoff, unsigned long bits = 160);

// Recipes for the counting functions.
RootSpec leech_counting_spec(unsigned long bits = 128);
RootSpec e8_counting_spec(unsigned long bits = 128);

// Magic-function construction (newton.cpp).
struct NewtonOptions {
  unsigned iterations = 200;
  unsigned precision_bits = 512;
  int margin_digits = 40;  // forced values sit 10^-margin on the correct side
};
struct NewtonResult {
  RootSpec spec;           // optimized double-root locations (+ the sign change)
  RadialFn fn;             // integer coefficients over scale = 10^k
  PackingCertificate certificate;
  unsigned iterations_used = 0;
};
// Starting spec of m_f f-side and m_h f-hat-side double roots at the shells.
RootSpec default_magic_spec(unsigned n, unsigned m_f, unsigned m_h);
NewtonResult newton_construct(const RootSpec& initial, unsigned n, const NewtonOptions& opt = {});

}  // namespace leechcert
