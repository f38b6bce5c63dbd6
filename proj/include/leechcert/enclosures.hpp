#pragma once

#include "leechcert/rational.hpp"

namespace leechcert {

// [lo, hi] with lo < pi < hi and hi - lo < 2^-bits.  Dyadic endpoints.
RatInterval pi_enclosure(unsigned long bits);

// Adjacent truncations of the alternating series for e^{-z}:
//   sum_{i<=odd_order} (-z)^i/i!  <=  e^{-z}  <=  sum_{i<=even_order} (-z)^i/i!
// The Lagrange remainder has sign (-1)^(N+1), so both bounds hold for every
// z >= 0; the order only controls the width.  Domain restricted to [0, 60].
RatInterval exp_neg_enclosure(const Rat& z, unsigned even_order = 350, unsigned odd_order = 351);

// e^{-z} over an interval of arguments, endpoints rounded outward to 2^-bits
// so repeated use stays cheap.  Picks a truncation order adequate for `bits`.
RatInterval exp_neg_interval(const RatInterval& z, unsigned long bits);

// pi^k as an interval, k >= 0.
RatInterval pi_power(unsigned long k, unsigned long bits);

// Volume of the unit sphere S^{n-1} for even n: n pi^{n/2} / (n/2)!.
RatInterval sphere_volume(unsigned n, unsigned long bits);
// The rational factor n / (n/2)!, so that vol = factor * pi^{n/2}.
Rat sphere_volume_factor(unsigned n);

}  // namespace leechcert
