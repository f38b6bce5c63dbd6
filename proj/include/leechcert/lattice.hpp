#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "leechcert/matrix.hpp"
#include "leechcert/radial.hpp"
#include "leechcert/rational.hpp"

namespace leechcert {

// Basis rows are integer vectors; the true basis is basis / sqrt(scale_sq).
struct LatticeData {
  std::string name;
  unsigned n = 0;
  IntMatrix basis;
  Int scale_sq = 1;
  RatMatrix gram;  // basis * basis^T / scale_sq
  Rat gram_det;
  RatInterval covolume;  // sqrt(gram_det)
};

LatticeData make_lattice(std::string name, const IntMatrix& basis, const Int& scale_sq);
// Lattice given only by its Gram matrix (ambient coordinates are then the
// basis coordinates themselves and are not meaningful).
LatticeData lattice_from_gram(std::string name, const RatMatrix& gram);

LatticeData leech_lattice();
LatticeData e8_lattice();

// Vectors found by enumeration.  coeffs are coordinates in the lattice basis,
// coords the scaled ambient coordinates (coeffs * basis).  Rows are flat
// with stride n and sorted lexicographically by coords (by norm first when
// several shells are present).
struct ShortVectors {
  unsigned n = 0;
  Int norm_den = 1;                  // norms are norm_num / norm_den
  std::vector<std::int32_t> coeffs;
  std::vector<std::int32_t> coords;
  std::vector<std::int64_t> norm_num;
  std::size_t size() const { return norm_num.size(); }
  Rat norm(std::size_t k) const;
  const std::int32_t* coord_row(std::size_t k) const { return coords.data() + k * n; }
  const std::int32_t* coeff_row(std::size_t k) const { return coeffs.data() + k * n; }
  std::map<Rat, std::size_t> shells() const;
};

// All vectors of a single norm (the minimal vectors, typically).
struct MinVectorSet {
  ShortVectors vectors;
  Rat norm;
  Int scale_sq = 1;
  std::size_t count() const { return vectors.size(); }
};

struct EnumerationOptions {
  std::uint64_t node_cap = 100000000;
};

// Depth-first search over the exact LDL^T decomposition of the Gram matrix
// (evaluated in long double with a safety margin, every hit re-verified
// exactly).  Visits each nonzero x with Q(x) <= bound once; the visitor gets
// basis coordinates and the norm numerator over the Gram denominator.
using ShortVectorVisitor = std::function<void(const std::int32_t* coeffs, std::int64_t norm_num)>;
std::uint64_t visit_short_vectors(const RatMatrix& gram, const Rat& norm_bound, const ShortVectorVisitor& visit,
                                  const EnumerationOptions& opt = {});

ShortVectors enumerate_short_vectors(const LatticeData& L, const Rat& norm_bound, const EnumerationOptions& opt = {});
// Vectors of the smallest nonzero norm, which must be <= norm_bound.
MinVectorSet minimal_vectors(const LatticeData& L, const Rat& norm_bound, const EnumerationOptions& opt = {});

// Shell sizes up to norm_bound, counted without storing the vectors.
std::vector<std::pair<Rat, std::uint64_t>> theta_partial(const LatticeData& L, const Rat& norm_bound,
                                                         const EnumerationOptions& opt = {});

// B^{-1} = scaled / sqrt(scale_sq) with scaled = scale_sq * basis^{-1}.
struct BasisInverse {
  RatMatrix scaled;
  Rat max_abs_scaled;
  bool integral = false;
};
BasisInverse basis_inverse(const LatticeData& L);

// Bound on |c_i| in u = sum c_i b_i given |u|_inf <= vec_inf_scaled / sqrt(scale_sq).
// Sharp form: the largest column sum of |B^{-1}| (c = u B^{-1} for row vectors).
Rat coefficient_bound(const LatticeData& L, const Rat& vec_inf_scaled);
// The cruder n * max|entry| form.
Rat coefficient_bound_entrywise(const LatticeData& L, const Rat& vec_inf_scaled);

// Basis coordinates of an ambient (scaled) vector; throws MissingWitness if
// the vector is not in the lattice.
std::vector<Int> lattice_coordinates(const LatticeData& L, const std::vector<Int>& scaled);
// <x, y> in true units for two scaled ambient vectors.
Rat ambient_inner(const LatticeData& L, const std::vector<Int>& x, const std::vector<Int>& y);

struct WitnessVectors {
  // configuration with <u,v> = M/4 (Leech only): u, v, w1, w2, w3
  std::vector<std::vector<Int>> quarter_config;
  // orthogonal frame of n minimal vectors
  std::vector<std::vector<Int>> frame;
  std::vector<std::string> failures;  // empty when every self-check passed
  bool ok() const { return failures.empty(); }
};
// Witness vectors checked for membership, norm, and the stated inner
// products.  The Leech set also checks |coefficient| <= bound.
WitnessVectors leech_witness_vectors();
WitnessVectors e8_witness_vectors();

// Poisson summation residual: sum_{|x|<=R} f(x) - (1/covol) sum_{|t|<=R} f-hat(t),
// with tails of both sides folded into the enclosure.
RatInterval poisson_residual(const RadialFn& f, const LatticeData& L, const Rat& radius_cutoff,
                             unsigned long bits = 96);

}  // namespace leechcert
