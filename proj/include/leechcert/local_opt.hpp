#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "leechcert/lattice.hpp"
#include "leechcert/matrix.hpp"
#include "leechcert/rational.hpp"
#include "leechcert/scheme.hpp"

namespace leechcert {

// Rank of span{u u^T : u minimal} inside the n(n+1)/2 symmetric forms.
// Computed modulo a 61-bit prime, which can only undercount; a full rank
// mod p is therefore exact.  Otherwise the rank is redone over Q when the
// matrix is small enough, and `exact` says whether that happened.
struct PerfectionRank {
  std::size_t rank = 0;
  std::size_t full = 0;
  bool exact = false;
  bool perfect() const { return rank == full; }
};
PerfectionRank perfection_rank_detail(const MinVectorSet& mv, unsigned n);
std::size_t perfection_rank(const MinVectorSet& mv, unsigned n);

struct AdjugateResult {
  RatMatrix adj;
  Rat abs_entry_sum;
};
AdjugateResult adjugate_with_sum(const RatMatrix& gram);

struct MinorSumOptions {
  std::size_t max_minors = 2000000;  // C(n,k)^2 above this raises TooManyMinors
  unsigned threads = 1;
};
// Sum of |det| over all (n-k)x(n-k) minors with rows and columns chosen
// independently.  The Gram matrix is scaled to integers first and every
// minor is a Bareiss determinant.
Rat minor_abs_sum(const RatMatrix& gram, unsigned k, const MinorSumOptions& opt = {});
// The same sum for k = 2 read off the 2x2 minors of the inverse (Jacobi's
// complementary minor identity); an independent check, not a replacement.
Rat minor_abs_sum_k2_via_inverse(const RatMatrix& gram);

// C(n,k)^2 * (diag^2 + (n-k-1) offdiag^2)^((n-k)/2), rounded up when the
// exponent is a half integer.  count overrides C(n,k)^2 when nonzero.
Rat hadamard_minor_bound(unsigned n, unsigned k, const Rat& diag, const Rat& offdiag, const Int& count = 0);

struct DrhoTerm {
  unsigned k = 0;
  Rat minor_sum;  // exact A_k, or the Hadamard bound
  bool exact = false;
  Rat weight;     // upper bound on k^(k/2)
  Rat contribution;  // weight * minor_sum * rho_max^(k-2)
};
struct DrhoBound {
  Rat rho_max;
  Rat c;  // D_rho >= det - c rho^2 for 0 < rho <= rho_max
  Rat exact_part;  // contributions of exactly computed minor sums
  Rat tail;        // contributions of Hadamard bounds
  std::vector<DrhoTerm> terms;
};
DrhoBound drho_lower_bound(const LatticeData& L, const Rat& rho_max, const MinorSumOptions& opt = {});

// One derived entry of the alpha table; beta is the unnormalized inner
// product, sign the sign of t.
struct AlphaEntry {
  Rat beta;
  int sign = 0;
  Rat alpha;
  std::string derivation;
};
struct AlphaChainResult {
  unsigned n = 0;
  Rat M;
  std::vector<AlphaEntry> table;
  Rat alpha;  // minimum over the table
  Rat lookup(const Rat& beta, int sign) const;
};
// Replays the chain of alpha bounds.  Leech needs the orthogonal frame, the quarter
// configuration and P_0(1/2,1/2) > 0; E8 needs the frame and the scheme.
AlphaChainResult alpha_chain(const LatticeData& L, const SchemeTable& scheme, const WitnessVectors& w);

// Generic linear-combination step: z = sum lambda_k v_k is minimal, all v_k
// minimal, and (p, q) is the pair whose inner product carries t.  Returns
// the alpha forced for that pair type and sign given the other entries.
struct Combination {
  std::vector<std::vector<Int>> vectors;  // scaled ambient coordinates
  std::vector<Int> lambda;
  std::size_t p = 0, q = 1;
};
Rat combination_alpha(const LatticeData& L, const Combination& comb, int sign,
                      const std::map<std::pair<Rat, int>, Rat>& known, std::string* derivation = nullptr);

// Exact LP for one instance (i0, j0, t): the smallest possible value of
// max_k (-T(u_k)) over symmetric T with |t_ij| <= 1, t_{i0 j0} = t and
// sum adj_ij t_ij = 0.
struct AlphaLpOptions {
  bool allow_heavy = false;  // required above dimension 8
};
Rat alpha_exact_lp(const LatticeData& L, const MinVectorSet& mv, unsigned i0, unsigned j0, int t,
                   const AlphaLpOptions& opt = {});
struct AlphaLpSweep {
  Rat alpha;  // minimum over instances
  std::size_t instances = 0;
  unsigned arg_i = 0, arg_j = 0;
  int arg_t = 0;
};
AlphaLpSweep alpha_exact_lp_all(const LatticeData& L, const MinVectorSet& mv, const AlphaLpOptions& opt = {});

struct FinalInequality {
  Rat bound;
  Rat rho_max;
  bool ok = false;
};
// |t_ij| <= (dev + max_gram adj_sum dev / n) / (1 - adj_sum dev / n) with
// dev = inner_dev; ok iff that is below rho_max.
FinalInequality final_inequality(const Rat& eps, const Rat& adj_sum, const Rat& max_gram, unsigned n,
                                 const Rat& inner_dev, const Rat& rho_max);

struct PerturbationBound {
  Rat rho_max;
  Rat alpha;
  Rat drho_quadratic_coeff;
  Rat M;
  unsigned n = 0;
  bool ok = false;
  std::string conclusion;
};
// (1 - rho alpha / M)^n < 1 - c rho^2 for every rho in (0, rho_max], via a
// Sturm-certified sign of ((1 - (1 - rho a)^n) / rho - c rho).  Throws
// CertificationFailed naming a witness rho when it fails.
PerturbationBound local_optimality_certificate(unsigned n, const Rat& alpha, const Rat& M, const Rat& c,
                                               const Rat& rho_max);

// B S B^T == M I for the frame (rows in basis coordinates) and the
// adjugate S of the Gram matrix.
bool frame_identity(const LatticeData& L, const std::vector<std::vector<Int>>& frame, const Rat& M);

// Built-in constants of the two cases.
struct LocalOptConstants {
  Rat M, rho_max, final_claim, dev_coeff;
};
LocalOptConstants leech_local_constants();
LocalOptConstants e8_local_constants();

}  // namespace leechcert
