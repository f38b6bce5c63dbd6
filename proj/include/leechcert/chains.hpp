#pragma once

#include <string>
#include <vector>

#include "leechcert/lattice.hpp"
#include "leechcert/rational.hpp"
#include "leechcert/scheme.hpp"

namespace leechcert {

// Per-label enclosure of a normalized or unnormalized inner product.
struct LabelBound {
  Rat label;
  RatInterval bound;
  Rat deviation;  // max distance of the enclosure from the label
};

struct SigmaChainResult {
  unsigned n = 0;
  std::vector<LabelBound> bounds;
  Rat sigma;
};

// Inner products of normalized nearly minimal vectors from the length
// windows of the shells containing u - v, combined with negation.  n = 24
// uses windows (eps, mu, nu, omega) for |u - v|^2 near 4, 6, 8, 10; n = 8
// uses (eps, mu, nu) near 2, 4, 6 and ignores omega.
SigmaChainResult sigma_chain(const Rat& eps, const Rat& mu, const Rat& nu, const Rat& omega, unsigned n);

struct FirstPassResult {
  Rat threshold;     // (N^2 - N f(1)) / 4
  Rat sigma;         // certified upper bound
  std::vector<RatInterval> admissible;  // where f_eps >= threshold on [-1, cos phi]
};
// Every off-diagonal inner product t satisfies f_eps(t) >= threshold; the
// admissible set is located by root isolation of f_eps - threshold.
FirstPassResult first_pass_sigma(unsigned n, const Rat& eps, const Rat& isolation_width = Rat(1, 1000000000) / 1000000);

struct ChainStep {
  std::string name;
  Rat label;            // unnormalized inner product it approximates
  RatInterval derived;  // exact consequence of the hypotheses
  RatInterval claimed;  // the rounded bound carried forward
  bool holds = false;   // derived is inside claimed
};

struct InnerProductChain {
  unsigned n = 0;
  std::vector<ChainStep> steps;
  std::vector<LabelBound> bounds;  // claimed bounds for every label incl. negatives
  Rat max_deviation;               // over the claimed bounds
  bool ok = false;                 // every step holds
};

// Replays the chain of bounds for unnormalized inner products of nearly minimal
// vectors (minimal norm 4 for n = 24, 2 for n = 8).  Needs P_0(1/2,1/2) > 0
// from the scheme, and for n = 24 the quarter configuration.
InnerProductChain inner_product_chain(const Rat& eps, const SchemeTable& scheme, unsigned n);

struct BasisTransferReport {
  Rat coef_bound;      // bound on basis coefficients of a minimal vector
  Rat norm_error;      // coef^2 n^2 dev
  Rat norm_gap;        // next shell norm minus minimal norm
  Rat inner_error;     // n coef dev
  Rat inner_gap;       // M - (M/2 + dev_half)
  Rat budget_claim;    // 10^-17 for n = 24, none (0) for n = 8
  bool norm_ok = false, inner_ok = false, claim_ok = false;
  bool ok() const { return norm_ok && inner_ok && claim_ok; }
};
// dev_coeff * eps bounds all inner product errors (75 for Leech, 7 for E8);
// mu is the window of the next shell.
BasisTransferReport basis_transfer_check(const LatticeData& L, const Rat& eps, const Rat& mu, const Rat& dev_coeff);
BasisTransferReport basis_transfer_check(const LatticeData& L, const Rat& eps);

// Shell constants of the two built-in cases.
struct ShellConstants {
  Rat eps, mu, nu, omega;
};
ShellConstants leech_shell_constants();
ShellConstants e8_shell_constants();

}  // namespace leechcert
