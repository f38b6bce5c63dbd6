#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leechcert/lattice.hpp"
#include "leechcert/matrix.hpp"
#include "leechcert/rational.hpp"

namespace leechcert {

// Unit vectors, either given by an explicit Gram matrix (small codes) or as
// the normalized minimal vectors of a lattice.  In the second case all
// vectors share one scaled norm, so inner products are exact rationals
// dot(x, y) / norm.
class SphericalCode {
 public:
  static SphericalCode from_gram(RatMatrix unit_gram);
  static SphericalCode from_min_vectors(std::shared_ptr<const MinVectorSet> mv);

  std::size_t size() const;
  unsigned dim() const { return dim_; }
  Rat inner(std::size_t i, std::size_t j) const;
  bool lattice_backed() const { return static_cast<bool>(mv_); }
  const MinVectorSet* vectors() const { return mv_.get(); }
  // Scaled integer dot product, lattice-backed codes only.
  std::int64_t dot(std::size_t i, std::size_t j) const;
  std::int64_t scaled_norm() const { return norm_; }
  // Index of -x_i (antipodal partner); throws PreconditionViolation if absent.
  std::size_t antipode(std::size_t i) const;

 private:
  RatMatrix gram_;
  std::shared_ptr<const MinVectorSet> mv_;
  std::int64_t norm_ = 0;
  unsigned dim_ = 0;
};

// Assignment of inner products to labels.  For lattice-backed codes the
// assignment is a lookup table on the scaled dot product, built once and
// checked against every row listed in rows_checked.
struct PairClassification {
  std::vector<Rat> labels;  // ascending
  Rat tol;
  std::vector<int> by_dot;  // lattice-backed: index (dot + norm) -> label, -1 if none
  std::int64_t norm = 0;
  std::vector<int> explicit_labels;  // explicit codes: N*N table
  std::size_t n_points = 0;
  std::size_t rows_checked = 0;
  int label_of(const SphericalCode& code, std::size_t i, std::size_t j) const;
};

// Every off-diagonal entry in the checked rows must lie within tol of a
// unique label.  max_rows = 0 checks every row.
PairClassification classify_pairs(const SphericalCode& code, const std::vector<Rat>& labels, const Rat& tol,
                                  std::size_t max_rows = 0);

// Intersection numbers P_gamma(alpha, beta) over a label set.
struct SchemeTable {
  std::vector<Rat> labels;
  Int code_size = 0;
  std::vector<Int> P;  // [g][a][b], labels.size()^3 entries
  std::size_t base_pairs = 0;

  std::size_t k() const { return labels.size(); }
  int index_of(const Rat& label) const;  // -1 if absent
  Int& at(std::size_t g, std::size_t a, std::size_t b) { return P[(g * k() + a) * k() + b]; }
  const Int& at(std::size_t g, std::size_t a, std::size_t b) const { return P[(g * k() + a) * k() + b]; }
  // By label value; throws MissingSchemeFact if a label is absent.
  Int get(const Rat& g, const Rat& a, const Rat& b) const;
  // One line "gamma alpha beta count" per entry, sorted by label values.
  std::string to_text() const;
};

struct SchemeCountOptions {
  std::size_t base_points = 8;      // number of x's tried (all when the code is small)
  std::size_t partners_per_class = 2;
  std::size_t exhaustive_below = 1000;  // codes smaller than this are counted over all pairs
};

// Direct triple counts.  Every base pair examined must give the same row,
// otherwise NotAScheme names the offending pair.
SchemeTable count_intersection_numbers(const SphericalCode& code, const PairClassification& cls,
                                       const SchemeCountOptions& opt = {});

// Exact solution of the moment equations for one gamma (|gamma| < 1).  The
// unknowns are P_gamma(alpha, beta) for the labels strictly inside (-1, 1);
// the +-1 entries are Kronecker boundary data.
std::map<std::pair<Rat, Rat>, Rat> moment_system_solve(const Rat& gamma, unsigned n, const Int& code_size,
                                                       const std::vector<Rat>& labels);
// The coefficient matrix alpha^i beta^j (rows (i, j), columns (alpha, beta)).
RatMatrix moment_matrix(const std::vector<Rat>& labels);
Rat moment_matrix_inverse_norm(unsigned n, const std::vector<Rat>& labels);

// Full table from the moment systems; the gamma = +-1 layers come from
// valencies.  Throws NormalizationError if a solution is not a nonnegative
// integer.
SchemeTable scheme_from_moments(unsigned n, const Int& code_size, const std::vector<Rat>& labels);

// Symmetry and valency identities; returns a list of violations.
std::vector<std::string> scheme_symmetry_violations(const SchemeTable& t);

// code_size (1 + 2 sigma) sigma + moment_coeff_bound(n) sigma + defect sqrt(vol S^{n-1}),
// an upper bound.  n is 8 or 24.
Rat perturbation_budget(unsigned n, const Rat& sigma, const Rat& design_defect, const Int& code_size);

struct ProjectionCheck {
  bool ok = false;
  Rat trace;
  std::string witness;  // first mismatching coefficient
};
// P = M C sum_alpha alpha A_alpha satisfies P^2 = P in the Bose-Mesner
// algebra, and trace M C N = n.
ProjectionCheck bose_mesner_projection_check(const SchemeTable& t, unsigned n, const Rat& C, const Rat& M);

// C * sum u u^T == I in true coordinates.
bool eutaxy_check(const MinVectorSet& mv, const Rat& C);

// Label sets used throughout.
std::vector<Rat> leech_labels();  // -1, -1/2, -1/4, 0, 1/4, 1/2, 1
std::vector<Rat> e8_labels();     // -1, -1/2, 0, 1/2, 1

}  // namespace leechcert
