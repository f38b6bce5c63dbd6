#pragma once

#include <vector>

#include "leechcert/rational.hpp"

namespace leechcert {

enum class Sense { LessEq, GreaterEq, Equal };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// minimize c.x subject to rows (a_i . x  sense_i  b_i) and x >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<std::vector<Rat>> rows;
  std::vector<Sense> senses;
  std::vector<Rat> rhs;
  std::vector<Rat> cost;

  void add_row(std::vector<Rat> a, Sense s, const Rat& b);
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  std::vector<Rat> x;
  std::size_t pivots = 0;
};

// Dense two-phase tableau simplex over the rationals.  Entering columns
// follow the most negative reduced cost until a degenerate streak appears,
// after which Bland's rule takes over, so the method cannot cycle.
LpResult solve_lp(const LinearProgram& lp, bool bland_only = false);

}  // namespace leechcert
