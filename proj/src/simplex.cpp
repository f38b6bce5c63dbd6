#include "leechcert/simplex.hpp"

#include <limits>

#include "leechcert/errors.hpp"

namespace leechcert {

void LinearProgram::add_row(std::vector<Rat> a, Sense s, const Rat& b) {
  if (a.size() != num_vars) throw PreconditionViolation("LP row has wrong length");
  rows.push_back(std::move(a));
  senses.push_back(s);
  rhs.push_back(b);
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Tableau {
  std::size_t m = 0, cols = 0;  // cols excludes the rhs column
  std::vector<std::vector<Rat>> a;  // m rows of cols + 1 entries
  std::vector<Rat> z;               // reduced costs, z[cols] = -objective
  std::vector<std::size_t> basis;
  std::vector<bool> barred;  // columns that may not enter
  std::size_t pivots = 0;
  bool bland = false;
  std::size_t degenerate_streak = 0;

  void pivot(std::size_t r, std::size_t c) {
    std::vector<Rat>& pr = a[r];
    Rat inv = 1 / pr[c];
    for (auto& v : pr)
      if (v != 0) v *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = 0; j <= cols; ++j)
        if (pr[j] != 0) a[i][j] -= f * pr[j];
    }
    if (z[c] != 0) {
      Rat f = z[c];
      for (std::size_t j = 0; j <= cols; ++j)
        if (pr[j] != 0) z[j] -= f * pr[j];
    }
    basis[r] = c;
    ++pivots;
  }

  std::size_t entering() const {
    std::size_t best = kNone;
    for (std::size_t j = 0; j < cols; ++j) {
      if (barred[j] || z[j] >= 0) continue;
      if (bland) return j;
      if (best == kNone || z[j] < z[best]) best = j;
    }
    return best;
  }

  // Returns false when the objective is unbounded below.
  bool run() {
    for (;;) {
      std::size_t c = entering();
      if (c == kNone) return true;
      std::size_t r = kNone;
      Rat best;
      for (std::size_t i = 0; i < m; ++i) {
        if (a[i][c] <= 0) continue;
        Rat ratio = a[i][cols] / a[i][c];
        if (r == kNone || ratio < best || (ratio == best && basis[i] < basis[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == kNone) return false;
      if (best == 0) {
        if (++degenerate_streak > 2 * (m + cols)) bland = true;
      } else {
        degenerate_streak = 0;
      }
      pivot(r, c);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, bool bland_only) {
  const std::size_t n = lp.num_vars, m = lp.rows.size();
  if (lp.cost.size() != n) throw PreconditionViolation("LP cost vector has wrong length");

  // Column layout: structural | slack/surplus | artificial.
  std::size_t n_slack = 0, n_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.senses[i] != Sense::Equal) ++n_slack;
  }
  std::vector<int> flip(m, 1);
  for (std::size_t i = 0; i < m; ++i)
    if (lp.rhs[i] < 0) flip[i] = -1;

  // A row needs an artificial unless it is a <= row after sign normalization.
  std::vector<bool> needs_art(m);
  for (std::size_t i = 0; i < m; ++i) {
    Sense s = lp.senses[i];
    if (flip[i] < 0 && s != Sense::Equal) s = s == Sense::LessEq ? Sense::GreaterEq : Sense::LessEq;
    needs_art[i] = s != Sense::LessEq;
    if (needs_art[i]) ++n_art;
  }

  Tableau T;
  T.m = m;
  T.cols = n + n_slack + n_art;
  T.a.assign(m, std::vector<Rat>(T.cols + 1));
  T.basis.assign(m, kNone);
  T.barred.assign(T.cols, false);
  T.bland = bland_only;

  std::size_t slack = n, art = n + n_slack;
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = T.a[i];
    for (std::size_t j = 0; j < n; ++j) row[j] = flip[i] * lp.rows[i][j];
    row[T.cols] = flip[i] * lp.rhs[i];
    if (lp.senses[i] != Sense::Equal) {
      int sign = lp.senses[i] == Sense::LessEq ? 1 : -1;
      row[slack] = sign * flip[i];
      if (!needs_art[i]) T.basis[i] = slack;
      ++slack;
    }
    if (needs_art[i]) {
      row[art] = 1;
      T.basis[i] = art++;
    }
  }

  // Phase one: minimize the sum of artificials.
  T.z.assign(T.cols + 1, Rat(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (!needs_art[i]) continue;
    for (std::size_t j = 0; j <= T.cols; ++j)
      if (j < n + n_slack || j == T.cols) T.z[j] -= T.a[i][j];
  }
  LpResult res;
  if (n_art > 0) {
    T.run();
    if (T.z[T.cols] != 0) {
      res.status = LpStatus::Infeasible;
      res.pivots = T.pivots;
      return res;
    }
    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are redundant and get dropped.
    for (std::size_t i = 0; i < T.m;) {
      if (T.basis[i] < n + n_slack) {
        ++i;
        continue;
      }
      std::size_t c = kNone;
      for (std::size_t j = 0; j < n + n_slack; ++j)
        if (T.a[i][j] != 0) {
          c = j;
          break;
        }
      if (c != kNone) {
        T.pivot(i, c);
        ++i;
      } else {
        T.a.erase(T.a.begin() + static_cast<std::ptrdiff_t>(i));
        T.basis.erase(T.basis.begin() + static_cast<std::ptrdiff_t>(i));
        --T.m;
      }
    }
    for (std::size_t j = n + n_slack; j < T.cols; ++j) T.barred[j] = true;
  }

  // Phase two.
  T.z.assign(T.cols + 1, Rat(0));
  for (std::size_t j = 0; j < n; ++j) T.z[j] = lp.cost[j];
  for (std::size_t i = 0; i < T.m; ++i) {
    std::size_t b = T.basis[i];
    if (b >= n || lp.cost[b] == 0) continue;
    Rat f = lp.cost[b];
    for (std::size_t j = 0; j <= T.cols; ++j)
      if (T.a[i][j] != 0) T.z[j] -= f * T.a[i][j];
  }
  T.degenerate_streak = 0;
  T.bland = bland_only;
  bool bounded = T.run();
  res.pivots = T.pivots;
  if (!bounded) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.x.assign(n, Rat(0));
  for (std::size_t i = 0; i < T.m; ++i)
    if (T.basis[i] < n) res.x[T.basis[i]] = T.a[i][T.cols];
  res.value = 0;
  for (std::size_t j = 0; j < n; ++j) res.value += lp.cost[j] * res.x[j];
  return res;
}

}  // namespace leechcert
