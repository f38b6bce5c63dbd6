#include "leechcert/scheme.hpp"

#include <algorithm>
#include <sstream>

#include "leechcert/enclosures.hpp"
#include "leechcert/errors.hpp"
#include "leechcert/sphere_lp.hpp"

namespace leechcert {

SphericalCode SphericalCode::from_gram(RatMatrix unit_gram) {
  if (unit_gram.rows() != unit_gram.cols()) throw DomainError("unit Gram matrix must be square");
  for (std::size_t i = 0; i < unit_gram.rows(); ++i) {
    if (unit_gram(i, i) != 1) throw DomainError("unit Gram matrix needs ones on the diagonal");
    for (std::size_t j = 0; j < i; ++j)
      if (unit_gram(i, j) != unit_gram(j, i)) throw DomainError("unit Gram matrix is not symmetric");
  }
  SphericalCode c;
  c.gram_ = std::move(unit_gram);
  return c;
}

SphericalCode SphericalCode::from_min_vectors(std::shared_ptr<const MinVectorSet> mv) {
  if (!mv || mv->count() == 0) throw DomainError("empty minimal vector set");
  SphericalCode c;
  c.mv_ = std::move(mv);
  c.dim_ = c.mv_->vectors.n;
  c.norm_ = c.dot(0, 0);
  return c;
}

std::size_t SphericalCode::size() const { return mv_ ? mv_->count() : gram_.rows(); }

std::int64_t SphericalCode::dot(std::size_t i, std::size_t j) const {
  const auto* a = mv_->vectors.coord_row(i);
  const auto* b = mv_->vectors.coord_row(j);
  std::int64_t s = 0;
  for (unsigned t = 0; t < dim_; ++t) s += static_cast<std::int64_t>(a[t]) * b[t];
  return s;
}

Rat SphericalCode::inner(std::size_t i, std::size_t j) const {
  if (!mv_) return gram_(i, j);
  return frac(Int(static_cast<long>(dot(i, j))), Int(static_cast<long>(norm_)));
}

std::size_t SphericalCode::antipode(std::size_t i) const {
  if (!mv_) {
    for (std::size_t j = 0; j < size(); ++j)
      if (gram_(i, j) == -1) return j;
    throw PreconditionViolation("code is not antipodal");
  }
  const unsigned n = dim_;
  std::vector<std::int32_t> neg(mv_->vectors.coord_row(i), mv_->vectors.coord_row(i) + n);
  for (auto& v : neg) v = -v;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    const auto* r = mv_->vectors.coord_row(mid);
    if (std::lexicographical_compare(r, r + n, neg.begin(), neg.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::equal(neg.begin(), neg.end(), mv_->vectors.coord_row(lo))) return lo;
  throw PreconditionViolation("code is not antipodal");
}

namespace {

int nearest_label(const std::vector<Rat>& labels, const Rat& x, const Rat& tol) {
  int found = -1;
  for (std::size_t a = 0; a < labels.size(); ++a)
    if (abs(x - labels[a]) <= tol) {
      if (found >= 0) return -2;  // ambiguous
      found = static_cast<int>(a);
    }
  return found;
}

}  // namespace

int PairClassification::label_of(const SphericalCode& code, std::size_t i, std::size_t j) const {
  if (code.lattice_backed()) return by_dot[static_cast<std::size_t>(code.dot(i, j) + norm)];
  return explicit_labels[i * n_points + j];
}

PairClassification classify_pairs(const SphericalCode& code, const std::vector<Rat>& labels, const Rat& tol,
                                  std::size_t max_rows) {
  if (labels.empty()) throw DomainError("no labels");
  std::vector<Rat> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t a = 1; a < sorted.size(); ++a)
    if (!(2 * tol < sorted[a] - sorted[a - 1])) throw PreconditionViolation("tol must be below half the label gap");
  if (tol < 0) throw DomainError("tol must be nonnegative");

  PairClassification c;
  c.labels = sorted;
  c.tol = tol;
  const std::size_t N = code.size();
  c.n_points = N;
  const std::size_t rows = max_rows == 0 ? N : std::min(N, max_rows);

  if (code.lattice_backed()) {
    c.norm = code.scaled_norm();
    c.by_dot.assign(static_cast<std::size_t>(2 * c.norm + 1), -1);
    for (std::int64_t d = -c.norm; d <= c.norm; ++d) {
      int l = nearest_label(sorted, frac(Int(static_cast<long>(d)), Int(static_cast<long>(c.norm))), tol);
      c.by_dot[static_cast<std::size_t>(d + c.norm)] = l < 0 ? -1 : l;
    }
    // rows spread evenly through the (sorted) code
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t i = rows == N ? r : r * (N / rows);
      for (std::size_t j = 0; j < N; ++j) {
        std::int64_t d = code.dot(i, j);
        if (d > c.norm || d < -c.norm || c.by_dot[static_cast<std::size_t>(d + c.norm)] < 0)
          throw UnclassifiablePair(i, j, to_string(code.inner(i, j)));
      }
    }
  } else {
    c.explicit_labels.assign(N * N, -1);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        int l = nearest_label(sorted, code.inner(i, j), tol);
        if (l < 0 && i < rows) throw UnclassifiablePair(i, j, to_string(code.inner(i, j)));
        c.explicit_labels[i * N + j] = l;
      }
  }
  c.rows_checked = rows;
  return c;
}

int SchemeTable::index_of(const Rat& label) const {
  for (std::size_t a = 0; a < labels.size(); ++a)
    if (labels[a] == label) return static_cast<int>(a);
  return -1;
}

Int SchemeTable::get(const Rat& g, const Rat& a, const Rat& b) const {
  int ig = index_of(g), ia = index_of(a), ib = index_of(b);
  if (ig < 0 || ia < 0 || ib < 0) throw MissingSchemeFact("label not in the scheme table");
  return at(static_cast<std::size_t>(ig), static_cast<std::size_t>(ia), static_cast<std::size_t>(ib));
}

std::string SchemeTable::to_text() const {
  std::ostringstream os;
  for (std::size_t g = 0; g < k(); ++g)
    for (std::size_t a = 0; a < k(); ++a)
      for (std::size_t b = 0; b < k(); ++b)
        os << to_string(labels[g]) << ' ' << to_string(labels[a]) << ' ' << to_string(labels[b]) << ' '
           << at(g, a, b).get_str() << '\n';
  return os.str();
}

SchemeTable count_intersection_numbers(const SphericalCode& code, const PairClassification& cls,
                                       const SchemeCountOptions& opt) {
  const std::size_t N = code.size(), k = cls.labels.size();
  SchemeTable t;
  t.labels = cls.labels;
  t.code_size = Int(static_cast<unsigned long>(N));
  t.P.assign(k * k * k, Int(0));
  std::vector<bool> filled(k, false);

  auto label_row = [&](std::size_t x, std::vector<int>& out) {
    out.resize(N);
    for (std::size_t z = 0; z < N; ++z) {
      int l = cls.label_of(code, x, z);
      if (l < 0) throw UnclassifiablePair(x, z, to_string(code.inner(x, z)));
      out[z] = l;
    }
  };

  std::vector<int> lx, ly;
  std::vector<std::uint64_t> counts(k * k);
  auto record = [&](std::size_t x, std::size_t y) {
    label_row(y, ly);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t z = 0; z < N; ++z) ++counts[static_cast<std::size_t>(lx[z]) * k + static_cast<std::size_t>(ly[z])];
    const auto g = static_cast<std::size_t>(lx[y]);
    ++t.base_pairs;
    if (!filled[g]) {
      for (std::size_t ab = 0; ab < k * k; ++ab) t.P[g * k * k + ab] = Int(static_cast<unsigned long>(counts[ab]));
      filled[g] = true;
      return;
    }
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (t.at(g, a, b) != Int(static_cast<unsigned long>(counts[a * k + b])))
          throw NotAScheme(x, y,
                           "P_" + to_string(t.labels[g]) + "(" + to_string(t.labels[a]) + "," + to_string(t.labels[b]) +
                               ") = " + std::to_string(counts[a * k + b]) + " vs " + t.at(g, a, b).get_str());
  };

  if (N < opt.exhaustive_below) {
    for (std::size_t x = 0; x < N; ++x) {
      label_row(x, lx);
      for (std::size_t y = 0; y < N; ++y) record(x, y);
    }
  } else {
    const std::size_t nb = std::max<std::size_t>(1, std::min(opt.base_points, N));
    for (std::size_t bi = 0; bi < nb; ++bi) {
      const std::size_t x = bi * (N / nb);
      label_row(x, lx);
      std::vector<std::size_t> taken(k, 0);
      for (std::size_t step = 0; step < N; ++step) {
        std::size_t y = (x + step) % N;
        auto g = static_cast<std::size_t>(lx[y]);
        if (taken[g] >= opt.partners_per_class) continue;
        ++taken[g];
        record(x, y);
        if (std::all_of(taken.begin(), taken.end(), [&](std::size_t c) { return c >= opt.partners_per_class; }))
          break;
      }
    }
  }
  return t;
}

namespace {

std::vector<Rat> inner_labels(const std::vector<Rat>& labels) {
  std::vector<Rat> in;
  for (const auto& a : labels)
    if (abs(a) < 1) in.push_back(a);
  std::sort(in.begin(), in.end());
  return in;
}

}  // namespace

RatMatrix moment_matrix(const std::vector<Rat>& labels) {
  const auto in = inner_labels(labels);
  const std::size_t m = in.size();
  RatMatrix A(m * m, m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          A(i * m + j, a * m + b) = rat_pow(in[a], static_cast<unsigned long>(i)) *
                                    rat_pow(in[b], static_cast<unsigned long>(j));
  return A;
}

std::map<std::pair<Rat, Rat>, Rat> moment_system_solve(const Rat& gamma, unsigned n, const Int& code_size,
                                                       const std::vector<Rat>& labels) {
  if (abs(gamma) >= 1) throw PreconditionViolation("moment systems are solved for |gamma| < 1");
  const auto in = inner_labels(labels);
  const std::size_t m = in.size();
  RatMatrix A = moment_matrix(labels);
  std::vector<Rat> rhs(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rat v = Rat(code_size) * sphere_moment(static_cast<unsigned>(i), static_cast<unsigned>(j), n)(gamma);
      // z = +-x and z = +-y
      const Rat gi = rat_pow(gamma, static_cast<unsigned long>(i)), gj = rat_pow(gamma, static_cast<unsigned long>(j));
      const Rat parity = (i + j) % 2 == 0 ? Rat(2) : Rat(0);
      v -= parity * (gi + gj);
      rhs[i * m + j] = v;
    }
  std::vector<Rat> sol = solve(A, rhs);
  std::map<std::pair<Rat, Rat>, Rat> out;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) out[{in[a], in[b]}] = sol[a * m + b];
  return out;
}

Rat moment_matrix_inverse_norm(unsigned /*n*/, const std::vector<Rat>& labels) {
  return inf_norm(inverse(moment_matrix(labels)));
}

SchemeTable scheme_from_moments(unsigned n, const Int& code_size, const std::vector<Rat>& labels) {
  SchemeTable t;
  t.labels = labels;
  std::sort(t.labels.begin(), t.labels.end());
  t.code_size = code_size;
  const std::size_t k = t.k();
  t.P.assign(k * k * k, Int(0));
  const int i1 = t.index_of(1), im1 = t.index_of(-1);
  if (i1 < 0 || im1 < 0) throw PreconditionViolation("labels must contain -1 and 1");

  for (std::size_t g = 0; g < k; ++g) {
    const Rat& gamma = t.labels[g];
    if (abs(gamma) == 1) continue;
    auto sol = moment_system_solve(gamma, n, code_size, t.labels);
    for (const auto& [ab, v] : sol) {
      if (v.get_den() != 1 || v < 0)
        throw NormalizationError("P_" + to_string(gamma) + "(" + to_string(ab.first) + "," + to_string(ab.second) +
                                 ") = " + to_string(v) + " is not a nonnegative integer");
      t.at(g, static_cast<std::size_t>(t.index_of(ab.first)), static_cast<std::size_t>(t.index_of(ab.second))) =
          v.get_num();
    }
    for (std::size_t b = 0; b < k; ++b) {
      const Rat& beta = t.labels[b];
      if (beta == gamma) t.at(g, static_cast<std::size_t>(i1), b) = t.at(g, b, static_cast<std::size_t>(i1)) = 1;
      if (beta == -gamma) t.at(g, static_cast<std::size_t>(im1), b) = t.at(g, b, static_cast<std::size_t>(im1)) = 1;
    }
  }
  // valencies from any inner layer
  std::size_t g0 = k;
  for (std::size_t g = 0; g < k; ++g)
    if (abs(t.labels[g]) < 1) {
      g0 = g;
      break;
    }
  if (g0 == k) throw PreconditionViolation("no inner label");
  for (std::size_t a = 0; a < k; ++a) {
    Int val = 0;
    for (std::size_t b = 0; b < k; ++b) val += t.at(g0, a, b);
    t.at(static_cast<std::size_t>(i1), a, a) = val;
    t.at(static_cast<std::size_t>(im1), a, static_cast<std::size_t>(t.index_of(-t.labels[a]))) = val;
  }
  return t;
}

std::vector<std::string> scheme_symmetry_violations(const SchemeTable& t) {
  std::vector<std::string> out;
  const std::size_t k = t.k();
  auto neg = [&](std::size_t a) { return t.index_of(-t.labels[a]); };
  auto name = [&](std::size_t g, std::size_t a, std::size_t b) {
    return "P_" + to_string(t.labels[g]) + "(" + to_string(t.labels[a]) + "," + to_string(t.labels[b]) + ")";
  };
  for (std::size_t g = 0; g < k; ++g)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        const Int& v = t.at(g, a, b);
        if (v != t.at(g, b, a)) out.push_back(name(g, a, b) + " != " + name(g, b, a));
        int na = neg(a), nb = neg(b), ng = neg(g);
        if (na < 0 || nb < 0 || ng < 0) {
          out.push_back("label set is not symmetric");
          return out;
        }
        auto ua = static_cast<std::size_t>(na), ub = static_cast<std::size_t>(nb), ug = static_cast<std::size_t>(ng);
        if (v != t.at(g, ua, ub)) out.push_back(name(g, a, b) + " != " + name(g, ua, ub));
        if (v != t.at(ug, a, ub)) out.push_back(name(g, a, b) + " != " + name(ug, a, ub));
      }
  // every layer has the same row sums (the valencies)
  for (std::size_t a = 0; a < k; ++a) {
    Int ref = 0;
    for (std::size_t b = 0; b < k; ++b) ref += t.at(0, a, b);
    for (std::size_t g = 1; g < k; ++g) {
      Int s = 0;
      for (std::size_t b = 0; b < k; ++b) s += t.at(g, a, b);
      if (s != ref) out.push_back("row sum of " + to_string(t.labels[a]) + " differs in layer " + to_string(t.labels[g]));
    }
  }
  return out;
}

Rat perturbation_budget(unsigned n, const Rat& sigma, const Rat& design_defect, const Int& code_size) {
  if (sigma < 0 || sigma >= frac(1, 10)) throw SigmaTooLarge("sigma must lie in [0, 1/10)");
  if (design_defect < 0) throw DomainError("design defect must be nonnegative");
  Rat budget = Rat(code_size) * (1 + 2 * sigma) * sigma + moment_coeff_bound(n) * sigma;
  if (design_defect > 0) {
    Rat vol = sphere_volume(n, 128).hi();
    budget += design_defect * sqrt_enclosure(vol, 128).hi();
  }
  return budget;
}

ProjectionCheck bose_mesner_projection_check(const SchemeTable& t, unsigned n, const Rat& C, const Rat& M) {
  ProjectionCheck r;
  const std::size_t k = t.k();
  // entries with alpha beta = 0 do not enter P^2, so the table itself is
  // checked for its symmetries and valencies first
  auto bad = scheme_symmetry_violations(t);
  if (!bad.empty()) {
    r.witness = bad.front();
    return r;
  }
  const Rat mc = M * C;
  r.trace = mc * Rat(t.code_size);
  for (std::size_t g = 0; g < k; ++g) {
    Rat s = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) s += t.labels[a] * t.labels[b] * Rat(t.at(g, a, b));
    // coefficient of A_gamma in P^2 is (MC)^2 s, in P it is MC gamma
    if (mc * s != t.labels[g]) {
      r.witness = "coefficient of A_" + to_string(t.labels[g]) + ": " + to_string(mc * mc * s) + " vs " +
                  to_string(mc * t.labels[g]);
      return r;
    }
  }
  if (r.trace != Rat(n)) {
    r.witness = "trace " + to_string(r.trace) + " != " + std::to_string(n);
    return r;
  }
  r.ok = true;
  return r;
}

bool eutaxy_check(const MinVectorSet& mv, const Rat& C) {
  const unsigned n = mv.vectors.n;
  std::vector<std::int64_t> s(static_cast<std::size_t>(n) * n, 0);
  for (std::size_t k = 0; k < mv.count(); ++k) {
    const auto* r = mv.vectors.coord_row(k);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) s[i * n + j] += static_cast<std::int64_t>(r[i]) * r[j];
  }
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      Rat v = C * Rat(Int(static_cast<long>(s[i * n + j]))) / Rat(mv.scale_sq);
      if (v != (i == j ? 1 : 0)) return false;
    }
  return true;
}

std::vector<Rat> leech_labels() { return {-1, frac(-1, 2), frac(-1, 4), 0, frac(1, 4), frac(1, 2), 1}; }
std::vector<Rat> e8_labels() { return {-1, frac(-1, 2), 0, frac(1, 2), 1}; }

}  // namespace leechcert
