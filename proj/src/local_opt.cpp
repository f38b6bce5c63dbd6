#include "leechcert/local_opt.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "leechcert/errors.hpp"
#include "leechcert/poly.hpp"
#include "leechcert/roots.hpp"
#include "leechcert/simplex.hpp"

namespace leechcert {

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t(1) << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t s = lo + hi;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t to_mod(std::int64_t v) {
  std::int64_t m = v % static_cast<std::int64_t>(kPrime);
  return static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(kPrime) : m);
}

// Upper-triangle entries of u u^T (off-diagonal doubled is irrelevant for the rank).
std::vector<std::int64_t> sym_row(const std::int32_t* u, unsigned n) {
  std::vector<std::int64_t> r;
  r.reserve(n * (n + 1) / 2);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i; j < n; ++j) r.push_back(std::int64_t(u[i]) * u[j]);
  return r;
}

Int lcm_of_denominators(const RatMatrix& m) {
  Int l = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
  return l;
}

// Lexicographic next k-subset of {0..n-1}; false after the last one.
bool next_subset(std::vector<unsigned>& s, unsigned n) {
  const std::size_t k = s.size();
  for (std::size_t i = k; i-- > 0;) {
    if (s[i] < n - k + i) {
      ++s[i];
      for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::vector<unsigned>> all_subsets(unsigned n, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> s(k);
  for (unsigned i = 0; i < k; ++i) s[i] = i;
  do out.push_back(s);
  while (k > 0 && next_subset(s, n));
  return out;
}

Rat max_abs_entry(const RatMatrix& m, bool diagonal) {
  Rat best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if ((i == j) == diagonal) best = std::max<Rat>(best, abs(m(i, j)));
  return best;
}

std::string rs(const Rat& x) { return to_string(x); }

}  // namespace

PerfectionRank perfection_rank_detail(const MinVectorSet& mv, unsigned n) {
  PerfectionRank out;
  out.full = std::size_t(n) * (n + 1) / 2;
  const ShortVectors& sv = mv.vectors;
  if (sv.n != n) throw PreconditionViolation("dimension mismatch in perfection_rank");

  std::vector<std::vector<std::uint64_t>> pivot_row(out.full);
  std::vector<bool> has_pivot(out.full, false);
  for (std::size_t k = 0; k < sv.size() && out.rank < out.full; ++k) {
    auto r = sym_row(sv.coeff_row(k), n);
    std::vector<std::uint64_t> v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) v[i] = to_mod(r[i]);
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (v[c] == 0) continue;
      if (has_pivot[c]) {
        std::uint64_t f = v[c];
        const auto& p = pivot_row[c];
        for (std::size_t j = c; j < v.size(); ++j)
          if (p[j]) v[j] = (v[j] + kPrime - mulmod(f, p[j])) % kPrime;
        continue;
      }
      std::uint64_t inv = powmod(v[c], kPrime - 2);
      for (std::size_t j = c; j < v.size(); ++j) v[j] = mulmod(v[j], inv);
      pivot_row[c] = std::move(v);
      has_pivot[c] = true;
      ++out.rank;
      break;
    }
  }
  if (out.rank == out.full) {
    out.exact = true;
    return out;
  }
  // A rank deficit mod p might be an artifact of the prime.
  if (sv.size() * out.full <= 200000) {
    RatMatrix m(sv.size(), out.full);
    for (std::size_t k = 0; k < sv.size(); ++k) {
      auto r = sym_row(sv.coeff_row(k), n);
      for (std::size_t j = 0; j < r.size(); ++j) m(k, j) = Rat(static_cast<long>(r[j]));
    }
    out.rank = rank(m);
    out.exact = true;
  }
  return out;
}

std::size_t perfection_rank(const MinVectorSet& mv, unsigned n) { return perfection_rank_detail(mv, n).rank; }

AdjugateResult adjugate_with_sum(const RatMatrix& gram) {
  AdjugateResult r{adjugate(gram), Rat(0)};
  for (std::size_t i = 0; i < r.adj.rows(); ++i)
    for (std::size_t j = 0; j < r.adj.cols(); ++j) r.abs_entry_sum += abs(r.adj(i, j));
  return r;
}

Rat minor_abs_sum(const RatMatrix& gram, unsigned k, const MinorSumOptions& opt) {
  const unsigned n = static_cast<unsigned>(gram.rows());
  if (gram.cols() != n) throw DomainError("minor_abs_sum needs a square matrix");
  if (k > n) throw DomainError("minor order out of range");
  if (k == n) return 1;
  const unsigned m = n - k;
  Int count = binomial(n, m);
  count *= count;
  if (count > Int(static_cast<unsigned long>(opt.max_minors)))
    throw TooManyMinors(count.get_str() + " minors of size " + std::to_string(m) + " exceed the limit");

  Int den = lcm_of_denominators(gram);
  IntMatrix g(n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) g(i, j) = Int(gram(i, j) * den);

  const auto subsets = all_subsets(n, m);
  const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(subsets.size())));
  std::vector<Int> partial(threads, Int(0));
  auto work = [&](unsigned tid) {
    IntMatrix sub(m, m);
    Int local = 0;
    for (std::size_t ri = tid; ri < subsets.size(); ri += threads) {
      const auto& R = subsets[ri];
      for (const auto& C : subsets) {
        for (unsigned a = 0; a < m; ++a)
          for (unsigned b = 0; b < m; ++b) sub(a, b) = g(R[a], C[b]);
        Int d = det_bareiss(sub);
        local += abs(d);
      }
    }
    partial[tid] = local;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  Int total = 0;
  for (const auto& p : partial) total += p;
  return Rat(total) / Rat(int_pow(den, m));
}

Rat minor_abs_sum_k2_via_inverse(const RatMatrix& gram) {
  const std::size_t n = gram.rows();
  Rat d = det(gram);
  RatMatrix inv = inverse(gram);
  // det S[R,C] = +-det S * det S^{-1}[C', R'] with ' the complement.
  Rat s = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t e = c + 1; e < n; ++e) s += abs(inv(a, c) * inv(b, e) - inv(a, e) * inv(b, c));
  return abs(d) * s;
}

Rat hadamard_minor_bound(unsigned n, unsigned k, const Rat& diag, const Rat& offdiag, const Int& count) {
  if (k > n) throw DomainError("minor order out of range");
  const unsigned m = n - k;
  Int c = count;
  if (c == 0) {
    c = binomial(n, k);
    c *= c;
  }
  if (m == 0) return Rat(c);
  Rat base = diag * diag + Rat(m - 1) * offdiag * offdiag;
  Rat p = rat_pow(base, m / 2);
  if (m % 2) p *= sqrt_enclosure(base, 64).hi();
  return Rat(c) * p;
}

DrhoBound drho_lower_bound(const LatticeData& L, const Rat& rho_max, const MinorSumOptions& opt) {
  if (rho_max <= 0) throw DomainError("rho_max must be positive");
  const unsigned n = L.n;
  DrhoBound out;
  out.rho_max = rho_max;
  const Rat diag = max_abs_entry(L.gram, true), off = max_abs_entry(L.gram, false);
  // The linear term vanishes because sum adj_ij t_ij = 0; every k >= 2 term
  // is at most rho^k k^(k/2) A_k by Hadamard's inequality on the minor of T.
  for (unsigned k = 2; k <= n; ++k) {
    DrhoTerm t;
    t.k = k;
    Int cnt = binomial(n, k);
    cnt *= cnt;
    if (cnt <= Int(static_cast<unsigned long>(opt.max_minors))) {
      t.minor_sum = minor_abs_sum(L.gram, k, opt);
      t.exact = true;
    } else {
      t.minor_sum = hadamard_minor_bound(n, k, diag, off);
    }
    t.weight = half_power_upper(k);
    t.contribution = t.weight * t.minor_sum * rat_pow(rho_max, k - 2);
    (t.exact ? out.exact_part : out.tail) += t.contribution;
    out.terms.push_back(t);
  }
  out.c = out.exact_part + out.tail;
  return out;
}

Rat AlphaChainResult::lookup(const Rat& beta, int sign) const {
  for (const auto& e : table)
    if (e.beta == beta && e.sign == sign) return e.alpha;
  throw MissingWitness("no alpha entry for inner product " + rs(beta));
}

Rat combination_alpha(const LatticeData& L, const Combination& comb, int sign,
                      const std::map<std::pair<Rat, int>, Rat>& known, std::string* derivation) {
  const std::size_t r = comb.vectors.size();
  if (comb.lambda.size() != r || comb.p >= r || comb.q >= r || comb.p == comb.q)
    throw PreconditionViolation("malformed combination");
  const Rat M = ambient_inner(L, comb.vectors[0], comb.vectors[0]);
  std::vector<Int> z(comb.vectors[0].size(), Int(0));
  for (std::size_t k = 0; k < r; ++k) {
    if (ambient_inner(L, comb.vectors[k], comb.vectors[k]) != M) throw MissingWitness("combination vector not minimal");
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += comb.lambda[k] * comb.vectors[k][i];
  }
  lattice_coordinates(L, z);
  if (ambient_inner(L, z, z) != M) throw MissingWitness("combination is not a minimal vector");

  auto alpha_of = [&](const Rat& beta, int s) -> Rat {
    auto key = beta < 0 ? std::make_pair(Rat(-beta), -s) : std::make_pair(beta, s);
    auto it = known.find(key);
    if (it == known.end() || it->second <= 0) throw MissingWitness("alpha for inner product " + rs(beta) + " unknown");
    return it->second;
  };

  // kappa t = T(z) - sum lambda_k^2 T(v_k) - sum_{other pairs} 2 lambda_k lambda_l T(v_k, v_l),
  // and every term on the right is at most a|t| / alpha for its type.
  const Rat kappa = 2 * Rat(comb.lambda[comb.p] * comb.lambda[comb.q]);
  if (kappa == 0) throw PreconditionViolation("designated pair has zero coefficient");
  const int s = sgn(kappa) * sign;
  Rat K = 1 / alpha_of(M, s);
  std::ostringstream os;
  os << "K = " << rs(K);
  for (std::size_t k = 0; k < r; ++k) {
    Rat l2 = Rat(comb.lambda[k] * comb.lambda[k]);
    Rat term = l2 / alpha_of(M, -s);
    K += term;
    os << " + " << rs(term);
  }
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = k + 1; l < r; ++l) {
      if ((k == comb.p && l == comb.q) || (k == comb.q && l == comb.p)) continue;
      Rat c = 2 * Rat(comb.lambda[k] * comb.lambda[l]);
      if (c == 0) continue;
      Rat beta = ambient_inner(L, comb.vectors[k], comb.vectors[l]);
      int e = -s * sgn(c);
      Rat term = abs(c) / alpha_of(beta, e);
      K += term;
      os << " + " << rs(term);
    }
  Rat a = abs(kappa) / K;
  os << " = " << rs(K) << ", alpha = " << rs(abs(kappa)) << "/" << rs(K);
  if (derivation) *derivation = os.str();
  return a;
}

AlphaChainResult alpha_chain(const LatticeData& L, const SchemeTable& scheme, const WitnessVectors& w) {
  if (!w.ok()) throw MissingWitness("witness self-checks failed: " + w.failures.front());
  if (w.frame.size() != L.n) throw MissingWitness("orthogonal frame missing");
  const unsigned n = L.n;
  const Rat M = ambient_inner(L, w.frame[0], w.frame[0]);
  if (!frame_identity(L, w.frame, M)) throw MissingWitness("frame identity fails");

  AlphaChainResult out;
  out.n = n;
  out.M = M;
  std::map<std::pair<Rat, int>, Rat> known;
  auto put = [&](const Rat& beta, int sign, const Rat& a, std::string why) {
    known[{beta, sign}] = a;
    out.table.push_back({beta, sign, a, std::move(why)});
  };

  put(M, -1, 1, "T(x) = t itself");
  // Frame: the T(v_i) sum to zero, so one is <= -t/(n-1).
  const Rat c = Rat(1) / Rat(n - 1);
  put(M, +1, c, "frame sum: alpha = 1/" + rs(Rat(n - 1)));

  // x - y is minimal: T(x - y) = T(x) + T(y) - 2t.
  {
    Rat a = 2 * c / (1 + 2 * c);
    if (c * (2 - 2 * a) != a) throw CertificationFailed("half-label (-) step does not close");
    put(M / 2, -1, a, "x - y: c(2 - 2a) = a gives a = " + rs(a));
  }
  {
    Rat a = 2 * c / (2 + c);
    if (c * (2 - a) / 2 != a) throw CertificationFailed("half-label (+) step does not close");
    put(M / 2, +1, a, "x - y: c(2 - a)/2 = a gives a = " + rs(a));
  }
  // Orthogonal pair: z = x + y - w with <x,w> = <y,w> = M/2.
  {
    if (scheme.get(0, frac(1, 2), frac(1, 2)) <= 0) throw MissingSchemeFact("P_0(1/2,1/2) is zero");
    Rat d = known.at({M / 2, +1});
    Rat a = 2 * d / (4 + d * (3 + 1 / c));
    if (d * (2 - 3 * a - a / c) / 4 != a) throw CertificationFailed("orthogonal step does not close");
    std::string why = "x + y - w: d(2 - 3a - a/c)/4 = a gives a = " + rs(a);
    put(0, +1, a, why);
    put(0, -1, a, why);
  }
  if (scheme.index_of(frac(1, 4)) >= 0) {
    if (w.quarter_config.size() != 5) throw MissingWitness("quarter configuration missing");
    const auto& q = w.quarter_config;  // u, v, w1, w2, w3 with <u,v> = M/4
    Combination comb{{q[0], q[1], q[2], q[3], q[4]}, {2, -1, -1, -1, -1}, 0, 1};
    if (ambient_inner(L, q[0], q[1]) != M / 4) throw MissingWitness("quarter pair has the wrong inner product");
    for (int sign : {+1, -1}) {
      std::string why;
      Rat a = combination_alpha(L, comb, sign, known, &why);
      out.table.push_back({M / 4, sign, a, "2u - v - w1 - w2 - w3: " + why});
    }
    for (int sign : {+1, -1}) known[{M / 4, sign}] = out.lookup(M / 4, sign);
  }
  out.alpha = out.table.front().alpha;
  for (const auto& e : out.table) out.alpha = std::min<Rat>(out.alpha, e.alpha);
  std::sort(out.table.begin(), out.table.end(), [](const AlphaEntry& a, const AlphaEntry& b) {
    return a.beta != b.beta ? a.beta > b.beta : a.sign > b.sign;
  });
  return out;
}

Rat alpha_exact_lp(const LatticeData& L, const MinVectorSet& mv, unsigned i0, unsigned j0, int t,
                   const AlphaLpOptions& opt) {
  const unsigned n = L.n;
  if (n > 8 && !opt.allow_heavy) throw ResourceLimit("exact alpha LP above dimension 8 needs the heavy flag");
  if (i0 >= n || j0 >= n || (t != 1 && t != -1)) throw DomainError("bad LP instance");
  if (i0 > j0) std::swap(i0, j0);

  // Variables: y_p = t_p + 1 in [0, 2] for every pair p = (i <= j) except
  // the fixed one, then s+ and s-.
  std::vector<std::pair<unsigned, unsigned>> pairs;
  std::size_t fixed = 0;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i; j < n; ++j) {
      if (i == i0 && j == j0) fixed = pairs.size();
      pairs.emplace_back(i, j);
    }
  std::vector<std::size_t> var_of(pairs.size(), SIZE_MAX);
  std::size_t nv = 0;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    if (p != fixed) var_of[p] = nv++;
  const std::size_t sp = nv, sm = nv + 1;

  LinearProgram lp;
  lp.num_vars = nv + 2;
  lp.cost.assign(lp.num_vars, Rat(0));
  lp.cost[sp] = 1;
  lp.cost[sm] = -1;

  // Substitutes t_p = y_p - 1 into sum coef_p t_p and returns the row and
  // the constant that moves to the right-hand side.
  auto build = [&](const std::vector<Rat>& coef, std::vector<Rat>& row) {
    Rat constant = 0;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (coef[p] == 0) continue;
      if (p == fixed) {
        constant += coef[p] * t;
      } else {
        row[var_of[p]] += coef[p];
        constant -= coef[p];
      }
    }
    return constant;
  };

  const RatMatrix adj = adjugate(L.gram);
  {
    std::vector<Rat> coef(pairs.size()), row(lp.num_vars);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto [i, j] = pairs[p];
      coef[p] = i == j ? adj(i, i) : 2 * adj(i, j);
    }
    Rat constant = build(coef, row);
    lp.add_row(row, Sense::Equal, -constant);
  }
  const ShortVectors& sv = mv.vectors;
  for (std::size_t k = 0; k < sv.size(); ++k) {
    const std::int32_t* u = sv.coeff_row(k);
    // One of each antipodal pair: first nonzero coefficient positive.
    unsigned f = 0;
    while (f < n && u[f] == 0) ++f;
    if (f == n || u[f] < 0) continue;
    std::vector<Rat> coef(pairs.size()), row(lp.num_vars);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto [i, j] = pairs[p];
      long v = long(u[i]) * u[j];
      coef[p] = i == j ? Rat(v) : Rat(2 * v);
    }
    Rat constant = build(coef, row);
    row[sp] = 1;
    row[sm] = -1;
    lp.add_row(row, Sense::GreaterEq, -constant);  // T(u) + s >= 0
  }
  for (std::size_t v = 0; v < nv; ++v) {
    std::vector<Rat> row(lp.num_vars);
    row[v] = 1;
    lp.add_row(row, Sense::LessEq, 2);
  }
  LpResult r = solve_lp(lp);
  if (r.status == LpStatus::Infeasible) throw Infeasible("alpha LP infeasible for (" + std::to_string(i0) + "," +
                                                         std::to_string(j0) + "," + std::to_string(t) + ")");
  if (r.status == LpStatus::Unbounded) throw CertificationFailed("alpha LP unbounded");
  return r.value;
}

AlphaLpSweep alpha_exact_lp_all(const LatticeData& L, const MinVectorSet& mv, const AlphaLpOptions& opt) {
  AlphaLpSweep out;
  bool first = true;
  for (unsigned i = 0; i < L.n; ++i)
    for (unsigned j = i; j < L.n; ++j)
      for (int t : {1, -1}) {
        Rat a = alpha_exact_lp(L, mv, i, j, t, opt);
        ++out.instances;
        if (first || a < out.alpha) {
          out.alpha = a;
          out.arg_i = i;
          out.arg_j = j;
          out.arg_t = t;
          first = false;
        }
      }
  return out;
}

FinalInequality final_inequality(const Rat& eps, const Rat& adj_sum, const Rat& max_gram, unsigned n,
                                 const Rat& inner_dev, const Rat& rho_max) {
  if (eps < 0 || inner_dev < 0) throw DomainError("negative deviation");
  FinalInequality out;
  out.rho_max = rho_max;
  Rat delta = adj_sum * inner_dev / n;
  if (delta >= 1) return out;
  out.bound = (inner_dev + max_gram * delta) / (1 - delta);
  out.ok = out.bound < rho_max;
  return out;
}

PerturbationBound local_optimality_certificate(unsigned n, const Rat& alpha, const Rat& M, const Rat& c,
                                               const Rat& rho_max) {
  PerturbationBound out;
  out.n = n;
  out.alpha = alpha;
  out.M = M;
  out.drho_quadratic_coeff = c;
  out.rho_max = rho_max;
  if (rho_max <= 0 || M <= 0) throw DomainError("rho_max and M must be positive");
  if (alpha <= 0) throw CertificationFailed("alpha = " + rs(alpha) + " gives no decrease; fails at rho = " + to_sci(rho_max));
  if (c * rho_max * rho_max >= 1) throw CertificationFailed("1 - c rho^2 is not positive at rho = " + to_sci(rho_max));

  // 1 - c rho^2 - (1 - a rho)^n = rho * q(rho); q must stay positive.
  const Rat a = alpha / M;
  UniPoly base = UniPoly{Rat(1), Rat(-a)}.pow(n);
  UniPoly h = UniPoly{Rat(1), Rat(0), Rat(-c)} - base;
  if (h.coeff(0) != 0) throw CertificationFailed("internal: h(0) != 0");
  std::vector<Rat> qc(h.coeffs().begin() + 1, h.coeffs().end());
  UniPoly q(qc);
  SignCheck sc = certify_strict_sign_on_interval(q, Rat(0), rho_max, +1);
  if (!sc.ok) throw CertificationFailed("local optimality ratio reaches 1: " + sc.witness);
  out.ok = true;
  out.conclusion = "(1 - rho*" + rs(a) + ")^" + std::to_string(n) + " (1 - " + to_sci(c, 10) + " rho^2)^-1 < 1 for 0 < rho <= " +
                   to_sci(rho_max);
  return out;
}

bool frame_identity(const LatticeData& L, const std::vector<std::vector<Int>>& frame, const Rat& M) {
  const std::size_t n = L.n;
  if (frame.size() != n) return false;
  RatMatrix B(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = lattice_coordinates(L, frame[i]);
    for (std::size_t j = 0; j < n; ++j) B(i, j) = Rat(c[j]);
  }
  RatMatrix lhs = B * L.gram * B.transpose();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (lhs(i, j) != (i == j ? M : Rat(0))) return false;
  // B^T B = M S^{-1} = M adj(S) / det(S): the traces of T over the frame
  // therefore sum to M / det(S) * sum adj_ij t_ij.
  RatMatrix btb = B.transpose() * B;
  RatMatrix adj = adjugate(L.gram);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (btb(i, j) * L.gram_det != M * adj(i, j)) return false;
  return true;
}

LocalOptConstants leech_local_constants() { return {4, pow10(-20), frac(18, 10) * pow10(-22), 75}; }
LocalOptConstants e8_local_constants() { return {2, frac(25, 10) * pow10(-5), frac(16, 10) * pow10(-10), 7}; }

}  // namespace leechcert
