// Floating-point search for good double-root locations, followed by rounding
// to integer coefficients and an exact re-certification.
//
// Unknowns are the Laguerre coefficients a_0..a_d of p = sum a_i L_i and
// h = sum (-1)^i a_i L_i.  Conditions: p(0) = h(0) = 1, and at every forced
// location a value of -delta (f side) or +delta (f-hat side) with zero
// derivative.  The free sign change r of p is the objective.
#include <algorithm>
#include <cmath>
#include <optional>

#include "leechcert/enclosures.hpp"
#include "leechcert/errors.hpp"
#include "leechcert/radial.hpp"
#include "leechcert/roots.hpp"

namespace leechcert {

namespace {

using Real = mpf_class;

Real from_rat(const Rat& q, unsigned long prec) {
  Real r(0, prec);
  mpf_set_q(r.get_mpf_t(), q.get_mpq_t());
  return r;
}

class Problem {
 public:
  Problem(unsigned n, unsigned mf, unsigned mh, unsigned long prec, int margin)
      : mf_(mf), mh_(mh), d_(1 + 2 * (mf + mh)), prec_(prec), alpha_(n / 2 - 1, prec), delta_(1, prec) {
    Real ten(10, prec);
    for (int i = 0; i < margin; ++i) delta_ /= ten;
  }

  unsigned degree() const { return d_; }
  unsigned long prec() const { return prec_; }
  Real R(long v) const { return Real(v, prec_); }

  // Values of L_i, L_i', L_i'' at z (derivatives only up to `order`).
  void lag(const Real& z, std::vector<Real>& L, std::vector<Real>& D, std::vector<Real>& D2, int order = 2) const {
    L.assign(d_ + 1, R(0));
    D.assign(d_ + 1, R(0));
    D2.assign(d_ + 1, R(0));
    L[0] = 1;
    L[1] = 1 + alpha_ - z;
    D[1] = -1;
    Real a(0, prec_), b(0, prec_);
    for (unsigned i = 2; i <= d_; ++i) {
      a = 2 * i - 1;
      a += alpha_ - z;
      b = i - 1;
      b += alpha_;
      L[i] = (a * L[i - 1] - b * L[i - 2]) / i;
      if (order >= 1) D[i] = (a * D[i - 1] - L[i - 1] - b * D[i - 2]) / i;
      if (order >= 2) D2[i] = (a * D2[i - 1] - 2 * D[i - 1] - b * D2[i - 2]) / i;
    }
  }

  Real eval(const std::vector<Real>& a, const Real& z, bool hat, int order = 0) const {
    std::vector<Real> L, D, D2;
    lag(z, L, D, D2, order);
    const auto& v = order == 0 ? L : order == 1 ? D : D2;
    Real s = R(0);
    for (unsigned i = 0; i <= d_; ++i) {
      if (hat && i % 2)
        s -= a[i] * v[i];
      else
        s += a[i] * v[i];
    }
    return s;
  }

  // Gaussian elimination with partial pivoting, keeping the factors for a
  // transposed solve.
  struct LU {
    std::vector<std::vector<Real>> m;
    std::vector<std::size_t> perm;
    bool ok = true;
  };

  LU factor(std::vector<std::vector<Real>> m) const {
    LU f;
    const std::size_t k = m.size();
    f.perm.resize(k);
    for (std::size_t i = 0; i < k; ++i) f.perm[i] = i;
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < k; ++r)
        if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
      if (sgn(m[piv][c]) == 0) {
        f.ok = false;
        return f;
      }
      std::swap(m[piv], m[c]);
      std::swap(f.perm[piv], f.perm[c]);
      for (std::size_t r = c + 1; r < k; ++r) {
        m[r][c] /= m[c][c];
        if (sgn(m[r][c]) == 0) continue;
        for (std::size_t j = c + 1; j < k; ++j) m[r][j] -= m[r][c] * m[c][j];
      }
    }
    f.m = std::move(m);
    return f;
  }

  std::vector<Real> solve(const LU& f, const std::vector<Real>& b) const {
    const std::size_t k = b.size();
    std::vector<Real> y(k, R(0));
    for (std::size_t i = 0; i < k; ++i) {
      y[i] = b[f.perm[i]];
      for (std::size_t j = 0; j < i; ++j) y[i] -= f.m[i][j] * y[j];
    }
    for (std::size_t i = k; i-- > 0;) {
      for (std::size_t j = i + 1; j < k; ++j) y[i] -= f.m[i][j] * y[j];
      y[i] /= f.m[i][i];
    }
    return y;
  }

  // Solves A^T w = b for P A = L U:  A^T = U^T L^T P.
  std::vector<Real> solve_transpose(const LU& f, const std::vector<Real>& b) const {
    const std::size_t k = b.size();
    std::vector<Real> u(k, R(0));
    for (std::size_t i = 0; i < k; ++i) {
      u[i] = b[i];
      for (std::size_t j = 0; j < i; ++j) u[i] -= f.m[j][i] * u[j];
      u[i] /= f.m[i][i];
    }
    for (std::size_t i = k; i-- > 0;)
      for (std::size_t j = i + 1; j < k; ++j) u[i] -= f.m[j][i] * u[j];
    std::vector<Real> w(k, R(0));
    for (std::size_t i = 0; i < k; ++i) w[f.perm[i]] = u[i];
    return w;
  }

  // x = f-side locations then f-hat-side locations.
  struct State {
    bool valid = false;
    std::vector<Real> a;
    Real r;
    LU lu;
  };

  State build(const std::vector<Real>& x) const {
    State st;
    st.r.set_prec(prec_);
    for (unsigned j = 0; j + 1 < mf_; ++j)
      if (x[j] >= x[j + 1]) return st;
    for (unsigned j = mf_; j + 1 < mf_ + mh_; ++j)
      if (x[j] >= x[j + 1]) return st;
    for (const auto& v : x)
      if (v <= 0) return st;
    const unsigned k = d_ + 1;
    std::vector<std::vector<Real>> A(k, std::vector<Real>(k, R(0)));
    std::vector<Real> b(k, R(0));
    std::vector<Real> L, D, D2;
    lag(R(0), L, D, D2);
    for (unsigned i = 0; i < k; ++i) {
      A[0][i] = L[i];
      A[1][i] = i % 2 ? Real(-L[i]) : L[i];
    }
    b[0] = 1;
    b[1] = 1;
    for (unsigned j = 0; j < mf_ + mh_; ++j) {
      const bool hat = j >= mf_;
      lag(x[j], L, D, D2);
      for (unsigned i = 0; i < k; ++i) {
        const bool flip = hat && i % 2;
        A[2 + 2 * j][i] = flip ? Real(-L[i]) : L[i];
        A[3 + 2 * j][i] = flip ? Real(-D[i]) : D[i];
      }
      b[2 + 2 * j] = hat ? delta_ : Real(-delta_);
    }
    st.lu = factor(A);
    if (!st.lu.ok) return st;
    st.a = solve(st.lu, b);
    if (sgn(st.a[d_]) <= 0) return st;  // wrong signs at infinity
    // first sign change of p below the first f-side location
    const Real top = mf_ ? x[0] : Real(x[mf_ + mh_ - 1] + 40);
    const int grid = 160;
    Real lo = R(0), hi = R(0);
    bool found = false;
    for (int g = 1; g <= grid; ++g) {
      Real z = top * g / grid;
      if (sgn(eval(st.a, z, false)) < 0) {
        hi = z;
        lo = top * (g - 1) / grid;
        found = true;
        break;
      }
    }
    if (!found) return st;
    for (int it = 0; it < 160 && hi - lo > delta_ * delta_; ++it) {
      Real m = (lo + hi) / 2;
      if (sgn(eval(st.a, m, false)) < 0)
        hi = m;
      else
        lo = m;
    }
    st.r = hi;
    // numeric sign screening on a grid; the exact check comes later
    Real zmax = x[mf_ + mh_ - 1] + 40;
    if (mf_ && x[mf_ - 1] + 40 > zmax) zmax = x[mf_ - 1] + 40;
    for (int g = 0; g <= 400; ++g) {
      Real z = zmax * g / 400;
      if (z > st.r && sgn(eval(st.a, z, false)) > 0) return st;
      if (sgn(eval(st.a, z, true)) < 0) return st;
    }
    st.valid = true;
    return st;
  }

  // dr/dx from the implicit function theorem; only the derivative rows move
  // to first order because p' vanishes at every forced location.
  std::vector<Real> gradient(const State& st, const std::vector<Real>& x) const {
    std::vector<Real> L, D, D2;
    lag(st.r, L, D, D2);
    std::vector<Real> w = solve_transpose(st.lu, L);
    Real pr = eval(st.a, st.r, false, 1);
    std::vector<Real> g(x.size(), R(0));
    for (unsigned j = 0; j < x.size(); ++j) {
      const bool hat = j >= mf_;
      Real second = eval(st.a, x[j], hat, 2);
      g[j] = w[3 + 2 * j] * second / pr;
    }
    return g;
  }

  const Real& delta() const { return delta_; }
  unsigned mf() const { return mf_; }
  unsigned mh() const { return mh_; }
  const Real& alpha() const { return alpha_; }

 private:
  unsigned mf_, mh_, d_;
  unsigned long prec_;
  Real alpha_, delta_;
};

Real dot(const std::vector<Real>& a, const std::vector<Real>& b) {
  Real s(0, a.empty() ? 64 : a[0].get_prec());
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat to_rat(const Real& x) {
  Rat q;
  mpq_set_f(q.get_mpq_t(), x.get_mpf_t());
  return q;
}

Rat round_to(const Real& x, int digits) {
  Int s = int_pow(Int(10), digits);
  Rat v = to_rat(x) * Rat(s);
  return frac(floor_rat(v + frac(1, 2)), s);
}

int log10_ceil(const Rat& x) {
  if (x <= 0) return 0;
  int k = 0;
  Rat t = x;
  while (t > 1) {
    t /= 10;
    ++k;
  }
  return k;
}

}  // namespace

RootSpec default_magic_spec(unsigned n, unsigned m_f, unsigned m_h) {
  Rat start, step = 2;
  if (n == 24)
    start = 4;
  else if (n == 8)
    start = 2;
  else
    throw DomainError("default magic spec only for n = 8 or 24");
  RatInterval pi = pi_enclosure(96);
  auto at = [&](const Rat& norm) {
    Int s = int_pow(Int(10), 20);
    return frac(floor_rat(2 * pi.lo() * norm * Rat(s)), s);
  };
  RootSpec spec;
  for (unsigned j = 0; j < m_f; ++j) spec.push_back({at(start + step * (j + 1)), 2, Side::F});
  for (unsigned j = 0; j < m_h; ++j) spec.push_back({at(start + step * j), 2, Side::FHat});
  return spec;
}

NewtonResult newton_construct(const RootSpec& initial, unsigned n, const NewtonOptions& opt) {
  if (n < 2 || n % 2) throw DomainError("newton_construct needs even n");
  std::vector<Rat> fs, hs;
  for (const auto& r : initial) {
    if (r.multiplicity != 2) continue;  // the sign change is free
    (r.side == Side::F ? fs : hs).push_back(r.location);
  }
  if (fs.empty() && hs.empty()) throw DomainError("newton_construct needs forced double roots");
  std::sort(fs.begin(), fs.end());
  std::sort(hs.begin(), hs.end());
  const unsigned mf = fs.size(), mh = hs.size();

  const unsigned long search_prec = std::max<unsigned long>(256, opt.precision_bits / 2);
  Problem search(n, mf, mh, search_prec, opt.margin_digits);
  std::vector<Real> x;
  for (const Rat& v : fs) x.push_back(from_rat(v, search_prec));
  for (const Rat& v : hs) x.push_back(from_rat(v, search_prec));

  auto st = search.build(x);
  if (!st.valid) throw SingularSystem("initial root specification does not give a usable function");

  // BFGS on r(x) with a backtracking line search, steps capped at one unit.
  const std::size_t k = x.size();
  std::vector<std::vector<Real>> H(k, std::vector<Real>(k, search.R(0)));
  auto reset = [&] {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) H[i][j] = i == j ? 1 : 0;
  };
  reset();
  std::vector<Real> g = search.gradient(st, x);
  unsigned used = 0, accepted = 0;
  bool fresh = true;
  for (unsigned it = 0; it < opt.iterations; ++it) {
    std::vector<Real> dir(k, search.R(0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) dir[i] -= H[i][j] * g[j];
    Real slope = dot(g, dir);
    if (sgn(slope) >= 0) {
      reset();
      fresh = true;
      for (std::size_t i = 0; i < k; ++i) dir[i] = -g[i];
      slope = dot(g, dir);
    }
    Real big = search.R(0);
    for (const auto& v : dir)
      if (abs(v) > big) big = abs(v);
    if (sgn(big) == 0) break;
    Real t = big > 1 ? Real(1 / big, search_prec) : search.R(1);
    bool moved = false;
    std::optional<Problem::State> next;
    std::vector<Real> xn(k, search.R(0));
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t i = 0; i < k; ++i) xn[i] = x[i] + t * dir[i];
      next.emplace(search.build(xn));
      if (next->valid && next->r < st.r + t * slope / 10000) {
        moved = true;
        break;
      }
      t /= 2;
    }
    ++used;
    if (!moved) {
      if (fresh) break;  // steepest descent failed too: stationary
      reset();
      fresh = true;
      continue;
    }
    ++accepted;
    std::vector<Real> gn = search.gradient(*next, xn);
    std::vector<Real> s(k, search.R(0)), y(k, search.R(0));
    for (std::size_t i = 0; i < k; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gn[i] - g[i];
    }
    Real sy = dot(s, y);
    if (sgn(sy) > 0) {
      std::vector<Real> Hy(k, search.R(0));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) Hy[i] += H[i][j] * y[j];
      Real yHy = dot(y, Hy);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          H[i][j] += ((sy + yHy) * s[i] * s[j]) / (sy * sy) - (Hy[i] * s[j] + s[i] * Hy[j]) / sy;
      fresh = false;
    } else {
      reset();
      fresh = true;
    }
    Real gain = st.r - next->r;
    x = xn;
    st = std::move(*next);
    g = gn;
    if (gain < search.delta()) break;
  }
  if (opt.iterations > 0 && accepted == 0) {
    Real gn = sqrt(dot(g, g));
    if (gn > search.delta()) throw NoProgress("no descent step was accepted from the initial locations");
  }

  // Round the locations, then solve once more at full precision.
  std::vector<Rat> xr;
  for (const auto& v : x) xr.push_back(round_to(v, 30));
  Problem fine(n, mf, mh, opt.precision_bits, opt.margin_digits);
  std::vector<Real> xf;
  for (const Rat& v : xr) xf.push_back(from_rat(v, opt.precision_bits));
  auto fin = fine.build(xf);
  if (!fin.valid) throw CertificationFailed("final high-precision solve is not usable");

  // Integer coefficients c_i with p = sum c_i i! L_i / 10^S.  w_i = i! L_i(0)
  // is an integer divisible by w_1 = alpha + 1, which lets c_1 and c_0 be
  // adjusted to make p(0) = h(0) = 10^S exactly.
  const unsigned d = fine.degree();
  const long alpha = n / 2 - 1;
  std::vector<Int> w(d + 1);
  w[0] = 1;
  for (unsigned i = 1; i <= d; ++i) w[i] = w[i - 1] * Int(alpha + static_cast<long>(i));
  Rat K = 0;
  for (unsigned i = 2; i <= d; ++i) K += Rat(w[i]) / 2;
  Rat dc1 = 1 + K / Rat(w[1]);
  Rat dc0 = 1 + K + Rat(w[1]) * dc1;
  Rat worst = 0;
  for (const Rat& loc : xr) {
    std::vector<Rat> L(d + 1);
    // |i! L_i(loc)| via the exact recurrence
    L[0] = 1;
    L[1] = Rat(1 + alpha) - loc;
    for (unsigned i = 2; i <= d; ++i)
      L[i] = ((Rat(2 * i - 1 + alpha) - loc) * L[i - 1] - Rat(i + alpha - 1) * L[i - 2]) / Rat(i);
    Rat e = 0;
    for (unsigned i = 2; i <= d; ++i) e += abs(L[i]) * Rat(factorial(i)) / 2;
    e += dc1 * abs(L[1]) + dc0;
    worst = std::max(worst, e);
  }
  const int S = opt.margin_digits + log10_ceil(worst) + 6;
  const Int scale = int_pow(Int(10), S);
  std::vector<Int> c(d + 1);
  for (unsigned i = 0; i <= d; ++i) {
    Rat v = to_rat(fin.a[i]) * Rat(scale) / Rat(factorial(i));
    c[i] = floor_rat(v + frac(1, 2));
  }
  {
    Int odd = 0;
    for (unsigned i = 3; i <= d; i += 2) odd += c[i] * w[i];
    c[1] = -odd / w[1];  // exact: w[1] divides every w[i]
    Int even = 0;
    for (unsigned i = 2; i <= d; i += 2) even += c[i] * w[i];
    c[0] = scale - even;
  }

  NewtonResult out;
  out.iterations_used = used;
  out.fn.dim = n;
  out.fn.scale = Rat(scale);
  for (const Int& v : c) out.fn.coeffs.push_back(Rat(v));

  // Exact sign change below the first f-side location.
  UniPoly p = radial_poly(out.fn);
  UniPoly odd = odd_multiplicity_part(p);
  Rat top = mf ? xr[0] : xr.back() + 40;
  std::vector<RatInterval> roots;
  if (odd.degree() > 0) roots = isolate_roots(odd, RatInterval(Rat(0), top), pow10(-30));
  if (roots.empty()) throw CertificationFailed("rounded function has no sign change below the first forced root");
  Rat z0 = roots.front().hi();
  try {
    out.certificate = certify_packing_bound_z(out.fn, z0);
  } catch (const SignViolation& e) {
    throw CertificationFailed(std::string("rounded function fails certification: ") + e.what());
  }
  out.spec.push_back({z0, 1, Side::F});
  for (unsigned j = 0; j < mf; ++j) out.spec.push_back({xr[j], 2, Side::F});
  for (unsigned j = 0; j < mh; ++j) out.spec.push_back({xr[mf + j], 2, Side::FHat});
  return out;
}

}  // namespace leechcert
