#include "leechcert/chains.hpp"

#include <algorithm>
#include <optional>

#include "leechcert/errors.hpp"
#include "leechcert/roots.hpp"
#include "leechcert/sphere_lp.hpp"

namespace leechcert {

ShellConstants leech_shell_constants() {
  return {parse_rat("6.733e-27"), parse_rat("3.981e-13"), parse_rat("3.219e-12"), parse_rat("1.703e-11")};
}

ShellConstants e8_shell_constants() {
  return {parse_rat("1.45e-13"), parse_rat("1.03e-6"), parse_rat("4.44e-6"), Rat(0)};
}

namespace {

Rat deviation(const RatInterval& b, const Rat& label) {
  return std::max<Rat>(std::max<Rat>(label - b.lo(), b.hi() - label), Rat(0));
}

RatInterval intersect(const RatInterval& a, const RatInterval& b) {
  Rat lo = std::max<Rat>(a.lo(), b.lo()), hi = std::min<Rat>(a.hi(), b.hi());
  if (lo > hi) throw CertificationFailed("length windows are inconsistent");
  return {lo, hi};
}

// Window for |u - v| relative to the exact length sqrt(D); hi absent means
// only a lower bound is known.
struct Window {
  Rat beta;  // unnormalized label
  Rat D;
  Rat lo;
  std::optional<Rat> hi;
};

// lower and upper bounds of x / d for x in [xl, xh] and d in [dl, dh], d > 0
Rat div_lo(const Rat& xl, const Rat& dl, const Rat& dh) { return xl >= 0 ? xl / dh : xl / dl; }
Rat div_hi(const Rat& xh, const Rat& dl, const Rat& dh) { return xh >= 0 ? xh / dl : xh / dh; }

}  // namespace

SigmaChainResult sigma_chain(const Rat& eps, const Rat& mu, const Rat& nu, const Rat& omega, unsigned n) {
  for (const Rat* c : {&eps, &mu, &nu, &omega})
    if (*c < 0 || *c >= frac(1, 100000)) throw PreconditionViolation("shell constants must lie in [0, 1e-5)");
  Rat M;
  std::vector<Window> windows;
  if (n == 24) {
    M = 4;
    windows = {{2, 4, 1, 1 + eps}, {1, 6, 1 - mu, 1 + mu}, {0, 8, 1 - nu, 1 + nu}, {-1, 10, 1 - omega, std::nullopt}};
  } else if (n == 8) {
    M = 2;
    windows = {{1, 2, 1, 1 + eps}, {0, 4, 1 - mu, 1 + mu}, {-1, 6, 1 - nu, 1 + nu}};
  } else {
    throw DomainError("sigma_chain is defined for n = 8 and n = 24");
  }
  const Rat t2 = (1 + eps) * (1 + eps);
  const Rat dl = M, dh = M * t2;  // range of |u||v|
  // A missing side is recorded as a huge sentinel so intersections ignore it.
  const Rat huge = 1000;

  std::vector<std::pair<Rat, RatInterval>> routes;  // normalized label -> enclosure
  for (const auto& w : windows) {
    // 2<u,v> = |u|^2 + |v|^2 - |u-v|^2
    Rat lo = -huge, hi;
    if (w.hi) lo = div_lo((2 * M - w.D * *w.hi * *w.hi) / 2, dl, dh);
    hi = div_hi((2 * M * t2 - w.D * w.lo * w.lo) / 2, dl, dh);
    routes.emplace_back(w.beta / M, RatInterval(lo, hi));
  }
  std::vector<Rat> labels;
  for (const auto& r : routes) {
    labels.push_back(r.first);
    labels.push_back(-r.first);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  SigmaChainResult out;
  out.n = n;
  out.sigma = 0;
  for (const auto& l : labels) {
    RatInterval b(-huge, huge);
    for (const auto& [rl, iv] : routes) {
      if (rl == l) b = intersect(b, iv);
      if (rl == -l) b = intersect(b, -iv);  // replace v by -v
    }
    if (b.lo() == -huge || b.hi() == huge) continue;  // one-sided only, no label claim
    Rat d = deviation(b, l);
    out.bounds.push_back({l, b, d});
    out.sigma = std::max<Rat>(out.sigma, d);
  }
  return out;
}

FirstPassResult first_pass_sigma(unsigned n, const Rat& eps, const Rat& isolation_width) {
  const UniPoly f = kissing_poly(n, eps);
  const Int N = n == 24 ? Int(196560) : Int(240);
  std::vector<Rat> labels = n == 24 ? std::vector<Rat>{-1, frac(-1, 2), frac(-1, 4), 0, frac(1, 4), frac(1, 2)}
                                    : std::vector<Rat>{-1, frac(-1, 2), 0, frac(1, 2)};
  FirstPassResult out;
  out.threshold = (Rat(N) * Rat(N) - Rat(N) * f(Rat(1))) / 4;
  const Rat top = kissing_cos_phi(eps);
  const UniPoly g = f - UniPoly::constant(out.threshold);

  std::vector<RatInterval> pts{RatInterval::point(-1)};
  if (g(Rat(-1)) == 0 || g(top) == 0) {
    // boundary roots (eps = 0): strip them from the isolation domain
    auto inner = isolate_roots(g, RatInterval(-1, top), isolation_width);
    for (const auto& r : inner)
      if (!(r.is_point() && (r.lo() == -1 || r.lo() == top))) pts.push_back(r);
  } else {
    for (const auto& r : isolate_roots(g, RatInterval(-1, top), isolation_width)) pts.push_back(r);
  }
  pts.push_back(RatInterval::point(top));

  out.sigma = 0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const Rat a = pts[k].hi(), b = pts[k + 1].lo();
    Rat mid = (a + b) / 2;
    bool admissible = a < b ? g.sign_at(mid) >= 0 : true;
    if (!admissible) continue;
    RatInterval comp(pts[k].lo(), pts[k + 1].hi());
    out.admissible.push_back(comp);
    const Rat c = comp.mid();
    Rat best = labels.front();
    for (const auto& l : labels)
      if (abs(l - c) < abs(best - c)) best = l;
    out.sigma = std::max<Rat>(out.sigma, deviation(comp, best));
  }
  return out;
}

namespace {

RatInterval sym(const Rat& center, const Rat& lo_off, const Rat& hi_off) { return {center - lo_off, center + hi_off}; }

}  // namespace

InnerProductChain inner_product_chain(const Rat& eps, const SchemeTable& scheme, unsigned n) {
  if (eps < 0) throw DomainError("eps must be nonnegative");
  if (n != 8 && n != 24) throw DomainError("inner_product_chain is defined for n = 8 and n = 24");
  InnerProductChain out;
  out.n = n;
  auto add = [&](std::string name, const Rat& label, const RatInterval& derived, const RatInterval& claimed) {
    out.steps.push_back({std::move(name), label, derived, claimed, claimed.contains(derived)});
    return claimed;
  };
  const Rat t2 = (1 + eps) * (1 + eps);
  if (scheme.index_of(0) < 0 || scheme.index_of(frac(1, 2)) < 0 || scheme.get(0, frac(1, 2), frac(1, 2)) == 0)
    throw MissingSchemeFact("need P_0(1/2,1/2) > 0");

  if (n == 24) {
    const Rat M = 4;
    RatInterval norm = add("norm", M, {M, M * t2}, sym(M, 0, 9 * eps));
    // u - v nearly minimal: |u-v|^2 in [4, norm.hi]
    RatInterval two = add("approx 2", 2, {(2 * M - M * t2) / 2, (-M + 2 * M * t2) / 2}, sym(2, 5 * eps, 9 * eps));
    // <u,v> = <u,w> + <u, v - w> with <u,w> ~ 2 and <u,v-w> ~ -2
    RatInterval zero_d = two + (-two);
    RatInterval zero = add("approx 0", 0, zero_d, sym(0, 14 * eps, 14 * eps));

    WitnessVectors w = leech_witness_vectors();
    if (!w.ok()) throw MissingWitness("quarter configuration failed its self-check: " + w.failures.front());
    LatticeData L = leech_lattice();
    // z = 2u - v - w1 - w2 - w3 is again minimal; isolate -4<u,v> in |z|^2
    const auto& c = w.quarter_config;
    const std::vector<Rat> lam{2, -1, -1, -1, -1};
    std::vector<Int> z(24, 0);
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t t = 0; t < 24; ++t) z[t] += Int(lam[k].get_num()) * c[k][t];
    if (ambient_inner(L, z, z) != M) throw MissingWitness("2u - v - w1 - w2 - w3 is not minimal");
    auto bound_for = [&](const Rat& exact) -> RatInterval {
      if (exact == M) return norm;
      if (exact == 2) return two;
      if (exact == 0) return zero;
      throw MissingSchemeFact("no bound for inner product " + to_string(exact));
    };
    RatInterval rest = RatInterval::point(0);
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t l = k; l < c.size(); ++l) {
        if (k == 0 && l == 1) continue;
        Rat coeff = k == l ? Rat(lam[k] * lam[k]) : Rat(2 * lam[k] * lam[l]);
        rest = rest + RatInterval::point(coeff) * bound_for(ambient_inner(L, c[k], c[l]));
      }
    const Rat uv = 2 * lam[0] * lam[1];  // -4
    // uv <u,v> = |z|^2 - rest
    RatInterval quarter_d = (norm - rest) / RatInterval::point(uv);
    RatInterval quarter = add("approx 1", 1, quarter_d, sym(1, 72 * eps, 75 * eps));

    for (const auto& [l, b] : std::vector<std::pair<Rat, RatInterval>>{{M, norm}, {2, two}, {1, quarter}, {0, zero}}) {
      out.bounds.push_back({l, b, deviation(b, l)});
      if (l != 0) out.bounds.push_back({-l, -b, deviation(-b, -l)});
    }
  } else {
    const Rat M = 2;
    // the claimed norm bound 2 + (5/2) eps is checked, not assumed
    RatInterval norm_d(M, M * t2);
    add("approx 2", 2, norm_d, sym(2, 0, frac(5, 2) * eps));
    RatInterval one = add("approx 1", 1, {(2 * M - M * t2) / 2, (-M + 2 * M * t2) / 2},
                          sym(1, frac(5, 2) * eps, frac(9, 2) * eps));
    RatInterval zero = add("approx 0", 0, one + (-one), sym(0, 7 * eps, 7 * eps));
    for (const auto& [l, b] : std::vector<std::pair<Rat, RatInterval>>{{M, norm_d}, {1, one}, {0, zero}}) {
      out.bounds.push_back({l, b, deviation(b, l)});
      if (l != 0) out.bounds.push_back({-l, -b, deviation(-b, -l)});
    }
  }
  out.max_deviation = 0;
  for (const auto& b : out.bounds) out.max_deviation = std::max<Rat>(out.max_deviation, b.deviation);
  out.ok = std::all_of(out.steps.begin(), out.steps.end(), [](const ChainStep& s) { return s.holds; });
  return out;
}

BasisTransferReport basis_transfer_check(const LatticeData& L, const Rat& eps, const Rat& mu, const Rat& dev_coeff) {
  BasisTransferReport r;
  const Rat n(L.n);
  const bool leech = L.n == 24;
  const Rat M = leech ? Rat(4) : Rat(2);
  const Rat next_shell = leech ? Rat(6) : Rat(4);
  // |u|_inf of a minimal vector in scaled units
  const Rat vec_inf = leech ? Rat(4) : Rat(2);
  r.coef_bound = coefficient_bound_entrywise(L, vec_inf);
  const Rat dev = dev_coeff * eps;
  r.norm_error = r.coef_bound * r.coef_bound * n * n * dev;
  r.norm_gap = next_shell * (1 - mu) * (1 - mu) - M;
  r.norm_ok = r.norm_error < r.norm_gap;
  r.inner_error = n * r.coef_bound * dev;
  // the nearest competing value of <u, w> is about M/2
  const Rat half_dev = leech ? Rat(9 * eps) : Rat(frac(9, 2) * eps);
  r.inner_gap = M - (M / 2 + half_dev);
  r.inner_ok = r.inner_error < r.inner_gap;
  if (leech) {
    r.budget_claim = pow10(-17);
    r.claim_ok = r.norm_error < r.budget_claim;
  } else {
    r.budget_claim = 0;
    r.claim_ok = true;
  }
  return r;
}

BasisTransferReport basis_transfer_check(const LatticeData& L, const Rat& eps) {
  const bool leech = L.n == 24;
  ShellConstants c = leech ? leech_shell_constants() : e8_shell_constants();
  return basis_transfer_check(L, eps, c.mu, leech ? Rat(75) : Rat(7));
}

}  // namespace leechcert
