// Acceptance run: one PASS/FAIL line per criterion, each backed by exact
// computations from the library.  Tolerances and time limits are fixed here.
//
// Two criteria are known to fail for E8 (see README, "Known deviations").
// They are printed as FAIL like any other; the exit status is 0 only when
// the set of failing criteria is exactly that known set, so a regression
// elsewhere, or one of them starting to pass, both show up.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "leechcert/certificate.hpp"
#include "leechcert/chains.hpp"
#include "leechcert/enclosures.hpp"
#include "leechcert/errors.hpp"
#include "leechcert/lattice.hpp"
#include "leechcert/local_opt.hpp"
#include "leechcert/ortho_poly.hpp"
#include "leechcert/pipeline.hpp"
#include "leechcert/radial.hpp"
#include "leechcert/roots.hpp"
#include "leechcert/scheme.hpp"
#include "leechcert/sphere_lp.hpp"

using namespace leechcert;
using Clock = std::chrono::steady_clock;

namespace {

// Shared, expensive objects are built once.
struct Shared {
  LatticeData leech = leech_lattice();
  LatticeData e8 = e8_lattice();
  std::shared_ptr<MinVectorSet> leech_mv, e8_mv;
  std::unique_ptr<SchemeTable> leech_moments, e8_moments;
  double leech_enum_seconds = 0;

  const SchemeTable& lm() {
    if (!leech_moments) leech_moments = std::make_unique<SchemeTable>(scheme_from_moments(24, 196560, leech_labels()));
    return *leech_moments;
  }
  const SchemeTable& em() {
    if (!e8_moments) e8_moments = std::make_unique<SchemeTable>(scheme_from_moments(8, 240, e8_labels()));
    return *e8_moments;
  }
};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void need(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ------------------------------------------------------------ criteria

void c1(Shared&, Outcome& o) {
  auto l = lp_code_bound(kissing_poly(24, 0), 24, frac(1, 2));
  auto e = lp_code_bound(kissing_poly(8, 0), 8, frac(1, 2));
  o.need(l.bound.lo() == 196560 && l.bound.hi() == 196560, "Leech bound exactly 196560");
  o.need(e.bound.lo() == 240 && e.bound.hi() == 240, "E8 bound exactly 240");
  o.detail << "bounds " << l.bound.hi() << ", " << e.bound.hi();
}

void c2(Shared&, Outcome& o) {
  Rat eps = parse_rat("6.733e-27");
  auto b = lp_code_bound(kissing_poly(24, eps), 24, kissing_cos_phi(eps));
  Rat excess = b.bound.hi() - 196560;
  o.need(excess < pow10(-19), "excess < 1e-19");
  o.detail << "excess " << to_sci(excess, 6);
}

void c3(Shared&, Outcome& o) {
  auto ls = leech_shell_constants();
  RadialFn g = solve_forced_roots(leech_counting_spec(), 37, 24);
  auto s6 = sqrt_enclosure(Rat(6), 200);
  RatInterval lb = counting_lower_bound(g, 2, 2 * (1 + ls.eps), s6.lo() * (1 - ls.mu));
  o.need(lb.lo() > 196559, "Leech lower end > 196559");

  auto es = e8_shell_constants();
  RadialFn ge = solve_forced_roots(e8_counting_spec(), 9, 8);
  auto s2 = sqrt_enclosure(Rat(2), 200);
  RatInterval eb = counting_lower_bound(ge, s2.lo(), s2.hi() * (1 + es.eps), 2 * (1 - es.mu));
  o.need(eb.lo() > 239, "E8 lower end > 239");
  o.detail << "Leech " << to_sci(lb.lo(), 12) << ", E8 " << to_sci(eb.lo(), 8);
}

void c4(Shared& s, Outcome& o) {
  auto t0 = Clock::now();
  s.e8_mv = std::make_shared<MinVectorSet>(minimal_vectors(s.e8, 2));
  double te = seconds_since(t0);
  o.need(s.e8_mv->count() == 240 && s.e8_mv->norm == 2, "E8: 240 of norm 2");
  o.need(te < 1.0, "E8 enumeration < 1 s");

  t0 = Clock::now();
  s.leech_mv = std::make_shared<MinVectorSet>(minimal_vectors(s.leech, 4));
  s.leech_enum_seconds = seconds_since(t0);
  o.need(s.leech_mv->count() == 196560 && s.leech_mv->norm == 4, "Leech: 196560 of norm 4");
  o.need(s.leech_enum_seconds < 300, "Leech enumeration < 5 min");
  auto shells = theta_partial(s.leech, 3);
  o.need(shells.empty(), "Leech has no vectors of norm 2 or 3");
  o.detail << "E8 " << s.e8_mv->count() << " in " << te << " s, Leech " << s.leech_mv->count() << " in "
           << s.leech_enum_seconds << " s";
}

struct TableEntry {
  Rat g, a, b;
  long count;
};

void c5(Shared& s, Outcome& o) {
  const Rat h = frac(1, 2), q = frac(1, 4);
  const std::vector<TableEntry> table{
      {0, 0, 0, 43164},  {0, 0, h, 2464},  {0, 0, q, 22528},  {0, h, h, 44},     {0, h, q, 1024},
      {0, q, q, 11264},  {h, 0, 0, 49896}, {h, 0, h, 891},    {h, 0, q, 20736},  {h, h, h, 891},
      {h, h, -h, 1},     {h, h, q, 2816},  {h, h, -q, 0},     {h, q, q, 20736},  {h, q, -q, 2816},
      {q, 0, 0, 44550},  {q, 0, h, 2025},  {q, 0, q, 22275},  {q, h, h, 275},    {q, h, -h, 0},
      {q, h, q, 2025},   {q, h, -q, 275},  {q, q, q, 15400},  {q, q, -q, 7128}};
  auto code = SphericalCode::from_min_vectors(s.leech_mv);
  auto cls = classify_pairs(code, leech_labels(), 0, 8);
  SchemeTable counted = count_intersection_numbers(code, cls);
  const SchemeTable& mom = s.lm();
  std::size_t mismatches = 0;
  for (const auto& e : table) {
    if (counted.get(e.g, e.a, e.b) != e.count) ++mismatches;
    if (mom.get(e.g, e.a, e.b) != e.count) ++mismatches;
  }
  o.need(mismatches == 0, "every listed Leech entry, both methods");
  o.need(counted.P == mom.P, "Leech count == moments on the full table");
  o.need(scheme_symmetry_violations(counted).empty(), "Leech symmetry closure");

  auto ecode = SphericalCode::from_min_vectors(s.e8_mv);
  auto ecls = classify_pairs(ecode, e8_labels(), 0);
  SchemeTable ecount = count_intersection_numbers(ecode, ecls);
  o.need(ecount.P == s.em().P, "E8 count == moments");
  o.need(scheme_symmetry_violations(ecount).empty(), "E8 symmetry closure");
  o.detail << table.size() << " listed entries checked twice, " << counted.P.size() << " + " << ecount.P.size()
           << " table cells compared";
}

void c6(Shared&, Outcome& o) {
  Rat l = moment_matrix_inverse_norm(24, leech_labels());
  Rat e = moment_matrix_inverse_norm(8, e8_labels());
  o.need(l == 7225, "Leech norm = 7225");
  o.need(e == 100, "E8 norm = 100");
  o.detail << "Leech " << l << ", E8 " << e;
}

void c7(Shared&, Outcome& o) {
  struct Case {
    unsigned n;
    Int N;
    ShellConstants sh;
    Rat norm, defect_ref, gate;
    bool strict;
  };
  const std::vector<Case> cases{
      {24, 196560, leech_shell_constants(), 7225, parse_rat("2.50193e-5"), frac(5, 100), true},
      {8, 240, e8_shell_constants(), 100, parse_rat("3.48e-4"), frac(44, 100), false}};
  for (const auto& c : cases) {
    UniPoly fe = kissing_poly(c.n, c.sh.eps);
    Rat slack = design_slack(fe, c.N);
    RatInterval defect = design_defect_constant(fe, c.n, c.N, RatInterval::point(slack));
    Rat sigma = sigma_chain(c.sh.eps, c.sh.mu, c.sh.nu, c.sh.omega, c.n).sigma;
    Rat gated = perturbation_budget(c.n, sigma, defect.hi(), c.N) * c.norm;
    std::string tag = c.n == 24 ? "Leech" : "E8";
    o.need(defect.hi() <= c.defect_ref, tag + " design defect");
    o.need(c.strict ? gated < c.gate : gated <= c.gate, tag + " gate");
    o.need(gated < 1, tag + " gate < 1");
    o.detail << tag << " defect " << to_sci(defect.hi(), 6) << " gate " << to_sci(gated, 6) << "; ";
  }
}

void c8(Shared& s, Outcome& o) {
  o.need(eutaxy_check(*s.leech_mv, frac(1, 32760)), "Leech eutaxy");
  o.need(eutaxy_check(*s.e8_mv, frac(1, 60)), "E8 eutaxy");
  auto pl = perfection_rank_detail(*s.leech_mv, 24);
  auto pe = perfection_rank_detail(*s.e8_mv, 8);
  o.need(pl.rank == 300, "Leech rank 300");
  o.need(pe.rank == 36, "E8 rank 36");
  o.detail << "ranks " << pl.rank << ", " << pe.rank;
}

void c9(Shared& s, Outcome& o) {
  auto pl = bose_mesner_projection_check(s.lm(), 24, frac(1, 32760), 4);
  auto pe = bose_mesner_projection_check(s.em(), 8, frac(1, 60), 2);
  o.need(pl.ok && pl.trace == 24, "Leech P^2 = P, trace 24");
  o.need(pe.ok && pe.trace == 8, "E8 P^2 = P, trace 8");
  o.detail << "traces " << pl.trace << ", " << pe.trace;
}

void c10(Shared& s, Outcome& o) {
  o.need(s.leech.gram_det == 1, "Leech det 1");
  Rat al = adjugate_with_sum(s.leech.gram).abs_entry_sum;
  Rat ae = adjugate_with_sum(s.e8.gram).abs_entry_sum;
  o.need(al == 2028, "Leech adjugate sum 2028");
  o.need(ae == 620, "E8 adjugate sum 620");
  auto t0 = Clock::now();
  Rat m = minor_abs_sum(s.leech.gram, 2);
  double tm = seconds_since(t0);
  o.need(m == 818153, "22x22 minor sum 818153");
  o.need(tm < 1800, "minor sum < 30 min");
  o.detail << "adjugate sums " << al << ", " << ae << "; minors " << m << " in " << tm << " s";
}

void c11(Shared& s, Outcome& o) {
  auto la = alpha_chain(s.leech, s.lm(), leech_witness_vectors());
  auto ea = alpha_chain(s.e8, s.em(), e8_witness_vectors());
  o.need(la.alpha == frac(4, 1055), "Leech alpha 4/1055");
  o.need(ea.alpha == frac(1, 20), "E8 alpha 1/20");
  const std::vector<std::tuple<const AlphaChainResult*, Rat, int, Rat>> steps{
      {&la, 4, 1, frac(1, 23)},      {&la, 2, -1, frac(2, 25)},  {&la, 2, 1, frac(2, 47)},
      {&la, 0, 1, frac(1, 60)},      {&la, 1, 1, frac(4, 1055)}, {&la, 1, -1, frac(4, 1033)},
      {&ea, 2, 1, frac(1, 7)},       {&ea, 1, -1, frac(2, 9)},   {&ea, 1, 1, frac(2, 15)},
      {&ea, 0, 1, frac(1, 20)}};
  for (const auto& [r, beta, sign, want] : steps)
    o.need(r->lookup(beta, sign) == want, "alpha(" + to_string(beta) + "," + std::to_string(sign) + ") = " + to_string(want));
  auto t0 = Clock::now();
  auto sw = alpha_exact_lp_all(s.e8, *s.e8_mv);
  double tl = seconds_since(t0);
  o.need(sw.alpha == frac(1, 7), "E8 LP optimum 1/7");
  o.need(tl < 600, "E8 LP < 10 min");
  o.detail << "alpha " << la.alpha << ", " << ea.alpha << "; LP " << sw.alpha << " over " << sw.instances
           << " instances in " << tl << " s";
}

void c12(Shared& s, Outcome& o) {
  struct Case {
    const LatticeData* L;
    const SchemeTable* t;
    WitnessVectors w;
    ShellConstants sh;
    LocalOptConstants k;
    Rat rho_c;
    std::string tag;
  };
  std::vector<Case> cases{
      {&s.leech, &s.lm(), leech_witness_vectors(), leech_shell_constants(), leech_local_constants(), pow10(-20), "Leech"},
      {&s.e8, &s.em(), e8_witness_vectors(), e8_shell_constants(), e8_local_constants(), frac(1, 1000), "E8"}};
  for (auto& c : cases) {
    const unsigned n = c.L->n;
    auto dr = drho_lower_bound(*c.L, c.rho_c);
    Rat alpha = alpha_chain(*c.L, *c.t, c.w).alpha;
    bool closed = true;
    try {
      closed = local_optimality_certificate(n, alpha, c.k.M, dr.c, c.k.rho_max).ok;
    } catch (const CertificationFailed&) {
      closed = false;
    }
    o.need(closed, c.tag + " closure on (0, " + to_sci(c.k.rho_max, 2) + "]");
    Rat adj = adjugate_with_sum(c.L->gram).abs_entry_sum;
    auto fi = final_inequality(c.sh.eps, adj, c.k.M, n, c.k.dev_coeff * c.sh.eps, c.k.rho_max);
    o.need(fi.bound < c.k.final_claim && fi.ok, c.tag + " final bound");
    o.detail << c.tag << " c " << to_sci(dr.c, 6) << " final " << to_sci(fi.bound, 6) << "; ";
  }
  o.need(leech_local_constants().rho_max == pow10(-20) && leech_local_constants().final_claim == parse_rat("1.8e-22"),
         "Leech constants");
  o.need(e8_local_constants().rho_max == parse_rat("2.5e-5") && e8_local_constants().final_claim == parse_rat("1.6e-10"),
         "E8 constants");
}

void c13(Shared& s, Outcome& o) {
  auto ls = leech_shell_constants(), es = e8_shell_constants();
  Rat sl = sigma_chain(ls.eps, ls.mu, ls.nu, ls.omega, 24).sigma;
  Rat se = sigma_chain(es.eps, es.mu, es.nu, es.omega, 8).sigma;
  o.need(sl <= parse_rat("6.43801e-12"), "Leech sigma");
  o.need(se <= parse_rat("8.89e-6"), "E8 sigma");

  auto lc = inner_product_chain(ls.eps, s.lm(), 24);
  o.need(lc.ok, "Leech chain steps");
  o.need(lc.max_deviation <= 75 * ls.eps, "Leech deviations <= 75 eps");
  auto ec = inner_product_chain(es.eps, s.em(), 8);
  for (const auto& st : ec.steps)
    if (!st.holds) o.need(false, "E8 step '" + st.name + "'");
  o.need(ec.max_deviation <= e8_local_constants().dev_coeff * es.eps, "E8 deviations <= 7 eps");

  auto bt = basis_transfer_check(s.leech, ls.eps);
  o.need(bt.norm_error == 1051315200 * ls.eps, "basis budget coefficient 1051315200");
  o.need(bt.norm_error < pow10(-17), "basis budget < 1e-17");
  o.detail << "sigma " << to_sci(sl, 6) << ", " << to_sci(se, 6) << "; Leech max dev " << to_sci(lc.max_deviation / ls.eps, 4)
           << " eps";
}

void c14(Shared&, Outcome& o) {
  for (unsigned n : {8u, 24u}) {
    auto a = newton_construct(default_magic_spec(n, 5, 6), n);
    auto b = newton_construct(default_magic_spec(n, 6, 7), n);
    Rat dmin = sqrt_enclosure(reference_min_norm(n), 64).lo();
    Rat ra = a.certificate.r.hi() / dmin;
    std::string tag = n == 24 ? "n=24" : "n=8";
    o.need(a.certificate.valid(), tag + " certified");
    // Independent re-check from the stored coefficients.
    o.need(certify_packing_bound_z(a.fn, a.certificate.z_threshold).valid(), tag + " re-certified");
    o.need(ra < frac(101, 100), tag + " r/d < 1.01");
    o.need(b.certificate.valid() && b.certificate.r.hi() <= a.certificate.r.hi(), tag + " more roots do not worsen r");
    o.detail << tag << " r/d " << to_sci(ra, 8) << "; ";
  }
  o.detail << "full-degree coefficient files not supplied, heavy part not run";
}

// Each tamper case must be rejected.
void c15(Shared& s, Outcome& o) {
  std::vector<std::pair<std::string, std::function<bool()>>> cases;
  auto throws = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const Error&) {
      return true;
    }
    return false;
  };

  cases.push_back({"sphere-lp: negative expansion coefficient", [&] {
                     UniPoly bad = kissing_poly(8, 0) - gegenbauer(2, 3) * frac(1, 1000000);
                     return throws([&] { lp_code_bound(bad, 8, frac(1, 2)); });
                   }});
  cases.push_back({"sphere-lp: cos phi moved", [&] { return throws([&] { lp_code_bound(kissing_poly(8, 0), 8, frac(51, 100)); }); }});
  cases.push_back({"exact-arith: coefficient flip breaks a sign certificate", [&] {
                     UniPoly p = UniPoly::from_roots({1, 1}) + UniPoly{frac(1, 100)};  // > 0 everywhere
                     UniPoly bad = p;
                     bad = bad - UniPoly{frac(2, 100)};
                     return certify_sign_on_interval(p, 0, 2, 1).ok && !certify_sign_on_interval(bad, 0, 2, 1).ok;
                   }});
  cases.push_back({"radial: magic-function coefficient", [&] {
                     auto r = newton_construct(default_magic_spec(8, 5, 6), 8);
                     RadialFn bad = r.fn;
                     bad.coeffs[3] += bad.coeffs[3] / 1000 + 1;
                     return throws([&] { certify_packing_bound_z(bad, r.certificate.z_threshold); });
                   }});
  cases.push_back({"lattice: witness coordinate", [&] {
                     auto w = leech_witness_vectors();
                     auto v = w.frame[0];
                     v[0] += 1;
                     return throws([&] { lattice_coordinates(s.leech, v); });
                   }});
  cases.push_back({"lattice: eutaxy constant", [&] { return !eutaxy_check(*s.e8_mv, frac(1, 61)); }});
  cases.push_back({"assoc-scheme: intersection number", [&] {
                     SchemeTable bad = s.em();
                     bad.at(2, 3, 3) += 1;
                     return !scheme_symmetry_violations(bad).empty() &&
                            !bose_mesner_projection_check(bad, 8, frac(1, 60), 2).ok;
                   }});
  cases.push_back({"assoc-scheme: label set", [&] {
                     auto code = SphericalCode::from_min_vectors(s.e8_mv);
                     return throws([&] { classify_pairs(code, {-1, frac(-1, 2), frac(1, 2), 1}, 0); });
                   }});
  cases.push_back({"chains: missing P_0(1/2,1/2)", [&] {
                     SchemeTable bad = s.em();
                     int z = bad.index_of(0), h = bad.index_of(frac(1, 2));
                     bad.at(z, h, h) = 0;
                     return throws([&] { inner_product_chain(e8_shell_constants().eps, bad, 8); });
                   }});
  cases.push_back({"chains: basis budget with enlarged eps", [&] {
                     return !basis_transfer_check(s.leech, leech_shell_constants().eps * 100).ok();
                   }});
  cases.push_back({"local-opt: frame vector", [&] {
                     auto w = e8_witness_vectors();
                     w.frame[0] = w.frame[1];
                     return !frame_identity(s.e8, w.frame, 2);
                   }});
  cases.push_back({"local-opt: closure with alpha = 0", [&] {
                     return throws([&] { local_optimality_certificate(8, 0, 2, Rat(7973), parse_rat("2.5e-5")); });
                   }});
  cases.push_back({"local-opt: closure with c too large", [&] {
                     return throws([&] { local_optimality_certificate(24, frac(4, 1055), 4, pow10(40), pow10(-20)); });
                   }});
  cases.push_back({"cli: certificate digit", [&] {
                     PipelineConfig cfg;
                     cfg.target = Target::E8;
                     cfg.stages = {"kissing"};
                     std::string text = run_pipeline(cfg).certificate.serialize();
                     auto p = text.find("kissing.bound 240");
                     text.replace(p, 17, "kissing.bound 241");
                     return throws([&] { Certificate::parse(text); });
                   }});
  cases.push_back({"cli: re-signed certificate value", [&] {
                     PipelineConfig cfg;
                     cfg.target = Target::E8;
                     cfg.stages = {"kissing"};
                     Certificate c = run_pipeline(cfg).certificate;
                     c.set("kissing.perturbed", 240);
                     return !verify_certificate(Certificate::parse(c.serialize())).ok();
                   }});

  std::size_t caught = 0;
  for (const auto& [name, fn] : cases) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      o.detail << "[" << name << " raised " << e.what() << "] ";
    }
    caught += ok;
    o.need(ok, name);
  }
  o.need(cases.size() >= 10, "at least 10 tamper cases");
  o.detail << caught << "/" << cases.size() << " corruptions rejected";
}

}  // namespace

int main() {
  Shared shared;
  const std::vector<std::pair<int, std::function<void(Shared&, Outcome&)>>> criteria{
      {1, c1}, {2, c2}, {3, c3}, {4, c4}, {5, c5}, {6, c6}, {7, c7}, {8, c8},
      {9, c9}, {10, c10}, {11, c11}, {12, c12}, {13, c13}, {14, c14}, {15, c15}};
  // Stated time limits per criterion, seconds.
  const double limit[] = {0, 5, 30, 600, 300, 600, 60, 300, 300, 300, 1800, 600, 600, 600, 1800, 600};
  // E8 half of 6 (exact norm is 25) and one E8 inner-product step of 13.
  const std::set<int> known_deviation{6, 13};

  std::set<int> failed;
  auto all0 = Clock::now();
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      fn(shared, o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[raised: " << e.what() << "]";
    }
    double dt = seconds_since(t0);
    if (dt > limit[id]) o.need(false, "time limit " + std::to_string(static_cast<int>(limit[id])) + " s");
    if (!o.pass) failed.insert(id);
    std::printf("%s criterion %d (%.1f s): %s%s\n", o.pass ? "PASS" : "FAIL", id, dt, o.detail.str().c_str(),
                !o.pass && known_deviation.count(id) ? " (known deviation)" : "");
    std::fflush(stdout);
  }
  std::printf("%zu/15 criteria pass, total %.0f s\n", 15 - failed.size(), seconds_since(all0));
  if (failed != known_deviation) {
    std::printf("failing set differs from the known deviations\n");
    return 1;
  }
  return 0;
}
