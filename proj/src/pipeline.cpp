#include "leechcert/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "leechcert/chains.hpp"
#include "leechcert/enclosures.hpp"
#include "leechcert/errors.hpp"
#include "leechcert/io.hpp"
#include "leechcert/lattice.hpp"
#include "leechcert/local_opt.hpp"
#include "leechcert/radial.hpp"
#include "leechcert/scheme.hpp"
#include "leechcert/sphere_lp.hpp"

namespace leechcert {

Target parse_target(const std::string& s) {
  if (s == "leech") return Target::Leech;
  if (s == "e8") return Target::E8;
  throw InputError("unknown target '" + s + "' (expected leech or e8)");
}

std::string target_name(Target t) { return t == Target::Leech ? "leech" : "e8"; }

const std::vector<std::string>& stage_order() {
  static const std::vector<std::string> order{"kissing", "counting", "scheme", "sigma", "basis", "localopt", "magicfn"};
  return order;
}

std::vector<std::string> resolve_stages(const std::vector<std::string>& requested) {
  if (requested.empty()) throw InputError("no stages requested");
  const auto& order = stage_order();
  std::set<std::string> want;
  for (const auto& s : requested) {
    if (s == "full") {
      want.insert(order.begin(), order.end());
    } else if (std::find(order.begin(), order.end(), s) != order.end()) {
      want.insert(s);
    } else {
      throw InputError("unknown stage '" + s + "'");
    }
  }
  // The alpha chain is only as good as the scheme it reads.
  if (want.count("localopt")) want.insert("scheme");
  std::vector<std::string> out;
  for (const auto& s : order)
    if (want.count(s)) out.push_back(s);
  return out;
}

bool Report::ok() const {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

namespace {

std::string relation_text(const std::string& r) {
  if (r == "<=") return "≤";
  if (r == ">=") return "≥";
  return r;
}

}  // namespace

std::string Report::text() const {
  std::ostringstream os;
  os << "target " << target << "\nstages";
  for (const auto& s : stages) os << " " << s;
  os << "\n";
  std::size_t passed = 0;
  for (const auto& c : claims) {
    os << (c.pass ? "PASS " : "FAIL ") << c.id << ": ";
    if (c.relation == "holds")
      os << c.what << " (" << c.value << ")";
    else if (c.reference.empty())
      os << c.what << " certified " << relation_text(c.relation) << " " << c.value;
    else
      os << c.what << " = " << c.value << ", certified " << relation_text(c.relation) << " " << c.reference;
    os << "\n";
    passed += c.pass;
  }
  os << passed << "/" << claims.size() << " claims certified\n";
  return os.str();
}

std::string Report::json_lines() const {
  std::ostringstream os;
  for (const auto& c : claims) {
    nlohmann::json j;
    j["id"] = c.id;
    j["what"] = c.what;
    j["relation"] = c.relation;
    j["value"] = c.value;
    j["reference"] = c.reference;
    j["verdict"] = c.pass ? "pass" : "fail";
    j["target"] = target;
    os << j.dump() << "\n";
  }
  return os.str();
}

namespace {

// Claims are built through this helper so that every comparison is made on
// exact rationals and only the display is rounded.
class ClaimSink {
 public:
  ClaimSink(Report& r, std::string prefix) : r_(r), prefix_(std::move(prefix)) {}

  void cmp(const std::string& id, const std::string& what, const Rat& value, const std::string& rel, const Rat& ref,
           const std::string& ref_text = "", bool exact_display = false) {
    bool pass = false;
    if (rel == "=") pass = value == ref;
    else if (rel == "<=") pass = value <= ref;
    else if (rel == "<") pass = value < ref;
    else if (rel == ">=") pass = value >= ref;
    else if (rel == ">") pass = value > ref;
    std::string shown = exact_display || value.get_den() == 1 ? to_string(value) : to_sci(value, 10);
    std::string rshown = !ref_text.empty() ? ref_text
                         : exact_display || ref.get_den() == 1 ? to_string(ref)
                                                               : to_sci(ref, 10);
    r_.claims.push_back({prefix_ + id, what, rel, shown, rshown, pass});
  }
  void eq(const std::string& id, const std::string& what, const Rat& value, const Rat& ref) {
    cmp(id, what, value, "=", ref, "", true);
  }
  void holds(const std::string& id, const std::string& what, bool ok, const std::string& detail) {
    r_.claims.push_back({prefix_ + id, what, "holds", detail, "", ok});
  }
  void match(const std::string& id, const std::string& what, const Rat& recorded, const Rat& recomputed) {
    const bool same = recorded == recomputed;
    std::string detail = "recomputed " + to_sci(recomputed, 10);
    if (!same) detail = "recorded " + to_sci(recorded, 10) + ", " + detail;
    holds(id, what, same, detail);
  }
  void value(const std::string& id, const std::string& what, const std::string& rel, const Rat& v) {
    r_.claims.push_back({prefix_ + id, what, rel, to_sci(v, 10), "", true});
  }

 private:
  Report& r_;
  std::string prefix_;
};

struct Setup {
  Target target;
  unsigned n;
  Int N;            // kissing configuration size
  Rat M;            // minimal norm
  ShellConstants shell;
  LocalOptConstants local;
  std::vector<Rat> labels;
  Rat eutaxy_C;
  Rat rho_c;        // range for the D_rho quadratic coefficient
  Rat c_reference;  // reference bound on that coefficient
  Rat sigma_reference, defect_reference, budget_gate;
  Rat inverse_norm_reference;
};

Setup setup_for(Target t) {
  Setup s;
  s.target = t;
  if (t == Target::Leech) {
    s.n = 24;
    s.N = 196560;
    s.M = 4;
    s.shell = leech_shell_constants();
    s.local = leech_local_constants();
    s.labels = leech_labels();
    s.eutaxy_C = frac(1, 32760);
    s.rho_c = pow10(-20);
    s.c_reference = Rat(2 * 818153 + 200000000);
    s.sigma_reference = parse_rat("6.43801e-12");
    s.defect_reference = parse_rat("2.50193e-5");
    s.budget_gate = frac(5, 100);
    s.inverse_norm_reference = 7225;
  } else {
    s.n = 8;
    s.N = 240;
    s.M = 2;
    s.shell = e8_shell_constants();
    s.local = e8_local_constants();
    s.labels = e8_labels();
    s.eutaxy_C = frac(1, 60);
    s.rho_c = frac(1, 1000);
    s.c_reference = 7973;
    s.sigma_reference = parse_rat("8.89e-6");
    s.defect_reference = parse_rat("3.48e-4");
    s.budget_gate = frac(44, 100);
    s.inverse_norm_reference = 100;
  }
  return s;
}

// Rounds x down (dir < 0) or up to a multiple of 10^-digits, keeping
// certificates short without weakening the recorded inequality.
Rat round_decimal(const Rat& x, int digits, int dir) {
  Rat scale = pow10(digits);
  Rat y = x * scale;
  Int k = dir < 0 ? floor_rat(y) : ceil_rat(y);
  return Rat(k) / scale;
}

struct Context {
  const PipelineConfig* cfg = nullptr;
  Setup S;
  LatticeData L;
  std::shared_ptr<MinVectorSet> mv;
  std::optional<SchemeTable> moments;
  std::optional<SigmaChainResult> sigma;

  const MinVectorSet& min_vectors() {
    if (!mv) {
      EnumerationOptions eo;
      eo.node_cap = cfg->node_cap;
      mv = std::make_shared<MinVectorSet>(minimal_vectors(L, S.M, eo));
    }
    return *mv;
  }
  const SchemeTable& moment_table() {
    if (!moments) moments = scheme_from_moments(S.n, S.N, S.labels);
    return *moments;
  }
  const SigmaChainResult& sigma_chain_result() {
    if (!sigma) sigma = sigma_chain(S.shell.eps, S.shell.mu, S.shell.nu, S.shell.omega, S.n);
    return *sigma;
  }
};

std::string entry_key(const Rat& g, const Rat& a, const Rat& b) {
  return "scheme.P[" + to_string(g) + "," + to_string(a) + "," + to_string(b) + "]";
}

// Reference intersection numbers (the rest follow by symmetry).
struct TableEntry {
  Rat g, a, b;
  long count;
};
std::vector<TableEntry> leech_table() {
  const Rat h = frac(1, 2), q = frac(1, 4);
  return {{0, 0, 0, 43164},       {0, 0, h, 2464},       {0, 0, q, 22528},      {0, h, h, 44},
          {0, h, q, 1024},        {0, q, q, 11264},      {h, 0, 0, 49896},      {h, 0, h, 891},
          {h, 0, q, 20736},       {h, h, h, 891},        {h, h, -h, 1},         {h, h, q, 2816},
          {h, h, -q, 0},          {h, q, q, 20736},      {h, q, -q, 2816},      {q, 0, 0, 44550},
          {q, 0, h, 2025},        {q, 0, q, 22275},      {q, h, h, 275},        {q, h, -h, 0},
          {q, h, q, 2025},        {q, h, -q, 275},       {q, q, q, 15400},      {q, q, -q, 7128}};
}

// ---------------------------------------------------------------- stages

void kissing_checks(ClaimSink& out, const Setup& S, const Rat& eps, const std::optional<Rat>& rec_bound,
                    const std::optional<Rat>& rec_perturbed) {
  auto exact = lp_code_bound(kissing_poly(S.n, 0), S.n, frac(1, 2));
  out.eq("kissing.bound", "linear programming bound on the kissing configuration", exact.bound.hi(), Rat(S.N));
  auto pert = lp_code_bound(kissing_poly(S.n, eps), S.n, kissing_cos_phi(eps));
  Rat slack_ref = S.target == Target::Leech ? pow10(-19) : Rat(1);
  out.cmp("kissing.perturbed_excess", "bound for nearly minimal vectors at eps = " + to_sci(eps, 4) + ", minus " +
                                         S.N.get_str(),
          pert.bound.hi() - S.N, "<", slack_ref);
  if (rec_bound) out.match("kissing.recorded_bound", "recorded bound", *rec_bound, exact.bound.hi());
  if (rec_perturbed) out.match("kissing.recorded_perturbed", "recorded perturbed bound", *rec_perturbed, pert.bound.hi());
}

void stage_kissing(Context& ctx, ClaimSink& out, Certificate& cert) {
  const Setup& S = ctx.S;
  kissing_checks(out, S, S.shell.eps, std::nullopt, std::nullopt);
  cert.set("kissing.eps", S.shell.eps);
  cert.set("kissing.bound", lp_code_bound(kissing_poly(S.n, 0), S.n, frac(1, 2)).bound.hi());
  cert.set("kissing.perturbed", lp_code_bound(kissing_poly(S.n, S.shell.eps), S.n, kissing_cos_phi(S.shell.eps)).bound.hi());
}

void stage_counting(Context& ctx, ClaimSink& out, Certificate& cert) {
  const Setup& S = ctx.S;
  RatInterval b;
  if (S.target == Target::Leech) {
    RadialFn g = solve_forced_roots(leech_counting_spec(), 37, 24);
    auto s6 = sqrt_enclosure(Rat(6), 200);
    b = counting_lower_bound(g, 2, 2 * (1 + S.shell.eps), s6.lo() * (1 - S.shell.mu));
  } else {
    RadialFn g = solve_forced_roots(e8_counting_spec(), 9, 8);
    auto s2 = sqrt_enclosure(Rat(2), 200);
    b = counting_lower_bound(g, s2.lo(), s2.hi() * (1 + S.shell.eps), 2 * (1 - S.shell.mu));
  }
  Rat lower = round_decimal(b.lo(), 30, -1);
  out.cmp("counting.lower", "Poisson-summation lower bound on the nearly minimal shell", lower, ">", Rat(S.N - 1));
  cert.set("counting.lower", lower);
}

void scheme_gates(ClaimSink& out, const Setup& S, const Rat& inverse_norm, const Rat& defect_hi, const Rat& sigma) {
  Rat budget = perturbation_budget(S.n, sigma, defect_hi, S.N);
  Rat norm = std::max<Rat>(inverse_norm, S.inverse_norm_reference);
  out.cmp("scheme.budget_gate", "perturbation budget times the moment inverse norm", budget * norm,
          S.target == Target::Leech ? "<" : "<=", S.budget_gate);
}

void stage_scheme(Context& ctx, ClaimSink& out, Certificate& cert) {
  const Setup& S = ctx.S;
  const MinVectorSet& mv = ctx.min_vectors();
  out.eq("scheme.min_vectors", "number of minimal vectors", Rat(Int(static_cast<unsigned long>(mv.count()))), Rat(S.N));
  out.eq("scheme.min_norm", "minimal norm", mv.norm, S.M);
  if (S.target == Target::Leech) {
    EnumerationOptions eo;
    eo.node_cap = ctx.cfg->node_cap;
    auto shells = theta_partial(ctx.L, 3, eo);
    out.eq("scheme.short_shells", "vectors of norm 2 or 3", Rat(static_cast<long>(shells.size())), 0);
  }

  auto code = SphericalCode::from_min_vectors(ctx.mv);
  auto cls = classify_pairs(code, S.labels, 0, S.target == Target::Leech ? 8 : 0);
  SchemeTable counted = count_intersection_numbers(code, cls);
  const SchemeTable& mom = ctx.moment_table();
  out.holds("scheme.count_vs_moments", "direct counts agree with the moment solution", counted.P == mom.P,
            std::to_string(counted.base_pairs) + " base pairs");
  if (S.target == Target::Leech) {
    for (const auto& e : leech_table()) {
      std::string tag = "P_" + to_string(e.g) + "(" + to_string(e.a) + "," + to_string(e.b) + ")";
      out.eq("scheme." + tag, "intersection number " + tag, Rat(counted.get(e.g, e.a, e.b)), Rat(e.count));
    }
  }
  auto viol = scheme_symmetry_violations(counted);
  out.holds("scheme.symmetry", "symmetry and valency identities", viol.empty(), viol.empty() ? "none violated" : viol.front());

  Rat inv = moment_matrix_inverse_norm(S.n, S.labels);
  out.cmp("scheme.inverse_norm", "infinity norm of the moment-system inverse", inv, "<=", S.inverse_norm_reference, "", true);

  UniPoly fe = kissing_poly(S.n, S.shell.eps);
  Rat slack = design_slack(fe, S.N);
  RatInterval defect = design_defect_constant(fe, S.n, S.N, RatInterval::point(slack));
  Rat defect_hi = round_decimal(defect.hi(), 12, +1);
  out.cmp("scheme.design_defect", "design defect constant", defect_hi, "<=", S.defect_reference);
  const Rat sigma = ctx.sigma_chain_result().sigma;
  scheme_gates(out, S, inv, defect_hi, sigma);

  auto pc = bose_mesner_projection_check(counted, S.n, S.eutaxy_C, S.M);
  out.holds("scheme.projection", "M C sum alpha A_alpha is an idempotent", pc.ok, pc.ok ? "exact" : pc.witness);
  out.eq("scheme.projection_trace", "trace of the projection", pc.trace, Rat(S.n));
  out.holds("scheme.eutaxy", "C sum u u^T = I with C = " + to_string(S.eutaxy_C), eutaxy_check(mv, S.eutaxy_C), "exact");

  cert.set("scheme.inverse_norm", inv);
  cert.set("scheme.defect_hi", defect_hi);
  cert.set("scheme.sigma", sigma);
  cert.set("scheme.C", S.eutaxy_C);
  for (std::size_t g = 0; g < counted.k(); ++g)
    for (std::size_t a = 0; a < counted.k(); ++a)
      for (std::size_t b = 0; b < counted.k(); ++b)
        cert.set(entry_key(counted.labels[g], counted.labels[a], counted.labels[b]), Rat(counted.at(g, a, b)));
}

void sigma_checks(ClaimSink& out, Context& ctx) {
  const Setup& S = ctx.S;
  const auto& sc = ctx.sigma_chain_result();
  out.cmp("sigma.chain", "sigma from the shell windows", sc.sigma, "<=", S.sigma_reference);
  auto fp = first_pass_sigma(S.n, S.shell.eps);
  if (S.target == Target::Leech)
    out.cmp("sigma.first_pass", "sigma from the kissing polynomial alone", fp.sigma, "<=", parse_rat("6.411e-9"));
  else
    out.value("sigma.first_pass", "sigma from the kissing polynomial alone", "<=", fp.sigma);
  auto chain = inner_product_chain(S.shell.eps, ctx.moment_table(), S.n);
  for (const auto& st : chain.steps) {
    std::ostringstream d;
    d << "derived [" << to_sci((st.derived.lo() - st.label) / S.shell.eps, 6) << ", "
      << to_sci((st.derived.hi() - st.label) / S.shell.eps, 6) << "] eps, claimed ["
      << to_sci((st.claimed.lo() - st.label) / S.shell.eps, 6) << ", "
      << to_sci((st.claimed.hi() - st.label) / S.shell.eps, 6) << "] eps";
    std::string id = st.name;
    std::replace(id.begin(), id.end(), ' ', '_');
    out.holds("sigma.inner." + id, "inner product near " + to_string(st.label), st.holds, d.str());
  }
  out.cmp("sigma.inner_max_dev", "largest inner-product deviation in units of eps", chain.max_deviation / S.shell.eps,
          "<=", S.local.dev_coeff);
}

void stage_sigma(Context& ctx, ClaimSink& out, Certificate& cert) {
  sigma_checks(out, ctx);
  const Setup& S = ctx.S;
  cert.set("sigma.eps", S.shell.eps);
  cert.set("sigma.mu", S.shell.mu);
  cert.set("sigma.nu", S.shell.nu);
  cert.set("sigma.omega", S.shell.omega);
  cert.set("sigma.value", ctx.sigma_chain_result().sigma);
}

void basis_checks(ClaimSink& out, const Setup& S, const LatticeData& L, const Rat& eps) {
  out.eq("basis.det", "Gram determinant", L.gram_det, 1);
  auto r = basis_transfer_check(L, eps);
  if (S.target == Target::Leech)
    out.eq("basis.coef_bound", "bound on basis coefficients of minimal vectors", r.coef_bound, 156);
  else
    out.value("basis.coef_bound", "bound on basis coefficients of minimal vectors", "<=", r.coef_bound);
  if (S.target == Target::Leech) {
    out.eq("basis.norm_error_coeff", "norm error in units of eps", r.norm_error / eps, 1051315200);
    out.cmp("basis.norm_error", "norm error of the transferred basis", r.norm_error, "<", pow10(-17), "1e-17");
  } else {
    out.cmp("basis.norm_error", "norm error of the transferred basis", r.norm_error, "<", r.norm_gap);
  }
  out.holds("basis.norm_gap", "norm error stays below the gap to the next shell", r.norm_ok,
            to_sci(r.norm_error, 4) + " vs " + to_sci(r.norm_gap, 4));
  out.holds("basis.inner_gap", "inner-product error keeps labels apart", r.inner_ok,
            to_sci(r.inner_error, 4) + " vs " + to_sci(r.inner_gap, 4));
}

void stage_basis(Context& ctx, ClaimSink& out, Certificate& cert) {
  basis_checks(out, ctx.S, ctx.L, ctx.S.shell.eps);
  cert.set("basis.eps", ctx.S.shell.eps);
}

struct LocalOptNumbers {
  Rat alpha, c, adj_sum, final_bound;
};

// Shared by the run and by certificate verification.
LocalOptNumbers localopt_checks(ClaimSink& out, Context& ctx, const MinorSumOptions& mo) {
  const Setup& S = ctx.S;
  const LatticeData& L = ctx.L;
  LocalOptNumbers num;
  WitnessVectors w = S.target == Target::Leech ? leech_witness_vectors() : e8_witness_vectors();
  out.holds("localopt.witnesses", "witness vectors pass their self-checks", w.ok(), w.ok() ? "ok" : w.failures.front());
  out.holds("localopt.frame", "B S B^T = M I for the orthogonal frame", frame_identity(L, w.frame, S.M), "exact");

  auto adj = adjugate_with_sum(L.gram);
  num.adj_sum = adj.abs_entry_sum;
  out.eq("localopt.adjugate_sum", "sum of absolute adjugate entries", adj.abs_entry_sum,
         S.target == Target::Leech ? Rat(2028) : Rat(620));

  DrhoBound dr = drho_lower_bound(L, S.rho_c, mo);
  if (S.target == Target::Leech) {
    out.eq("localopt.minor_sum_k2", "sum of absolute 22x22 minors", dr.terms.front().minor_sum, 818153);
    out.eq("localopt.minor_sum_k2_jacobi", "same sum via 2x2 minors of the inverse", minor_abs_sum_k2_via_inverse(L.gram),
           818153);
  } else {
    const long ref[] = {3968, 7054, 5266, 1892, 343, 30, 1};
    for (const auto& t : dr.terms)
      out.eq("localopt.minor_sum_k" + std::to_string(t.k), "sum of absolute " + std::to_string(S.n - t.k) + "x" +
                                                               std::to_string(S.n - t.k) + " minors",
             t.minor_sum, Rat(ref[t.k - 2]));
  }
  num.c = dr.c;
  out.cmp("localopt.drho_coeff", "quadratic coefficient c in D_rho >= 1 - c rho^2", dr.c, "<=", S.c_reference);

  const SchemeTable& mom = ctx.moment_table();
  AlphaChainResult ac = alpha_chain(L, mom, w);
  std::vector<std::tuple<Rat, int, Rat>> ref;
  if (S.target == Target::Leech)
    ref = {{4, 1, frac(1, 23)},  {4, -1, 1},         {2, 1, frac(2, 47)},     {2, -1, frac(2, 25)},
           {1, 1, frac(4, 1055)}, {1, -1, frac(4, 1033)}, {0, 1, frac(1, 60)}, {0, -1, frac(1, 60)}};
  else
    ref = {{2, 1, frac(1, 7)},  {2, -1, 1},          {1, 1, frac(2, 15)},
           {1, -1, frac(2, 9)}, {0, 1, frac(1, 20)}, {0, -1, frac(1, 20)}};
  for (const auto& [beta, sign, a] : ref) {
    std::string tag = "alpha(" + to_string(beta) + (sign > 0 ? ",+)" : ",-)");
    out.eq("localopt." + tag, "chained " + tag, ac.lookup(beta, sign), a);
  }
  num.alpha = ac.alpha;
  out.eq("localopt.alpha", "alpha from the chain of bounds", ac.alpha, S.target == Target::Leech ? frac(4, 1055) : frac(1, 20));

  PerturbationBound pb;
  bool closed = true;
  std::string why;
  try {
    pb = local_optimality_certificate(S.n, ac.alpha, S.M, dr.c, S.local.rho_max);
  } catch (const CertificationFailed& e) {
    closed = false;
    why = e.what();
  }
  out.holds("localopt.closure", "(1 - rho alpha/M)^n (1 - c rho^2)^-1 < 1 for 0 < rho <= " + to_sci(S.local.rho_max, 3),
            closed, closed ? "Sturm certified" : why);

  auto fi = final_inequality(S.shell.eps, adj.abs_entry_sum, S.M, S.n, S.local.dev_coeff * S.shell.eps, S.local.rho_max);
  num.final_bound = fi.bound;
  out.cmp("localopt.final_bound", "bound on the normalized perturbation entries", fi.bound, "<", S.local.final_claim);
  out.holds("localopt.final_in_range", "final bound lies inside the certified rho range", fi.ok, to_sci(fi.bound, 4));
  return num;
}

void stage_localopt(Context& ctx, ClaimSink& out, Certificate& cert) {
  const Setup& S = ctx.S;
  const MinVectorSet& mv = ctx.min_vectors();
  auto pr = perfection_rank_detail(mv, S.n);
  out.eq("localopt.perfection_rank", "rank of the minimal-vector forms", Rat(static_cast<long>(pr.rank)),
         Rat(static_cast<long>(pr.full)));
  MinorSumOptions mo;
  mo.threads = ctx.cfg->threads;
  LocalOptNumbers num = localopt_checks(out, ctx, mo);

  if (S.target == Target::E8 || ctx.cfg->allow_heavy) {
    AlphaLpOptions lo;
    lo.allow_heavy = ctx.cfg->allow_heavy;
    if (S.target == Target::E8) {
      auto sw = alpha_exact_lp_all(ctx.L, mv, lo);
      out.eq("localopt.alpha_lp", "best alpha from the exact LP over " + std::to_string(sw.instances) + " instances",
             sw.alpha, frac(1, 7));
      cert.set("localopt.alpha_lp", sw.alpha);
    } else {
      Rat a = alpha_exact_lp(ctx.L, mv, 0, 0, 1, lo);
      out.cmp("localopt.alpha_lp_00", "exact LP alpha for the (0,0,+) instance", a, ">=", frac(1, 23));
    }
  }
  cert.set("localopt.perfection_rank", Rat(static_cast<long>(pr.rank)));
  cert.set("localopt.alpha", num.alpha);
  cert.set("localopt.c", num.c);
  cert.set("localopt.rho_max", S.local.rho_max);
  cert.set("localopt.eps", S.shell.eps);
  cert.set("localopt.adj_sum", num.adj_sum);
  cert.set("localopt.dev_coeff", S.local.dev_coeff);
  cert.set("localopt.final_bound", num.final_bound);
}

void record_packing(Certificate& cert, const PackingCertificate& pc) {
  cert.set("magicfn.dim", Rat(static_cast<long>(pc.fn.dim)));
  cert.set("magicfn.z_threshold", pc.z_threshold);
  cert.set("magicfn.ratio_hi", pc.ratio.hi());
  cert.set("magicfn.scale", pc.fn.scale);
  for (std::size_t i = 0; i < pc.fn.coeffs.size(); ++i) cert.set("magicfn.c" + std::to_string(i), pc.fn.coeffs[i]);
}

Rat distance_ratio(const PackingCertificate& pc) {
  return pc.r.hi() / sqrt_enclosure(reference_min_norm(pc.fn.dim), 64).lo();
}

void stage_magicfn(Context& ctx, ClaimSink& out, Certificate& cert) {
  const Setup& S = ctx.S;
  const PipelineConfig& cfg = *ctx.cfg;
  if (!cfg.fcoeffs.empty()) {
    if (cfg.roots.empty()) throw InputError("--fcoeffs needs --roots");
    RadialFn f = parse_coefficients(read_file(cfg.fcoeffs));
    RootHints h = parse_roots(read_file(cfg.roots));
    if (f.dim != S.n) throw InputError("coefficient file dimension does not match the target");
    if (f.coeffs.size() > 80 && !cfg.allow_heavy) throw ResourceLimit("high-degree coefficient files need --allow-heavy");
    auto pc = certify_packing_bound_hinted(f, h);
    out.holds("magicfn.file", "supplied function satisfies the packing-bound conditions", pc.valid(), pc.method);
    Rat target = S.target == Target::Leech ? Rat(1 + frac(165, 100) * pow10(-30)) : Rat(1 + pow10(-14));
    out.cmp("magicfn.file_ratio", "density ratio of the supplied function", pc.ratio.hi(), "<=", target,
            S.target == Target::Leech ? "1 + 1.65e-30" : "1 + 1e-14");
    record_packing(cert, pc);
    return;
  }
  auto first = newton_construct(default_magic_spec(S.n, 5, 6), S.n);
  auto second = newton_construct(default_magic_spec(S.n, 6, 7), S.n);
  out.holds("magicfn.certified", "constructed function (5 + 6 forced double roots) is certified", first.certificate.valid(),
            first.certificate.method);
  Rat r1 = distance_ratio(first.certificate), r2 = distance_ratio(second.certificate);
  out.cmp("magicfn.radius_ratio", "r over the minimal distance", r1, "<", frac(101, 100));
  out.holds("magicfn.more_roots", "one more root on each side does not worsen r",
            second.certificate.valid() && second.certificate.r.hi() <= first.certificate.r.hi(), to_sci(r2, 8));
  record_packing(cert, first.certificate);
}

using StageFn = std::function<void(Context&, ClaimSink&, Certificate&)>;

const std::vector<std::pair<std::string, StageFn>>& stage_table() {
  static const std::vector<std::pair<std::string, StageFn>> t{
      {"kissing", stage_kissing}, {"counting", stage_counting}, {"scheme", stage_scheme},   {"sigma", stage_sigma},
      {"basis", stage_basis},     {"localopt", stage_localopt}, {"magicfn", stage_magicfn}};
  return t;
}

Context make_context(const PipelineConfig& cfg) {
  Context ctx;
  ctx.cfg = &cfg;
  ctx.S = setup_for(cfg.target);
  ctx.L = cfg.target == Target::Leech ? leech_lattice() : e8_lattice();
  return ctx;
}

}  // namespace

Report run_pipeline(const PipelineConfig& cfg) {
  Report rep;
  rep.target = target_name(cfg.target);
  rep.stages = resolve_stages(cfg.stages);
  Context ctx = make_context(cfg);
  ClaimSink out(rep, rep.target + ".");
  rep.certificate.target = rep.target;
  std::string joined;
  for (const auto& s : rep.stages) joined += (joined.empty() ? "" : ",") + s;
  rep.certificate.set("stages", joined);
  for (const auto& [name, fn] : stage_table()) {
    if (std::find(rep.stages.begin(), rep.stages.end(), name) == rep.stages.end()) continue;
    try {
      fn(ctx, out, rep.certificate);
    } catch (const CertificationFailed& e) {
      out.holds(name + ".error", "stage aborted", false, e.what());
    }
  }
  return rep;
}

// ---------------------------------------------------------------- verification

namespace {

void verify_scheme(Context& ctx, ClaimSink& out, const Certificate& cert) {
  const Setup& S = ctx.S;
  SchemeTable t = ctx.moment_table();
  for (auto& v : t.P) v = -1;
  for (std::size_t g = 0; g < t.k(); ++g)
    for (std::size_t a = 0; a < t.k(); ++a)
      for (std::size_t b = 0; b < t.k(); ++b) {
        Rat v = cert.rat(entry_key(t.labels[g], t.labels[a], t.labels[b]));
        if (v.get_den() != 1) throw FormatError("intersection number is not an integer");
        t.at(g, a, b) = v.get_num();
      }
  out.holds("scheme.recorded_table", "recorded table equals the moment solution", t.P == ctx.moment_table().P, "exact");
  auto viol = scheme_symmetry_violations(t);
  out.holds("scheme.symmetry", "symmetry and valency identities", viol.empty(), viol.empty() ? "none violated" : viol.front());
  auto pc = bose_mesner_projection_check(t, S.n, cert.rat("scheme.C"), S.M);
  out.holds("scheme.projection", "M C sum alpha A_alpha is an idempotent", pc.ok, pc.ok ? "exact" : pc.witness);
  out.eq("scheme.projection_trace", "trace of the projection", pc.trace, Rat(S.n));
  Rat inv = moment_matrix_inverse_norm(S.n, S.labels);
  out.match("scheme.inverse_norm", "recorded inverse norm", cert.rat("scheme.inverse_norm"), inv);
  Rat defect = cert.rat("scheme.defect_hi");
  out.cmp("scheme.design_defect", "design defect constant", defect, "<=", S.defect_reference);
  out.match("scheme.sigma", "recorded sigma", cert.rat("scheme.sigma"), ctx.sigma_chain_result().sigma);
  scheme_gates(out, S, inv, defect, cert.rat("scheme.sigma"));
}

void verify_localopt(Context& ctx, ClaimSink& out, const Certificate& cert) {
  const Setup& S = ctx.S;
  out.match("localopt.perfection_rank", "recorded perfection rank", cert.rat("localopt.perfection_rank"),
         Rat(static_cast<long>(S.n * (S.n + 1) / 2)));
  out.match("localopt.eps", "recorded eps", cert.rat("localopt.eps"), S.shell.eps);
  out.match("localopt.rho_max", "recorded rho range", cert.rat("localopt.rho_max"), S.local.rho_max);
  out.match("localopt.dev_coeff", "recorded deviation coefficient", cert.rat("localopt.dev_coeff"), S.local.dev_coeff);
  MinorSumOptions mo;
  LocalOptNumbers num = localopt_checks(out, ctx, mo);
  out.match("localopt.recorded_alpha", "recorded alpha", cert.rat("localopt.alpha"), num.alpha);
  out.match("localopt.recorded_c", "recorded quadratic coefficient", cert.rat("localopt.c"), num.c);
  out.match("localopt.recorded_adj_sum", "recorded adjugate sum", cert.rat("localopt.adj_sum"), num.adj_sum);
  out.match("localopt.recorded_final", "recorded final bound", cert.rat("localopt.final_bound"), num.final_bound);
  if (auto lp = cert.get("localopt.alpha_lp"))
    out.cmp("localopt.alpha_lp", "recorded LP alpha is not above the chained bound", parse_rat(*lp), ">=", num.alpha);
}

void verify_magicfn(ClaimSink& out, const Certificate& cert) {
  RadialFn f;
  f.dim = static_cast<unsigned>(cert.rat("magicfn.dim").get_num().get_ui());
  f.scale = cert.rat("magicfn.scale");
  for (std::size_t i = 0;; ++i) {
    auto v = cert.get("magicfn.c" + std::to_string(i));
    if (!v) break;
    f.coeffs.push_back(parse_rat(*v));
  }
  if (f.coeffs.empty()) throw FormatError("certificate has no coefficients");
  if (f.coeffs.size() > 80) throw ResourceLimit("re-certifying a high-degree function is a heavy stage");
  PackingCertificate pc;
  bool ok = true;
  std::string why = "Sturm";
  try {
    pc = certify_packing_bound_z(f, cert.rat("magicfn.z_threshold"));
  } catch (const CertificationFailed& e) {
    ok = false;
    why = e.what();
  }
  out.holds("magicfn.recertified", "recorded function satisfies the packing-bound conditions", ok && pc.valid(), why);
  if (ok) out.match("magicfn.ratio", "recorded density ratio", cert.rat("magicfn.ratio_hi"), pc.ratio.hi());
}

}  // namespace

Report verify_certificate(const Certificate& cert) {
  PipelineConfig cfg;
  cfg.target = parse_target(cert.target);
  std::vector<std::string> stages;
  {
    std::string s = cert.str("stages");
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) stages.push_back(item);
  }
  cfg.stages = stages;
  Report rep;
  rep.target = cert.target;
  rep.stages = resolve_stages(stages);
  rep.certificate = cert;
  Context ctx = make_context(cfg);
  ClaimSink out(rep, rep.target + ".");
  const Setup& S = ctx.S;
  for (const auto& st : rep.stages) {
    try {
      if (st == "kissing") {
        out.match("kissing.eps", "recorded eps", cert.rat("kissing.eps"), S.shell.eps);
        kissing_checks(out, S, cert.rat("kissing.eps"), cert.rat("kissing.bound"), cert.rat("kissing.perturbed"));
      } else if (st == "counting") {
        out.cmp("counting.lower", "recorded shell lower bound (not recomputed)", cert.rat("counting.lower"), ">",
                Rat(S.N - 1));
      } else if (st == "scheme") {
        verify_scheme(ctx, out, cert);
      } else if (st == "sigma") {
        out.match("sigma.eps", "recorded eps", cert.rat("sigma.eps"), S.shell.eps);
        out.match("sigma.mu", "recorded mu", cert.rat("sigma.mu"), S.shell.mu);
        out.match("sigma.nu", "recorded nu", cert.rat("sigma.nu"), S.shell.nu);
        out.match("sigma.omega", "recorded omega", cert.rat("sigma.omega"), S.shell.omega);
        out.match("sigma.value", "recorded sigma", cert.rat("sigma.value"), ctx.sigma_chain_result().sigma);
        sigma_checks(out, ctx);
      } else if (st == "basis") {
        out.match("basis.eps", "recorded eps", cert.rat("basis.eps"), S.shell.eps);
        basis_checks(out, S, ctx.L, cert.rat("basis.eps"));
      } else if (st == "localopt") {
        verify_localopt(ctx, out, cert);
      } else if (st == "magicfn") {
        verify_magicfn(out, cert);
      }
    } catch (const CertificationFailed& e) {
      out.holds(st + ".error", "stage aborted", false, e.what());
    }
  }
  return rep;
}

}  // namespace leechcert
