#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "leechcert/chains.hpp"
#include "leechcert/errors.hpp"
#include "leechcert/lattice.hpp"
#include "leechcert/local_opt.hpp"
#include "leechcert/pipeline.hpp"
#include "leechcert/scheme.hpp"
#include "leechcert/simplex.hpp"
#include "leechcert/sphere_lp.hpp"

namespace py = pybind11;
using namespace leechcert;

namespace {

// Exact values cross the boundary as fractions.Fraction; inputs may be
// anything whose str() parses (int, Fraction, "6.733e-27", "1/3").
py::object to_py(const Rat& x) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_string(x));
}

Rat from_py(const py::handle& h) { return parse_rat(py::str(h).cast<std::string>()); }

py::list matrix_to_py(const RatMatrix& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list r;
    for (std::size_t j = 0; j < m.cols(); ++j) r.append(to_py(m(i, j)));
    rows.append(r);
  }
  return rows;
}

RatMatrix matrix_from_py(const py::sequence& rows) {
  const std::size_t n = rows.size();
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    py::sequence r = rows[i].cast<py::sequence>();
    if (r.size() != n) throw DomainError("matrix must be square");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = from_py(r[j]);
  }
  return m;
}

LatticeData lattice_for(const std::string& target) {
  return parse_target(target) == Target::Leech ? leech_lattice() : e8_lattice();
}

py::dict claim_to_py(const Claim& c) {
  py::dict d;
  d["id"] = c.id;
  d["what"] = c.what;
  d["relation"] = c.relation;
  d["value"] = c.value;
  d["reference"] = c.reference;
  d["passed"] = c.pass;
  return d;
}

py::dict report_to_py(const Report& r) {
  py::dict d;
  d["target"] = r.target;
  d["stages"] = r.stages;
  py::list claims;
  for (const auto& c : r.claims) claims.append(claim_to_py(c));
  d["claims"] = claims;
  d["ok"] = r.ok();
  d["certificate"] = r.certificate.serialize();
  d["text"] = r.text();
  return d;
}

}  // namespace

PYBIND11_MODULE(_leechcert, m) {
  m.doc() = "Exact-arithmetic certification of lattice packing bounds";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);
  py::register_exception<CertificationFailed>(m, "CertificationFailed", PyExc_RuntimeError);

  m.def("kissing_bound", [](unsigned n, const py::object& eps) {
    Rat e = from_py(eps);
    return to_py(lp_code_bound(kissing_poly(n, e), n, kissing_cos_phi(e)).bound.hi());
  }, py::arg("n"), py::arg("eps") = 0, "Linear programming bound for the kissing configuration in dimension 8 or 24.");

  m.def("gram", [](const std::string& target) { return matrix_to_py(lattice_for(target).gram); }, py::arg("target"));

  m.def("theta", [](const std::string& target, const py::object& bound) {
    py::list out;
    for (const auto& [norm, count] : theta_partial(lattice_for(target), from_py(bound)))
      out.append(py::make_tuple(to_py(norm), count));
    return out;
  }, py::arg("target"), py::arg("norm_bound"), "Shell sizes (norm, count) up to norm_bound.");

  m.def("minimal_vector_count", [](const std::string& target) {
    LatticeData L = lattice_for(target);
    return minimal_vectors(L, L.n == 24 ? Rat(4) : Rat(2)).count();
  }, py::arg("target"));

  m.def("perfection_rank", [](const std::string& target) {
    LatticeData L = lattice_for(target);
    return perfection_rank(minimal_vectors(L, L.n == 24 ? Rat(4) : Rat(2)), L.n);
  }, py::arg("target"));

  m.def("intersection_numbers", [](const std::string& target) {
    bool leech = parse_target(target) == Target::Leech;
    SchemeTable t = scheme_from_moments(leech ? 24 : 8, leech ? Int(196560) : Int(240), leech ? leech_labels() : e8_labels());
    py::dict d;
    for (std::size_t g = 0; g < t.k(); ++g)
      for (std::size_t a = 0; a < t.k(); ++a)
        for (std::size_t b = 0; b < t.k(); ++b)
          d[py::make_tuple(to_py(t.labels[g]), to_py(t.labels[a]), to_py(t.labels[b]))] = t.at(g, a, b).get_str();
    return d;
  }, py::arg("target"), "P_gamma(alpha, beta) keyed by (gamma, alpha, beta); counts as decimal strings.");

  m.def("moment_inverse_norm", [](const std::string& target) {
    bool leech = parse_target(target) == Target::Leech;
    return to_py(moment_matrix_inverse_norm(leech ? 24 : 8, leech ? leech_labels() : e8_labels()));
  }, py::arg("target"));

  m.def("sigma", [](const std::string& target) {
    bool leech = parse_target(target) == Target::Leech;
    ShellConstants s = leech ? leech_shell_constants() : e8_shell_constants();
    return to_py(sigma_chain(s.eps, s.mu, s.nu, s.omega, leech ? 24 : 8).sigma);
  }, py::arg("target"));

  m.def("adjugate_abs_sum", [](const py::sequence& rows) { return to_py(adjugate_with_sum(matrix_from_py(rows)).abs_entry_sum); },
        py::arg("matrix"));

  m.def("minor_abs_sum", [](const py::sequence& rows, unsigned k, unsigned threads) {
    MinorSumOptions o;
    o.threads = threads;
    RatMatrix g = matrix_from_py(rows);
    Rat s;
    {
      py::gil_scoped_release release;
      s = minor_abs_sum(g, k, o);
    }
    return to_py(s);
  }, py::arg("matrix"), py::arg("k"), py::arg("threads") = 1);

  m.def("alpha_chain", [](const std::string& target) {
    LatticeData L = lattice_for(target);
    bool leech = L.n == 24;
    SchemeTable t = scheme_from_moments(L.n, leech ? Int(196560) : Int(240), leech ? leech_labels() : e8_labels());
    AlphaChainResult r = alpha_chain(L, t, leech ? leech_witness_vectors() : e8_witness_vectors());
    py::dict table;
    for (const auto& e : r.table) table[py::make_tuple(to_py(e.beta), e.sign)] = to_py(e.alpha);
    return py::make_tuple(to_py(r.alpha), table);
  }, py::arg("target"), "(alpha, {(beta, sign): alpha}) from the chain of bounds.");

  m.def("alpha_exact_lp", [](unsigned i, unsigned j, int t) {
    LatticeData L = e8_lattice();
    return to_py(alpha_exact_lp(L, minimal_vectors(L, 2), i, j, t));
  }, py::arg("i"), py::arg("j"), py::arg("t"), "Exact LP alpha for one E8 instance.");

  m.def("solve_lp", [](const std::vector<std::vector<py::object>>& A, const std::vector<std::string>& senses,
                       const std::vector<py::object>& b, const std::vector<py::object>& c) {
    LinearProgram lp;
    lp.num_vars = c.size();
    for (const auto& v : c) lp.cost.push_back(from_py(v));
    if (A.size() != senses.size() || A.size() != b.size()) throw DomainError("row counts differ");
    for (std::size_t i = 0; i < A.size(); ++i) {
      std::vector<Rat> row;
      for (const auto& v : A[i]) row.push_back(from_py(v));
      Sense s = senses[i] == "<=" ? Sense::LessEq : senses[i] == ">=" ? Sense::GreaterEq : Sense::Equal;
      if (senses[i] != "<=" && senses[i] != ">=" && senses[i] != "=") throw DomainError("sense must be <=, >= or =");
      lp.add_row(row, s, from_py(b[i]));
    }
    LpResult r = solve_lp(lp);
    if (r.status == LpStatus::Infeasible) throw Infeasible("infeasible");
    if (r.status == LpStatus::Unbounded) throw CertificationFailed("unbounded");
    py::list x;
    for (const auto& v : r.x) x.append(to_py(v));
    return py::make_tuple(to_py(r.value), x);
  }, py::arg("A"), py::arg("senses"), py::arg("b"), py::arg("c"), "Exact minimize c.x subject to A x (sense) b, x >= 0.");

  m.def("run_pipeline", [](const std::string& target, const std::vector<std::string>& stages, bool allow_heavy) {
    PipelineConfig cfg;
    cfg.target = parse_target(target);
    cfg.stages = stages;
    cfg.allow_heavy = allow_heavy;
    Report r;
    {
      py::gil_scoped_release release;
      r = run_pipeline(cfg);
    }
    return report_to_py(r);
  }, py::arg("target"), py::arg("stages"), py::arg("allow_heavy") = false);

  m.def("verify_certificate", [](const std::string& text) { return report_to_py(verify_certificate(Certificate::parse(text))); },
        py::arg("text"));
}
