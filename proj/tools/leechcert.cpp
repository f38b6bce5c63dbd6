// Command-line front end: runs certification stages, verifies saved
// certificates and exports the built-in data files.
//
// Exit codes: 0 every claim certified, 1 a claim failed, 2 bad input,
// 3 resource limit.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "leechcert/errors.hpp"
#include "leechcert/io.hpp"
#include "leechcert/lattice.hpp"
#include "leechcert/pipeline.hpp"
#include "leechcert/scheme.hpp"

using namespace leechcert;

namespace {

std::vector<std::string> split_commas(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& s : in) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(item);
  }
  return out;
}

int emit(const Report& rep, const std::string& format, const std::string& report_path) {
  std::string body = format == "json-lines" ? rep.json_lines() : rep.text();
  std::cout << body;
  if (!report_path.empty()) write_file(report_path, body);
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certification of lattice packing bounds"};
  app.require_subcommand(0, 1);

  std::string target, format = "text", report_path, cert_path;
  std::vector<std::string> stages{"full"};
  PipelineConfig cfg;
  app.add_option("--target", target, "leech or e8");
  app.add_option("--stages", stages, "comma-separated: kissing,counting,scheme,sigma,basis,localopt,magicfn,full")
      ->delimiter(',');
  app.add_option("--threads", cfg.threads, "worker threads for minor sums")->check(CLI::Range(1u, 256u));
  app.add_option("--node-cap", cfg.node_cap, "enumeration node limit");
  app.add_option("--fcoeffs", cfg.fcoeffs, "coefficient file of a radial function to certify");
  app.add_option("--roots", cfg.roots, "root hints for --fcoeffs");
  app.add_option("--report", report_path, "also write the report here");
  app.add_option("--format", format, "text or json-lines")->check(CLI::IsMember({"text", "json-lines"}));
  app.add_option("--certificate", cert_path, "write a certificate of the run");
  app.add_flag("--allow-heavy", cfg.allow_heavy, "enable the expensive optional stages");

  auto* verify = app.add_subcommand("verify", "re-check a saved certificate");
  std::string verify_path;
  verify->add_option("path", verify_path, "certificate file")->required();

  auto* exp = app.add_subcommand("export", "print a built-in data file");
  std::string what;
  exp->add_option("what", what, "lattice or scheme")->required()->check(CLI::IsMember({"lattice", "scheme"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      Certificate c = Certificate::parse(read_file(verify_path));
      return emit(verify_certificate(c), format, report_path);
    }
    if (target.empty()) throw InputError("--target is required");
    cfg.target = parse_target(target);
    if (*exp) {
      LatticeData L = cfg.target == Target::Leech ? leech_lattice() : e8_lattice();
      if (what == "lattice") {
        std::cout << format_lattice(L);
      } else {
        auto labels = cfg.target == Target::Leech ? leech_labels() : e8_labels();
        Int N = cfg.target == Target::Leech ? 196560 : 240;
        std::cout << scheme_from_moments(L.n, N, labels).to_text();
      }
      return 0;
    }
    cfg.stages = split_commas(stages);
    Report rep = run_pipeline(cfg);
    if (!cert_path.empty()) write_file(cert_path, rep.certificate.serialize());
    return emit(rep, format, report_path);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const CertificationFailed& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
