#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leechcert/certificate.hpp"
#include "leechcert/rational.hpp"

namespace leechcert {

enum class Target { Leech, E8 };
Target parse_target(const std::string& s);  // throws InputError
std::string target_name(Target t);

struct PipelineConfig {
  Target target = Target::E8;
  std::vector<std::string> stages{"full"};
  unsigned threads = 1;
  std::uint64_t node_cap = 100000000;
  std::string fcoeffs, roots;  // optional external magic function
  bool allow_heavy = false;
};

// Known stage names in execution order.
const std::vector<std::string>& stage_order();
// Expands "full", adds dependencies and sorts; throws InputError on an
// unknown or empty list.
std::vector<std::string> resolve_stages(const std::vector<std::string>& requested);

// One certified statement.  relation is one of = <= < >= > holds.
struct Claim {
  std::string id;
  std::string what;
  std::string relation;
  std::string value;
  std::string reference;  // empty when there is no reference constant
  bool pass = false;
};

struct Report {
  std::string target;
  std::vector<std::string> stages;
  std::vector<Claim> claims;
  Certificate certificate;
  bool ok() const;
  std::string text() const;
  std::string json_lines() const;
};

// Runs the stages.  Certification failures become failing claims;
// InputError and ResourceLimit propagate.
Report run_pipeline(const PipelineConfig& cfg);

// Re-checks a certificate from its recorded data.  Stages whose evidence is
// expensive to rebuild (enumeration, counting) are checked for internal
// consistency only.
Report verify_certificate(const Certificate& cert);

}  // namespace leechcert
