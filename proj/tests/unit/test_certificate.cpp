#include <doctest.h>

#include "leechcert/certificate.hpp"
#include "leechcert/errors.hpp"
#include "leechcert/pipeline.hpp"

using namespace leechcert;

TEST_CASE("certificate round trip") {
  Certificate c;
  c.target = "e8";
  c.set("a.x", frac(1, 3));
  c.set("a.y", "hello");
  std::string text = c.serialize();
  Certificate d = Certificate::parse(text);
  CHECK(d.target == "e8");
  CHECK(d.rat("a.x") == frac(1, 3));
  CHECK(d.str("a.y") == "hello");
  CHECK(d.serialize() == text);
  CHECK_THROWS_AS(d.str("missing"), FormatError);
}

TEST_CASE("certificate tampering and malformed input") {
  Certificate c;
  c.target = "leech";
  c.set("k.v", 42);
  std::string text = c.serialize();
  std::string bad = text;
  bad.replace(bad.find("42"), 2, "43");
  CHECK_THROWS_AS(Certificate::parse(bad), CertificationFailed);
  CHECK_THROWS_AS(Certificate::parse(""), FormatError);
  CHECK_THROWS_AS(Certificate::parse("hello\n"), FormatError);
  CHECK_THROWS_AS(c.set("bad key", 1), InputError);
  CHECK_THROWS_AS(c.set("sha256", 1), InputError);
}

TEST_CASE("stage resolution") {
  CHECK(resolve_stages({"full"}) == stage_order());
  CHECK(resolve_stages({"localopt"}) == std::vector<std::string>{"scheme", "localopt"});
  CHECK(resolve_stages({"sigma", "kissing"}) == std::vector<std::string>{"kissing", "sigma"});
  CHECK_THROWS_AS(resolve_stages({"nope"}), InputError);
  CHECK_THROWS_AS(resolve_stages({}), InputError);
  CHECK_THROWS_AS(parse_target("d4"), InputError);
}

TEST_CASE("E8 kissing and basis stages certify and verify") {
  PipelineConfig cfg;
  cfg.target = Target::E8;
  cfg.stages = {"kissing", "basis"};
  Report r = run_pipeline(cfg);
  CHECK(r.ok());
  CHECK(r.text().find("FAIL") == std::string::npos);
  Report v = verify_certificate(Certificate::parse(r.certificate.serialize()));
  CHECK(v.ok());
  // A consistent but wrong value (digest recomputed) fails on recomputation.
  Certificate bad = r.certificate;
  bad.set("kissing.bound", 241);
  CHECK_FALSE(verify_certificate(bad).ok());
}
