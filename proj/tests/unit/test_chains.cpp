#include <doctest.h>

#include "leechcert/chains.hpp"
#include "leechcert/errors.hpp"
#include "leechcert/lattice.hpp"
#include "leechcert/scheme.hpp"

using namespace leechcert;

TEST_CASE("sigma chain bounds") {
  auto s = e8_shell_constants();
  auto r = sigma_chain(s.eps, s.mu, s.nu, s.omega, 8);
  CHECK(r.sigma > 0);
  CHECK(r.sigma <= parse_rat("8.89e-6"));
  for (const auto& b : r.bounds) {
    CHECK(b.bound.lo() <= b.label);
    CHECK(b.bound.hi() >= b.label);
    CHECK(b.deviation <= r.sigma);
  }
}

TEST_CASE("sigma grows with the windows") {
  auto s = leech_shell_constants();
  auto a = sigma_chain(s.eps, s.mu, s.nu, s.omega, 24);
  auto b = sigma_chain(s.eps * 2, s.mu * 2, s.nu * 2, s.omega * 2, 24);
  CHECK(a.sigma <= parse_rat("6.43801e-12"));
  CHECK(b.sigma > a.sigma);
}

TEST_CASE("first pass sigma is coarser than the shell chain") {
  auto s = leech_shell_constants();
  auto fp = first_pass_sigma(24, s.eps);
  CHECK(fp.sigma <= parse_rat("6.411e-9"));
  CHECK(fp.sigma > sigma_chain(s.eps, s.mu, s.nu, s.omega, 24).sigma);
}

TEST_CASE("Leech inner-product chain holds within 75 eps") {
  auto s = leech_shell_constants();
  auto chain = inner_product_chain(s.eps, scheme_from_moments(24, 196560, leech_labels()), 24);
  CHECK(chain.ok);
  CHECK(chain.max_deviation <= 75 * s.eps);
}

TEST_CASE("basis transfer on Leech") {
  LatticeData L = leech_lattice();
  auto s = leech_shell_constants();
  auto r = basis_transfer_check(L, s.eps);
  CHECK(r.coef_bound == 156);
  CHECK(r.norm_error == 1051315200 * s.eps);
  CHECK(r.ok());
  // A hundredfold larger eps breaks the 1e-17 budget.
  CHECK_FALSE(basis_transfer_check(L, s.eps * 100).ok());
}
