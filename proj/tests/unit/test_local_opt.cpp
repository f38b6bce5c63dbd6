#include <doctest.h>

#include <random>

#include "leechcert/errors.hpp"
#include "leechcert/lattice.hpp"
#include "leechcert/local_opt.hpp"
#include "leechcert/matrix.hpp"
#include "leechcert/scheme.hpp"
#include "leechcert/simplex.hpp"

using namespace leechcert;

namespace {

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-5, 5);
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = frac(d(rng), 1 + (i + j) % 3);
  return m;
}

// Sum of |det| over all (n-k)x(n-k) minors by direct subset enumeration.
Rat brute_minor_sum(const RatMatrix& g, unsigned k) {
  const std::size_t n = g.rows(), m = n - k;
  Rat total = 0;
  for (unsigned rs = 0; rs < (1u << n); ++rs) {
    if (static_cast<std::size_t>(__builtin_popcount(rs)) != m) continue;
    for (unsigned cs = 0; cs < (1u << n); ++cs) {
      if (static_cast<std::size_t>(__builtin_popcount(cs)) != m) continue;
      RatMatrix sub(m, m);
      std::size_t a = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(rs >> i & 1)) continue;
        std::size_t b = 0;
        for (std::size_t j = 0; j < n; ++j)
          if (cs >> j & 1) sub(a, b++) = g(i, j);
        ++a;
      }
      total += abs(det(sub));
    }
  }
  return total;
}

}  // namespace

TEST_CASE("minor sums match brute force") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    RatMatrix g = random_matrix(rng, 5);
    for (unsigned k = 1; k <= 4; ++k) CHECK(minor_abs_sum(g, k) == brute_minor_sum(g, k));
    CHECK(minor_abs_sum(g, 5) == 1);
    MinorSumOptions two;
    two.threads = 2;
    CHECK(minor_abs_sum(g, 2, two) == minor_abs_sum(g, 2));
  }
}

TEST_CASE("k = 2 via the inverse agrees with the direct sum") {
  LatticeData L = e8_lattice();
  CHECK(minor_abs_sum_k2_via_inverse(L.gram) == minor_abs_sum(L.gram, 2));
  CHECK(minor_abs_sum(L.gram, 2) == 3968);
}

TEST_CASE("minor limit raises") {
  MinorSumOptions o;
  o.max_minors = 10;
  CHECK_THROWS_AS(minor_abs_sum(e8_lattice().gram, 4, o), TooManyMinors);
}

TEST_CASE("hadamard bound dominates the exact sums of E8") {
  LatticeData L = e8_lattice();
  for (unsigned k = 2; k <= 7; ++k) CHECK(hadamard_minor_bound(8, k, 2, 1) >= minor_abs_sum(L.gram, k));
}

TEST_CASE("adjugate is det times inverse") {
  std::mt19937_64 rng(3);
  RatMatrix g = random_matrix(rng, 6);
  Rat d = det(g);
  REQUIRE(d != 0);
  auto a = adjugate_with_sum(g);
  RatMatrix inv = inverse(g);
  Rat s = 0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(a.adj(i, j) == d * inv(i, j));
      s += abs(a.adj(i, j));
    }
  CHECK(a.abs_entry_sum == s);
  CHECK(adjugate_with_sum(e8_lattice().gram).abs_entry_sum == 620);
}

TEST_CASE("perfection ranks") {
  LatticeData L = e8_lattice();
  auto mv = minimal_vectors(L, 2);
  auto pr = perfection_rank_detail(mv, 8);
  CHECK(pr.rank == 36);
  CHECK(pr.perfect());
  // Z^2 has 4 minimal vectors whose forms span only the diagonal.
  RatMatrix id(2, 2);
  id(0, 0) = id(1, 1) = 1;
  auto z2 = minimal_vectors(lattice_from_gram("z2", id), 1);
  CHECK(perfection_rank(z2, 2) == 2);
}

TEST_CASE("E8 alpha chain") {
  LatticeData L = e8_lattice();
  auto r = alpha_chain(L, scheme_from_moments(8, 240, e8_labels()), e8_witness_vectors());
  CHECK(r.alpha == frac(1, 20));
  CHECK(r.lookup(2, 1) == frac(1, 7));
  CHECK(r.lookup(2, -1) == 1);
  CHECK(r.lookup(1, 1) == frac(2, 15));
  CHECK(r.lookup(1, -1) == frac(2, 9));
}

TEST_CASE("frame identity rejects a broken frame") {
  LatticeData L = e8_lattice();
  auto w = e8_witness_vectors();
  CHECK(frame_identity(L, w.frame, 2));
  auto bad = w.frame;
  bad[0] = bad[1];
  CHECK_FALSE(frame_identity(L, bad, 2));
}

TEST_CASE("closure certificate") {
  auto pb = local_optimality_certificate(8, frac(1, 20), 2, Rat(7973), parse_rat("2.5e-5"));
  CHECK(pb.ok);
  CHECK_THROWS_AS(local_optimality_certificate(8, 0, 2, Rat(7973), parse_rat("2.5e-5")), CertificationFailed);
  // A range too wide for c must fail.
  CHECK_THROWS_AS(local_optimality_certificate(8, frac(1, 20), 2, Rat(7973), Rat(1)), CertificationFailed);
}

TEST_CASE("simplex on small programs") {
  SUBCASE("optimum at a vertex") {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.cost = {-1, -2};
    lp.add_row({1, 1}, Sense::LessEq, 4);
    lp.add_row({1, -1}, Sense::LessEq, 1);
    auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == -8);
    CHECK(r.x == std::vector<Rat>{0, 4});
  }
  SUBCASE("equality and >= rows") {
    LinearProgram lp;
    lp.num_vars = 3;
    lp.cost = {1, 1, 1};
    lp.add_row({1, 2, 0}, Sense::Equal, 3);
    lp.add_row({0, 1, 1}, Sense::GreaterEq, frac(5, 2));
    auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == frac(5, 2));
  }
  SUBCASE("infeasible") {
    LinearProgram lp;
    lp.num_vars = 1;
    lp.cost = {1};
    lp.add_row({1}, Sense::LessEq, 1);
    lp.add_row({1}, Sense::GreaterEq, 2);
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);
  }
  SUBCASE("unbounded") {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.cost = {-1, 0};
    lp.add_row({1, -1}, Sense::LessEq, 1);
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
  }
  SUBCASE("degenerate program agrees under both pivot rules") {
    // Beale's cycling example.
    LinearProgram lp;
    lp.num_vars = 4;
    lp.cost = {frac(-3, 4), 150, frac(-1, 50), 6};
    lp.add_row({frac(1, 4), -60, frac(-1, 25), 9}, Sense::LessEq, 0);
    lp.add_row({frac(1, 2), -90, frac(-1, 50), 3}, Sense::LessEq, 0);
    lp.add_row({0, 0, 1, 0}, Sense::LessEq, 1);
    auto a = solve_lp(lp), b = solve_lp(lp, true);
    REQUIRE(a.status == LpStatus::Optimal);
    CHECK(a.value == frac(-1, 20));
    CHECK(b.value == a.value);
  }
}
