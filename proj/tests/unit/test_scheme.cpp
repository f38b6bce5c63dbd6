#include <doctest.h>

#include "leechcert/errors.hpp"
#include "leechcert/lattice.hpp"
#include "leechcert/scheme.hpp"

using namespace leechcert;

namespace {

// +-e_1, +-e_2, +-e_3
SphericalCode octahedron() {
  RatMatrix g(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) g(i, j) = i / 2 != j / 2 ? 0 : (i == j ? 1 : -1);
  return SphericalCode::from_gram(g);
}

}  // namespace

TEST_CASE("octahedron intersection numbers by hand") {
  auto code = octahedron();
  std::vector<Rat> labels{-1, 0, 1};
  auto cls = classify_pairs(code, labels, 0);
  auto t = count_intersection_numbers(code, cls);
  // x, y orthogonal: four z are orthogonal to x; two of them are +-y.
  CHECK(t.get(0, 0, 0) == 2);
  CHECK(t.get(0, 0, 1) == 1);
  CHECK(t.get(0, 0, -1) == 1);
  CHECK(t.get(-1, 0, 0) == 4);
  CHECK(t.get(1, 0, 0) == 4);
  CHECK(t.get(1, 1, 1) == 1);
  CHECK(scheme_symmetry_violations(t).empty());
}

TEST_CASE("unlabelled inner products are rejected") {
  auto code = octahedron();
  CHECK_THROWS_AS(classify_pairs(code, {-1, frac(1, 2), 1}, 0), CertificationFailed);
}

TEST_CASE("E8 counts agree with the moment solution") {
  auto L = e8_lattice();
  auto mv = std::make_shared<MinVectorSet>(minimal_vectors(L, 2));
  auto code = SphericalCode::from_min_vectors(mv);
  auto cls = classify_pairs(code, e8_labels(), 0);
  auto counted = count_intersection_numbers(code, cls);
  auto mom = scheme_from_moments(8, 240, e8_labels());
  CHECK(counted.P == mom.P);
  CHECK(mom.get(0, frac(1, 2), frac(1, 2)) == 12);  // weights of the 56 of E7 against a root
  CHECK(mom.get(1, frac(1, 2), frac(1, 2)) == 56);
  CHECK(scheme_symmetry_violations(mom).empty());
  auto pc = bose_mesner_projection_check(mom, 8, frac(1, 60), 2);
  CHECK(pc.ok);
  CHECK(pc.trace == 8);
}

TEST_CASE("moment solve for one gamma") {
  auto sol = moment_system_solve(frac(1, 2), 8, 240, e8_labels());
  CHECK(sol.at({frac(1, 2), frac(1, 2)}) == 27);
  CHECK(sol.at({0, 0}) == 72);  // roots of E6
}

TEST_CASE("corrupted tables are caught") {
  auto t = scheme_from_moments(8, 240, e8_labels());
  auto bad = t;
  bad.at(2, 3, 3) += 1;
  CHECK_FALSE(scheme_symmetry_violations(bad).empty());
  CHECK_FALSE(bose_mesner_projection_check(bad, 8, frac(1, 60), 2).ok);
  CHECK_FALSE(bose_mesner_projection_check(t, 8, frac(1, 61), 2).ok);
}

TEST_CASE("moment matrix inverse norm") {
  // E8 labels strictly inside (-1, 1) are -1/2, 0, 1/2.
  RatMatrix m = moment_matrix(e8_labels());
  CHECK(m.rows() == m.cols());
  Rat v = moment_matrix_inverse_norm(8, e8_labels());
  CHECK(v == 25);
  CHECK(moment_matrix_inverse_norm(24, leech_labels()) == 7225);
}

TEST_CASE("perturbation budget grows with sigma") {
  Rat a = perturbation_budget(8, parse_rat("1e-6"), parse_rat("3e-4"), 240);
  Rat b = perturbation_budget(8, parse_rat("2e-6"), parse_rat("3e-4"), 240);
  CHECK(a > 0);
  CHECK(b > a);
}
