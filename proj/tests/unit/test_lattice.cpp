#include <doctest.h>

#include <set>

#include "leechcert/errors.hpp"
#include "leechcert/io.hpp"
#include "leechcert/lattice.hpp"
#include "leechcert/scheme.hpp"

using namespace leechcert;

namespace {

RatMatrix gram_of(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t n = rows.size(), i = 0;
  RatMatrix g(n, n);
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) g(i, j++) = v;
    ++i;
  }
  return g;
}

// Brute-force count of vectors with norm exactly `norm` for coordinates in
// [-b, b]^n.
std::size_t brute_count(const RatMatrix& g, const Rat& norm, int b) {
  const std::size_t n = g.rows();
  std::vector<int> x(n, -b);
  std::size_t count = 0;
  while (true) {
    Rat q = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q += g(i, j) * x[i] * x[j];
    if (q == norm) ++count;
    std::size_t k = 0;
    while (k < n && x[k] == b) x[k++] = -b;
    if (k == n) break;
    ++x[k];
  }
  return count;
}

}  // namespace

TEST_CASE("E8 basics") {
  LatticeData L = e8_lattice();
  CHECK(L.n == 8);
  CHECK(L.gram_det == 1);
  auto mv = minimal_vectors(L, 2);
  CHECK(mv.count() == 240);
  CHECK(mv.norm == 2);
  auto th = theta_partial(L, 6);
  REQUIRE(th.size() == 3);
  CHECK(th[0].second == 240);
  CHECK(th[1].second == 2160);
  CHECK(th[2].second == 6720);
  CHECK(eutaxy_check(mv, frac(1, 60)));
  CHECK_FALSE(eutaxy_check(mv, frac(1, 59)));
}

TEST_CASE("enumeration agrees with brute force on small lattices") {
  // A2, D4 and a skewed rank-3 form
  std::vector<RatMatrix> grams{gram_of({{2, -1}, {-1, 2}}),
                               gram_of({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}),
                               gram_of({{3, 1, 1}, {1, 4, -2}, {1, -2, 5}})};
  for (const auto& g : grams) {
    LatticeData L = lattice_from_gram("t", g);
    auto sv = enumerate_short_vectors(L, 8);
    for (const auto& [norm, cnt] : sv.shells()) CHECK(cnt == brute_count(g, norm, 4));
  }
  auto d4 = minimal_vectors(lattice_from_gram("d4", grams[1]), 2);
  CHECK(d4.count() == 24);
}

TEST_CASE("enumeration visits each vector once") {
  LatticeData L = e8_lattice();
  auto sv = enumerate_short_vectors(L, 4);
  std::set<std::vector<std::int32_t>> seen;
  for (std::size_t k = 0; k < sv.size(); ++k)
    seen.insert(std::vector<std::int32_t>(sv.coeff_row(k), sv.coeff_row(k) + 8));
  CHECK(seen.size() == sv.size());
  CHECK(sv.size() == 240 + 2160);
}

TEST_CASE("node cap is enforced") {
  EnumerationOptions eo;
  eo.node_cap = 10;
  CHECK_THROWS_AS(enumerate_short_vectors(e8_lattice(), 4, eo), ResourceLimit);
}

TEST_CASE("lattice coordinates round trip and reject non-members") {
  LatticeData L = e8_lattice();
  auto mv = minimal_vectors(L, 2);
  for (std::size_t k = 0; k < mv.count(); k += 37) {
    std::vector<Int> v(mv.vectors.coord_row(k), mv.vectors.coord_row(k) + 8);
    auto c = lattice_coordinates(L, v);
    for (unsigned i = 0; i < 8; ++i) CHECK(c[i] == mv.vectors.coeff_row(k)[i]);
  }
  std::vector<Int> odd(8, 0);
  odd[0] = 1;
  // a single unit step is never in E8 at this scale
  CHECK_THROWS_AS(lattice_coordinates(L, odd), MissingWitness);
}

TEST_CASE("Leech gram determinant and witnesses") {
  LatticeData L = leech_lattice();
  CHECK(L.n == 24);
  CHECK(L.gram_det == 1);
  CHECK(leech_witness_vectors().ok());
  CHECK(e8_witness_vectors().ok());
}

TEST_CASE("lattice files round trip") {
  LatticeData L = e8_lattice();
  LatticeData back = parse_lattice(format_lattice(L));
  CHECK(back.gram == L.gram);
  CHECK(back.scale_sq == L.scale_sq);
  CHECK_THROWS_AS(parse_lattice("2 1\n1 0\n"), FormatError);
}

TEST_CASE("shipped lattice files match the built-in lattices") {
  const std::string dir = LEECHCERT_DATA_DIR;
  CHECK(parse_lattice(read_file(dir + "/e8.lattice")).gram == e8_lattice().gram);
  CHECK(parse_lattice(read_file(dir + "/leech.lattice")).gram == leech_lattice().gram);
}
