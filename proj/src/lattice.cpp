#include "leechcert/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "leechcert/enclosures.hpp"
#include "leechcert/errors.hpp"

namespace leechcert {

namespace {

Int common_denominator(const RatMatrix& m) {
  Int d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).get_den_mpz_t());
  return d;
}

std::int64_t to_i64(const Int& x) {
  if (!x.fits_slong_p()) throw ResourceLimit("integer does not fit in 64 bits");
  return x.get_si();
}

IntMatrix rows_to_matrix(const std::vector<std::vector<long>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = Int(rows[i][j]);
  return m;
}

}  // namespace

Rat ShortVectors::norm(std::size_t k) const { return frac(Int(static_cast<long>(norm_num[k])), norm_den); }

std::map<Rat, std::size_t> ShortVectors::shells() const {
  std::map<Rat, std::size_t> out;
  for (std::size_t k = 0; k < size(); ++k) ++out[norm(k)];
  return out;
}

LatticeData make_lattice(std::string name, const IntMatrix& basis, const Int& scale_sq) {
  if (basis.rows() != basis.cols() || basis.rows() == 0) throw DomainError("basis must be square and nonempty");
  if (scale_sq <= 0) throw DomainError("scale_sq must be positive");
  LatticeData L;
  L.name = std::move(name);
  L.n = static_cast<unsigned>(basis.rows());
  L.basis = basis;
  L.scale_sq = scale_sq;
  IntMatrix g = basis * basis.transpose();
  L.gram = RatMatrix(L.n, L.n);
  for (unsigned i = 0; i < L.n; ++i)
    for (unsigned j = 0; j < L.n; ++j) L.gram(i, j) = frac(g(i, j), scale_sq);
  L.gram_det = det(L.gram);
  if (L.gram_det <= 0) throw SingularBasis("basis of " + L.name + " is singular");
  L.covolume = sqrt_enclosure(L.gram_det, 128);
  return L;
}

LatticeData lattice_from_gram(std::string name, const RatMatrix& gram) {
  if (gram.rows() != gram.cols() || gram.rows() == 0) throw DomainError("Gram matrix must be square");
  LatticeData L;
  L.name = std::move(name);
  L.n = static_cast<unsigned>(gram.rows());
  L.basis = IntMatrix::identity(L.n);
  L.gram = gram;
  L.gram_det = det(gram);
  if (L.gram_det <= 0) throw SingularBasis("Gram matrix of " + L.name + " is not positive definite");
  L.covolume = sqrt_enclosure(L.gram_det, 128);
  return L;
}

LatticeData leech_lattice() {
  // Rows are minimal vectors scaled by sqrt(8).
  std::vector<std::vector<long>> rows(24, std::vector<long>(24, 0));
  auto set_pairs = [](std::vector<long>& r, std::initializer_list<int> idx, long v) {
    for (int i : idx) r[static_cast<std::size_t>(i)] = v;
  };
  rows[0][0] = 4, rows[0][1] = -4;
  for (int i = 1; i <= 6; ++i) rows[i][0] = 4, rows[i][i] = 4;
  set_pairs(rows[7], {0, 1, 2, 3, 4, 5, 6, 7}, 2);
  rows[8][0] = 4, rows[8][8] = 4;
  rows[9][0] = 4, rows[9][9] = 4;
  rows[10][0] = 4, rows[10][10] = 4;
  set_pairs(rows[11], {0, 1, 2, 3, 8, 9, 10, 11}, 2);
  rows[12][0] = 4, rows[12][12] = 4;
  set_pairs(rows[13], {0, 1, 4, 5, 8, 9, 12, 13}, 2);
  set_pairs(rows[14], {0, 2, 4, 6, 8, 10, 12, 14}, 2);
  set_pairs(rows[15], {0, 3, 4, 7, 8, 11, 12, 15}, 2);
  rows[16][0] = 4, rows[16][16] = 4;
  set_pairs(rows[17], {0, 2, 4, 7, 8, 9, 16, 17}, 2);
  set_pairs(rows[18], {0, 3, 4, 5, 8, 10, 16, 18}, 2);
  set_pairs(rows[19], {0, 1, 4, 6, 8, 11, 16, 19}, 2);
  set_pairs(rows[20], {1, 2, 3, 4, 8, 12, 16, 20}, 2);
  set_pairs(rows[21], {8, 9, 12, 13, 16, 17, 20, 21}, 2);
  set_pairs(rows[22], {8, 10, 12, 14, 16, 18, 20, 22}, 2);
  std::fill(rows[23].begin(), rows[23].end(), 1);
  rows[23][0] = -3;
  return make_lattice("leech", rows_to_matrix(rows), Int(8));
}

LatticeData e8_lattice() {
  // Doubled so that the half-integer row becomes integral.
  std::vector<std::vector<long>> rows(8, std::vector<long>(8, 0));
  rows[0][0] = 2, rows[0][1] = 2;
  rows[1][0] = 2, rows[1][1] = -2;
  for (int i = 2; i <= 6; ++i) rows[i][i - 1] = 2, rows[i][i] = -2;
  std::fill(rows[7].begin(), rows[7].end(), 1);
  return make_lattice("e8", rows_to_matrix(rows), Int(4));
}

std::uint64_t visit_short_vectors(const RatMatrix& gram, const Rat& norm_bound, const ShortVectorVisitor& visit,
                                  const EnumerationOptions& opt) {
  const std::size_t n = gram.rows();
  if (n == 0 || gram.cols() != n) throw DomainError("Gram matrix must be square");
  if (norm_bound <= 0) return 0;

  // Exact LDL^T in the Fincke-Pohst layout: Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
  RatMatrix q = gram;
  for (std::size_t i = 0; i < n; ++i) {
    if (q(i, i) <= 0) throw DomainError("Gram matrix is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) /= q(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  std::vector<long double> diag(n), upper(n * n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = static_cast<long double>(q(i, i).get_d());
    for (std::size_t j = i + 1; j < n; ++j) upper[i * n + j] = static_cast<long double>(q(i, j).get_d());
  }

  const Int den = common_denominator(gram);
  std::vector<std::int64_t> gi(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gi[i * n + j] = to_i64(Int(gram(i, j) * den));
  const Rat bound_scaled = norm_bound * den;
  const std::int64_t bound_num = to_i64(floor_rat(bound_scaled));

  const long double bound_ld = static_cast<long double>(norm_bound.get_d()) * (1.0L + 1e-9L) + 1e-9L;
  std::vector<std::int32_t> x(n, 0), neg(n);
  std::uint64_t nodes = 0;

  auto exact_norm = [&](const std::int32_t* v) {
    __int128 s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!v[i]) continue;
      __int128 row = 0;
      for (std::size_t j = 0; j < n; ++j) row += static_cast<__int128>(gi[i * n + j]) * v[j];
      s += row * v[i];
    }
    return static_cast<std::int64_t>(s);
  };

  // Only x whose last nonzero coordinate is positive; -x is visited alongside.
  std::function<void(std::size_t, long double, bool)> rec = [&](std::size_t level, long double remaining,
                                                                bool higher_zero) {
    const std::size_t i = level;
    long double c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c -= upper[i * n + j] * x[j];
    long double r = std::sqrt(std::max(remaining, 0.0L) / diag[i]);
    long lo = static_cast<long>(std::ceil(c - r)), hi = static_cast<long>(std::floor(c + r));
    if (higher_zero) lo = std::max(lo, 0L);
    for (long v = lo; v <= hi; ++v) {
      if (++nodes > opt.node_cap) throw BoundTooLarge("enumeration exceeded the node cap");
      long double d = v - c;
      long double rest = remaining - diag[i] * d * d;
      if (rest < 0) continue;
      x[i] = static_cast<std::int32_t>(v);
      const bool zero_so_far = higher_zero && v == 0;
      if (i == 0) {
        if (zero_so_far) continue;
        std::int64_t nn = exact_norm(x.data());
        if (nn > bound_num) continue;
        visit(x.data(), nn);
        for (std::size_t k = 0; k < n; ++k) neg[k] = -x[k];
        visit(neg.data(), nn);
      } else {
        rec(i - 1, rest, zero_so_far);
      }
    }
    x[i] = 0;
  };
  rec(n - 1, bound_ld, true);
  return nodes;
}

ShortVectors enumerate_short_vectors(const LatticeData& L, const Rat& norm_bound, const EnumerationOptions& opt) {
  const unsigned n = L.n;
  ShortVectors raw;
  raw.n = n;
  raw.norm_den = common_denominator(L.gram);
  std::vector<std::int64_t> basis(static_cast<std::size_t>(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) basis[i * n + j] = to_i64(L.basis(i, j));
  visit_short_vectors(
      L.gram, norm_bound,
      [&](const std::int32_t* c, std::int64_t nn) {
        raw.coeffs.insert(raw.coeffs.end(), c, c + n);
        for (unsigned j = 0; j < n; ++j) {
          std::int64_t s = 0;
          for (unsigned i = 0; i < n; ++i) s += c[i] * basis[i * n + j];
          raw.coords.push_back(static_cast<std::int32_t>(s));
        }
        raw.norm_num.push_back(nn);
      },
      opt);

  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (raw.norm_num[a] != raw.norm_num[b]) return raw.norm_num[a] < raw.norm_num[b];
    return std::lexicographical_compare(raw.coord_row(a), raw.coord_row(a) + n, raw.coord_row(b),
                                        raw.coord_row(b) + n);
  });
  ShortVectors out;
  out.n = n;
  out.norm_den = raw.norm_den;
  out.coeffs.reserve(raw.coeffs.size());
  out.coords.reserve(raw.coords.size());
  for (std::size_t k : order) {
    out.coeffs.insert(out.coeffs.end(), raw.coeff_row(k), raw.coeff_row(k) + n);
    out.coords.insert(out.coords.end(), raw.coord_row(k), raw.coord_row(k) + n);
    out.norm_num.push_back(raw.norm_num[k]);
  }
  return out;
}

MinVectorSet minimal_vectors(const LatticeData& L, const Rat& norm_bound, const EnumerationOptions& opt) {
  ShortVectors all = enumerate_short_vectors(L, norm_bound, opt);
  MinVectorSet out;
  out.scale_sq = L.scale_sq;
  out.vectors.n = L.n;
  out.vectors.norm_den = all.norm_den;
  if (all.size() == 0) return out;
  const std::int64_t m = all.norm_num[0];
  out.norm = all.norm(0);
  for (std::size_t k = 0; k < all.size() && all.norm_num[k] == m; ++k) {
    out.vectors.coeffs.insert(out.vectors.coeffs.end(), all.coeff_row(k), all.coeff_row(k) + L.n);
    out.vectors.coords.insert(out.vectors.coords.end(), all.coord_row(k), all.coord_row(k) + L.n);
    out.vectors.norm_num.push_back(m);
  }
  return out;
}

std::vector<std::pair<Rat, std::uint64_t>> theta_partial(const LatticeData& L, const Rat& norm_bound,
                                                         const EnumerationOptions& opt) {
  std::map<std::int64_t, std::uint64_t> counts;
  visit_short_vectors(L.gram, norm_bound, [&](const std::int32_t*, std::int64_t nn) { ++counts[nn]; }, opt);
  const Int den = common_denominator(L.gram);
  std::vector<std::pair<Rat, std::uint64_t>> out;
  for (const auto& [nn, c] : counts) out.emplace_back(frac(Int(static_cast<long>(nn)), den), c);
  return out;
}

BasisInverse basis_inverse(const LatticeData& L) {
  RatMatrix inv = inverse(to_rat(L.basis));
  BasisInverse out;
  out.scaled = RatMatrix(L.n, L.n);
  out.max_abs_scaled = 0;
  out.integral = true;
  for (unsigned i = 0; i < L.n; ++i)
    for (unsigned j = 0; j < L.n; ++j) {
      Rat v = inv(i, j) * Rat(L.scale_sq);
      out.scaled(i, j) = v;
      if (abs(v) > out.max_abs_scaled) out.max_abs_scaled = abs(v);
      if (v.get_den() != 1) out.integral = false;
    }
  return out;
}

Rat coefficient_bound(const LatticeData& L, const Rat& vec_inf_scaled) {
  BasisInverse bi = basis_inverse(L);
  Rat best = 0;
  for (unsigned col = 0; col < L.n; ++col) {
    Rat s = 0;
    for (unsigned row = 0; row < L.n; ++row) s += abs(bi.scaled(row, col));
    best = std::max(best, s);
  }
  return best * vec_inf_scaled / Rat(L.scale_sq);
}

Rat coefficient_bound_entrywise(const LatticeData& L, const Rat& vec_inf_scaled) {
  BasisInverse bi = basis_inverse(L);
  return Rat(L.n) * bi.max_abs_scaled * vec_inf_scaled / Rat(L.scale_sq);
}

std::vector<Int> lattice_coordinates(const LatticeData& L, const std::vector<Int>& scaled) {
  if (scaled.size() != L.n) throw DomainError("vector has the wrong dimension");
  RatMatrix inv = inverse(to_rat(L.basis));
  std::vector<Int> out(L.n);
  for (unsigned j = 0; j < L.n; ++j) {
    Rat s = 0;
    for (unsigned i = 0; i < L.n; ++i) s += Rat(scaled[i]) * inv(i, j);
    if (s.get_den() != 1) throw MissingWitness("vector is not in the lattice " + L.name);
    out[j] = s.get_num();
  }
  return out;
}

Rat ambient_inner(const LatticeData& L, const std::vector<Int>& x, const std::vector<Int>& y) {
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return frac(s, L.scale_sq);
}

namespace {

void check_witnesses(const LatticeData& L, const Rat& min_norm, WitnessVectors& w, const Rat& coeff_cap) {
  auto fail = [&](const std::string& s) { w.failures.push_back(s); };
  auto check_vec = [&](const std::vector<Int>& v, const std::string& tag) {
    try {
      auto c = lattice_coordinates(L, v);
      for (const auto& ci : c)
        if (Rat(abs(ci)) > coeff_cap) fail(tag + ": coefficient exceeds the bound");
    } catch (const MissingWitness&) {
      fail(tag + ": not a lattice vector");
    }
    if (ambient_inner(L, v, v) != min_norm) fail(tag + ": not a minimal vector");
  };
  for (std::size_t i = 0; i < w.frame.size(); ++i) {
    check_vec(w.frame[i], "frame " + std::to_string(i));
    for (std::size_t j = i + 1; j < w.frame.size(); ++j)
      if (ambient_inner(L, w.frame[i], w.frame[j]) != 0) fail("frame vectors not orthogonal");
  }
  if (w.frame.size() != L.n) fail("frame does not have n vectors");
  if (!w.quarter_config.empty()) {
    const auto& c = w.quarter_config;
    for (std::size_t i = 0; i < c.size(); ++i) check_vec(c[i], "configuration " + std::to_string(i));
    const Rat& M = min_norm;
    if (ambient_inner(L, c[0], c[1]) != M / 4) fail("<u,v> != M/4");
    for (std::size_t i = 2; i < c.size(); ++i) {
      if (ambient_inner(L, c[0], c[i]) != M / 2) fail("<u,w> != M/2");
      if (ambient_inner(L, c[1], c[i]) != 0) fail("<v,w> != 0");
      for (std::size_t j = i + 1; j < c.size(); ++j)
        if (ambient_inner(L, c[i], c[j]) != 0) fail("<w_i,w_j> != 0");
    }
  }
}

std::vector<std::vector<Int>> pair_frame(unsigned n, long a) {
  std::vector<std::vector<Int>> frame;
  for (unsigned i = 0; i + 1 < n; i += 2) {
    std::vector<Int> w(n, 0), v(n, 0);
    w[i] = a, w[i + 1] = a;
    v[i] = a, v[i + 1] = -a;
    frame.push_back(w);
    frame.push_back(v);
  }
  return frame;
}

}  // namespace

WitnessVectors leech_witness_vectors() {
  LatticeData L = leech_lattice();
  WitnessVectors w;
  std::vector<Int> u(24, 1), v(24, 0), w1(24, 0), w2(24, 0), w3(24, 0);
  u[23] = -3;
  v[22] = -4, v[23] = -4;
  for (int i = 0; i < 8; ++i) w1[i] = 2;
  w2[22] = 4, w2[23] = -4;
  for (int i : {8, 9, 12, 13, 16, 17, 20, 21}) w3[i] = 2;
  w.quarter_config = {u, v, w1, w2, w3};
  w.frame = pair_frame(24, 4);
  check_witnesses(L, Rat(4), w, coefficient_bound_entrywise(L, Rat(4)));
  return w;
}

WitnessVectors e8_witness_vectors() {
  LatticeData L = e8_lattice();
  WitnessVectors w;
  w.frame = pair_frame(8, 2);
  check_witnesses(L, Rat(2), w, coefficient_bound_entrywise(L, Rat(2)));
  return w;
}

namespace {

// x rounded up to about `sig` significant bits (x > 0).
Rat round_up_relative(const Rat& x, unsigned long sig = 64) {
  if (x <= 0) return x;
  long e = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
  long b = static_cast<long>(sig) - e;
  if (b <= 0) return Rat(ceil_rat(x));
  return round_outward(RatInterval::point(x), static_cast<unsigned long>(b)).hi();
}

// Upper bound for e^{-z}, any z >= 0, to roughly `bits` relative bits.
Rat exp_neg_upper(const Rat& z, unsigned long bits) {
  if (z <= 0) return Rat(1);
  Int m = ceil_rat(z / 60);
  Rat one = exp_neg_interval(RatInterval::point(z / Rat(m)), bits + 90).hi();
  if (m == 1) return one;
  one = round_up_relative(one, bits);
  Rat acc = 1;
  for (unsigned long k = m.get_ui(); k; k >>= 1) {
    if (k & 1) acc = round_up_relative(acc * one, bits);
    one = round_up_relative(one * one, bits);
  }
  return acc;
}

// sum over shells of count * f at that norm, f given by a polynomial in 2 pi |x|^2
RatInterval shell_sum(const UniPoly& p, const std::map<std::int64_t, std::uint64_t>& shells, const Int& den,
                      const RatInterval& pi, unsigned long bits) {
  RatInterval total = RatInterval::point(0);
  for (const auto& [nn, cnt] : shells) {
    Rat q = frac(Int(static_cast<long>(nn)), den);
    RatInterval z = RatInterval::point(2 * q) * pi;
    RatInterval half = RatInterval::point(q) * pi;
    RatInterval damp = half.hi() <= 60 ? exp_neg_interval(half, bits) : RatInterval(0, exp_neg_upper(half.lo(), bits));
    RatInterval v = round_outward(p(z) * damp, bits + 16);
    total = total + v * RatInterval::point(Rat(static_cast<unsigned long>(cnt)));
  }
  return total;
}

// Bound on sum_{|x| > R} |p(2 pi |x|^2)| e^{-pi |x|^2} over a lattice whose
// nonzero vectors have length >= lambda: the number of points within radius r
// is at most ((r + lambda/2) / (lambda/2))^n by disjointness of balls.
Rat tail_bound(const UniPoly& p, unsigned n, const Rat& R, const Rat& lambda, const RatInterval& pi,
               unsigned long bits) {
  std::vector<Rat> absc;
  for (const auto& c : p.coeffs()) absc.push_back(abs(c));
  const UniPoly pabs(absc);
  const Rat h = frac(1, 2);
  const Rat stop = pow10(-static_cast<long>(bits * 3 / 10));
  Rat total = 0, prev = -1;
  for (unsigned k = 0; k < 100000; ++k) {
    Rat r0 = R + h * k, r1 = r0 + h;
    Rat count = rat_pow((r1 + lambda / 2) / (lambda / 2), n);
    Rat term = count * pabs(2 * pi.hi() * r1 * r1) * exp_neg_upper(pi.lo() * r0 * r0, bits);
    term = round_up_relative(term);
    total += term;
    // Both factors of the term ratio decrease in k, so once it is below 1/2
    // the remaining terms are dominated by a geometric series.
    if (prev > 0 && term * 2 < prev && term < stop) return total + term;
    prev = term;
  }
  throw ResourceLimit("tail bound did not converge");
}

}  // namespace

RatInterval poisson_residual(const RadialFn& f, const LatticeData& L, const Rat& radius_cutoff, unsigned long bits) {
  if (radius_cutoff < 0) throw DomainError("radius cutoff must be nonnegative");
  const RatInterval pi = pi_enclosure(bits + 16);
  const Rat norm_bound = radius_cutoff * radius_cutoff;
  const UniPoly p = radial_poly(f);
  const UniPoly ph = radial_poly(fourier(f));
  EnumerationOptions opt;
  opt.node_cap = 1000000000ULL;

  auto side = [&](const RatMatrix& gram, const UniPoly& poly) {
    std::map<std::int64_t, std::uint64_t> shells;
    visit_short_vectors(gram, norm_bound, [&](const std::int32_t*, std::int64_t nn) { ++shells[nn]; }, opt);
    const Int den = common_denominator(gram);
    RatInterval s = RatInterval::point(poly(Rat(0)));  // the origin
    s = s + shell_sum(poly, shells, den, pi, bits);
    // shortest nonzero length: from the enumeration, or the cutoff when empty
    Rat lambda;
    if (!shells.empty()) {
      lambda = sqrt_enclosure(frac(Int(static_cast<long>(shells.begin()->first)), den), bits).lo();
    } else {
      lambda = radius_cutoff;
      if (lambda == 0) {
        // no information at all: bound the minimum from the Gram diagonal of the reduced form
        Rat m = gram(0, 0);
        RatMatrix g = gram;
        for (std::size_t i = 1; i < g.rows(); ++i) m = std::min(m, g(i, i));
        // Q(x) >= lambda_min(G) |x|^2 >= det / (trace^(n-1)) for integer x != 0
        Rat tr = 0;
        for (std::size_t i = 0; i < g.rows(); ++i) tr += g(i, i);
        lambda = sqrt_enclosure(det(g) / rat_pow(tr, g.rows() - 1), bits).lo();
      }
    }
    Rat tail = tail_bound(poly, f.dim, radius_cutoff, lambda, pi, bits);
    return RatInterval(s.lo() - tail, s.hi() + tail);
  };

  RatInterval direct = side(L.gram, p);
  RatInterval dual = side(inverse(L.gram), ph);
  RatInterval inv_covol = RatInterval::point(1) / L.covolume;
  RatInterval scale = RatInterval::point(1 / f.scale);
  return (direct - dual * inv_covol) * scale;
}

}  // namespace leechcert
