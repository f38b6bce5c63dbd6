#include "leechcert/ortho_poly.hpp"

#include "leechcert/enclosures.hpp"
#include "leechcert/errors.hpp"

namespace leechcert {

std::vector<UniPoly> laguerre_family(unsigned max_i, const Rat& alpha) {
  std::vector<UniPoly> out;
  out.push_back(UniPoly::constant(1));
  if (max_i == 0) return out;
  out.push_back(UniPoly{1 + alpha, -1});
  for (unsigned i = 2; i <= max_i; ++i) {
    UniPoly a = UniPoly{Rat(2 * i - 1) + alpha, -1} * out[i - 1];
    UniPoly b = out[i - 2] * Rat(Rat(i) + alpha - 1);
    out.push_back((a - b) * frac(1, i));
  }
  return out;
}

UniPoly laguerre(unsigned i, const Rat& alpha) { return laguerre_family(i, alpha).back(); }

std::vector<UniPoly> gegenbauer_family(unsigned max_i, const Rat& lambda) {
  if (lambda <= 0) throw DomainError("gegenbauer needs lambda > 0");
  std::vector<UniPoly> out;
  out.push_back(UniPoly::constant(1));
  if (max_i == 0) return out;
  out.push_back(UniPoly{0, 2 * lambda});
  for (unsigned i = 2; i <= max_i; ++i) {
    UniPoly a = UniPoly::monomial(2 * (Rat(i) + lambda - 1), 1) * out[i - 1];
    UniPoly b = out[i - 2] * Rat(Rat(i) + 2 * lambda - 2);
    out.push_back((a - b) * frac(1, i));
  }
  return out;
}

UniPoly gegenbauer(unsigned i, const Rat& lambda) { return gegenbauer_family(i, lambda).back(); }

Int harmonic_dimension(unsigned i, unsigned n) {
  if (n < 2) throw DomainError("harmonic_dimension needs n >= 2");
  if (i == 0) return 1;
  return binomial(n - 2 + i, n - 2) + binomial(static_cast<long>(n) - 3 + i, n - 2);
}

NormalizedGegenbauer normalized_gegenbauer(unsigned i, unsigned n) {
  if (n % 2 || n < 4) throw DomainError("normalized_gegenbauer needs even n >= 4");
  Rat lambda = Rat(n / 2) - 1;
  UniPoly c = gegenbauer(i, lambda);
  Rat at_one = c(Rat(1));
  // 1/vol = ((n/2)!/n) pi^{-n/2}
  Rat factor = Rat(harmonic_dimension(i, n)) / at_one / sphere_volume_factor(n);
  return {c * factor, -static_cast<int>(n / 2)};
}

std::vector<Rat> gegenbauer_expand(const UniPoly& p, const Rat& lambda) {
  if (p.is_zero()) return {};
  const unsigned d = static_cast<unsigned>(p.degree());
  auto basis = gegenbauer_family(d, lambda);
  std::vector<Rat> out(d + 1);
  UniPoly rest = p;
  for (unsigned k = d + 1; k-- > 0;) {
    Rat top = rest.coeff(k);
    if (top == 0) continue;
    Rat f = top / basis[k].leading();
    out[k] = f;
    rest -= basis[k] * f;
  }
  if (!rest.is_zero()) throw SingularSystem("gegenbauer expansion left a remainder");
  return out;
}

Rat sphere_axis_moment(unsigned k, unsigned n) {
  if (k % 2) return 0;
  // ((k-1)!!/2^{k/2}) / prod_{j<k/2} (n/2 + j)
  Rat r = 1;
  for (unsigned j = 0; j < k / 2; ++j) r *= frac(2 * j + 1, 2) / (frac(n, 2) + j);
  return r;
}

}  // namespace leechcert
