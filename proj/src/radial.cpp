#include "leechcert/radial.hpp"

#include <algorithm>

#include "leechcert/enclosures.hpp"
#include "leechcert/errors.hpp"
#include "leechcert/matrix.hpp"
#include "leechcert/roots.hpp"

namespace leechcert {

namespace {

Int laguerre_alpha(unsigned n) {
  if (n < 2 || n % 2) throw DomainError("radial functions need even n >= 2");
  return Int(n / 2 - 1);
}

// L_i(z) and L_i'(z) for i <= d at a rational point.
void laguerre_values(unsigned d, const Rat& alpha, const Rat& z, std::vector<Rat>& L, std::vector<Rat>& D) {
  L.assign(d + 1, 0);
  D.assign(d + 1, 0);
  L[0] = 1;
  if (d == 0) return;
  L[1] = 1 + alpha - z;
  D[1] = -1;
  for (unsigned i = 2; i <= d; ++i) {
    Rat a = Rat(2 * i - 1) + alpha - z;
    Rat b = Rat(i) + alpha - 1;
    L[i] = (a * L[i - 1] - b * L[i - 2]) / i;
    D[i] = (a * D[i - 1] - L[i - 1] - b * D[i - 2]) / i;
  }
}

Rat two_pi_lo(unsigned long bits) { return 2 * pi_enclosure(bits).lo(); }
Rat two_pi_hi(unsigned long bits) { return 2 * pi_enclosure(bits).hi(); }

// p(z) e^{-z/2} at an exact point.
RatInterval damped_value(const UniPoly& p, const Rat& z, unsigned long bits) {
  return RatInterval::point(p(z)) * exp_neg_interval(RatInterval::point(z / 2), bits);
}

void fill_density(PackingCertificate& cert, const RatInterval& r_sq, unsigned long bits) {
  const unsigned n = cert.fn.dim;
  const unsigned h = n / 2;
  RatInterval quarter = r_sq * RatInterval::point(frac(1, 4));
  cert.density_bound = pi_power(h, bits) * RatInterval::point(Rat(1) / Rat(factorial(h))) * quarter.pow(h);
  Rat m = reference_min_norm(n);
  cert.ratio = m > 0 ? (r_sq * RatInterval::point(1 / m)).pow(h) : RatInterval();
}

void check_normalization(const UniPoly& p, const UniPoly& h) {
  Rat f0 = p(Rat(0)), g0 = h(Rat(0));
  if (f0 != g0) throw NormalizationError("f(0) = " + to_sci(f0, 12) + " differs from f-hat(0) = " + to_sci(g0, 12));
  if (f0 <= 0) throw NormalizationError("f(0) must be positive");
}

}  // namespace

RadialFn fourier(const RadialFn& f) {
  RadialFn g = f;
  for (std::size_t i = 1; i < g.coeffs.size(); i += 2) g.coeffs[i] = -g.coeffs[i];
  return g;
}

UniPoly radial_poly(const RadialFn& f) {
  const Int alpha = laguerre_alpha(f.dim);
  const std::size_t m = f.coeffs.size();
  // i! L_i(z) = sum_k (-1)^k T(i,k) z^k with T(k,k) = 1 and
  // T(i+1,k) = T(i,k) (i+1)(i+1+alpha) / (i+1-k), an exact integer step.
  std::vector<Rat> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    Int t = 1;
    Rat s = 0;
    for (std::size_t i = k; i < m; ++i) {
      if (i > k) {
        t *= Int(static_cast<unsigned long>(i)) * (Int(static_cast<unsigned long>(i)) + alpha);
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(i - k));
      }
      if (f.coeffs[i] != 0) s += f.coeffs[i] * Rat(t);
    }
    out[k] = k % 2 ? Rat(-s) : s;
  }
  return UniPoly(std::move(out));
}

RatInterval evaluate_enclosure(const RadialFn& f, const RatInterval& radius, unsigned long bits) {
  RatInterval pi = pi_enclosure(bits);
  RatInterval z = RatInterval::point(2) * pi * radius * radius;
  RatInterval pz = radial_poly(f)(z);
  RatInterval damp = exp_neg_interval(RatInterval(z.lo() / 2, z.hi() / 2), bits);
  return pz * damp * RatInterval::point(1 / f.scale);
}

RadialFn solve_forced_roots(const RootSpec& spec, unsigned degree, unsigned n) {
  const Rat alpha(laguerre_alpha(n));
  Rat last_f = -1, last_h = -1;
  bool any_f = false, any_h = false;
  for (const auto& r : spec) {
    if (r.multiplicity != 1 && r.multiplicity != 2) throw DomainError("forced roots have multiplicity 1 or 2");
    Rat& last = r.side == Side::F ? last_f : last_h;
    bool& any = r.side == Side::F ? any_f : any_h;
    if (any && r.location <= last) throw DomainError("forced roots must be strictly increasing on each side");
    last = r.location;
    any = true;
  }
  RadialFn out;
  out.dim = n;
  if (degree == 0) {
    if (!spec.empty()) throw SingularSystem("degree 0 leaves no freedom for forced roots");
    out.coeffs = {1};
    return out;
  }
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> rhs;
  std::vector<Rat> L, D;
  for (const auto& r : spec) {
    laguerre_values(degree, alpha, r.location, L, D);
    const bool hat = r.side == Side::FHat;
    std::vector<Rat> val(degree), der(degree);
    for (unsigned i = 1; i <= degree; ++i) {
      const bool flip = hat && i % 2;
      val[i - 1] = flip ? Rat(-L[i]) : L[i];
      der[i - 1] = flip ? Rat(-D[i]) : D[i];
    }
    rows.push_back(val);
    rhs.push_back(-1);  // the constant term L_0 = 1 moves to the right
    if (r.multiplicity == 2) {
      rows.push_back(der);
      rhs.push_back(0);
    }
  }
  if (rows.size() != degree)
    throw DomainError(std::to_string(rows.size()) + " root conditions for " + std::to_string(degree) + " free coefficients");
  RatMatrix A(rows.size(), degree);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (unsigned j = 0; j < degree; ++j) A(i, j) = rows[i][j];
  std::vector<Rat> a = solve(A, rhs);
  out.coeffs.resize(degree + 1);
  out.coeffs[0] = 1;
  for (unsigned i = 1; i <= degree; ++i) out.coeffs[i] = a[i - 1] / Rat(factorial(i));
  return out;
}

Rat reference_min_norm(unsigned n) {
  if (n == 24) return 4;
  if (n == 8) return 2;
  return 0;
}

PackingCertificate certify_packing_bound_z(const RadialFn& f, const Rat& z0, unsigned long bits) {
  if (z0 <= 0) throw DomainError("packing threshold must be positive");
  PackingCertificate cert;
  cert.fn = f;
  cert.method = "sturm";
  UniPoly p = radial_poly(f);
  UniPoly h = radial_poly(fourier(f));
  check_normalization(p, h);
  cert.normalization = true;
  SignCheck fs = certify_sign_on_ray(p, z0, -1);
  if (!fs.ok) throw SignViolation("f", fs.witness);
  cert.f_sign = true;
  SignCheck hs = certify_sign_on_ray(h, 0, +1);
  if (!hs.ok) throw SignViolation("f-hat", hs.witness);
  cert.fhat_sign = true;
  cert.z_threshold = z0;
  RatInterval r_sq(z0 / two_pi_hi(bits), z0 / two_pi_lo(bits));
  cert.r = sqrt_enclosure(r_sq, bits);
  fill_density(cert, r_sq, bits);
  return cert;
}

PackingCertificate certify_packing_bound(const RadialFn& f, const RatInterval& r_enclosing, unsigned long bits) {
  if (r_enclosing.lo() <= 0) throw DomainError("radius enclosure must be positive");
  PackingCertificate cert = certify_packing_bound_z(f, two_pi_lo(bits) * r_enclosing.lo() * r_enclosing.lo(), bits);
  // The density uses the caller's radius, which may be looser than ours.
  cert.r = r_enclosing;
  fill_density(cert, r_enclosing * r_enclosing, bits);
  return cert;
}

namespace {

struct HintedFailure {
  std::string witness;
};

// Window [floor r, ceil r] around a near-root at which sign*P touches 0 from
// the positive side (sign = +1 for f-hat, -1 for f).  P'' has no root in the
// window, P' changes sign inside [r - delta, r + delta], and the extremum is
// bounded by P(r) plus delta times the larger derivative magnitude.
bool window_ok(const IntPoly& P, const IntPoly& P1, const IntPoly& P2, const Rat& r, const Rat& delta, int sign,
               std::string& why) {
  Int a = floor_rat(r), b = ceil_rat(r);
  if (a == b) {
    if (sign * P.sign_at(r) <= 0) {
      why = "value at integer hint " + to_string(r);
      return false;
    }
    return true;
  }
  if (r - delta <= Rat(a) || r + delta >= Rat(b)) {
    why = "delta leaves the window around " + to_sci(r, 15);
    return false;
  }
  if (P2.sign_at(Rat(a)) == 0 || P2.sign_at(Rat(b)) == 0 || jacobi_root_bound(P2, a, b).bound != 0) {
    why = "second derivative may vanish near " + to_sci(r, 15);
    return false;
  }
  Rat d_lo = P1.value_at(r - delta), d_hi = P1.value_at(r + delta);
  // sign*P has a local minimum: derivative goes from -sign to +sign
  if (sign * d_lo >= 0 || sign * d_hi <= 0) {
    why = "derivative does not bracket the extremum near " + to_sci(r, 15);
    return false;
  }
  Rat M = std::max(abs(d_lo), abs(d_hi));
  if (sign * P.value_at(r) - delta * M <= 0) {
    why = "extremum too close to zero near " + to_sci(r, 15);
    return false;
  }
  return true;
}

// Gaps between windows and the tail beyond the last one carry no roots.
bool gaps_ok(const IntPoly& P, const std::vector<Rat>& hints, std::size_t first, std::string& why) {
  for (std::size_t i = first; i < hints.size(); ++i) {
    Int lo = ceil_rat(hints[i]);
    if (i + 1 < hints.size()) {
      Int hi = floor_rat(hints[i + 1]);
      if (lo < hi && jacobi_root_bound(P, lo, hi).bound != 0) {
        why = "possible root between hints " + to_sci(hints[i], 12) + " and " + to_sci(hints[i + 1], 12);
        return false;
      }
    } else if (jacobi_root_bound_ray(P, lo).bound != 0) {
      why = "possible root beyond " + to_sci(hints[i], 12);
      return false;
    }
  }
  return true;
}

}  // namespace

PackingCertificate certify_packing_bound_hinted(const RadialFn& f, const RootHints& hints, unsigned long bits) {
  if (hints.f_roots.empty()) throw DomainError("hinted verification needs the sign-change hint r_0");
  if (hints.delta <= 0) throw DomainError("delta must be positive");
  for (const auto* list : {&hints.f_roots, &hints.fhat_roots})
    for (std::size_t i = 0; i + 1 < list->size(); ++i)
      if ((*list)[i] >= (*list)[i + 1] || (*list)[i] <= 0) throw DomainError("root hints must be positive and increasing");

  PackingCertificate cert;
  cert.fn = f;
  cert.method = "hinted";
  UniPoly p = radial_poly(f);
  UniPoly h = radial_poly(fourier(f));
  check_normalization(p, h);
  cert.normalization = true;

  IntPoly P(p), P1 = P.derivative(), P2 = P1.derivative();
  const auto& R = hints.f_roots;
  std::string why;
  {
    // exactly one root in (0, floor r_1), and it lies below r_0
    const bool ray = R.size() == 1;
    Int top = ray ? Int(0) : floor_rat(R[1]);
    JacobiBound jb = ray ? jacobi_root_bound_ray(P, 0) : jacobi_root_bound(P, Int(0), top);
    bool ok = jb.bound == 1 && P.sign_at(R[0]) < 0;
    if (!ray) ok = ok && R[0] < Rat(top) && P.sign_at(Rat(top)) != 0;
    if (!ok) throw SignViolation("f", "first sign change not isolated below " + to_sci(R[0], 15));
  }
  for (std::size_t i = 1; i < R.size(); ++i)
    if (!window_ok(P, P1, P2, R[i], hints.delta, -1, why)) throw SignViolation("f", why);
  if (R.size() > 1 && !gaps_ok(P, R, 1, why)) throw SignViolation("f", why);
  cert.f_sign = true;

  IntPoly H(h), H1 = H.derivative(), H2 = H1.derivative();
  const auto& T = hints.fhat_roots;
  if (T.empty()) {
    if (jacobi_root_bound_ray(H, 0).bound != 0) throw SignViolation("f-hat", "possible root on (0, inf)");
  } else {
    Int top = floor_rat(T[0]);
    if (top > 0 && (H.sign_at(Rat(top)) <= 0 || jacobi_root_bound(H, Int(0), top).bound != 0))
      throw SignViolation("f-hat", "possible root below " + to_sci(T[0], 12));
    for (const Rat& t : T)
      if (!window_ok(H, H1, H2, t, hints.delta, +1, why)) throw SignViolation("f-hat", why);
    if (!gaps_ok(H, T, 0, why)) throw SignViolation("f-hat", why);
  }
  cert.fhat_sign = true;

  cert.z_threshold = R[0];
  RatInterval r_sq(R[0] / two_pi_hi(bits), R[0] / two_pi_lo(bits));
  cert.r = sqrt_enclosure(r_sq, bits);
  fill_density(cert, r_sq, bits);
  return cert;
}

ExclusionCertificate certify_length_exclusions(const RadialFn& f, const Int& shell_count_max,
                                               const Rat& shell_value_bound,
                                               const std::vector<RatInterval>& excluded, unsigned long bits) {
  ExclusionCertificate cert;
  cert.budget = Rat(shell_count_max) * shell_value_bound;
  cert.radii = excluded;
  const UniPoly p = radial_poly(f);
  // phi(z) = p(z) e^{-z/2} has critical points at the roots of q = p' - p/2.
  UniPoly q = p.derivative() - p * frac(1, 2);
  UniPoly q_sf = q;
  if (q.degree() > 0) {
    UniPoly g = gcd(q, q.derivative());
    if (g.degree() > 0) q_sf = divmod(q, g).first;
  }
  const Rat threshold = -f.scale * cert.budget / 2;  // compare unscaled values
  const Rat tpl = two_pi_lo(bits), tph = two_pi_hi(bits);

  for (const auto& rad : excluded) {
    if (rad.lo() < 0) throw DomainError("radii must be nonnegative");
    const Rat zlo = tpl * rad.lo() * rad.lo(), zhi = tph * rad.hi() * rad.hi();
    const std::string label = "[" + to_sci(rad.lo(), 12) + ", " + to_sci(rad.hi(), 12) + "]";
    Rat sup;
    bool have = false;
    auto take = [&](const Rat& v) {
      if (!have || v > sup) sup = v;
      have = true;
    };
    for (const Rat& z : {zlo, zhi}) {
      RatInterval v = damped_value(p, z, bits);
      if (v.hi() >= threshold) throw BudgetViolation(label);
      take(v.hi());
    }
    if (q_sf.degree() > 0) {
      for (RatInterval iv : isolate_roots(q_sf, RatInterval(zlo, zhi), (zhi - zlo) / 4096)) {
        for (int refine = 0;; ++refine) {
          RatInterval pv = p(iv);
          if (pv.hi() < 0) {
            Rat e_lo = exp_neg_interval(RatInterval(iv.lo() / 2, iv.hi() / 2), bits).lo();
            Rat bound = pv.hi() * e_lo;
            if (bound >= threshold) throw BudgetViolation(label);
            take(bound);
            break;
          }
          if (iv.is_point() || refine > 200) throw BudgetViolation(label);
          Rat m = iv.mid();
          int sm = q_sf.sign_at(m);
          if (sm == 0)
            iv = RatInterval::point(m);
          else if (sm == q_sf.sign_at(iv.lo()))
            iv = RatInterval(m, iv.hi());
          else
            iv = RatInterval(iv.lo(), m);
        }
      }
    }
    cert.sup_bound.push_back(sup / f.scale);
  }
  return cert;
}

RatInterval counting_lower_bound(const RadialFn& g, const Rat& shell_radius, const Rat& shell_radius_hi,
                                 const Rat& cutoff, unsigned long bits) {
  if (shell_radius <= 0 || shell_radius_hi < shell_radius || cutoff <= shell_radius_hi)
    throw DomainError("need 0 < shell_radius <= shell_radius_hi < cutoff");
  const UniPoly p = radial_poly(g);
  const UniPoly h = radial_poly(fourier(g));
  const Rat tpl = two_pi_lo(bits), tph = two_pi_hi(bits);

  SignCheck c1 = certify_sign_on_ray(p, tpl * cutoff * cutoff, -1);
  if (!c1.ok) throw PreconditionViolation("g <= 0 beyond the cutoff fails: " + c1.witness);
  SignCheck c2 = certify_sign_on_ray(h, 0, +1);
  if (!c2.ok) throw PreconditionViolation("g-hat >= 0 fails: " + c2.witness);
  const Rat za = tpl * shell_radius * shell_radius, zb = tph * shell_radius_hi * shell_radius_hi;
  SignCheck c3 = certify_strict_sign_on_interval(p, za, zb, +1);
  if (!c3.ok) throw PreconditionViolation("g > 0 on the shell fails: " + c3.witness);
  UniPoly q = p.derivative() - p * frac(1, 2);
  SignCheck c4 = certify_strict_sign_on_interval(q, za, zb, -1);
  if (!c4.ok) throw PreconditionViolation("g decreasing on the shell fails: " + c4.witness);

  // g is decreasing on [za, zb] in z, so the value at the true 2 pi rho^2
  // lies between the values at the two ends of its enclosure.
  const Rat zr_lo = tpl * shell_radius * shell_radius, zr_hi = tph * shell_radius * shell_radius;
  RatInterval top = damped_value(p, zr_lo, bits), bottom = damped_value(p, zr_hi, bits);
  RatInterval g_shell(bottom.lo(), top.hi());
  RatInterval numer = RatInterval::point(h(Rat(0)) - p(Rat(0)));
  return numer / g_shell;
}

namespace {

// floor(c pi 10^8) / 10^8 with enough precision to make the floor exact.
Rat floor_pi_multiple(long c, unsigned long bits) {
  const Int scale = int_pow(Int(10), 8);
  for (unsigned long b = bits;; b *= 2) {
    RatInterval pi = pi_enclosure(b);
    Int lo = floor_rat(pi.lo() * c * Rat(scale)), hi = floor_rat(pi.hi() * c * Rat(scale));
    if (lo == hi) return frac(lo, scale);
  }
}

}  // namespace

RootSpec leech_counting_spec(unsigned long bits) {
  std::vector<Rat> z(11);
  for (int i = 1; i <= 10; ++i) z[i] = floor_pi_multiple(4 * (i + 1), bits);
  RootSpec s;
  s.push_back({z[2], 1, Side::F});
  for (int i = 3; i <= 10; ++i) s.push_back({z[i], 2, Side::F});
  for (int i = 1; i <= 10; ++i) s.push_back({z[i], 2, Side::FHat});
  return s;
}

RootSpec e8_counting_spec(unsigned long bits) {
  std::vector<Rat> z(4);
  for (int i = 1; i <= 3; ++i) z[i] = floor_pi_multiple(4 * i, bits);
  RootSpec s;
  // The sign change must sit below 8 pi (1 - mu)^2, so it is placed at 25.13
  // rather than at the truncation of 8 pi.
  s.push_back({frac(2513, 100), 1, Side::F});
  s.push_back({z[3], 2, Side::F});
  for (int i = 1; i <= 3; ++i) s.push_back({z[i], 2, Side::FHat});
  return s;
}

}  // namespace leechcert
