#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "turnwkb/errors.hpp"
#include "turnwkb/specfun.hpp"

// Scaled parabolic cylinder pair U(nu,z)/h(mu), U'(nu,z)/h(mu).
//
// U is assembled from the even/odd Kummer solutions of the Weber equation
// (DLMF 12.4.1, 12.7.12, 13.2.2):
//   U(a,z) = c1 w1(a,z) - c2 w2(a,z),
//   w1 = e^{-z^2/4} M(a/2+1/4, 1/2, z^2/2),   w2 = z e^{-z^2/4} M(a/2+3/4, 3/2, z^2/2),
//   c1 = sqrt(pi) 2^{-a/2-1/4} / Gamma(3/4+a/2),
//   c2 = sqrt(pi) 2^{-a/2+1/4} / Gamma(1/4+a/2).
// The assembly cancels catastrophically for large |a| (the summands carry
// e^{+z^2/4}-type growth while U itself decays), so everything runs in MPFR
// at a budget of 20 + ceil(mu^2 log10 e) decimal digits, with an a
// posteriori lost-bits certificate: the largest intermediate magnitude is
// tracked and the result is accepted only if at least 133 bits (~40 digits)
// of the working precision survive the cancellation.

namespace turnwkb {
namespace {

constexpr long kMinSurvivingBits = 133;

// RAII wrapper for a single mpfr number.
class Mp {
 public:
  explicit Mp(mpfr_prec_t p) { mpfr_init2(v_, p); }
  ~Mp() { mpfr_clear(v_); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  operator mpfr_ptr() { return v_; }
  operator mpfr_srcptr() const { return v_; }
  // For mpfr macro call sites, which cannot use the implicit conversions.
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

long exp_or_min(mpfr_srcptr x) {
  return mpfr_zero_p(x) ? mpfr_get_emin() : mpfr_get_exp(x);
}

// Kummer series M(b, c, x) = sum_j (b)_j/(c)_j x^j/j!.  Reports the largest
// exponent reached by any term or partial sum (cancellation bookkeeping).
void kummer_m(mpfr_ptr out, long* max_exp, mpfr_srcptr b, mpfr_srcptr c,
              mpfr_srcptr x, mpfr_prec_t p, long jmax) {
  Mp term(p), bj(p), cj(p), t(p);
  mpfr_set_ui(term, 1, MPFR_RNDN);
  mpfr_set_ui(out, 1, MPFR_RNDN);
  mpfr_set(bj, b, MPFR_RNDN);
  mpfr_set(cj, c, MPFR_RNDN);
  *max_exp = exp_or_min(out);
  for (long j = 0; j < jmax; ++j) {
    mpfr_mul(t, term, bj, MPFR_RNDN);
    mpfr_div(t, t, cj, MPFR_RNDN);
    mpfr_mul(t, t, x, MPFR_RNDN);
    mpfr_div_ui(term, t, static_cast<unsigned long>(j + 1), MPFR_RNDN);
    if (mpfr_zero_p(term.raw())) return;
    mpfr_add(out, out, term, MPFR_RNDN);
    *max_exp = std::max({*max_exp, exp_or_min(term), exp_or_min(out)});
    if (exp_or_min(term) < *max_exp - static_cast<long>(p) - 20) return;
    mpfr_add_ui(bj, bj, 1, MPFR_RNDN);
    mpfr_add_ui(cj, cj, 1, MPFR_RNDN);
  }
  throw PrecisionError("pcf_scaled: Kummer series did not converge within its term cap");
}

// sqrt(pi) * 2^{-a/2 -+ 1/4} / Gamma(g) with the exact-pole convention:
// Gamma has poles at nonpositive integers, where the reciprocal -- and
// hence the whole coefficient -- is exactly zero.
void connection_coeff(mpfr_ptr out, mpfr_srcptr a, double quarter_shift,
                      mpfr_srcptr g, mpfr_prec_t p) {
  if (mpfr_integer_p(g) && mpfr_sgn(g) <= 0) {
    mpfr_set_ui(out, 0, MPFR_RNDN);
    return;
  }
  Mp e(p), t(p);
  mpfr_div_si(e, a, -2, MPFR_RNDN);                  // -a/2
  mpfr_add_d(e, e, quarter_shift, MPFR_RNDN);        // -a/2 -+ 1/4
  mpfr_exp2(out, e, MPFR_RNDN);
  mpfr_const_pi(t, MPFR_RNDN);
  mpfr_sqrt(t, t, MPFR_RNDN);
  mpfr_mul(out, out, t, MPFR_RNDN);
  mpfr_gamma(t, g, MPFR_RNDN);
  mpfr_div(out, out, t, MPFR_RNDN);
}

struct EvalResult {
  double u_over_h;
  double du_over_h;
  double log_h;
  bool certified;
};

EvalResult evaluate_at(double k1, double k2, double eps, double x, bool mirror,
                       mpfr_prec_t p, long jmax) {
  Mp kap(p), mu2(p), mu(p), a(p), z(p), lnh(p), t(p), t2(p);

  mpfr_set_d(kap, -k1, MPFR_RNDN);
  // mu^2 = k2^2 / (4 eps sqrt(kappa^3)); a = nu = -mu^2/2
  mpfr_pow_ui(t, kap, 3, MPFR_RNDN);
  mpfr_sqrt(t, t, MPFR_RNDN);
  mpfr_mul_d(t, t, eps, MPFR_RNDN);
  mpfr_mul_ui(t, t, 4, MPFR_RNDN);
  mpfr_set_d(mu2, k2, MPFR_RNDN);
  mpfr_sqr(mu2, mu2, MPFR_RNDN);
  mpfr_div(mu2, mu2, t, MPFR_RNDN);
  mpfr_sqrt(mu, mu2, MPFR_RNDN);
  mpfr_div_si(a, mu2, -2, MPFR_RNDN);

  // z = (k2 + 2 k1 x) / (sqrt(2 eps) kappa^{3/4}), negated for the mirror branch
  mpfr_set_d(t, 0.75, MPFR_RNDN);
  mpfr_pow(t, kap, t, MPFR_RNDN);
  mpfr_set_d(t2, 2.0 * eps, MPFR_RNDN);
  mpfr_sqrt(t2, t2, MPFR_RNDN);
  mpfr_mul(t, t, t2, MPFR_RNDN);
  mpfr_set_d(z, k2, MPFR_RNDN);
  mpfr_add_d(z, z, 2.0 * k1 * x, MPFR_RNDN);
  mpfr_div(z, z, t, MPFR_RNDN);
  if (mirror) mpfr_neg(z, z, MPFR_RNDN);

  // ln h(mu) = -(mu^2/4 + 1/4) ln 2 - mu^2/4 + (mu^2/2 - 1/2) ln mu
  Mp q(p);
  mpfr_div_ui(q, mu2, 4, MPFR_RNDN);
  mpfr_add_d(t, q, 0.25, MPFR_RNDN);
  mpfr_const_log2(t2, MPFR_RNDN);
  mpfr_mul(lnh, t, t2, MPFR_RNDN);
  mpfr_neg(lnh, lnh, MPFR_RNDN);
  mpfr_sub(lnh, lnh, q, MPFR_RNDN);
  mpfr_div_ui(t, mu2, 2, MPFR_RNDN);
  mpfr_sub_d(t, t, 0.5, MPFR_RNDN);
  mpfr_log(t2, mu, MPFR_RNDN);
  mpfr_mul(t, t, t2, MPFR_RNDN);
  mpfr_add(lnh, lnh, t, MPFR_RNDN);

  // Kummer arguments
  Mp al(p), be(p), X(p), E(p), half(p), threehalf(p), fivehalf(p);
  mpfr_div_ui(al, a, 2, MPFR_RNDN);
  mpfr_add_d(al, al, 0.25, MPFR_RNDN);     // alpha = a/2 + 1/4
  mpfr_div_ui(be, a, 2, MPFR_RNDN);
  mpfr_add_d(be, be, 0.75, MPFR_RNDN);     // beta = a/2 + 3/4
  mpfr_sqr(X, z, MPFR_RNDN);
  mpfr_div_ui(X, X, 2, MPFR_RNDN);         // X = z^2/2
  mpfr_div_ui(E, X, 2, MPFR_RNDN);
  mpfr_neg(E, E, MPFR_RNDN);
  mpfr_exp(E, E, MPFR_RNDN);               // E = e^{-z^2/4}
  mpfr_set_d(half, 0.5, MPFR_RNDN);
  mpfr_set_d(threehalf, 1.5, MPFR_RNDN);
  mpfr_set_d(fivehalf, 2.5, MPFR_RNDN);

  Mp m1(p), m1p(p), m2(p), m2p(p), alp1(p), bep1(p);
  long e_m1, e_m1p, e_m2, e_m2p;
  mpfr_add_ui(alp1, al, 1, MPFR_RNDN);
  mpfr_add_ui(bep1, be, 1, MPFR_RNDN);
  kummer_m(m1, &e_m1, al, half, X, p, jmax);
  kummer_m(m1p, &e_m1p, alp1, threehalf, X, p, jmax);
  kummer_m(m2, &e_m2, be, threehalf, X, p, jmax);
  kummer_m(m2p, &e_m2p, bep1, fivehalf, X, p, jmax);

  Mp c1(p), c2(p);
  connection_coeff(c1, a, -0.25, be, p);   // / Gamma(3/4 + a/2)
  connection_coeff(c2, a, +0.25, al, p);   // / Gamma(1/4 + a/2)

  Mp c1e(p), c2e(p);
  mpfr_mul(c1e, c1, E, MPFR_RNDN);
  mpfr_mul(c2e, c2, E, MPFR_RNDN);

  long peak = mpfr_get_emin();
  auto track = [&peak](mpfr_srcptr v, long series_peak, long series_final) {
    // v was assembled from a series whose internal peak exceeded its final
    // value by (series_peak - series_final); lift v's exponent accordingly.
    if (!mpfr_zero_p(v)) peak = std::max(peak, mpfr_get_exp(v) + (series_peak - series_final));
  };

  // U = c1e M1 - c2e z M2
  Mp term1(p), term2(p), U(p);
  mpfr_mul(term1, c1e, m1, MPFR_RNDN);
  mpfr_mul(term2, c2e, m2, MPFR_RNDN);
  mpfr_mul(term2, term2, z, MPFR_RNDN);
  mpfr_sub(U, term1, term2, MPFR_RNDN);
  track(term1, e_m1, exp_or_min(m1));
  track(term2, e_m2, exp_or_min(m2));

  // U' = c1e (-(z/2) M1 + 2 al z M1p) - c2e ((1 - z^2/2) M2 + (2 be/3) z^2 M2p)
  Mp dU(p), piece(p);
  mpfr_mul(piece, z, m1, MPFR_RNDN);
  mpfr_div_si(piece, piece, -2, MPFR_RNDN);
  mpfr_mul(piece, piece, c1e, MPFR_RNDN);
  track(piece, e_m1, exp_or_min(m1));
  mpfr_set(dU, piece.raw(), MPFR_RNDN);

  mpfr_mul(piece, al, z, MPFR_RNDN);
  mpfr_mul_ui(piece, piece, 2, MPFR_RNDN);
  mpfr_mul(piece, piece, m1p, MPFR_RNDN);
  mpfr_mul(piece, piece, c1e, MPFR_RNDN);
  track(piece, e_m1p, exp_or_min(m1p));
  mpfr_add(dU, dU, piece, MPFR_RNDN);

  mpfr_ui_sub(t, 1, X, MPFR_RNDN);         // 1 - z^2/2
  mpfr_mul(piece, t, m2, MPFR_RNDN);
  mpfr_mul(piece, piece, c2e, MPFR_RNDN);
  track(piece, e_m2, exp_or_min(m2));
  mpfr_sub(dU, dU, piece, MPFR_RNDN);

  mpfr_mul(piece, be, X, MPFR_RNDN);       // (2 be/3) z^2 = (4/3) be X
  mpfr_mul_ui(piece, piece, 4, MPFR_RNDN);
  mpfr_div_ui(piece, piece, 3, MPFR_RNDN);
  mpfr_mul(piece, piece, m2p, MPFR_RNDN);
  mpfr_mul(piece, piece, c2e, MPFR_RNDN);
  track(piece, e_m2p, exp_or_min(m2p));
  mpfr_sub(dU, dU, piece, MPFR_RNDN);

  const long exp_ref = std::max(exp_or_min(U), exp_or_min(dU));
  const long lost = peak - exp_ref;
  const bool certified =
      static_cast<long>(p) - lost >= kMinSurvivingBits && !mpfr_nan_p(U.raw()) && !mpfr_nan_p(dU.raw());

  // Scale by e^{-ln h} and round to double.
  Mp scale(p);
  mpfr_neg(scale, lnh, MPFR_RNDN);
  mpfr_exp(scale, scale, MPFR_RNDN);
  mpfr_mul(U, U, scale, MPFR_RNDN);
  mpfr_mul(dU, dU, scale, MPFR_RNDN);

  EvalResult r;
  r.u_over_h = mpfr_get_d(U, MPFR_RNDN);
  r.du_over_h = mpfr_get_d(dU, MPFR_RNDN);
  r.log_h = mpfr_get_d(lnh, MPFR_RNDN);
  r.certified = certified;
  return r;
}

ScaledPcfPair pcf_scaled_core(double k1, double k2, double eps, double x, bool mirror) {
  if (!(k1 < 0.0) || !(k2 > 0.0) || !(eps > 0.0) || !std::isfinite(x))
    throw DomainError("pcf_scaled: requires k1 < 0, k2 > 0, eps > 0");
  if (!(x >= 0.0) || !(k2 + k1 * x > 0.0))
    throw DomainError("pcf_scaled: x must lie in [0, -k2/k1)");

  const double kappa = -k1;
  const double mu2 = k2 * k2 / (4.0 * eps * std::sqrt(kappa * kappa * kappa));
  const double digits = 20.0 + std::ceil(mu2 * 0.434294481903251828);  // mu^2 log10 e
  mpfr_prec_t p = static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 64;
  const long jmax = static_cast<long>(6.0 * mu2) + 4000;

  EvalResult r = evaluate_at(k1, k2, eps, x, mirror, p, jmax);
  if (!r.certified) {
    p = static_cast<mpfr_prec_t>(p * 3 / 2);
    r = evaluate_at(k1, k2, eps, x, mirror, p, jmax);
    if (!r.certified)
      throw PrecisionError("pcf_scaled: cancellation certificate failed at escalated precision (eps=" +
                           std::to_string(eps) + ", x=" + std::to_string(x) + ")");
  }
  return {r.u_over_h, r.du_over_h, r.log_h};
}

}  // namespace

ScaledPcfPair pcf_scaled(double k1, double k2, double eps, double x) {
  return pcf_scaled_core(k1, k2, eps, x, false);
}

ScaledPcfPair pcf_scaled_mirror(double k1, double k2, double eps, double x) {
  return pcf_scaled_core(k1, k2, eps, x, true);
}

}  // namespace turnwkb
