#pragma once

namespace turnwkb {

// Airy function value and derivative at a real argument.
struct AiryPair {
  double ai;
  double aip;
};

// Parabolic cylinder function U(nu, z) and its z-derivative, both divided
// by the normalizer h(mu) so the pair stays finite when U itself overflows,
// plus ln h(mu) to undo the scaling if a caller ever needs the raw values.
struct ScaledPcfPair {
  double u_over_h;
  double du_over_h;
  double log_h_mu;
};

// Liouville-Green variable zeta(t) and amplitude factor varphi(t) of the
// turning-point (uniform Airy-type) representation of U.
struct TurningMaps {
  double zeta;
  double varphi;
};

// Initial data (psi, eps*psi') for the marching start.
struct IcPair {
  double psi;
  double eps_dpsi;
};

// Ai(z), Ai'(z) for any finite real z.  Power series with double-double
// accumulation on (-16, 10.5], asymptotic expansions beyond.
AiryPair airy(double z);

// (eps^{-1/6} Ai(-x eps^{-2/3}), -eps^{1/6} Ai'(-x eps^{-2/3})): the
// eps-uniformly bounded initial data of the linear-coefficient problem.
IcPair airy_scaled_ic(double x, double eps);

// Scaled PCF pair for the quadratic coefficient a(x) = k1 x^2 + k2 x
// (k1 < 0 < k2), evaluated at x via
//   nu = -k2^2 / (8 eps sqrt(-k1^3)),   z(x) = (k2 + 2 k1 x) / (sqrt(2 eps) (-k1^3)^{1/4}).
// Arbitrary-precision internally; certified to >= 40 significant digits
// before rounding to double.  Throws DomainError if x lies outside
// [0, -k2/k1), PrecisionError if certification fails at the digit budget.
ScaledPcfPair pcf_scaled(double k1, double k2, double eps, double x);

// Same scaled evaluation at the mirrored argument -z(x): returns
// (U(nu,-z(x))/h, dU/dw(nu,w)|_{w=-z(x)}/h).  U(nu,z) and U(nu,-z) form a
// fundamental system on the quadratic region; the two-piece matcher needs both.
ScaledPcfPair pcf_scaled_mirror(double k1, double k2, double eps, double x);

// Leading-order uniform asymptotic approximation of the same scaled pair:
//   U/h    ~  2 sqrt(pi) mu^{1/3} varphi(t) Ai(mu^{4/3} zeta(t)),
//   U'/h   ~  sqrt(2 pi) mu^{2/3} Ai'(mu^{4/3} zeta(t)) / varphi(t),
// valid for t = 1 + 2 k1 x / k2 in [-1 + delta_tilde, 1], turning point
// t = 1 included; relative error O(eps).  Throws DomainError outside the strip.
ScaledPcfPair pcf_uniform_asymptotic(double k1, double k2, double eps, double x,
                                     double delta_tilde = 1e-3);

// zeta(t) = -((3/4) arccos t - (3t/4) sqrt(1-t^2))^{2/3} and
// varphi(t) = (-zeta/(1-t^2))^{1/4} on (-1, 1]; the t -> 1 limit
// varphi(1) = 2^{-1/6} is returned for |1-t| < 1e-8.
TurningMaps turning_maps(double t);

// ln h(mu) = -(mu^2/4 + 1/4) ln 2 - mu^2/4 + (mu^2/2 - 1/2) ln mu.
double h_mu_log(double mu);

}  // namespace turnwkb
