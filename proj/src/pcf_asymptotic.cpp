#include <cmath>
#include <string>

#include "turnwkb/errors.hpp"
#include "turnwkb/specfun.hpp"

namespace turnwkb {

// Leading term of the uniform (Airy-type) turning-point expansion of U:
// with t = 1 + 2 k1 x / k2 and mu^2 = k2^2/(4 eps sqrt(-k1^3)),
//   U(nu, z(t)) / h(mu)   ~  2 sqrt(pi) mu^{1/3} varphi(t) Ai(mu^{4/3} zeta(t)),
//   U'(nu, z(t)) / h(mu)  ~  sqrt(2 pi) mu^{2/3} Ai'(mu^{4/3} zeta(t)) / varphi(t),
// keeping only the leading coefficients A_0 = D_0 = 1 of the expansion and
// approximating the amplitude ratio f(mu) = g(mu)/h(mu) by 1; the dropped
// corrections are O(eps) relative, uniformly on t in [-1+delta, 1]
// (DLMF 12.10.35-12.10.46 give the full expansion).
ScaledPcfPair pcf_uniform_asymptotic(double k1, double k2, double eps, double x,
                                     double delta_tilde) {
  if (!(k1 < 0.0) || !(k2 > 0.0) || !(eps > 0.0) || !(delta_tilde > 0.0))
    throw DomainError("pcf_uniform_asymptotic: requires k1 < 0, k2 > 0, eps > 0, delta_tilde > 0");
  const double t = 1.0 + 2.0 * k1 * x / k2;
  if (!(t >= -1.0 + delta_tilde) || !(t <= 1.0))
    throw DomainError("pcf_uniform_asymptotic: t = " + std::to_string(t) +
                      " outside the validity strip [-1+delta, 1]");

  const double kappa = -k1;
  const double mu2 = k2 * k2 / (4.0 * eps * std::sqrt(kappa * kappa * kappa));
  const double mu = std::sqrt(mu2);
  const TurningMaps tm = turning_maps(t);
  const AiryPair a = airy(std::pow(mu, 4.0 / 3.0) * tm.zeta);

  constexpr double sqrt_pi = 1.7724538509055160273;
  constexpr double sqrt_2pi = 2.5066282746310005024;
  const double mu13 = std::cbrt(mu);
  ScaledPcfPair out;
  out.u_over_h = 2.0 * sqrt_pi * mu13 * tm.varphi * a.ai;
  out.du_over_h = sqrt_2pi * mu13 * mu13 * a.aip / tm.varphi;
  out.log_h_mu = h_mu_log(mu);
  return out;
}

}  // namespace turnwkb
