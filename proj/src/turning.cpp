#include <cmath>
#include <string>

#include "turnwkb/errors.hpp"
#include "turnwkb/specfun.hpp"

namespace turnwkb {
namespace {

// G(t) = (3/4)(arccos t - t sqrt(1-t^2)) = (-zeta)^{3/2} >= 0 on (-1, 1].
// The direct form cancels near t = 1; there we switch to the expansion in
// u = 1 - t,
//   G = (sqrt2/2) u^{3/2} (2 - (3/10)u - (3/112)u^2 - (1/192)u^3
//        - (15/11264)u^4 - (21/53248)u^5 - (21/163840)u^6 - ...),
// whose truncation error stays below 1e-15 relative for u <= 0.04.
double g_of_t(double t) {
  const double u = 1.0 - t;
  if (u <= 0.04) {
    const double poly =
        2.0 + u * (-3.0 / 10.0 +
              u * (-3.0 / 112.0 +
              u * (-1.0 / 192.0 +
              u * (-15.0 / 11264.0 +
              u * (-21.0 / 53248.0 + u * (-21.0 / 163840.0))))));
    return 0.5 * std::sqrt(2.0) * u * std::sqrt(u) * poly;
  }
  return 0.75 * (std::acos(t) - t * std::sqrt(1.0 - t * t));
}

}  // namespace

TurningMaps turning_maps(double t) {
  if (!(t > -1.0) || !(t <= 1.0))
    throw DomainError("turning_maps: t must lie in (-1, 1], got " + std::to_string(t));
  const double g = g_of_t(t);
  const double zeta = -std::cbrt(g * g);
  double varphi;
  if (1.0 - t < 1e-8) {
    varphi = 0.8908987181403393;  // analytic limit 2^{-1/6}
  } else {
    varphi = std::pow(-zeta / (1.0 - t * t), 0.25);
  }
  return {zeta, varphi};
}

double h_mu_log(double mu) {
  const double mu2 = mu * mu;
  constexpr double ln2 = 0.6931471805599453;
  return -(mu2 / 4.0 + 0.25) * ln2 - mu2 / 4.0 + (mu2 / 2.0 - 0.5) * std::log(mu);
}

}  // namespace turnwkb
