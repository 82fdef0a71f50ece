#include "turnwkb/specfun.hpp"

#include <cmath>

#include "turnwkb/dd.hpp"

namespace turnwkb {
namespace {

// Ai(0) = 3^{-2/3}/Gamma(2/3) and Ai'(0) = -3^{-1/3}/Gamma(1/3) (DLMF 9.2.3-4),
// stored as double-double splits for the series branch.
constexpr DD kAi0{0.3550280538878172, 2.05233632436212e-17};
constexpr DD kAip0{-0.2588194037928068, 2.522243111610832e-17};

constexpr double kSqrtPi = 1.7724538509055160273;

// Series/asymptotic crossover points.  The Maclaurin branch runs in
// double-double because it cancels ~19 of its ~31 digits at the edges;
// the asymptotic tails are then accurate to ~3e-13 of the envelope.
constexpr double kNegSwitch = -16.0;
constexpr double kPosSwitch = 10.5;

// u_k, v_k coefficients of the large-|z| expansions (DLMF 9.7.2):
// u_0 = 1, u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / (216 k (2k-1)), v_k = u_k (6k+1)/(1-6k).
struct UvTable {
  double u[21];
  double v[21];
};

constexpr UvTable make_uv_table() {
  UvTable t{};
  t.u[0] = 1.0;
  t.v[0] = 1.0;
  for (int k = 1; k <= 20; ++k) {
    double num = (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0);
    t.u[k] = t.u[k - 1] * num / (216.0 * k * (2.0 * k - 1.0));
    t.v[k] = t.u[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
  }
  return t;
}

constexpr UvTable kUv = make_uv_table();

// Maclaurin solution pair Ai = Ai(0) f + Ai'(0) g,
// f = sum a_k z^{3k} (a_k = a_{k-1}/((3k)(3k-1))), g = z sum b_k z^{3k}
// (b_k = b_{k-1}/((3k+1)(3k))), with term recurrences in double-double.
AiryPair airy_series(double z) {
  const DD z2 = DD(z) * DD(z);
  const DD z3 = z2 * DD(z);
  DD ta(1.0);       // a_k z^{3k}
  DD sb(1.0);       // b_k z^{3k}
  DD f(1.0), fp(0.0), g(z), gp(1.0);
  for (int k = 1; k <= 200; ++k) {
    const double tk = 3.0 * k;
    fp = fp + ta * z2 / (tk - 1.0);
    gp = gp + sb * z3 / tk;
    ta = ta * z3 / ((tk) * (tk - 1.0));
    sb = sb * z3 / ((tk + 1.0) * tk);
    f = f + ta;
    g = g + sb * z;
    if (std::abs(ta.hi) < 1e-40 * (1.0 + std::abs(f.hi)) &&
        std::abs(sb.hi) < 1e-40 * (1.0 + std::abs(g.hi)))
      break;
  }
  DD ai = kAi0 * f + kAip0 * g;
  DD aip = kAi0 * fp + kAip0 * gp;
  return {ai.value(), aip.value()};
}

// Oscillatory tail, z <= -16 (DLMF 9.7.9/9.7.10 with four terms per sum).
// The phase xi = (2/3)|z|^{3/2} is carried in long double: at |z| = 10^3 it
// reaches 2.1e4, where plain double would already cost ~1e-12 of phase.
AiryPair airy_neg_asym(double z) {
  const long double w = -static_cast<long double>(z);
  const long double xi = (2.0L / 3.0L) * w * sqrtl(w);
  const long double theta = xi - 0.78539816339744830961566L;  // xi - pi/4
  const long double c = cosl(theta), s = sinl(theta);
  const long double rxi = 1.0L / xi, rxi2 = rxi * rxi;

  long double P = 0.0L, Q = 0.0L, R = 0.0L, S = 0.0L;
  long double even = 1.0L;  // xi^{-2k}
  for (int k = 0; k <= 3; ++k) {
    const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
    P += sign * kUv.u[2 * k] * even;
    Q += sign * kUv.u[2 * k + 1] * even * rxi;
    R += sign * kUv.v[2 * k] * even;
    S += sign * kUv.v[2 * k + 1] * even * rxi;
    even *= rxi2;
  }
  const double wq = std::sqrt(std::sqrt(-z));  // |z|^{1/4}
  const double ai = static_cast<double>((c * P + s * Q)) / (kSqrtPi * wq);
  const double aip = static_cast<double>((s * R - c * S)) * wq / kSqrtPi;
  return {ai, aip};
}

// Recessive tail, z > 10.5 (DLMF 9.7.5/9.7.6), adaptive truncation.
AiryPair airy_pos_asym(double z) {
  const double xi = (2.0 / 3.0) * z * std::sqrt(z);
  const double rxi = 1.0 / xi;
  double su = 1.0, sv = 1.0, p = 1.0;
  for (int k = 1; k <= 20; ++k) {
    p *= -rxi;
    const double du = kUv.u[k] * p, dv = kUv.v[k] * p;
    su += du;
    sv += dv;
    if (std::abs(du) + std::abs(dv) < 1e-18) break;
  }
  const double e = std::exp(-xi);
  const double zq = std::sqrt(std::sqrt(z));
  return {e * su / (2.0 * kSqrtPi * zq), -e * sv * zq / (2.0 * kSqrtPi)};
}

}  // namespace

AiryPair airy(double z) {
  if (z <= kNegSwitch) return airy_neg_asym(z);
  if (z > kPosSwitch) return airy_pos_asym(z);
  return airy_series(z);
}

IcPair airy_scaled_ic(double x, double eps) {
  const double s = std::pow(eps, -2.0 / 3.0);
  const AiryPair a = airy(-x * s);
  return {std::pow(eps, -1.0 / 6.0) * a.ai, -std::pow(eps, 1.0 / 6.0) * a.aip};
}

}  // namespace turnwkb
