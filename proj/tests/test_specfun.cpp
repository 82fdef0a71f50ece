#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "turnwkb/errors.hpp"
#include "turnwkb/specfun.hpp"
#include "oracles/airy_oracle_data.hpp"
#include "oracles/pcf_oracle_data.hpp"
#include "oracles/coeffphase_oracle_data.hpp"

using namespace turnwkb;
namespace oracle = turnwkb::oracle;

namespace {

// Relative error scaled by the local envelope hypot(f, f'/sqrt(1+|z|)),
// so the metric stays meaningful at the zeros of Ai and Ai', where a plain
// relative error would blow up for no numerical reason.
double env_err_ai(const oracle::AiryRow& r, const AiryPair& p) {
  const double s = std::sqrt(1.0 + std::abs(r.z));
  return std::abs(p.ai - r.ai) / std::hypot(r.ai, r.aip / s);
}

double env_err_aip(const oracle::AiryRow& r, const AiryPair& p) {
  const double s = std::sqrt(1.0 + std::abs(r.z));
  return std::abs(p.aip - r.aip) / std::hypot(r.aip, r.ai * s);
}

}  // namespace

TEST_CASE("airy matches the frozen reference grid on [-1000, 10]") {
  double worst_ai = 0.0, worst_aip = 0.0;
  for (const auto& r : oracle::kAiryGrid) {
    const AiryPair p = airy(r.z);
    worst_ai = std::max(worst_ai, env_err_ai(r, p));
    worst_aip = std::max(worst_aip, env_err_aip(r, p));
  }
  CHECK(worst_ai < 1e-12);
  CHECK(worst_aip < 1e-12);
}

TEST_CASE("airy stays accurate across the series/asymptotic crossovers") {
  // The band samples straddle the internal representation switches; a defect
  // there shows up as a localized accuracy cliff.
  for (const auto& r : oracle::kAiryBand) {
    const AiryPair p = airy(r.z);
    CHECK(env_err_ai(r, p) < 5e-12);
    CHECK(env_err_aip(r, p) < 5e-12);
    CHECK(std::abs(p.ai - r.ai) < 1e-10 * std::abs(r.ai));
    CHECK(std::abs(p.aip - r.aip) < 1e-10 * std::abs(r.aip));
  }
}

TEST_CASE("airy reproduces the exact origin values") {
  // Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3), both frozen
  // as correctly rounded doubles.
  const AiryPair p = airy(0.0);
  CHECK(std::abs(p.ai - oracle::kAi0Hi) <= 1.2e-16);
  CHECK(std::abs(p.aip - oracle::kAip0Hi) <= 1.2e-16);
}

TEST_CASE("airy global maximum on the negative axis") {
  const AiryPair p = airy(oracle::kAiryArgmax);
  CHECK(std::abs(p.ai - oracle::kAiryMax) <= 1e-15);
  // Stationarity: Ai'' = z Ai, so an argmax rounded to double leaves a
  // derivative of order |z Ai| * ulp only.
  CHECK(std::abs(p.aip) <= 1e-13);
}

TEST_CASE("scaled parabolic cylinder pair matches the frozen references") {
  for (const auto& r : oracle::kPcfRows) {
    const ScaledPcfPair s = pcf_scaled(r.k1, r.k2, r.eps, r.x);
    const double den = std::hypot(r.u_over_h, r.du_over_h);
    CHECK(std::abs(s.u_over_h - r.u_over_h) < 1e-13 * den);
    CHECK(std::abs(s.du_over_h - r.du_over_h) < 1e-13 * den);
    CHECK(std::abs(s.log_h_mu - r.log_h_mu) <= 1e-14 * std::abs(r.log_h_mu));
  }
}

TEST_CASE("mirrored pcf branch agrees with the plain one where z = 0") {
  // For a(x) = k1 x^2 + k2 x the scaling argument z(x) vanishes at
  // x = -k2/(2 k1); there U(nu, z) and U(nu, -z) coincide, and both reported
  // derivatives are taken with respect to the function's own argument, so
  // they coincide as well.
  const double eps = 0.0625;
  const ScaledPcfPair a = pcf_scaled(-0.5, 1.0, eps, 1.0);
  const ScaledPcfPair b = pcf_scaled_mirror(-0.5, 1.0, eps, 1.0);
  const double den = std::hypot(a.u_over_h, a.du_over_h);
  CHECK(std::abs(a.u_over_h - b.u_over_h) < 1e-13 * den);
  CHECK(std::abs(a.du_over_h - b.du_over_h) < 1e-13 * den);
  CHECK(a.log_h_mu == b.log_h_mu);
}

TEST_CASE("pcf evaluation rejects arguments outside the admissible segment") {
  CHECK_THROWS_AS(pcf_scaled(-0.5, 1.0, 0.0625, -0.1), DomainError);
  CHECK_THROWS_AS(pcf_scaled(-0.5, 1.0, 0.0625, 2.1), DomainError);
}

TEST_CASE("turning-point maps match the frozen references") {
  for (const auto& r : oracle::kTurning) {
    const TurningMaps t = turning_maps(r.t);
    if (1.0 - r.t < 1e-6) {
      // zeta(t) ~ -2^{1/3}(1 - t) near t = 1: the defining combination
      // (3/4) arccos t - (3t/4) sqrt(1-t^2) cancels to O((1-t)^{3/2}), so
      // double evaluation keeps absolute, not relative, accuracy here.
      CHECK(std::abs(t.zeta - r.zeta) < 1e-15);
      CHECK(std::abs(t.varphi - r.varphi) < 1e-7 * r.varphi);
    } else {
      CHECK(std::abs(t.zeta - r.zeta) < 1e-12 * std::abs(r.zeta));
      CHECK(std::abs(t.varphi - r.varphi) < 1e-12 * r.varphi);
    }
  }
}

TEST_CASE("turning-point maps at the endpoints") {
  const TurningMaps t1 = turning_maps(1.0);
  CHECK(std::abs(t1.zeta) <= 1e-14);
  CHECK(std::abs(t1.varphi - std::pow(2.0, -1.0 / 6.0)) <= 1e-15);

  const TurningMaps t0 = turning_maps(0.0);
  CHECK(std::abs(t0.zeta - oracle::kZetaAt0) < 1e-13);
  CHECK(std::abs(t0.varphi - oracle::kVarphiAt0) < 1e-13);
}

TEST_CASE("pcf normalizer exponent") {
  CHECK(std::abs(h_mu_log(1.0) - oracle::kHMuLog1) <=
        1e-14 * std::abs(oracle::kHMuLog1));
  CHECK(std::abs(h_mu_log(3.7) - oracle::kHMuLog37) <=
        1e-14 * std::abs(oracle::kHMuLog37));
}

TEST_CASE("uniform pcf asymptotics hit the closed form at the turning point") {
  // At t = 1 (x = 0) the Liouville-Green variable vanishes, so the leading
  // term collapses to 2 sqrt(pi) mu^{1/3} varphi(1) Ai(0) with
  // varphi(1) = 2^{-1/6}.
  const double eps = 0.00390625;
  const double mu2 = 1.0 / (4.0 * std::sqrt(0.125) * eps);
  const double want = std::pow(2.0, 5.0 / 6.0) * std::sqrt(M_PI) *
                      std::pow(std::sqrt(mu2), 1.0 / 3.0) * airy(0.0).ai;
  const ScaledPcfPair s = pcf_uniform_asymptotic(-0.5, 1.0, eps, 0.0);
  CHECK(std::abs(s.u_over_h - want) < 1e-12 * want);
}

TEST_CASE("uniform pcf asymptotics approximate the certified evaluation") {
  const double eps = 0.00390625;
  const ScaledPcfPair e = pcf_scaled(-0.5, 1.0, eps, 0.1);
  const ScaledPcfPair s = pcf_uniform_asymptotic(-0.5, 1.0, eps, 0.1);
  const double dev = std::abs(s.u_over_h - e.u_over_h) /
                     std::hypot(e.u_over_h, e.du_over_h);
  CHECK(dev < 1e-4);
}

TEST_CASE("uniform pcf asymptotics reject arguments outside their strip") {
  // x < 0 maps to t > 1 and large x maps past the left turning point.
  CHECK_THROWS_AS(pcf_uniform_asymptotic(-0.5, 1.0, 0.0625, -1e-6),
                  DomainError);
  CHECK_THROWS_AS(pcf_uniform_asymptotic(-0.5, 1.0, 0.0625, 1.99999),
                  DomainError);
}

TEST_CASE("scaled airy initial data stays bounded in eps") {
  // (eps^{-1/6} Ai(-x1 eps^{-2/3}), -eps^{1/6} Ai'(-x1 eps^{-2/3})) oscillates
  // with an eps-independent envelope once the argument is beyond the first
  // extremum of Ai.
  for (int k = 4; k <= 16; ++k) {
    const double eps = std::ldexp(1.0, -k);
    const IcPair ic = airy_scaled_ic(0.1, eps);
    CHECK(std::isfinite(ic.psi));
    CHECK(std::isfinite(ic.eps_dpsi));
    CHECK(std::hypot(ic.psi, ic.eps_dpsi) < 5.0);
    CHECK(std::hypot(ic.psi, ic.eps_dpsi) > 1e-2);
  }
}
