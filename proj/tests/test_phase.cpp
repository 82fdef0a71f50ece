#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "turnwkb/coefficient.hpp"
#include "turnwkb/errors.hpp"
#include "turnwkb/phase.hpp"
#include "oracles/coeffphase_oracle_data.hpp"

using namespace turnwkb;
namespace oracle = turnwkb::oracle;

TEST_CASE("phase increments match the frozen interval references") {
  const Coefficient lin = Coefficient::linear(0.1);
  const Coefficient quad = Coefficient::quadratic(0.1, -0.5, 1.0);
  for (const auto& r : oracle::kPhaseIntervals) {
    const Coefficient& c = (r.body == 0) ? lin : quad;
    // Exact method for the linear body; the quadratic body has no closed
    // form registered, so drive the adaptive quadrature tighter than the
    // comparison tolerance.
    const PhaseMethod m = (r.body == 0) ? PhaseMethod::exact()
                                        : PhaseMethod::adaptive(1e-13);
    const PhaseTable t = build_phase(c, r.eps, {r.xa, r.xb}, m);
    REQUIRE(t.increments.size() == 1);
    CHECK(std::abs(t.increments[0] - r.value) < 1e-12 * r.value);
  }
}

TEST_CASE("adaptive quadrature agrees with the closed form on the linear body") {
  const Coefficient c = Coefficient::linear(0.1);
  const double eps = 0.015625;
  std::vector<double> nodes;
  for (int i = 0; i <= 64; ++i) nodes.push_back(0.1 + 0.9 * i / 64.0);
  const PhaseTable ex = build_phase(c, eps, nodes, PhaseMethod::exact());
  const PhaseTable ad = build_phase(c, eps, nodes, PhaseMethod::adaptive(1e-13));
  for (std::size_t n = 0; n < ex.increments.size(); ++n) {
    CHECK(std::abs(ex.increments[n] - ad.increments[n]) <
          1e-12 * ex.increments[n]);
  }
}

TEST_CASE("composite simpson converges at fourth order in the panel count") {
  // Fit on [0.55, 1], away from the left end of the region, where the
  // integrand's higher derivatives are tame; close to x1 the eps^2 beta
  // correction (~x^{-5/2}) delays the asymptotic regime to larger m.
  const Coefficient c = Coefficient::quadratic(0.1, -0.5, 1.0);
  const double eps = 0.015625;
  const auto& r = oracle::kPhaseIntervals[2];  // body 1, [0.55, 1.0]
  double err[4];
  int m = 2;
  for (int k = 0; k < 4; ++k, m *= 2) {
    const PhaseTable t =
        build_phase(c, eps, {r.xa, r.xb}, PhaseMethod::simpson(m));
    err[k] = std::abs(t.increments[0] - r.value);
  }
  // Successive panel doublings should cut the error by about 2^4 each.
  CHECK(err[0] / err[2] > 100.0);
  CHECK(err[1] / err[3] > 100.0);
  CHECK(err[3] < 1e-9);
}

TEST_CASE("phase increments stay positive on admissible grids") {
  const Coefficient c = Coefficient::linear(0.1);
  const double eps = 0.0625;
  std::vector<double> nodes;
  for (int i = 0; i <= 128; ++i) nodes.push_back(0.1 + 0.9 * i / 128.0);
  const PhaseTable t = build_phase(c, eps, nodes, PhaseMethod::exact());
  REQUIRE(t.increments.size() == nodes.size() - 1);
  REQUIRE(t.cumulative.size() == nodes.size());
  CHECK(t.cumulative.front() == 0.0);
  for (double s : t.increments) CHECK(s > 0.0);
  // cumulative is the running sum of the increments.
  double run = 0.0;
  for (std::size_t n = 0; n + 1 < nodes.size(); ++n) {
    run += t.increments[n];
    CHECK(std::abs(t.cumulative[n + 1] - run) <= 1e-15 * run);
  }
}

TEST_CASE("degenerate intervals contribute zero phase") {
  const Coefficient c = Coefficient::linear(0.1);
  const PhaseTable t =
      build_phase(c, 0.0625, {0.5, 0.5}, PhaseMethod::adaptive(1e-12));
  CHECK(t.increments[0] == 0.0);
}

TEST_CASE("phase derivative combines sqrt(a) with the eps^2 correction") {
  const Coefficient c = Coefficient::linear(0.1);
  const double eps = 0.125, x = 0.5;
  const double want = std::sqrt(0.5) - eps * eps * beta(c, x);
  CHECK(phase_derivative(c, eps, x) == Catch::Approx(want).epsilon(1e-15));
  // eps = 0 collapses to the classical momentum.
  CHECK(phase_derivative(c, 0.0, 0.25) == Catch::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("exact phase is only registered for the pure linear body") {
  const Coefficient cubic =
      Coefficient::linear_with_body(0.1, {0.0, 1.0, -1.8, 1.0});
  CHECK_THROWS_AS(build_phase(cubic, 0.0625, {0.1, 1.0}, PhaseMethod::exact()),
                  UnsupportedExact);
  // The quadratic default body silently falls back to adaptive quadrature.
  const Coefficient quad = Coefficient::quadratic(0.1, -0.5, 1.0);
  const PhaseTable t =
      build_phase(quad, 0.0625, {0.1, 1.0}, PhaseMethod::exact());
  CHECK(t.increments[0] > 0.0);
}

TEST_CASE("phase method text forms round-trip") {
  CHECK(PhaseMethod::parse("exact").kind == PhaseMethod::Kind::exact);
  const PhaseMethod s = PhaseMethod::parse("simpson:4");
  CHECK(s.kind == PhaseMethod::Kind::simpson);
  CHECK(s.panels == 4);
  const PhaseMethod a = PhaseMethod::parse("adaptive:1e-10");
  CHECK(a.kind == PhaseMethod::Kind::adaptive);
  CHECK(a.tol == 1e-10);

  CHECK(PhaseMethod::parse(PhaseMethod::simpson(7).describe()).panels == 7);
  CHECK(PhaseMethod::parse(PhaseMethod::exact().describe()).kind ==
        PhaseMethod::Kind::exact);
  CHECK(PhaseMethod::parse(PhaseMethod::adaptive(1e-9).describe()).tol ==
        1e-9);

  CHECK_THROWS_AS(PhaseMethod::parse("trapezoid"), DomainError);
  CHECK_THROWS_AS(PhaseMethod::parse("simpson:0"), DomainError);
  CHECK_THROWS_AS(PhaseMethod::parse("adaptive:-1"), DomainError);
}
