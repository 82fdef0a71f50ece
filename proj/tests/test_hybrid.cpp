#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "turnwkb/coefficient.hpp"
#include "turnwkb/errors.hpp"
#include "turnwkb/hybrid.hpp"
#include "oracles/pcf_oracle_data.hpp"

using namespace turnwkb;
namespace oracle = turnwkb::oracle;

namespace {

std::vector<double> grid(double x1, double h) {
  std::vector<double> g;
  for (int i = 0;; ++i) {
    const double x = x1 + h * i;
    if (x >= 1.0 - 1e-12) {
      g.push_back(1.0);
      break;
    }
    g.push_back(x);
  }
  return g;
}

// The boundary-matched amplitude computed from the analytic basis alone:
// alpha = -2i sqrt(a(1)) / (eps bhat'(1) - i sqrt(a(1)) bhat(1)).  For the
// built-in potentials the basis solves the ODE on all of [0, 1], so
// alpha * bhat(x) is the exact solution everywhere.
Complex exact_amplitude(const HybridSolution& sol) {
  const double sq = std::sqrt(sol.coeff.a(1.0));
  const IcPair b1 = sol.analytic_unscaled(1.0);
  return Complex(0.0, -2.0) * sq /
         (Complex(b1.eps_dpsi, 0.0) - Complex(0.0, 1.0) * sq * b1.psi);
}

}  // namespace

TEST_CASE("linear-potential solution matches the frozen reference samples") {
  const Coefficient c = Coefficient::linear(0.1);
  double worst_exact = 0.0, worst_marched = 0.0;
  for (const auto& r : oracle::kAiryBvp) {
    const HybridSolution sol =
        solve_airy(c, r.eps, grid(0.1, 1e-3), PhaseMethod::exact());
    const Complex want(r.re, r.im);
    // Analytic reconstruction: amplitude formula times the exact basis.
    const Complex got =
        exact_amplitude(sol) * sol.analytic_unscaled(r.x).psi;
    worst_exact = std::max(worst_exact, std::abs(got - want) / std::abs(want));
    // Marched solution at the same point.
    Complex ps, dp;
    sol.at(r.x, ps, dp);
    worst_marched =
        std::max(worst_marched, std::abs(ps - want) / std::abs(want));
  }
  CHECK(worst_exact < 1e-12);
  CHECK(worst_marched < 2e-5);
}

TEST_CASE("quadratic-potential solution matches the frozen reference samples") {
  const Coefficient c = Coefficient::quadratic(0.1, -0.5, 1.0);
  double worst_exact = 0.0, worst_marched = 0.0;
  for (const auto& r : oracle::kPcfBvp) {
    const HybridSolution sol =
        solve_pcf(c, r.eps, grid(0.1, 1e-3), PhaseMethod::adaptive(1e-12));
    const Complex want(r.re, r.im);
    const Complex got =
        exact_amplitude(sol) * sol.analytic_unscaled(r.x).psi;
    worst_exact = std::max(worst_exact, std::abs(got - want) / std::abs(want));
    Complex ps, dp;
    sol.at(r.x, ps, dp);
    worst_marched =
        std::max(worst_marched, std::abs(ps - want) / std::abs(want));
  }
  CHECK(worst_exact < 1e-12);
  CHECK(worst_marched < 2e-5);
}

TEST_CASE("assembled solutions satisfy both boundary conditions") {
  const Coefficient lin = Coefficient::linear(0.1);
  const Coefficient quad = Coefficient::quadratic(0.1, -0.5, 1.0);
  for (double eps : {0.0625, 0.00390625}) {
    for (int kind = 0; kind < 2; ++kind) {
      const HybridSolution sol =
          kind == 0
              ? solve_airy(lin, eps, grid(0.1, 1e-3), PhaseMethod::exact())
              : solve_pcf(quad, eps, grid(0.1, 1e-3),
                          PhaseMethod::adaptive(1e-12));
      CHECK(right_bc_residual(sol) < 1e-10);
      CHECK(left_robin_residual(sol) < 1e-10);
      // The radiation condition pins |psi(1) - 1| = 1: the reflected wave
      // has unit amplitude however accurate the interior solution is,
      // because the marched basis stays real.
      CHECK(std::abs(std::abs(sol.psi.back() - 1.0) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("fully reflected scattering state carries no current") {
  const Coefficient c = Coefficient::linear(0.1);
  const HybridSolution sol =
      solve_airy(c, 0.015625, grid(0.1, 1e-3), PhaseMethod::exact());
  double n_max = 0.0;
  for (int i = 0; i <= 20; ++i) {
    double n, j;
    observables(sol, i / 20.0, n, j);
    n_max = std::max(n_max, n);
  }
  for (int i = 0; i <= 20; ++i) {
    double n, j;
    observables(sol, i / 20.0, n, j);
    CHECK(n >= 0.0);
    CHECK(std::abs(j) <= 1e-10 * n_max);
  }
}

TEST_CASE("boundary amplitude stays order one across the eps range") {
  const Coefficient lin = Coefficient::linear(0.1);
  const Coefficient quad = Coefficient::quadratic(0.1, -0.5, 1.0);
  for (int k = 4; k <= 12; k += 2) {
    const double eps = std::ldexp(1.0, -k);
    const auto g = grid(0.1, std::ldexp(1.0, -7));
    const HybridSolution sa = solve_airy(lin, eps, g, PhaseMethod::exact());
    const HybridSolution sp =
        solve_pcf(quad, eps, g, PhaseMethod::adaptive(1e-12));
    CHECK(std::abs(sa.basis_alpha()) > 0.1);
    CHECK(std::abs(sa.basis_alpha()) < 10.0);
    CHECK(std::abs(sp.basis_alpha()) > 0.1);
    CHECK(std::abs(sp.basis_alpha()) < 10.0);
  }
}

TEST_CASE("solution is invariant under initial-condition rescaling") {
  const Coefficient c = Coefficient::linear(0.1);
  const double eps = 0.015625;
  const auto g = grid(0.1, 1e-3);
  const HybridSolution ref = solve_airy(c, eps, g, PhaseMethod::exact());
  for (double scale : {1e5, 1e-5}) {
    const HybridSolution s = solve_airy(c, eps, g, PhaseMethod::exact(), scale);
    CHECK(std::abs(s.basis_alpha() - ref.basis_alpha()) <
          1e-12 * std::abs(ref.basis_alpha()));
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      worst = std::max(worst, std::abs(s.psi[i] - ref.psi[i]));
    }
    CHECK(worst < 1e-12 * std::abs(ref.psi.back()));
  }
}

TEST_CASE("marched start equals the scaled analytic data at x1") {
  const Coefficient c = Coefficient::quadratic(0.1, -0.5, 1.0);
  const HybridSolution sol =
      solve_pcf(c, 0.0625, grid(0.1, 1e-3), PhaseMethod::adaptive(1e-12));
  const IcPair b = sol.analytic_unscaled(0.1);
  CHECK(std::abs(sol.psi.front() - sol.basis_alpha() * b.psi) <
        1e-13 * std::abs(sol.psi.front()));
  CHECK(std::abs(sol.eps_dpsi.front() - sol.basis_alpha() * b.eps_dpsi) <
        1e-13 * std::abs(sol.eps_dpsi.front()));
}

TEST_CASE("solvers validate the grid and the region kind") {
  const Coefficient lin = Coefficient::linear(0.1);
  const Coefficient quad = Coefficient::quadratic(0.1, -0.5, 1.0);
  CHECK_THROWS_AS(solve_airy(quad, 0.0625, grid(0.1, 1e-3), PhaseMethod::exact()),
                  DomainError);
  CHECK_THROWS_AS(
      solve_pcf(lin, 0.0625, grid(0.1, 1e-3), PhaseMethod::adaptive(1e-12)),
      DomainError);
  CHECK_THROWS_AS(solve_airy(lin, 0.0625, {0.2, 0.6, 1.0}, PhaseMethod::exact()),
                  DomainError);
  CHECK_THROWS_AS(solve_airy(lin, 0.0625, {0.1, 0.5, 0.9}, PhaseMethod::exact()),
                  DomainError);
  // Inadmissible eps propagates the assumption check.
  CHECK_THROWS_AS(solve_airy(lin, 2.0, grid(0.1, 1e-3), PhaseMethod::exact()),
                  AssumptionError);
}

TEST_CASE("two-piece composite matches the frozen references") {
  const TwoPieceSolution orig = match_two_piece(-0.5, 1.0, 0.015625, 0.0);
  for (const auto& r : oracle::kTwoPieceOrig) {
    Complex ps, dp;
    orig.at(r.x, ps, dp);
    CHECK(std::abs(ps - Complex(r.re, r.im)) <=
          1e-12 * std::abs(Complex(r.re, r.im)));
  }
  const TwoPieceSolution appr = match_two_piece(-0.5, 1.0, 0.015625, 0.1);
  for (const auto& r : oracle::kTwoPieceApprox) {
    Complex ps, dp;
    appr.at(r.x, ps, dp);
    CHECK(std::abs(ps - Complex(r.re, r.im)) <=
          1e-12 * std::abs(Complex(r.re, r.im)));
  }
}

TEST_CASE("two-piece composite is C1 at the interface and radiates at 1") {
  const TwoPieceSolution s = match_two_piece(-0.5, 1.0, 0.015625, 0.1);
  Complex pl, dl, pr, dr;
  s.at(0.1 - 1e-10, pl, dl);
  s.at(0.1 + 1e-10, pr, dr);
  // The 1e-10 offset itself moves the solution by ~|psi'| * 2e-10.
  CHECK(std::abs(pl - pr) < 1e-7 * std::abs(pl));
  CHECK(std::abs(dl - dr) < 1e-7 * std::abs(dl));

  Complex p1, d1;
  s.at(1.0, p1, d1);
  const double sq = std::sqrt(0.5);  // a(1) = k1 + k2
  CHECK(std::abs(d1 - Complex(0, 1) * sq * p1 + Complex(0, 2) * sq) < 1e-10);
}

TEST_CASE("two-piece matching is deterministic") {
  const TwoPieceSolution a = match_two_piece(-0.5, 1.0, 0.015625, 0.1);
  const TwoPieceSolution b = match_two_piece(-0.5, 1.0, 0.015625, 0.1);
  CHECK(a.c_left == b.c_left);
  CHECK(a.c_up == b.c_up);
  CHECK(a.c_um == b.c_um);
}

TEST_CASE("solution writer emits the sampled table and a JSON header") {
  const Coefficient c = Coefficient::linear(0.1);
  const HybridSolution sol =
      solve_airy(c, 0.0625, grid(0.1, 0.01), PhaseMethod::exact());
  const std::string path = "/tmp/turnwkb_test_solution.csv";
  write_solution(sol, path, 16);

  std::ifstream is(path);
  REQUIRE(is.good());
  std::string header;
  std::getline(is, header);
  CHECK(header == "x,re_psi,im_psi,re_eps_dpsi,im_eps_dpsi,n,j");
  std::size_t rows = 0;
  for (std::string line; std::getline(is, line);) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 16 + sol.nodes.size());

  std::ifstream js("/tmp/turnwkb_test_solution.json");
  REQUIRE(js.good());
  const nlohmann::json j = nlohmann::json::parse(js);
  CHECK(j.at("eps").get<double>() == 0.0625);
  CHECK(j.at("x1").get<double>() == 0.1);
  CHECK(j.contains("alpha"));

  // The written table is a property of the assembled solution, so it must
  // not depend on the internal initial-condition scaling.
  const HybridSolution scaled =
      solve_airy(c, 0.0625, grid(0.1, 0.01), PhaseMethod::exact(), 1e5);
  const std::string path2 = "/tmp/turnwkb_test_solution2.csv";
  write_solution(scaled, path2, 16);
  std::ifstream f1(path), f2(path2);
  std::string r1, r2;
  std::getline(f1, r1);  // headers
  std::getline(f2, r2);
  double worst = 0.0;
  while (std::getline(f1, r1) && std::getline(f2, r2)) {
    std::replace(r1.begin(), r1.end(), ',', ' ');
    std::replace(r2.begin(), r2.end(), ',', ' ');
    std::istringstream s1(r1), s2(r2);
    double a = 0.0, b = 0.0;
    while (s1 >> a && s2 >> b) {
      worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
  }
  CHECK(worst < 1e-11);

  std::remove(path.c_str());
  std::remove(path2.c_str());
  std::remove("/tmp/turnwkb_test_solution.json");
  std::remove("/tmp/turnwkb_test_solution2.json");
}
