#pragma once

#include <string>
#include <vector>

#include "turnwkb/coefficient.hpp"
#include "turnwkb/hybrid.hpp"
#include "turnwkb/phase.hpp"

namespace turnwkb {

// Shared configuration for the experiment harness.  h lists are normalized
// to positive descending order; eps lists to descending order.  eps
// admissibility (0 < eps <= eps0) is enforced by the solves themselves.
struct StudyConfig {
  enum class Potential { airy_linear, pcf_quadratic, file };

  Potential potential = Potential::airy_linear;
  std::string coefficient_path;  // used when potential == file
  std::vector<double> eps_list;
  std::vector<double> h_list;
  double x1 = 0.1;
  PhaseMethod phase = PhaseMethod::exact();
  int repeats = 5;  // timed repeats (benchmark); median after one warm-up

  // Approximation study only: interface sweep and the (documented, otherwise
  // inert) left endpoint of the composite potential.
  std::vector<double> x1_list;
  double x0 = -0.5;

  // Builds the coefficient for this config with turning-region edge x1.
  // airy_linear -> a(x) = x; pcf_quadratic -> a(x) = x - x^2/2 (the
  // reference quadratic case); file -> loaded from coefficient_path.
  Coefficient make_coefficient() const;
};

// One solve's error row: sup-norm errors against the registered exact
// solution, where each norm is the larger of the continuum sup over [0, x1]
// and the grid max over the marching nodes.
struct ErrorRecord {
  double eps = 0.0;
  double h = 0.0;
  std::string phase_method;
  double err_psi_inf = 0.0;
  double err_eps_dpsi_inf = 0.0;
  double runtime_s = 0.0;
};

// Least-squares line through (log2 x, log2 y) points; half_width is the
// 95% confidence half-width of the slope (2 standard errors).
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double half_width = 0.0;
  int points = 0;
};

// Fits y ~ C * x^slope from positive samples, dropping pairs with
// y < floor (the round-off floor; pass 0 to keep everything).
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y,
                    double floor);

// Uniform marching grid x1 = g[0] < ... < g[n] = 1 with n = round((1-x1)/h)
// steps; the realized step (g[n]-g[0])/n is what error records report as h.
std::vector<double> uniform_grid(double x1, double h);

// Dispatches to solve_airy or solve_pcf by the coefficient's region kind.
HybridSolution solve_potential(const Coefficient& c, double eps,
                               std::vector<double> grid,
                               const PhaseMethod& phase);

// --- convergence ------------------------------------------------------------

struct OrderFit {
  double fixed_value = 0.0;  // the eps (h-order fit) or h (eps-order fit)
  SlopeFit fit;
};

struct ConvergenceResult {
  std::vector<ErrorRecord> records;   // one per (eps, h), eps-major order
  std::vector<OrderFit> h_orders;     // per eps: order in h
  std::vector<OrderFit> eps_orders;   // per h: order in eps
};

// For each (eps, h): uniform grid on [x1, 1], hybrid solve, sup-norm errors
// against the closed-form exact solution.  Orders are fitted on the total
// error err_psi_inf + err_eps_dpsi_inf, excluding points below the 1e-11
// round-off floor.  Requires a reference potential (airy_linear or
// pcf_quadratic); file potentials have no registered exact solution.
ConvergenceResult run_convergence(const StudyConfig& cfg);

// --- blow-up ----------------------------------------------------------------

struct BlowupRow {
  double eps = 0.0;
  double max_abs_psi = 0.0;       // max over [0, 1] of |psi_h|
  double max_abs_eps_dpsi = 0.0;  // max over [0, 1] of eps |psi_h'|
};

struct BlowupResult {
  std::vector<BlowupRow> rows;
  SlopeFit psi_slope;        // log |psi| max vs log eps (expected -1/6)
  SlopeFit eps_dpsi_slope;   // log eps|psi'| max vs log eps (expected ~0)
  double eps_dpsi_ratio = 0.0;  // max/min of the eps|psi'| maxima
};

// Solves at each eps (first h in h_list, default 1e-3 if empty) and fits the
// blow-up law of the solution maxima.  Works for any potential, including
// file-loaded ones (no exact solution required).
BlowupResult run_blowup(const StudyConfig& cfg);

// --- benchmark --------------------------------------------------------------

struct BenchRow {
  double eps = 0.0;
  double h = 0.0;
  double march_err = 0.0;       // total sup error: err_psi + err_eps_dpsi
  double march_runtime_s = 0.0; // median of `repeats` after one warm-up
  double dp45_tol = 0.0;        // matched tolerance found by bisection
  double dp45_err = 0.0;        // terminal-state error at that tolerance
  double dp45_runtime_s = 0.0;  // median of `repeats` after one warm-up
  long dp45_accepted = 0;
  long dp45_rejected = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
};

// Airy-linear potential with exact phase only (as in the reference table):
// per eps, times the marcher at fixed h and the dp45 baseline at a tolerance
// bisected until its terminal-state error is within a factor 2 of the
// marcher's measured error.
BenchResult run_bench(const StudyConfig& cfg);

// --- approximation study ----------------------------------------------------

struct ApproxRow {
  double eps = 0.0;
  double x1 = 0.0;
  double max_abs_err = 0.0;  // max over [0, 1] of |E(x)|
};

struct ApproxResult {
  std::vector<ApproxRow> rows;
  SlopeFit x1_slope;   // exponent in x1 at the largest eps (expected 3)
  SlopeFit eps_slope;  // exponent in eps at the smallest x1 (expected -3/2)
};

// Composite potential (linear left piece, quadratic right piece, tangential
// at the turning point) versus its linear approximation on [0, x1]: builds
// both exact two-piece solutions per (eps, x1) and samples E = psi_approx -
// psi_orig on [0, 1].  Each exponent of max|E| is a one-variable power law
// that saturates once the dephasing x1^3 eps^{-3/2} exceeds ~1, so x1_slope
// is fitted across the x1 list at the largest eps and eps_slope across the
// eps list at the smallest x1.  Defaults: eps = 2^-4..2^-10, x1 = 0.02..0.2.
ApproxResult run_approx_study(const StudyConfig& cfg);

// --- output -----------------------------------------------------------------

// CSV emitters with fixed column schemas.  Fit/derived rows go to a separate
// deterministic file `<path>.fits.csv` so data files differ between reruns
// only in runtime columns.
void write_convergence(const ConvergenceResult& r, const StudyConfig& cfg,
                       const std::string& path, const std::string& format);
void write_blowup(const BlowupResult& r, const StudyConfig& cfg,
                  const std::string& path, const std::string& format);
void write_bench(const BenchResult& r, const StudyConfig& cfg,
                 const std::string& path, const std::string& format);
void write_approx(const ApproxResult& r, const StudyConfig& cfg,
                  const std::string& path, const std::string& format);

}  // namespace turnwkb
