#pragma once

#include <string>
#include <vector>

#include "turnwkb/coefficient.hpp"

namespace turnwkb {

// How the phase increments S_n = integral of (sqrt(a) - eps^2 beta) over
// [x_n, x_{n+1}] are computed.
struct PhaseMethod {
  enum class Kind { exact, simpson, adaptive };

  Kind kind = Kind::adaptive;
  int panels = 0;     // simpson: composite panels per interval
  double tol = 1e-12; // adaptive: relative termination tolerance

  static PhaseMethod exact() { return {Kind::exact, 0, 0.0}; }
  static PhaseMethod simpson(int m) { return {Kind::simpson, m, 0.0}; }
  static PhaseMethod adaptive(double tol) { return {Kind::adaptive, 0, tol}; }
  // "exact" | "simpson:<m>" | "adaptive:<tol>"
  static PhaseMethod parse(const std::string& text);
  std::string describe() const;
};

// Tabulated phase along a node set x1 = nodes[0] <= ... <= nodes[N-1]:
// increments[n] = S_n over [nodes[n], nodes[n+1]] and cumulative[n] =
// phi(nodes[n]) with phi(nodes[0]) = 0, accumulated as an exact running sum
// of the increments.  Increments are always integrated per interval, never
// recovered as differences of cumulative values, so short intervals keep
// full relative accuracy.
struct PhaseTable {
  std::vector<double> nodes;
  std::vector<double> increments;
  std::vector<double> cumulative;
  PhaseMethod method;
};

// Integrand of the phase at a single point: phi'(x) = sqrt(a) - eps^2 beta.
double phase_derivative(const Coefficient& c, double eps, double x);

// Builds the phase table over `nodes` (sorted, inside [x1, 1]).
//
// method = exact: a closed form is registered for the pure linear body
// a(x) = x,
//   S = (2/3)(x_b^{3/2} - x_a^{3/2}) + eps^2 (5/48)(x_a^{-3/2} - x_b^{-3/2});
// quadratic bodies fall back to adaptive quadrature at 1e-12, which is
// accurate to the same tolerance the rest of the pipeline targets.  Other
// bodies raise UnsupportedExact.
//
// method = simpson(m): composite Simpson rule with m panels per interval
// (fourth-order in the panel width).
//
// method = adaptive(tol): Gauss-Kronrod adaptive quadrature per interval.
PhaseTable build_phase(const Coefficient& c, double eps,
                       std::vector<double> nodes, PhaseMethod method);

}  // namespace turnwkb
