#pragma once

#include <complex>
#include <functional>

#include "turnwkb/coefficient.hpp"

namespace turnwkb {

using Complex = std::complex<double>;

// Mode selector for the oscillation-resolving reference integrators.
struct RkMode {
  enum class Kind { dp45, rk4 };
  Kind kind;
  double tol = 0.0;   // dp45: local-error tolerance fed to the controller
  double step = 0.0;  // rk4: fixed step size

  static RkMode dp45(double tol);
  static RkMode rk4(double step);
};

// Outcome of one reference integration of the first-order system
//   d/dx (psi, eps psi') = ((eps psi')/eps, -a(x) psi / eps)
// over [x_from, x_to].
struct RkRun {
  double tolerance = 0.0;  // dp45 runs: tolerance used
  double step = 0.0;       // rk4 runs: step used
  long accepted = 0;
  long rejected = 0;
  double runtime_s = 0.0;  // wall-clock duration of the integration loop
  Complex psi;             // terminal psi(x_to)
  Complex eps_dpsi;        // terminal eps psi'(x_to)
};

// Integrates the system with a(x) supplied directly.  dp45 is the embedded
// Dormand-Prince (4,5) pair with the standard step controller (safety factor
// 0.9, growth clipped to [0.2, 5]); rk4 is the classical fixed-step scheme.
// Throws StepUnderflow if the dp45 controller drives the step below 1e-14.
RkRun rk_solve(const std::function<double(double)>& a, double x_from,
               double x_to, double eps, Complex psi0, Complex eps_dpsi0,
               const RkMode& mode);

// Convenience overload: integrates the coefficient's own a(x) over [x1, 1],
// i.e. from the same initial condition location the marcher uses.
RkRun rk_solve(const Coefficient& c, double eps, Complex psi0,
               Complex eps_dpsi0, const RkMode& mode);

}  // namespace turnwkb
