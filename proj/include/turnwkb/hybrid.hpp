#pragma once

#include <complex>
#include <string>
#include <vector>

#include "turnwkb/coefficient.hpp"
#include "turnwkb/phase.hpp"
#include "turnwkb/specfun.hpp"
#include "turnwkb/wkbmarch.hpp"

namespace turnwkb {

// Full scattering solution on [0, 1]: analytic turning-point part on [0, x1]
// (scaled Airy or scaled parabolic cylinder function), marched part on the
// grid over [x1, 1], both multiplied by the complex constant alpha that
// enforces the transparent boundary condition
//   eps psi'(1) - i sqrt(a(1)) psi(1) = -2i sqrt(a(1)).
struct HybridSolution {
  enum class Kind { airy, pcf };

  Kind kind;
  double eps;
  double x1;
  Complex alpha;
  double ic_scale;                 // factor applied to the analytic IC pair
  Coefficient coeff;
  PhaseMethod phase;
  std::vector<double> nodes;       // marching grid, x1 ... 1
  std::vector<Complex> psi;        // alpha-scaled values at the nodes
  std::vector<Complex> eps_dpsi;

  // Boundary scaling of the analytic basis: alpha absorbs 1/ic_scale, so
  // the basis-to-solution factor is their product (invariant under ic_scale).
  Complex basis_alpha() const { return alpha * ic_scale; }

  // Unscaled analytic pair (psi-hat, eps psi-hat') on [0, x1]; continuous
  // with the marched start by construction (the march starts from exactly
  // ic_scale times these values at x1).
  IcPair analytic_unscaled(double x) const;
  // alpha-scaled solution at any x in [0, 1]: analytic sampler left of x1,
  // nearest grid node from x1 on.
  void at(double x, Complex& psi_out, Complex& eps_dpsi_out) const;
};

// Marches the IVP from the scaled Airy initial data at x1 and assembles the
// boundary-condition-scaled solution.  Requires a linear region kind and an
// admissible eps (validate() is run first).  The grid must start at x1 and
// end at 1.  `ic_scale` multiplies the initial pair; the assembled solution
// is invariant under it because alpha absorbs the reciprocal.
HybridSolution solve_airy(const Coefficient& c, double eps,
                          std::vector<double> grid, PhaseMethod phase,
                          double ic_scale = 1.0);

// Same with quadratic region kind and scaled parabolic-cylinder initial
// data (U(nu, z(x1))/h, -sqrt(2 eps) (-k1)^{1/4} U'(nu, z(x1))/h).
HybridSolution solve_pcf(const Coefficient& c, double eps,
                         std::vector<double> grid, PhaseMethod phase,
                         double ic_scale = 1.0);

// Particle density n = |psi|^2 and current density j = eps Im(conj(psi) psi')
// at x (analytic sampler left of x1, nearest node beyond).
void observables(const HybridSolution& sol, double x, double& n, double& j);

// Residual of the transparent boundary condition at x = 1 (absolute).
double right_bc_residual(const HybridSolution& sol);
// Residual of the left Robin condition at x1: the assembled (psi, eps psi')
// must stay proportional to the analytic turning-point pair.  Normalized by
// the product of the two vector norms, so it is invariant under alpha.
double left_robin_residual(const HybridSolution& sol);

// Writes the sampled solution as CSV (x, re_psi, im_psi, re_eps_dpsi,
// im_eps_dpsi, n, j): `left_samples` uniform points on [0, x1) followed by
// every grid node.  A JSON header (eps, h, x1, phase, alpha) is written to
// `path` with its extension replaced by ".json".
void write_solution(const HybridSolution& sol, const std::string& path,
                    int left_samples = 256);

// Closed-form two-piece scattering solution for the tangent-potential study:
// a(x) = x left of the interface xm, a(x) = k1 x^2 + k2 x right of it, with
// the transparent boundary condition at x = 1.  The decaying Airy branch on
// the left is matched C^1 at xm against the two parabolic-cylinder branches
// U(nu, +-z(x)), and the whole solution is then scaled to the right boundary
// condition.  No discretization is involved.
struct TwoPieceSolution {
  double eps;
  double xm;
  double k1;
  double k2;
  Complex c_left;  // amplitude of the scaled Airy pair
  Complex c_up;    // amplitude of the scaled U(nu, +z(x)) branch
  Complex c_um;    // amplitude of the scaled U(nu, -z(x)) branch

  // Value and eps-derivative at x (left piece for x <= xm, right beyond).
  void at(double x, Complex& psi_out, Complex& eps_dpsi_out) const;
};

TwoPieceSolution match_two_piece(double k1, double k2, double eps, double xm);

}  // namespace turnwkb
