#pragma once

#include <complex>
#include <cstddef>

#include "turnwkb/coefficient.hpp"
#include "turnwkb/phase.hpp"

namespace turnwkb {

using Complex = std::complex<double>;

// Transformed unknowns w1 = a^{1/4} psi, w2 = eps (a^{1/4} psi)' / sqrt(a).
// Real-valued for real initial data; the back transform reports how much
// imaginary residue accumulated.
struct WVector {
  double w1;
  double w2;
};

// State of the marching iteration in the smooth Z frame, where
// Z(x) = e^{-(i/eps) Phi(x)} P W(x) with P = (1/sqrt(2)) [[i, 1], [1, i]] and
// Phi = diag(phi, -phi).  `omega` carries phi(x_n)/eps reduced mod 2*pi,
// accumulated increment-by-increment, so the oscillatory factors
// e^{+-2i phi/eps} stay accurate when phi/eps >> 2*pi.
struct MarchState {
  Complex z1;
  Complex z2;
  std::size_t node_index;  // position within the phase table's node list
  double omega;            // phi(x_n)/eps mod 2*pi
};

// w = A(x) (psi, eps psi')^T with A = [[a^{1/4}, 0],
//                                      [(eps/4) a^{-5/4} a', a^{-1/4}]].
WVector w_from_psi(const Coefficient& c, double eps, double x, double psi,
                   double eps_dpsi);

// Inverse of w_from_psi: psi = w1 a^{-1/4},
// eps psi' = a^{1/4} w2 - (eps a' / (4 a^{5/4})) w1.
void psi_from_w(const Coefficient& c, double eps, double x, const WVector& w,
                double& psi, double& eps_dpsi);

// Z_1 = P W(x_1); phi(x_1) = 0 makes the phase factor the identity.
MarchState z_init(const WVector& w1);

// One marching step Z_{n+1} = (I + A_n^1 + A_n^2) Z_n using the phase
// increment table.increments[state.node_index] and the stepping coefficients
// at the two interval endpoints.
MarchState step(const MarchState& state, const PhaseTable& table,
                const BetaChain& beta_n, const BetaChain& beta_np1,
                double eps);

// W_n = P^{-1} e^{(i/eps) Phi(x_n)} Z_n.  The result is real up to rounding;
// throws RealityError if the imaginary residue exceeds 1e-8 * ||w||.
// If imag_residue is non-null it receives the residue norm.
WVector w_back(const MarchState& state, double* imag_residue = nullptr);

// H_1(y) = e^{iy} - 1 and H_2(y) = e^{iy} - 1 - iy, with Taylor branches
// below |y| = 1e-4 to avoid cancellation for tiny phase increments.
Complex march_h1(double y);
Complex march_h2(double y);

}  // namespace turnwkb
