#include "turnwkb/wkbmarch.hpp"

#include <cmath>

namespace turnwkb {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kTaylorCut = 1e-4;

}  // namespace

Complex march_h1(double y) {
  if (std::abs(y) < kTaylorCut) {
    // iy - y^2/2 - iy^3/6 + y^4/24; next term ~ |y|^5/120 is below 1e-21.
    return Complex(-0.5 * y * y + y * y * y * y / 24.0,
                   y - y * y * y / 6.0);
  }
  // cos y - 1 = -2 sin^2(y/2) avoids cancellation in the real part.
  const double s = std::sin(0.5 * y);
  return Complex(-2.0 * s * s, std::sin(y));
}

Complex march_h2(double y) {
  if (std::abs(y) < kTaylorCut) {
    // -y^2/2 - iy^3/6 + y^4/24 + iy^5/120.
    const double y2 = y * y;
    return Complex(-0.5 * y2 + y2 * y2 / 24.0,
                   -y2 * y / 6.0 + y2 * y2 * y / 120.0);
  }
  const Complex h1 = march_h1(y);
  return Complex(h1.real(), h1.imag() - y);
}

WVector w_from_psi(const Coefficient& c, double eps, double x, double psi,
                   double eps_dpsi) {
  const double a = c.body(x, 0);
  if (!(a > 0.0)) throw DomainError("w_from_psi: a(x) <= 0");
  const double q = std::pow(a, 0.25);
  const double ap = c.body(x, 1);
  return WVector{q * psi,
                 0.25 * eps * ap * std::pow(a, -1.25) * psi + eps_dpsi / q};
}

void psi_from_w(const Coefficient& c, double eps, double x, const WVector& w,
                double& psi, double& eps_dpsi) {
  const double a = c.body(x, 0);
  if (!(a > 0.0)) throw DomainError("psi_from_w: a(x) <= 0");
  const double q = std::pow(a, 0.25);
  const double ap = c.body(x, 1);
  psi = w.w1 / q;
  eps_dpsi = q * w.w2 - 0.25 * eps * ap * std::pow(a, -1.25) * w.w1;
}

MarchState z_init(const WVector& w) {
  return MarchState{Complex(0.0, kInvSqrt2 * w.w1) + kInvSqrt2 * w.w2,
                    kInvSqrt2 * w.w1 + Complex(0.0, kInvSqrt2 * w.w2),
                    0, 0.0};
}

MarchState step(const MarchState& state, const PhaseTable& table,
                const BetaChain& bn, const BetaChain& bp, double eps) {
  const std::size_t n = state.node_index;
  if (n + 1 >= table.nodes.size()) {
    throw DomainError("step: state is already at the last node");
  }
  const double S = table.increments[n];
  const double hx = table.nodes[n + 1] - table.nodes[n];
  const double y = 2.0 * S / eps;  // argument of H_1, H_2

  // Oscillatory factors E = e^{2i phi/eps} at both endpoints, from the
  // mod-2*pi phase accumulator.
  const double omega_next = std::remainder(state.omega + S / eps, 2.0 * kPi);
  const Complex En = std::polar(1.0, 2.0 * state.omega);
  const Complex Ep = std::polar(1.0, 2.0 * omega_next);
  const Complex cEn = std::conj(En);
  const Complex cEp = std::conj(Ep);

  const Complex H1y = march_h1(y);
  const Complex H2y = march_h2(y);
  const Complex H1my = std::conj(H1y);  // H_1(-y) for real y
  const Complex H2my = std::conj(H2y);

  const Complex i(0.0, 1.0);
  const double e2 = eps * eps;
  const double e3 = e2 * eps;
  const double e4 = e3 * eps;
  const double e5 = e4 * eps;

  // A_n^1: off-diagonal, orders eps^2..eps^5.
  const Complex a12 = -i * e2 * (bn.b0 * cEn - bp.b0 * cEp) +
                      e3 * (bp.b1 * cEp - bn.b1 * cEn) +
                      i * e4 * bp.b2 * (-cEn * H1my) -
                      e5 * bp.b3 * (cEn * H2my);
  const Complex a21 = -i * e2 * (bp.b0 * Ep - bn.b0 * En) +
                      e3 * (bp.b1 * Ep - bn.b1 * En) +
                      i * e4 * bp.b2 * (En * H1y) -
                      e5 * bp.b3 * (En * H2y);

  // A_n^2: diagonal, orders eps^3..eps^5.
  const Complex d3 =
      -i * e3 * hx * 0.5 * (bp.beta * bp.b0 + bn.beta * bn.b0);
  const double c4 = e4 * bn.b0 * bp.b0;
  const Complex c5 = i * e5 * bp.b1 * (bn.b0 - bp.b0);
  const Complex a11 = d3 - c4 * H1my + c5 * H2my;
  const Complex a22 = -d3 - c4 * H1y - c5 * H2y;

  MarchState out;
  out.z1 = (1.0 + a11) * state.z1 + a12 * state.z2;
  out.z2 = a21 * state.z1 + (1.0 + a22) * state.z2;
  out.node_index = n + 1;
  out.omega = omega_next;
  return out;
}

WVector w_back(const MarchState& state, double* imag_residue) {
  const Complex u1 = std::polar(1.0, state.omega) * state.z1;
  const Complex u2 = std::polar(1.0, -state.omega) * state.z2;
  // P^{-1} = (1/sqrt(2)) [[-i, 1], [1, -i]].
  const Complex i(0.0, 1.0);
  const Complex W1 = kInvSqrt2 * (-i * u1 + u2);
  const Complex W2 = kInvSqrt2 * (u1 - i * u2);
  const double residue = std::hypot(W1.imag(), W2.imag());
  const double norm = std::hypot(W1.real(), W2.real());
  if (imag_residue) *imag_residue = residue;
  if (residue > 1e-8 * norm) {
    throw RealityError("w_back: imaginary residue " + std::to_string(residue) +
                       " exceeds 1e-8 * ||w||");
  }
  return WVector{W1.real(), W2.real()};
}

}  // namespace turnwkb
