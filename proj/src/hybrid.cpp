#include "turnwkb/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

namespace turnwkb {
namespace {

const Complex kI(0.0, 1.0);

// The scaled parabolic-cylinder pair stores the z-derivative U'(nu,z)/h.
// Converting it to eps * d/dx of U(nu, z(x))/h multiplies by
// eps * z'(x) = -sqrt(2 eps) (-k1)^{1/4}; the mirrored branch U(nu, -z(x))
// picks up the opposite sign.
double eps_dx_of_z(double k1, double eps) {
  return -std::sqrt(2.0 * eps) * std::pow(-k1, 0.25);
}

void check_grid(const Coefficient& c, const std::vector<double>& grid) {
  if (grid.size() < 2) throw DomainError("solve: grid needs at least 2 nodes");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw DomainError("solve: grid must be sorted");
  }
  if (std::abs(grid.front() - c.x1()) > 1e-12 ||
      std::abs(grid.back() - 1.0) > 1e-12) {
    throw DomainError("solve: grid must start at x1 and end at 1");
  }
}

HybridSolution assemble(HybridSolution::Kind kind, const Coefficient& c,
                        double eps, std::vector<double> grid,
                        PhaseMethod phase_method, const IcPair& ic,
                        double ic_scale) {
  HybridSolution sol{kind,  eps, c.x1(), Complex(0.0, 0.0), ic_scale, c,
                     phase_method, std::move(grid), {}, {}};

  PhaseTable table = build_phase(c, eps, sol.nodes, phase_method);
  std::vector<BetaChain> chains(sol.nodes.size());
  for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
    chains[i] = beta_chain(c, eps, sol.nodes[i]);
  }

  const std::size_t n = sol.nodes.size();
  std::vector<double> hat_psi(n), hat_dpsi(n);
  hat_psi[0] = ic.psi;
  hat_dpsi[0] = ic.eps_dpsi;
  MarchState state = z_init(w_from_psi(c, eps, sol.nodes[0], ic.psi,
                                       ic.eps_dpsi));
  WVector w_end{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    state = step(state, table, chains[i], chains[i + 1], eps);
    WVector w = w_back(state);
    psi_from_w(c, eps, sol.nodes[i + 1], w, hat_psi[i + 1], hat_dpsi[i + 1]);
    if (i + 2 == n) w_end = w;
  }

  // alpha from the terminal W data (a := a(1), a' := a'(1)):
  //   alpha = -2i a^{1/4} / (w2 - [i + (eps/4) a^{-3/2} a'] w1).
  const double a1 = c.body(1.0, 0);
  const double ap1 = c.body(1.0, 1);
  const Complex denom =
      Complex(w_end.w2, 0.0) -
      (kI + Complex(0.25 * eps * std::pow(a1, -1.5) * ap1, 0.0)) *
          Complex(w_end.w1, 0.0);
  if (std::abs(denom) < 1e-300) {
    throw SingularAlpha("solve: boundary scaling denominator vanished");
  }
  sol.alpha = -2.0 * kI * std::pow(a1, 0.25) / denom;

  sol.psi.resize(n);
  sol.eps_dpsi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sol.psi[i] = sol.alpha * hat_psi[i];
    sol.eps_dpsi[i] = sol.alpha * hat_dpsi[i];
  }
  return sol;
}

}  // namespace

IcPair HybridSolution::analytic_unscaled(double x) const {
  if (kind == Kind::airy) return airy_scaled_ic(x, eps);
  ScaledPcfPair p = pcf_scaled(coeff.k1(), coeff.k2(), eps, x);
  return IcPair{p.u_over_h, eps_dx_of_z(coeff.k1(), eps) * p.du_over_h};
}

void HybridSolution::at(double x, Complex& psi_out,
                        Complex& eps_dpsi_out) const {
  if (x < x1) {
    IcPair p = analytic_unscaled(x);
    psi_out = basis_alpha() * p.psi;
    eps_dpsi_out = basis_alpha() * p.eps_dpsi;
    return;
  }
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
  std::size_t i = static_cast<std::size_t>(it - nodes.begin());
  if (i >= nodes.size()) i = nodes.size() - 1;
  if (i > 0 && x - nodes[i - 1] < nodes[i] - x) --i;
  psi_out = psi[i];
  eps_dpsi_out = eps_dpsi[i];
}

HybridSolution solve_airy(const Coefficient& c, double eps,
                          std::vector<double> grid, PhaseMethod phase,
                          double ic_scale) {
  if (c.region_kind() != RegionKind::linear) {
    throw DomainError("solve_airy: requires a linear region kind");
  }
  if (ic_scale == 0.0) throw DomainError("solve_airy: ic_scale must be nonzero");
  validate(c, eps);
  check_grid(c, grid);
  const IcPair base = airy_scaled_ic(c.x1(), eps);
  const IcPair ic{ic_scale * base.psi, ic_scale * base.eps_dpsi};
  return assemble(HybridSolution::Kind::airy, c, eps, std::move(grid), phase,
                  ic, ic_scale);
}

HybridSolution solve_pcf(const Coefficient& c, double eps,
                         std::vector<double> grid, PhaseMethod phase,
                         double ic_scale) {
  if (c.region_kind() != RegionKind::quadratic) {
    throw DomainError("solve_pcf: requires a quadratic region kind");
  }
  if (ic_scale == 0.0) throw DomainError("solve_pcf: ic_scale must be nonzero");
  validate(c, eps);
  check_grid(c, grid);
  ScaledPcfPair p = pcf_scaled(c.k1(), c.k2(), eps, c.x1());
  const IcPair ic{ic_scale * p.u_over_h,
                  ic_scale * eps_dx_of_z(c.k1(), eps) * p.du_over_h};
  return assemble(HybridSolution::Kind::pcf, c, eps, std::move(grid), phase,
                  ic, ic_scale);
}

void observables(const HybridSolution& sol, double x, double& n, double& j) {
  Complex p, dp;
  sol.at(x, p, dp);
  n = std::norm(p);
  j = std::imag(std::conj(p) * dp);
}

double right_bc_residual(const HybridSolution& sol) {
  const double sq = std::sqrt(sol.coeff.body(1.0, 0));
  const Complex r = sol.eps_dpsi.back() - kI * sq * sol.psi.back() +
                    2.0 * kI * sq;
  return std::abs(r);
}

double left_robin_residual(const HybridSolution& sol) {
  const IcPair ref = sol.analytic_unscaled(sol.x1);
  const Complex cross =
      sol.eps_dpsi.front() * ref.psi - sol.psi.front() * ref.eps_dpsi;
  const double scale =
      std::hypot(std::abs(sol.psi.front()), std::abs(sol.eps_dpsi.front())) *
      std::hypot(ref.psi, ref.eps_dpsi);
  return scale > 0.0 ? std::abs(cross) / scale : 0.0;
}

void write_solution(const HybridSolution& sol, const std::string& path,
                    int left_samples) {
  std::ofstream csv(path);
  if (!csv) throw Error("write_solution: cannot open " + path);
  csv << std::setprecision(17);
  csv << "x,re_psi,im_psi,re_eps_dpsi,im_eps_dpsi,n,j\n";
  auto row = [&](double x, Complex p, Complex dp) {
    csv << x << ',' << p.real() << ',' << p.imag() << ',' << dp.real() << ','
        << dp.imag() << ',' << std::norm(p) << ','
        << std::imag(std::conj(p) * dp) << '\n';
  };
  for (int i = 0; i < left_samples; ++i) {
    const double x = sol.x1 * i / left_samples;
    IcPair u = sol.analytic_unscaled(x);
    row(x, sol.basis_alpha() * u.psi, sol.basis_alpha() * u.eps_dpsi);
  }
  for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
    row(sol.nodes[i], sol.psi[i], sol.eps_dpsi[i]);
  }

  std::string jpath = path;
  const auto dot = jpath.find_last_of('.');
  jpath = (dot == std::string::npos ? jpath : jpath.substr(0, dot)) + ".json";
  std::ofstream js(jpath);
  if (!js) throw Error("write_solution: cannot open " + jpath);
  js << std::setprecision(17);
  js << "{\n"
     << "  \"eps\": " << sol.eps << ",\n"
     << "  \"h\": " << (sol.nodes.size() > 1 ? sol.nodes[1] - sol.nodes[0] : 0.0)
     << ",\n"
     << "  \"x1\": " << sol.x1 << ",\n"
     << "  \"phase\": \"" << sol.phase.describe() << "\",\n"
     << "  \"alpha\": [" << sol.alpha.real() << ", " << sol.alpha.imag()
     << "]\n}\n";
}

void TwoPieceSolution::at(double x, Complex& psi_out,
                          Complex& eps_dpsi_out) const {
  if (x <= xm) {
    const IcPair l = airy_scaled_ic(x, eps);
    psi_out = c_left * l.psi;
    eps_dpsi_out = c_left * l.eps_dpsi;
    return;
  }
  const ScaledPcfPair up = pcf_scaled(k1, k2, eps, x);
  const ScaledPcfPair um = pcf_scaled_mirror(k1, k2, eps, x);
  const double ch = eps_dx_of_z(k1, eps);
  psi_out = c_up * up.u_over_h + c_um * um.u_over_h;
  eps_dpsi_out = c_up * (ch * up.du_over_h) + c_um * (-ch * um.du_over_h);
}

TwoPieceSolution match_two_piece(double k1, double k2, double eps, double xm) {
  TwoPieceSolution s;
  s.eps = eps;
  s.xm = xm;
  s.k1 = k1;
  s.k2 = k2;

  // C^1 interface system for the right-piece amplitudes (p, q) with the
  // left amplitude normalized to 1:
  //   p u_+(xm) + q u_-(xm) = l(xm),   p u_+'(xm) + q u_-'(xm) = l'(xm).
  const IcPair l = airy_scaled_ic(xm, eps);
  const ScaledPcfPair up = pcf_scaled(k1, k2, eps, xm);
  const ScaledPcfPair um = pcf_scaled_mirror(k1, k2, eps, xm);
  const double ch = eps_dx_of_z(k1, eps);
  const double dup = ch * up.du_over_h;   // eps d/dx of the direct branch
  const double dum = -ch * um.du_over_h;  // eps d/dx of the mirrored branch
  const double det = up.u_over_h * dum - um.u_over_h * dup;
  if (std::abs(det) < 1e-300) {
    throw SingularMatch("match_two_piece: interface system is singular");
  }
  const double p = (l.psi * dum - um.u_over_h * l.eps_dpsi) / det;
  const double q = (up.u_over_h * l.eps_dpsi - l.psi * dup) / det;

  // Transparent boundary condition at x = 1 fixes the global scale:
  //   alpha [p (u_+' - i sqrt(a(1)) u_+) + q (u_-' - i sqrt(a(1)) u_-)](1)
  //     = -2i sqrt(a(1)).
  const double a1 = (k1 * 1.0 + k2) * 1.0;
  if (!(a1 > 0.0)) {
    throw DomainError("match_two_piece: a(1) must be positive");
  }
  const double sq = std::sqrt(a1);
  const ScaledPcfPair up1 = pcf_scaled(k1, k2, eps, 1.0);
  const ScaledPcfPair um1 = pcf_scaled_mirror(k1, k2, eps, 1.0);
  const Complex denom =
      Complex(p, 0.0) *
          (Complex(ch * up1.du_over_h, 0.0) - kI * sq * up1.u_over_h) +
      Complex(q, 0.0) *
          (Complex(-ch * um1.du_over_h, 0.0) - kI * sq * um1.u_over_h);
  if (std::abs(denom) < 1e-300) {
    throw SingularMatch("match_two_piece: boundary scaling is singular");
  }
  const Complex alpha = -2.0 * kI * sq / denom;
  s.c_left = alpha;
  s.c_up = alpha * p;
  s.c_um = alpha * q;
  return s;
}

}  // namespace turnwkb
