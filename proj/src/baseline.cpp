#include "turnwkb/baseline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "turnwkb/errors.hpp"

namespace turnwkb {
namespace {

struct State {
  Complex psi;
  Complex p;  // eps psi'
};

State axpy(const State& y, double h, const State& k) {
  return {y.psi + h * k.psi, y.p + h * k.p};
}

// Dormand-Prince 5(4) tableau (FSAL: the 7th stage of an accepted step is
// the first stage of the next one).
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights (error estimator).
constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600;
constexpr double kE3 = 500.0 / 1113 - 7571.0 / 16695;
constexpr double kE4 = 125.0 / 192 - 393.0 / 640;
constexpr double kE5 = -2187.0 / 6784 + 92097.0 / 339200;
constexpr double kE6 = 11.0 / 84 - 187.0 / 2100;
constexpr double kE7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kMinStep = 1e-14;

RkRun dp45_run(const std::function<double(double)>& a, double x_from,
               double x_to, double eps, State y, double tol) {
  RkRun run;
  run.tolerance = tol;

  auto f = [&](double x, const State& s) -> State {
    return {s.p / eps, -a(x) * s.psi / eps};
  };

  const auto t0 = std::chrono::steady_clock::now();
  double x = x_from;
  double h = std::min((x_to - x_from) / 10.0, eps);
  State k1 = f(x, y);
  while (x < x_to) {
    if (h < kMinStep) {
      throw StepUnderflow("rk_solve: dp45 step fell below 1e-14 at x=" +
                          std::to_string(x));
    }
    if (x + h > x_to) h = x_to - x;

    const State k2 = f(x + kC2 * h, axpy(y, h * kA21, k1));
    const State k3 =
        f(x + kC3 * h, {y.psi + h * (kA31 * k1.psi + kA32 * k2.psi),
                        y.p + h * (kA31 * k1.p + kA32 * k2.p)});
    const State k4 = f(
        x + kC4 * h,
        {y.psi + h * (kA41 * k1.psi + kA42 * k2.psi + kA43 * k3.psi),
         y.p + h * (kA41 * k1.p + kA42 * k2.p + kA43 * k3.p)});
    const State k5 =
        f(x + kC5 * h, {y.psi + h * (kA51 * k1.psi + kA52 * k2.psi +
                                     kA53 * k3.psi + kA54 * k4.psi),
                        y.p + h * (kA51 * k1.p + kA52 * k2.p + kA53 * k3.p +
                                   kA54 * k4.p)});
    const State k6 =
        f(x + h, {y.psi + h * (kA61 * k1.psi + kA62 * k2.psi + kA63 * k3.psi +
                               kA64 * k4.psi + kA65 * k5.psi),
                  y.p + h * (kA61 * k1.p + kA62 * k2.p + kA63 * k3.p +
                             kA64 * k4.p + kA65 * k5.p)});
    const State ynew = {
        y.psi + h * (kB1 * k1.psi + kB3 * k3.psi + kB4 * k4.psi +
                     kB5 * k5.psi + kB6 * k6.psi),
        y.p + h * (kB1 * k1.p + kB3 * k3.p + kB4 * k4.p + kB5 * k5.p +
                   kB6 * k6.p)};
    const State k7 = f(x + h, ynew);

    const Complex e_psi = h * (kE1 * k1.psi + kE3 * k3.psi + kE4 * k4.psi +
                               kE5 * k5.psi + kE6 * k6.psi + kE7 * k7.psi);
    const Complex e_p = h * (kE1 * k1.p + kE3 * k3.p + kE4 * k4.p +
                             kE5 * k5.p + kE6 * k6.p + kE7 * k7.p);
    const double sc_psi =
        tol * (1.0 + std::max(std::abs(y.psi), std::abs(ynew.psi)));
    const double sc_p = tol * (1.0 + std::max(std::abs(y.p), std::abs(ynew.p)));
    const double err = std::sqrt((std::norm(e_psi / sc_psi) +
                                  std::norm(e_p / sc_p)) /
                                 2.0);

    if (err <= 1.0) {
      x += h;
      y = ynew;
      k1 = k7;  // FSAL
      ++run.accepted;
    } else {
      ++run.rejected;
    }
    const double fac = (err > 0.0)
                           ? kSafety * std::pow(err, -0.2)
                           : 5.0;
    h *= std::clamp(fac, 0.2, 5.0);
  }
  const auto t1 = std::chrono::steady_clock::now();
  run.runtime_s = std::chrono::duration<double>(t1 - t0).count();
  run.psi = y.psi;
  run.eps_dpsi = y.p;
  return run;
}

RkRun rk4_run(const std::function<double(double)>& a, double x_from,
              double x_to, double eps, State y, double step) {
  RkRun run;
  run.step = step;

  auto f = [&](double x, const State& s) -> State {
    return {s.p / eps, -a(x) * s.psi / eps};
  };

  const auto t0 = std::chrono::steady_clock::now();
  double x = x_from;
  while (x < x_to) {
    const double h = std::min(step, x_to - x);
    const State k1 = f(x, y);
    const State k2 = f(x + h / 2, axpy(y, h / 2, k1));
    const State k3 = f(x + h / 2, axpy(y, h / 2, k2));
    const State k4 = f(x + h, axpy(y, h, k3));
    y.psi += (h / 6) * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi);
    y.p += (h / 6) * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
    x += h;
    ++run.accepted;
  }
  const auto t1 = std::chrono::steady_clock::now();
  run.runtime_s = std::chrono::duration<double>(t1 - t0).count();
  run.psi = y.psi;
  run.eps_dpsi = y.p;
  return run;
}

}  // namespace

RkMode RkMode::dp45(double tol) { return {Kind::dp45, tol, 0.0}; }

RkMode RkMode::rk4(double step) { return {Kind::rk4, 0.0, step}; }

RkRun rk_solve(const std::function<double(double)>& a, double x_from,
               double x_to, double eps, Complex psi0, Complex eps_dpsi0,
               const RkMode& mode) {
  if (!(eps > 0.0)) throw DomainError("rk_solve: eps must be positive");
  if (!(x_to > x_from)) throw DomainError("rk_solve: empty interval");
  const State y0{psi0, eps_dpsi0};
  if (mode.kind == RkMode::Kind::dp45) {
    if (!(mode.tol > 0.0)) throw DomainError("rk_solve: dp45 tolerance must be positive");
    return dp45_run(a, x_from, x_to, eps, y0, mode.tol);
  }
  if (!(mode.step > 0.0)) throw DomainError("rk_solve: rk4 step must be positive");
  return rk4_run(a, x_from, x_to, eps, y0, mode.step);
}

RkRun rk_solve(const Coefficient& c, double eps, Complex psi0,
               Complex eps_dpsi0, const RkMode& mode) {
  return rk_solve([&c](double x) { return c.a(x); }, c.x1(), 1.0, eps, psi0,
                  eps_dpsi0, mode);
}

}  // namespace turnwkb
