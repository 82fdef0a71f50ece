#include "turnwkb/phase.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace turnwkb {
namespace {

bool is_pure_linear_body(const Coefficient& c) {
  const auto& p = c.body_coefficients();
  if (p.size() < 2 || p[0] != 0.0 || p[1] != 1.0) return false;
  return std::all_of(p.begin() + 2, p.end(), [](double v) { return v == 0.0; });
}

bool is_quadratic_body(const Coefficient& c) {
  return c.body_coefficients().size() <= 3;
}

// S over [xa, xb] for a(x) = x: integral of sqrt(x) plus
// eps^2 * (5/32) * integral of x^{-5/2}.
double linear_closed_form(double eps, double xa, double xb) {
  const double s0 = (2.0 / 3.0) * (std::pow(xb, 1.5) - std::pow(xa, 1.5));
  const double s2 =
      (5.0 / 48.0) * (std::pow(xa, -1.5) - std::pow(xb, -1.5));
  return s0 + eps * eps * s2;
}

// Composite Simpson rule, one 1-4-1 stencil per panel (fourth order in the
// panel width).
double simpson_increment(const Coefficient& c, double eps, double xa,
                         double xb, int panels) {
  const double w = (xb - xa) / panels;
  double sum = 0.0;
  for (int j = 0; j < panels; ++j) {
    const double a = xa + j * w;
    const double b = (j + 1 == panels) ? xb : xa + (j + 1) * w;
    sum += (b - a) / 6.0 *
           (phase_derivative(c, eps, a) +
            4.0 * phase_derivative(c, eps, 0.5 * (a + b)) +
            phase_derivative(c, eps, b));
  }
  return sum;
}

double adaptive_increment(const Coefficient& c, double eps, double xa,
                          double xb, double tol) {
  auto f = [&](double x) { return phase_derivative(c, eps, x); };
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, xa, xb, 15, tol);
}

}  // namespace

PhaseMethod PhaseMethod::parse(const std::string& text) {
  if (text == "exact") return exact();
  if (text.rfind("simpson:", 0) == 0) {
    const int m = std::stoi(text.substr(8));
    if (m < 1) throw DomainError("phase method: simpson panel count must be >= 1");
    return simpson(m);
  }
  if (text.rfind("adaptive:", 0) == 0) {
    const double tol = std::stod(text.substr(9));
    if (!(tol > 0.0)) throw DomainError("phase method: adaptive tol must be > 0");
    return adaptive(tol);
  }
  throw DomainError("phase method: expected exact | simpson:<m> | adaptive:<tol>, got \"" + text + "\"");
}

std::string PhaseMethod::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::exact: os << "exact"; break;
    case Kind::simpson: os << "simpson:" << panels; break;
    case Kind::adaptive: os << "adaptive:" << tol; break;
  }
  return os.str();
}

double phase_derivative(const Coefficient& c, double eps, double x) {
  const double a = c.body(x, 0);
  if (!(a > 0.0)) throw DomainError("phase: a(x) <= 0");
  return std::sqrt(a) - eps * eps * beta(c, x);
}

PhaseTable build_phase(const Coefficient& c, double eps,
                       std::vector<double> nodes, PhaseMethod method) {
  if (nodes.size() < 2) throw DomainError("phase: need at least two nodes");
  if (!std::is_sorted(nodes.begin(), nodes.end())) {
    throw DomainError("phase: nodes must be sorted");
  }
  if (nodes.front() < c.x1() - 1e-12 || nodes.back() > 1.0 + 1e-12) {
    throw DomainError("phase: nodes must lie in [x1, 1]");
  }

  const bool exact_linear =
      method.kind == PhaseMethod::Kind::exact && is_pure_linear_body(c);
  PhaseMethod effective = method;
  if (method.kind == PhaseMethod::Kind::exact && !exact_linear) {
    if (!is_quadratic_body(c)) {
      throw UnsupportedExact(
          "phase: no closed form registered for this body; use simpson or "
          "adaptive");
    }
    effective = PhaseMethod::adaptive(1e-12);
  }

  PhaseTable t;
  t.nodes = std::move(nodes);
  t.method = method;
  const std::size_t n = t.nodes.size();
  t.increments.resize(n - 1);
  t.cumulative.resize(n);
  t.cumulative[0] = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double xa = t.nodes[i], xb = t.nodes[i + 1];
    double s = 0.0;
    if (xb > xa) {
      if (exact_linear) {
        s = linear_closed_form(eps, xa, xb);
      } else if (effective.kind == PhaseMethod::Kind::simpson) {
        s = simpson_increment(c, eps, xa, xb, effective.panels);
      } else {
        s = adaptive_increment(c, eps, xa, xb, effective.tol);
      }
    }
    t.increments[i] = s;
    t.cumulative[i + 1] = t.cumulative[i] + s;
  }
  return t;
}

}  // namespace turnwkb
