#include "turnwkb/coefficient.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace turnwkb {
namespace {

constexpr int kGridPoints = 10000;  // validation / budget sampling grid

// Truncated Taylor polynomial ("jet") in normalized form: c[k] = f^(k)/k!.
// Arithmetic on jets is the exact chain rule carried out numerically, so the
// beta_k values below involve no finite differencing.  len <= 4 suffices:
// beta_3 needs three derivatives of beta_0.
struct Jet {
  std::array<double, 4> c{};
  int len = 4;
};

Jet jet_add(const Jet& a, const Jet& b) {
  Jet r;
  r.len = std::min(a.len, b.len);
  for (int k = 0; k < r.len; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}

Jet jet_scale(const Jet& a, double s) {
  Jet r = a;
  for (int k = 0; k < r.len; ++k) r.c[k] *= s;
  return r;
}

Jet jet_mul(const Jet& a, const Jet& b) {
  Jet r;
  r.len = std::min(a.len, b.len);
  for (int k = 0; k < r.len; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += a.c[j] * b.c[k - j];
    r.c[k] = s;
  }
  return r;
}

Jet jet_div(const Jet& a, const Jet& b) {
  Jet r;
  r.len = std::min(a.len, b.len);
  for (int k = 0; k < r.len; ++k) {
    double s = a.c[k];
    for (int j = 1; j <= k; ++j) s -= b.c[j] * r.c[k - j];
    r.c[k] = s / b.c[0];
  }
  return r;
}

// h = f^alpha via the standard recurrence k h_k f_0 = sum_{j=1..k}
// (alpha j - (k - j)) f_j h_{k-j}, valid for f_0 > 0.
Jet jet_pow(const Jet& f, double alpha) {
  Jet h;
  h.len = f.len;
  h.c[0] = std::pow(f.c[0], alpha);
  for (int k = 1; k < h.len; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) {
      s += (alpha * j - (k - j)) * f.c[j] * h.c[k - j];
    }
    h.c[k] = s / (k * f.c[0]);
  }
  return h;
}

// d/dx of a jet, one order shorter: (f')^(k)/k! = (k+1) c_{k+1}.
Jet jet_deriv(const Jet& a) {
  Jet r;
  r.len = a.len - 1;
  for (int k = 0; k < r.len; ++k) r.c[k] = (k + 1) * a.c[k + 1];
  return r;
}

// Jet of the m-th derivative of the body polynomial, truncated to `len`
// coefficients: c[k] = a^(m+k)(x) / k!.
Jet body_jet(const Coefficient& c, double x, int m, int len) {
  Jet r;
  r.len = len;
  double fact = 1.0;
  for (int k = 0; k < len; ++k) {
    r.c[k] = c.body(x, m + k) / fact;
    fact *= static_cast<double>(k + 1);
  }
  return r;
}

// beta as a jet: -(5/32) a^{-5/2} (a')^2 + (1/8) a^{-3/2} a''.
Jet beta_jet(const Coefficient& c, double x, int len) {
  Jet a = body_jet(c, x, 0, len);
  Jet ap = body_jet(c, x, 1, len);
  Jet app = body_jet(c, x, 2, len);
  Jet t1 = jet_scale(jet_mul(jet_pow(a, -2.5), jet_mul(ap, ap)), -5.0 / 32.0);
  Jet t2 = jet_scale(jet_mul(jet_pow(a, -1.5), app), 1.0 / 8.0);
  return jet_add(t1, t2);
}

double poly_eval(const std::vector<double>& p, double x) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<double> poly_deriv(const std::vector<double>& p) {
  std::vector<double> d;
  for (std::size_t j = 1; j < p.size(); ++j) {
    d.push_back(static_cast<double>(j) * p[j]);
  }
  return d;
}

double grid_point(double x1, int i) {
  return x1 + (1.0 - x1) * static_cast<double>(i) / (kGridPoints - 1);
}

}  // namespace

Coefficient Coefficient::linear(double x1) {
  return linear_with_body(x1, {});
}

Coefficient Coefficient::quadratic(double x1, double k1, double k2) {
  return quadratic_with_body(x1, k1, k2, {});
}

Coefficient Coefficient::linear_with_body(double x1, std::vector<double> body) {
  if (!(x1 > 0.0 && x1 < 1.0)) {
    throw DomainError("coefficient: x1 must lie in (0, 1)");
  }
  Coefficient c;
  c.kind_ = RegionKind::linear;
  c.x1_ = x1;
  c.poly_ = body.empty() ? std::vector<double>{0.0, 1.0} : std::move(body);
  return c;
}

Coefficient Coefficient::quadratic_with_body(double x1, double k1, double k2,
                                             std::vector<double> body) {
  if (!(x1 > 0.0 && x1 < 1.0)) {
    throw DomainError("coefficient: x1 must lie in (0, 1)");
  }
  Coefficient c;
  c.kind_ = RegionKind::quadratic;
  c.x1_ = x1;
  c.k1_ = k1;
  c.k2_ = k2;
  c.poly_ = body.empty() ? std::vector<double>{0.0, k2, k1} : std::move(body);
  return c;
}

Coefficient Coefficient::from_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("coefficient config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("coefficient config: parse failure in " + path + ": " +
                e.what());
  }
  if (!j.contains("region") || !j.contains("x1")) {
    throw Error("coefficient config: require keys \"region\" and \"x1\"");
  }
  const std::string region = j.at("region").get<std::string>();
  const double x1 = j.at("x1").get<double>();
  std::vector<double> body;
  if (j.contains("body")) body = j.at("body").get<std::vector<double>>();
  if (region == "linear") {
    return linear_with_body(x1, std::move(body));
  }
  if (region == "quadratic") {
    if (!j.contains("k1") || !j.contains("k2")) {
      throw Error("coefficient config: quadratic region requires k1 and k2");
    }
    return quadratic_with_body(x1, j.at("k1").get<double>(),
                               j.at("k2").get<double>(), std::move(body));
  }
  throw Error("coefficient config: unknown region \"" + region + "\"");
}

double Coefficient::a(double x) const {
  if (x < x1_) {
    return kind_ == RegionKind::linear ? x : (k1_ * x + k2_) * x;
  }
  return poly_eval(poly_, x);
}

double Coefficient::body(double x, int order) const {
  if (order < 0 || order > 5) {
    throw DomainError("coefficient: derivative order must be 0..5");
  }
  std::vector<double> p = poly_;
  for (int k = 0; k < order; ++k) p = poly_deriv(p);
  return poly_eval(p, x);
}

double Coefficient::tau1() const {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGridPoints; ++i) {
    m = std::min(m, poly_eval(poly_, grid_point(x1_, i)));
  }
  return m - 0.01 * std::abs(m);
}

double beta(const Coefficient& c, double x) {
  if (x < c.x1() - 1e-12 || x > 1.0 + 1e-12) {
    throw DomainError("beta: x outside [x1, 1]");
  }
  const double a = c.body(x, 0);
  if (!(a > 0.0)) throw DomainError("beta: a(x) <= 0");
  const double ap = c.body(x, 1);
  const double app = c.body(x, 2);
  return -(5.0 / 32.0) * std::pow(a, -2.5) * ap * ap +
         (1.0 / 8.0) * std::pow(a, -1.5) * app;
}

BetaChain beta_chain(const Coefficient& c, double eps, double x) {
  if (x < c.x1() - 1e-12 || x > 1.0 + 1e-12) {
    throw DomainError("beta_chain: x outside [x1, 1]");
  }
  const double a = c.body(x, 0);
  if (!(a > 0.0)) throw DomainError("beta_chain: a(x) <= 0");

  Jet jb = beta_jet(c, x, 4);
  Jet sqrt_a = jet_pow(body_jet(c, x, 0, 4), 0.5);
  Jet phip = jet_add(sqrt_a, jet_scale(jb, -eps * eps));
  if (!(phip.c[0] > 0.0)) {
    throw DomainError("beta_chain: phi'(x) <= 0, phase not increasing");
  }

  BetaChain out{};
  out.beta = jb.c[0];
  Jet b = jet_div(jb, jet_scale(phip, 2.0));  // beta_0, three derivatives
  out.b0 = b.c[0];
  b = jet_div(jet_deriv(b), jet_scale(phip, 2.0));  // beta_1
  out.b1 = b.c[0];
  b = jet_div(jet_deriv(b), jet_scale(phip, 2.0));  // beta_2
  out.b2 = b.c[0];
  b = jet_div(jet_deriv(b), jet_scale(phip, 2.0));  // beta_3
  out.b3 = b.c[0];
  return out;
}

EpsBudget validate(const Coefficient& c, double eps) {
  std::vector<std::string> failed;

  // 6.1: quadratic region parameters.
  if (c.region_kind() == RegionKind::quadratic) {
    if (!(c.k1() < 0.0 && c.k2() > -c.k1() * c.x1())) {
      failed.push_back(
          "assumption 6.1 (quadratic region needs k1 < 0 and k2 > -k1 x1)");
    }
  }

  // 2.1: turning-point structure.  a(0) = 0 and a'(0) > 0 hold by
  // construction of both region kinds once 6.1 holds; check gluing
  // continuity and positivity of the body.
  bool body_positive = true;
  const double left = c.a(std::nextafter(c.x1(), 0.0));
  const double glue = std::abs(left - c.body(c.x1(), 0));
  if (glue > 1e-12) {
    std::ostringstream os;
    os << "assumption 2.1 (piecewise definition discontinuous at x1: gap "
       << glue << ")";
    failed.push_back(os.str());
  }
  double min_a = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGridPoints; ++i) {
    min_a = std::min(min_a, c.body(grid_point(c.x1(), i), 0));
  }
  if (!(min_a > 0.0)) {
    body_positive = false;
    std::ostringstream os;
    os << "assumption 2.1 (a must stay positive on [x1, 1]; sampled min "
       << min_a << ")";
    failed.push_back(os.str());
  }

  // 2.2: admissible eps.  eps0 = min(1, min of a^{1/4} beta_+^{-1/2}).
  double eps0 = 1.0;
  if (body_positive) {
    for (int i = 0; i < kGridPoints; ++i) {
      const double x = grid_point(c.x1(), i);
      const double b = beta(c, x);
      if (b > 0.0) {
        eps0 = std::min(eps0, std::pow(c.body(x, 0), 0.25) / std::sqrt(b));
      }
    }
    if (!(eps > 0.0 && eps <= eps0)) {
      std::ostringstream os;
      os << "assumption 2.2 (need 0 < eps <= eps0 = " << eps0 << "; got "
         << eps << ")";
      failed.push_back(os.str());
    }
  } else {
    eps0 = std::numeric_limits<double>::quiet_NaN();
  }

  if (!failed.empty()) {
    std::string msg = "coefficient validation failed: ";
    for (std::size_t i = 0; i < failed.size(); ++i) {
      if (i) msg += "; ";
      msg += failed[i];
    }
    throw AssumptionError(msg);
  }
  return EpsBudget{eps0};
}

}  // namespace turnwkb
