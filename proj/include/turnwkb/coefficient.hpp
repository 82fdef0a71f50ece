#pragma once

#include <string>
#include <vector>

#include "turnwkb/errors.hpp"

namespace turnwkb {

enum class RegionKind { linear, quadratic };

// Piecewise coefficient a(x) on [0, 1]: a fixed turning-point normal form on
// [0, x1] -- a(x) = x (linear) or a(x) = k1 x^2 + k2 x (quadratic) -- glued to
// a polynomial body on [x1, 1].  Restricting bodies to polynomials keeps every
// derivative handle exact; the stepping coefficients consume derivatives of a
// up to fifth order.
//
// Standing assumptions, numbered for use in validation error messages:
//   2.1  turning-point structure: a(0) = 0, a'(0) > 0, the piecewise
//        definition is continuous at x1 (within 1e-12), x1 in (0, 1), and
//        a >= tau1 > 0 on [x1, 1];
//   2.2  admissible eps: 0 < eps <= eps0 with
//        eps0 = min(1, min over [x1, 1] of a^{1/4} beta_+^{-1/2});
//   6.1  quadratic region parameters: k1 < 0 and k2 > -k1 x1 > 0, so the
//        second zero of a lies strictly to the right of x1.
class Coefficient {
 public:
  // a(x) = x on both pieces.
  static Coefficient linear(double x1);
  // a(x) = k1 x^2 + k2 x on both pieces.
  static Coefficient quadratic(double x1, double k1, double k2);
  // Same left regions with a user-supplied polynomial body on [x1, 1]
  // (coefficients in ascending powers of x).
  static Coefficient linear_with_body(double x1, std::vector<double> body);
  static Coefficient quadratic_with_body(double x1, double k1, double k2,
                                         std::vector<double> body);
  // JSON config: {"region": "linear"|"quadratic", "x1": ..,
  //               "k1": .., "k2": ..,            (quadratic only)
  //               "body": [c0, c1, ...]}          (optional; defaults to the
  //                                                region polynomial)
  static Coefficient from_config(const std::string& path);

  RegionKind region_kind() const { return kind_; }
  double x1() const { return x1_; }
  double k1() const { return k1_; }
  double k2() const { return k2_; }

  // Piecewise evaluation (left region for x < x1, body beyond).
  double a(double x) const;
  // Exact derivative of the body polynomial, order 0..5, for x in [x1, 1].
  double body(double x, int order) const;
  const std::vector<double>& body_coefficients() const { return poly_; }

  // Sampled lower bound for a on [x1, 1]: the minimum over the validation
  // grid less a 1% safety margin.
  double tau1() const;

 private:
  Coefficient() = default;

  RegionKind kind_ = RegionKind::linear;
  double x1_ = 0.0;
  double k1_ = 0.0;
  double k2_ = 0.0;
  std::vector<double> poly_;  // body coefficients, ascending powers
};

struct BetaChain {
  double beta;
  double b0;
  double b1;
  double b2;
  double b3;
};

struct EpsBudget {
  double eps0;
};

// beta = -(5/32) a^{-5/2} (a')^2 + (1/8) a^{-3/2} a''
//      == -(a^{-1/4})'' / (2 a^{1/4}).
// Requires x in [x1, 1]; throws DomainError if a(x) <= 0.
double beta(const Coefficient& c, double x);

// Stepping coefficients
//   beta_0   = beta / (2 (sqrt(a) - eps^2 beta)),
//   beta_{k+1} = beta_k' / (2 phi'),   phi' = sqrt(a) - eps^2 beta,
// with all derivatives propagated by exact chain rule through a..a^(5).
// Throws DomainError if phi'(x) <= 0.
BetaChain beta_chain(const Coefficient& c, double eps, double x);

// Checks the standing assumptions (see above) on a 10^4-point grid of
// [x1, 1] and returns the admissible eps bound.  Throws AssumptionError
// listing every assumption that fails.
EpsBudget validate(const Coefficient& c, double eps);

}  // namespace turnwkb
