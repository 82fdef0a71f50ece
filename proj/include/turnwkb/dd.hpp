#pragma once

#include <cmath>

namespace turnwkb {

// Minimal double-double arithmetic (~31 significant digits) used by the
// power-series branch of the Airy evaluator, where plain doubles lose up
// to ~14 digits to cancellation at the right end of the series window.
// Classic error-free transformations; products use FMA.
struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double h) : hi(h), lo(0.0) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

namespace dd_detail {

// s = a + b exactly as s + err, assuming nothing about |a| vs |b|.
inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// s = a + b exactly, requires |a| >= |b|.
inline DD quick_two_sum(double a, double b) {
  double s = a + b;
  double err = b - (s - a);
  return {s, err};
}

// p = a * b exactly as p + err.
inline DD two_prod(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  return {p, err};
}

}  // namespace dd_detail

inline DD operator+(DD a, DD b) {
  using namespace dd_detail;
  DD s = two_sum(a.hi, b.hi);
  double lo = s.lo + a.lo + b.lo;
  return quick_two_sum(s.hi, lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
  using namespace dd_detail;
  DD p = two_prod(a.hi, b.hi);
  double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, lo);
}

inline DD operator*(DD a, double b) { return a * DD(b); }
inline DD operator*(double a, DD b) { return DD(a) * b; }

inline DD operator/(DD a, double b) {
  using namespace dd_detail;
  double q1 = a.hi / b;
  DD p = two_prod(q1, b);
  double r = ((a.hi - p.hi) - p.lo) + a.lo;
  double q2 = r / b;
  return quick_two_sum(q1, q2);
}

}  // namespace turnwkb
