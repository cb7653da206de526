#pragma once

// Third-order jet arithmetic: a scalar value carried together with its first
// three derivatives with respect to the curve parameter t.  All metric-trace
// computations differentiate through these jets, so the rules below (Leibniz
// through order 3, quotient by back-substitution) are the only calculus in
// the library.

#include <cmath>
#include <stdexcept>

namespace coh1 {

struct Jet3 {
  double v = 0.0;   // value
  double d1 = 0.0;  // first derivative
  double d2 = 0.0;  // second derivative
  double d3 = 0.0;  // third derivative
};

inline Jet3 jet_constant(double c) { return {c, 0.0, 0.0, 0.0}; }

// Jet of the identity function t -> t evaluated at t.
inline Jet3 jet_variable(double t) { return {t, 1.0, 0.0, 0.0}; }

inline Jet3 jet_add(const Jet3& a, const Jet3& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

inline Jet3 jet_sub(const Jet3& a, const Jet3& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

inline Jet3 jet_scale(const Jet3& a, double c) {
  return {c * a.v, c * a.d1, c * a.d2, c * a.d3};
}

// Leibniz rule through order 3.
inline Jet3 jet_mul(const Jet3& a, const Jet3& b) {
  return {a.v * b.v,
          a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
          a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}

// Smallest denominator magnitude accepted by jet_div.
inline constexpr double kJetDivFloor = 1e-300;

// Quotient jet q = a/b, obtained by solving the Leibniz expansion of
// a = q * b order by order.
inline Jet3 jet_div(const Jet3& a, const Jet3& b) {
  if (!(std::fabs(b.v) >= kJetDivFloor))
    throw std::domain_error("jet_div: denominator value below machine floor");
  Jet3 q;
  q.v = a.v / b.v;
  q.d1 = (a.d1 - q.v * b.d1) / b.v;
  q.d2 = (a.d2 - 2.0 * q.d1 * b.d1 - q.v * b.d2) / b.v;
  q.d3 = (a.d3 - 3.0 * q.d2 * b.d1 - 3.0 * q.d1 * b.d2 - q.v * b.d3) / b.v;
  return q;
}

inline Jet3 operator+(const Jet3& a, const Jet3& b) { return jet_add(a, b); }
inline Jet3 operator-(const Jet3& a, const Jet3& b) { return jet_sub(a, b); }
inline Jet3 operator*(const Jet3& a, const Jet3& b) { return jet_mul(a, b); }
inline Jet3 operator/(const Jet3& a, const Jet3& b) { return jet_div(a, b); }
inline Jet3 operator*(double c, const Jet3& a) { return jet_scale(a, c); }
inline Jet3 operator*(const Jet3& a, double c) { return jet_scale(a, c); }

}  // namespace coh1
