#pragma once

// Polyharmonic foliations: leaves of warped and doubly warped products whose
// r-harmonic residual vanishes identically, and the C^1 cubic-graph foliation
// of the flat torus.

#include <cmath>
#include <random>
#include <stdexcept>

#include "coh1/catalog.hpp"
#include "coh1/family.hpp"

namespace coh1 {

// Scalar leaf equation for a warped product over a half-line with fiber
// scaled by f: the leaf at t is r-harmonic iff
//   (f')^2 + (r-1) f f'' = 0.
inline double leaf_residual(double f, double fp, double fpp, int r) {
  return fp * fp + double(r - 1) * f * fpp;
}

// Residual of the explicit solution family f = c1 (c2 + t)^((r-1)/r); the
// exponent is exactly the one killing the residual, so the returned value is
// pure roundoff.
inline double warped_leaf_residual(int r, double c1, double c2, double t) {
  if (r < 2) throw std::invalid_argument("warped_leaf_residual: need r >= 2");
  if (!(c1 > 0.0) || !(c2 > 0.0))
    throw std::invalid_argument("warped_leaf_residual: need c1, c2 > 0");
  if (!(t >= 0.0))
    throw std::invalid_argument("warped_leaf_residual: need t >= 0");
  const double q = double(r - 1) / double(r);
  const double u = c2 + t;
  const double f = c1 * std::pow(u, q);
  const double fp = f * q / u;
  const double fpp = fp * (q - 1.0) / u;
  return leaf_residual(f, fp, fpp, r);
}

// The squared warping profile of the leaf family above, for cross-checking
// against the general orbit residuals: p = f^2 = c1^2 (c2+t)^(2(r-1)/r).
inline MetricFamily warped_leaf_family(int r, double c1, double c2, int n) {
  if (r < 2) throw std::invalid_argument("warped_leaf_family: need r >= 2");
  return catalog::warped_product(
      Profile::power_law(c1, c2, double(r - 1) / double(r)), n, -c2);
}

// Half-width of the ambient interval I of the doubly warped foliation.
inline double doubly_warped_halfwidth(int n, int m) {
  if (n < 1 || m < 1)
    throw std::invalid_argument("doubly_warped_halfwidth: need n, m >= 1");
  return 0.25 * catalog::kPi * std::sqrt(double(m) / double(n));
}

// Doubly warped product over I with fibers S^n and S^m:
//   f^2 = e^(2t),  h^2 = cos(2 t sqrt(n/m)).
inline MetricFamily doubly_warped_foliation(int n, int m) {
  const double T = doubly_warped_halfwidth(n, m);
  const double omega = 2.0 * std::sqrt(double(n) / double(m));
  return catalog::doubly_warped_product(Profile::exp2(1.0), n,
                                        Profile::cos_first(1.0, omega), m, -T,
                                        T);
}

// Leaf residual n[(f'/f)^2 + f''/f] + m[(h'/h)^2 + h''/h], evaluated from the
// explicit f and h (independently of the jet pipeline).  Identically zero on
// I because omega^2 = 4 n / m.
inline double doubly_warped_residual(int n, int m, double t) {
  const double T = doubly_warped_halfwidth(n, m);
  if (!(std::fabs(t) <= T - kDomainMargin))
    throw std::domain_error("doubly_warped_residual: t outside the interval I");
  const double omega = 2.0 * std::sqrt(double(n) / double(m));
  const double u = omega * t;
  // f = e^t: (f'/f)^2 + f''/f = 2.
  const double f_part = 2.0;
  // h = sqrt(cos u): h'/h = -(omega/2) tan u,
  //                  h''/h = -omega^2/2 - (omega^2/4) tan^2 u.
  const double tanu = std::tan(u);
  const double h_over = -0.5 * omega * tanu;
  const double hpp_over = -0.5 * omega * omega -
                          0.25 * omega * omega * tanu * tanu;
  return double(n) * f_part + double(m) * (h_over * h_over + hpp_over);
}

// Time of the unique minimal leaf: t* = (1/2) sqrt(m/n) arctan sqrt(n/m).
inline double doubly_warped_minimal_time(int n, int m) {
  if (n < 1 || m < 1)
    throw std::invalid_argument("doubly_warped_minimal_time: need n, m >= 1");
  const double ratio = std::sqrt(double(n) / double(m));
  return 0.5 * std::atan(ratio) / ratio;
}

// Cubic psi(t) = a t^3 + b t^2 + c t + d whose graph generates a foliation of
// the unit torus.  C^0-periodicity needs a+b+c = 0 and C^1 additionally
// 3a+2b = 0; both hold by construction for torus_family.
struct TorusCubic {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  double psi(double t) const { return ((a * t + b) * t + c) * t + d; }
  double d1(double t) const { return (3.0 * a * t + 2.0 * b) * t + c; }
  double d2(double t) const { return 6.0 * a * t + 2.0 * b; }
  double d3() const { return 6.0 * a; }
  // psi'''' vanishes for every cubic, making the graph biharmonic.

  bool proper() const { return a != 0.0 || b != 0.0; }
  bool c0_periodic() const {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b), std::fabs(c)});
    return std::fabs(a + b + c) <= 1e-14 * scale;
  }
  bool c1_periodic() const {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return c0_periodic() && std::fabs(3.0 * a + 2.0 * b) <= 1e-14 * scale;
  }
  // Jump of psi'' across the gluing point t = 1 ~ 0.
  double second_derivative_jump() const { return d2(0.0) - d2(1.0); }
};

// The one-parameter C^1 family psi = 2a t^3 - 3a t^2 + a t + d; a = 0 would
// only yield straight lines and is rejected.
inline TorusCubic torus_family(double a, double d) {
  if (a == 0.0)
    throw std::invalid_argument("torus_family: a = 0 degenerates to lines");
  return TorusCubic{2.0 * a, -3.0 * a, a, d};
}

// Verifies on random points that the translated graphs partition the torus:
// every (t, y) determines exactly one leaf offset d = y - psi_0(t) mod 1, and
// the leaf through that offset passes back through y.
inline bool torus_partition_check(double a, int samples,
                                  unsigned long long seed = 0x5eedULL) {
  if (a == 0.0)
    throw std::invalid_argument("torus_partition_check: a = 0 is degenerate");
  if (samples < 1)
    throw std::invalid_argument("torus_partition_check: need samples >= 1");
  const TorusCubic base = torus_family(a, 0.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto frac = [](double x) { return x - std::floor(x); };
  for (int i = 0; i < samples; ++i) {
    const double t = unif(rng);
    const double y = unif(rng);
    const double d = frac(y - base.psi(t));
    const TorusCubic leaf = torus_family(a, d);
    double err = std::fabs(frac(leaf.psi(t)) - y);
    err = std::min(err, 1.0 - err);  // distance on the circle
    if (!(err <= 1e-12)) return false;
  }
  return true;
}

}  // namespace coh1
