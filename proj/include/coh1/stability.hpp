#pragma once

// Second-variation quantities for biharmonic orbits.  The Hessian of the
// bienergy against normal variations f.N has the form
//   H(f,f) = int (Delta f)^2 + 4 |S grad f|^2 + (1/4) trA trC f^2,
// so trA*trC < 0 forces instability (take f constant), and dropping the
// nonnegative gradient term gives the lower bound mu^2 + (1/4) trA trC on
// eigenfunctions with Laplace eigenvalue mu.  Index/nullity counts for the
// warped foliation come from the explicit leaf spectrum k(n+k-1)/t.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "coh1/catalog.hpp"
#include "coh1/family.hpp"

namespace coh1 {

struct StabilityReport {
  double t = 0.0;
  double trA = 0.0;
  double trC = 0.0;
  double criterion = 0.0;      // trA * trC
  double hessian_const = 0.0;  // (1/4) trA * trC
  bool unstable = false;       // criterion < 0
  std::vector<std::string> notes;
};

inline StabilityReport stability_report(const MetricFamily& fam, double t) {
  const TraceInvariants inv = trace_invariants(fam, t);
  StabilityReport rep;
  rep.t = t;
  rep.trA = inv.trA;
  rep.trC = inv.trC;
  rep.criterion = inv.trA * inv.trC;
  rep.hessian_const = 0.25 * rep.criterion;
  rep.unstable = rep.criterion < 0.0;
  if (std::fabs(inv.trB) > 1e-6)
    rep.notes.push_back("orbit is not biharmonic here (|trB| = " +
                        std::to_string(std::fabs(inv.trB)) + ")");
  return rep;
}

// Lower bound mu^2 + (1/4) trA trC for the Hessian against an eigenfunction
// with Laplace eigenvalue mu (the nonnegative |S grad f|^2 term is dropped).
inline double hessian_lower_bound(const MetricFamily& fam, double t,
                                  double mu) {
  if (!(mu >= 0.0))
    throw std::invalid_argument("hessian_lower_bound: mu must be >= 0");
  const TraceInvariants inv = trace_invariants(fam, t);
  return mu * mu + 0.25 * inv.trA * inv.trC;
}

// Eigenvalue bound of Ho type: with Ricci >= ricci_lower > 0 on the ambient
// space, the first nonzero Laplace eigenvalue of a compact hypersurface
// satisfies mu_1 > (ricci_lower - dim_factor * max_mean_curv) / 2.  The
// dimension factor multiplying max|H| is caller-supplied.
inline double ho_eigenvalue_bound(double ricci_lower, int dim_factor,
                                  double max_mean_curv) {
  if (!(ricci_lower > 0.0))
    throw std::invalid_argument("ho_eigenvalue_bound: need ricci_lower > 0");
  return 0.5 * (ricci_lower - double(dim_factor) * max_mean_curv);
}

namespace detail {

// Exact binomial coefficient via the incremental rational product
// C(a,b) = prod_{i=1..b} (a-b+i)/i; every prefix is an integer.
inline std::int64_t binomial_exact(int a, int b) {
  if (b < 0 || a < 0 || b > a) return 0;
  b = std::min(b, a - b);
  std::int64_t r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

}  // namespace detail

// Multiplicity of the k-th Laplace eigenvalue on the round S^n:
//   (n+2k-1) (n+k-2)! / (k! (n-1)!) = C(n+k,k) - C(n+k-2,k-2).
// Exact in 64-bit for n+k <= 60; larger arguments are rejected.
inline std::int64_t sphere_multiplicity(int k, int n) {
  if (k < 1) throw std::invalid_argument("sphere_multiplicity: need k >= 1");
  if (n < 1) throw std::invalid_argument("sphere_multiplicity: need n >= 1");
  if (n == 1) return 2;
  if (n + k > 60)
    throw std::overflow_error("sphere_multiplicity: n + k must be <= 60");
  return detail::binomial_exact(n + k, k) -
         detail::binomial_exact(n + k - 2, k - 2);
}

struct IndexNullity {
  std::int64_t index = 0;
  std::int64_t nullity = 1;  // constants always contribute
  int k_max = 0;             // largest k with t*k(n+k-1) strictly below 1
};

// Tolerance for detecting t*k(n+k-1) = 1 in warped_index_nullity.
inline constexpr double kNullityEqTol = 1e-12;

// Normal index and nullity of the leaves of the warped foliation with
// f^2 = t: the leaf Laplace spectrum is {k(n+k-1)/t}, a mode destabilizes
// iff t*k(n+k-1) < 1 and is null iff equality holds.
inline IndexNullity warped_index_nullity(int n, double t,
                                         double eq_tol = kNullityEqTol) {
  if (!(t > 0.0)) throw std::invalid_argument("warped_index_nullity: t > 0");
  if (n < 1) throw std::invalid_argument("warped_index_nullity: n >= 1");
  IndexNullity out;
  for (int k = 1;; ++k) {
    const double z = t * double(k) * double(n + k - 1);
    if (z > 1.0 + eq_tol) break;
    if (std::fabs(z - 1.0) <= eq_tol) {
      out.nullity += sphere_multiplicity(k, n);
    } else {
      out.index += sphere_multiplicity(k, n);
      out.k_max = k;
    }
  }
  return out;
}

// Hessian quadratic form of the warped foliation on the k-th mode:
// lambda (lambda - t^-2) with lambda = k(n+k-1)/t.  Negative exactly on index
// modes, zero on null modes.
inline double warped_hessian_form(int n, double t, int k) {
  if (!(t > 0.0)) throw std::invalid_argument("warped_hessian_form: t > 0");
  const double lambda = double(k) * double(n + k - 1) / t;
  return lambda * (lambda - 1.0 / (t * t));
}

struct HpnProbe {
  double x_minus = 0.0;           // smaller biharmonic root in x = cos^2 t
  double sqrt_n_times_trA = 0.0;  // -> -12*sqrt(3) as n -> infinity
  double trC_over_sqrt_n = 0.0;   // -> 48*sqrt(3) as n -> infinity
};

// Evaluates trA and trC of hpn(n) at its smaller biharmonic root
//   x_ = (n+5 - sqrt(n^2+4n+13)) / (4(n+2)) = 3 / (2 (n+5 + sqrt(n^2+4n+13)))
// (the second form avoids cancellation for large n) and returns the scaled
// combinations that converge as n grows.
inline HpnProbe hpn_asymptotics_probe(int n) {
  if (n < 2) throw std::invalid_argument("hpn_asymptotics_probe: need n >= 2");
  const double nn = double(n);
  const double disc = std::sqrt(nn * nn + 4.0 * nn + 13.0);
  HpnProbe probe;
  probe.x_minus = 3.0 / (2.0 * (nn + 5.0 + disc));
  const double t = std::acos(std::sqrt(probe.x_minus));
  const TraceInvariants inv = trace_invariants(catalog::hpn(n), t);
  probe.sqrt_n_times_trA = std::sqrt(nn) * inv.trA;
  probe.trC_over_sqrt_n = inv.trC / std::sqrt(nn);
  return probe;
}

}  // namespace coh1
