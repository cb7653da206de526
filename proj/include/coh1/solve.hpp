#pragma once

// Residual functionals on a metric family and the bracketing root solver.
//
// A principal orbit at time t is
//   minimal            when trA(t) = 0,
//   proper biharmonic  when trB(t) = 0 but trA(t) != 0,
//   proper r-harmonic  when R_r(t) = 0 but trA(t) != 0, where
//   R_r = (trA2/4) trB + ((2-r) trA / 8) (trA3 - 2 trAB).
// R_2 has the same interior zeros as trB (trA2 > 0 away from minimal points),
// so order 2 is served by the plain biharmonic residual.
//
// Because minimal orbits are r-harmonic for every r but are often tangential
// (not sign-changing) zeros of the residual, find_roots always scans trA as
// well and merges its roots into the result as Minimal.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coh1/family.hpp"
#include "coh1/parallel.hpp"

namespace coh1 {

enum class FunctionalKind { Minimal, Biharmonic, RHarmonic };

struct Functional {
  FunctionalKind kind = FunctionalKind::Biharmonic;
  double order = 2.0;  // r of the r-harmonic energy; 2 for biharmonic

  static Functional minimal() { return {FunctionalKind::Minimal, 1.0}; }
  static Functional biharmonic() { return {FunctionalKind::Biharmonic, 2.0}; }
  static Functional rharmonic(double r) {
    if (!(r >= 2.0) || !std::isfinite(r))
      throw std::invalid_argument("rharmonic: order r must be finite and >= 2");
    return {FunctionalKind::RHarmonic, r};
  }
};

inline double minimal_residual(const MetricFamily& fam, double t) {
  return trace_invariants(fam, t).trA;
}

inline double biharmonic_residual(const MetricFamily& fam, double t) {
  return trace_invariants(fam, t).trB;
}

inline double rharmonic_residual_from(const TraceInvariants& inv, double r) {
  return 0.25 * inv.trA2 * inv.trB +
         0.125 * (2.0 - r) * inv.trA * (inv.trA3 - 2.0 * inv.trAB);
}

inline double rharmonic_residual(const MetricFamily& fam, double t, double r) {
  return rharmonic_residual_from(trace_invariants(fam, t), r);
}

inline double functional_residual(const MetricFamily& fam,
                                  const Functional& fn, double t) {
  const TraceInvariants inv = trace_invariants(fam, t);
  switch (fn.kind) {
    case FunctionalKind::Minimal: return inv.trA;
    case FunctionalKind::Biharmonic: return inv.trB;
    case FunctionalKind::RHarmonic: return rharmonic_residual_from(inv, fn.order);
  }
  return 0.0;  // unreachable
}

enum class OrbitClass { Minimal, ProperBiharmonic, ProperRHarmonic };

inline std::string to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::Minimal: return "minimal";
    case OrbitClass::ProperBiharmonic: return "proper_biharmonic";
    case OrbitClass::ProperRHarmonic: return "proper_r_harmonic";
  }
  return "?";
}

struct OrbitSolution {
  double t_root = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;    // functional residual at t_root
  double trA_at_root = 0.0;
  OrbitClass classification = OrbitClass::Minimal;
  double order = 2.0;       // r of the functional that produced the root
  std::optional<double> x_value;  // substituted coordinate, when declared
};

struct RootFindOptions {
  int grid_points = 4096;
  double tol = 1e-12;                 // maximum accepted bracket width
  double classification_tol = 1e-8;   // relative trA threshold for Minimal
  double pole_threshold = 1e12;       // |f| above this at both ends => pole
  double merge_tol = 1e-9;            // roots closer than this coincide
};

namespace detail {

// Bisection on a bracketed sign change, refined past `tol` all the way to
// ULP resolution so the reported residual is as small as the function allows.
template <class F>
inline std::pair<double, double> bisect_to_ulp(F&& f, double lo, double hi,
                                               double flo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return {mid, mid};
    if (std::isnan(fm)) break;  // pole or domain edge inside the bracket
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

struct ScanRoot {
  double t = 0.0;
  double lo = 0.0, hi = 0.0;
  bool from_minimal_scan = false;
};

// Sign-change scan over precomputed samples, with pole skipping.
template <class F>
inline std::vector<ScanRoot> scan_roots(const std::vector<double>& ts,
                                        const std::vector<double>& fs, F&& f,
                                        double pole_threshold,
                                        bool from_minimal_scan) {
  std::vector<ScanRoot> roots;
  const int n = static_cast<int>(ts.size());
  for (int i = 0; i + 1 < n; ++i) {
    const double a = fs[i], b = fs[i + 1];
    if (std::isnan(a) || std::isnan(b)) continue;
    if (a == 0.0) {
      roots.push_back({ts[i], ts[i], ts[i], from_minimal_scan});
      continue;
    }
    if (b == 0.0) continue;  // handled as the left endpoint of the next cell
    if ((a < 0.0) == (b < 0.0)) continue;
    if (std::fabs(a) > pole_threshold && std::fabs(b) > pole_threshold)
      continue;  // sign change across a pole, not a zero
    auto [lo, hi] = bisect_to_ulp(f, ts[i], ts[i + 1], a);
    roots.push_back({0.5 * (lo + hi), lo, hi, from_minimal_scan});
  }
  return roots;
}

}  // namespace detail

// Finds all sign-changing zeros of the selected residual on the open orbit
// interval, always including the minimal locus (zeros of trA).  Requires a
// finite interval and closed-form profiles.
inline std::vector<OrbitSolution> find_roots(const MetricFamily& fam,
                                             const Functional& fn,
                                             const RootFindOptions& opts = {}) {
  if (!fam.has_finite_domain())
    throw std::domain_error("find_roots: orbit interval must be finite");
  if (fam.verify_only())
    throw std::domain_error(
        "find_roots: sampled profiles cannot be classified");
  if (opts.grid_points < 16)
    throw std::invalid_argument("find_roots: need at least 16 grid points");

  const double len = fam.t_max - fam.t_min;
  const double margin = std::max(kDomainMargin, len / 1e6);
  const double lo = fam.t_min + margin, hi = fam.t_max - margin;
  if (!(lo < hi))
    throw std::domain_error("find_roots: orbit interval is too short");

  const int n = opts.grid_points;
  std::vector<double> ts(n), res(n), tra(n);
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) ts[i] = (i == n - 1) ? hi : lo + i * step;
  detail::parallel_for(n, [&](int i) {
    try {
      const TraceInvariants inv = trace_invariants(fam, ts[i]);
      tra[i] = inv.trA;
      switch (fn.kind) {
        case FunctionalKind::Minimal: res[i] = inv.trA; break;
        case FunctionalKind::Biharmonic: res[i] = inv.trB; break;
        case FunctionalKind::RHarmonic:
          res[i] = rharmonic_residual_from(inv, fn.order);
          break;
      }
    } catch (const std::exception&) {
      res[i] = tra[i] = std::numeric_limits<double>::quiet_NaN();
    }
  });

  const auto safe_eval = [&fam](auto&& eval, double t) -> double {
    try {
      return eval(t);
    } catch (const std::exception&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  const auto res_fn = [&](double t) {
    return safe_eval([&](double u) { return functional_residual(fam, fn, u); }, t);
  };
  const auto tra_fn = [&](double t) {
    return safe_eval([&](double u) { return minimal_residual(fam, u); }, t);
  };

  auto found = detail::scan_roots(ts, res, res_fn, opts.pole_threshold, false);
  if (fn.kind != FunctionalKind::Minimal) {
    // The minimal locus is part of every r-harmonic solution set but often
    // fails to change the residual's sign; pick it up from trA directly.
    auto minimal_roots =
        detail::scan_roots(ts, tra, tra_fn, opts.pole_threshold, true);
    found.insert(found.end(), minimal_roots.begin(), minimal_roots.end());
  }

  // Classification threshold scales with the typical magnitude of trA.
  std::vector<double> mags;
  mags.reserve(n);
  for (double v : tra)
    if (!std::isnan(v)) mags.push_back(std::fabs(v));
  double scale = 0.0;
  if (!mags.empty()) {
    const auto mid = mags.begin() + mags.size() / 2;
    std::nth_element(mags.begin(), mid, mags.end());
    scale = *mid;
  }
  const double tra_threshold =
      opts.classification_tol * (scale > 0.0 ? scale : 1.0);

  std::sort(found.begin(), found.end(),
            [](const detail::ScanRoot& a, const detail::ScanRoot& b) {
              if (a.t != b.t) return a.t < b.t;
              return a.from_minimal_scan > b.from_minimal_scan;
            });

  std::vector<OrbitSolution> out;
  for (const auto& root : found) {
    if (!out.empty() &&
        std::fabs(root.t - out.back().t_root) < opts.merge_tol) {
      // Coinciding residual/minimal roots collapse to one minimal entry.
      if (root.from_minimal_scan)
        out.back().classification = OrbitClass::Minimal;
      continue;
    }
    OrbitSolution sol;
    sol.t_root = root.t;
    sol.bracket_lo = root.lo;
    sol.bracket_hi = root.hi;
    sol.order = fn.order;
    sol.residual = res_fn(root.t);
    sol.trA_at_root = tra_fn(root.t);
    if (root.from_minimal_scan || fn.kind == FunctionalKind::Minimal ||
        std::fabs(sol.trA_at_root) < tra_threshold) {
      sol.classification = OrbitClass::Minimal;
    } else {
      sol.classification = fn.kind == FunctionalKind::Biharmonic
                               ? OrbitClass::ProperBiharmonic
                               : OrbitClass::ProperRHarmonic;
    }
    sol.x_value = substituted_value(fam, sol.t_root);
    out.push_back(sol);
  }
  return out;
}

// --- reduced polynomials -------------------------------------------------

// Coefficients are ascending: value = sum_i coeffs[i] * x^i.
inline double polynomial_eval(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

// Evaluates a reduced polynomial at the substituted coordinate x(t) of the
// family, for cross-checking solver roots against closed forms.
inline double polynomial_check(const MetricFamily& fam, double t,
                               const std::vector<double>& coeffs) {
  const auto x = substituted_value(fam, t);
  if (!x)
    throw std::invalid_argument(
        "polynomial_check: family declares no substitution variable");
  return polynomial_eval(coeffs, *x);
}

// All real roots of the polynomial in [lo, hi], via dense sign-change scan
// and ULP bisection (no multiple roots among the catalog reductions).
inline std::vector<double> polynomial_roots(const std::vector<double>& coeffs,
                                            double lo, double hi,
                                            int grid_points = 4096) {
  std::vector<double> roots;
  double prev_x = lo, prev_v = polynomial_eval(coeffs, lo);
  for (int i = 1; i < grid_points; ++i) {
    const double x = lo + (hi - lo) * i / (grid_points - 1);
    const double v = polynomial_eval(coeffs, x);
    if (prev_v == 0.0) {
      roots.push_back(prev_x);
    } else if (v != 0.0 && (prev_v < 0.0) != (v < 0.0)) {
      auto [a, b] = detail::bisect_to_ulp(
          [&](double u) { return polynomial_eval(coeffs, u); }, prev_x, x,
          prev_v);
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_v = v;
  }
  if (prev_v == 0.0) roots.push_back(prev_x);
  return roots;
}

// Closed-form reduction coefficients (ascending in x = cos^2 t).
namespace polys {

// Biharmonic reduction for cpn(n,p): 4(n+1)x^2 - 2(n+2p+3)x + (2p+1).
inline std::vector<double> cpn_biharmonic(int n, int p) {
  return {2.0 * p + 1.0, -2.0 * (n + 2.0 * p + 3.0), 4.0 * (n + 1.0)};
}

// Biharmonic reduction for hpn(n): 8(n+2)x^2 - 4(n+5)x + 3.
inline std::vector<double> hpn_biharmonic(int n) {
  return {3.0, -4.0 * (n + 5.0), 8.0 * (n + 2.0)};
}

// r-harmonic reduction shared by quadric(n) and clifford(n,1):
// r n x^3 + (n - 2 - r(n+1)) x^2 + (r+2) x - 1.
inline std::vector<double> quadric_rharmonic(int n, double r) {
  return {-1.0, r + 2.0, n - 2.0 - r * (n + 1.0), r * n};
}

// r-harmonic reduction for hpn(n):
// 16 a4 x^4 + 8 a3 x^3 + 24 a2 x^2 - 24 a1 x + 18, with
//   a4 = (2n^2 + 11n + 5) r - 6(n - 1)
//   a3 = -(4n^2 + 37n + 31) r + 2(2n + 13)(n - 1)
//   a2 = 5(n + 2) r - 3(n - 2)
//   a1 = 3 r + n + 2
inline std::vector<double> hpn_rharmonic(int n, double r) {
  const double a4 = (2.0 * n * n + 11.0 * n + 5.0) * r - 6.0 * (n - 1.0);
  const double a3 =
      -(4.0 * n * n + 37.0 * n + 31.0) * r + 2.0 * (2.0 * n + 13.0) * (n - 1.0);
  const double a2 = 5.0 * (n + 2.0) * r - 3.0 * (n - 2.0);
  const double a1 = 3.0 * r + n + 2.0;
  return {18.0, -24.0 * a1, 24.0 * a2, 8.0 * a3, 16.0 * a4};
}

}  // namespace polys

}  // namespace coh1
