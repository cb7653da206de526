#pragma once

// Equivariant self-maps of a cohomogeneity-one manifold that send the orbit
// at time t to the orbit at time r(t), winding k times (r(L) = kL).  The
// tension field of such a map reduces to the scalar
//   F = r'' + (1/2) r' trA(t) - (1/2) trAr(t, r(t)),
// and the map is biharmonic iff
//   G = F'' + (1/2) F' trA(t) - (1/2) F trBr(t, r(t)) = 0.
// F' and F'' are expanded analytically through the jets of r and of the
// profiles; F'' contains r'''', so bitension evaluation needs order-4 jets
// of r even though F itself only needs order 2.
//
// The shooting solver integrates the first-order system y = (r, r', F, F')
//   r'' = F - (1/2) r' trA + (1/2) trAr,   F'' = -(1/2) F' trA + (1/2) F trBr
// from a boundary-layer seed r(eps) = a*eps and matches r(L) = kL (by
// first-order extrapolation) together with boundedness of F, encoded as
// F(L-eps) = 0; Newton iteration runs on the two parameters (a, F'(eps)).

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coh1/family.hpp"

namespace coh1 {

// Jet of the radial transfer function r(t).  d4 is optional (NaN when the
// source cannot provide it); it is required only by bitension.
struct RJet {
  double r = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double d4 = std::numeric_limits<double>::quiet_NaN();
};

struct EquivariantMap {
  MetricFamily fam;
  int k = 1;  // boundary winding: r(L) = k L
  std::function<RJet(double)> r_fn;
  bool from_samples = false;  // true for shot/tabulated maps
};

inline EquivariantMap identity_map(MetricFamily fam) {
  EquivariantMap m;
  m.fam = std::move(fam);
  m.k = 1;
  m.r_fn = [](double t) { return RJet{t, 1.0, 0.0, 0.0, 0.0}; };
  return m;
}

// Wraps uniformly sampled (t, r(t)) data as an EquivariantMap.  Jets of r
// come from local polynomial interpolation through 6 nodes; the fourth
// derivative is not recoverable at useful accuracy from point samples, so d4
// stays NaN and only the tension can be evaluated on such maps.
inline EquivariantMap tabulated_map(MetricFamily fam, int k, double t0,
                                    double dt, std::vector<double> r_values) {
  if (!(dt > 0.0))
    throw std::invalid_argument("tabulated_map: dt must be > 0");
  if (r_values.size() < 6)
    throw std::invalid_argument("tabulated_map: need at least 6 samples");
  const double t_last = t0 + dt * double(r_values.size() - 1);
  profile_kind::UserTable table{
      t0, dt,
      std::make_shared<const std::vector<double>>(std::move(r_values))};
  EquivariantMap m;
  m.fam = std::move(fam);
  m.k = k;
  m.from_samples = true;
  m.r_fn = [table, t0, t_last](double t) -> RJet {
    if (!(t >= t0) || !(t <= t_last))
      throw std::domain_error("tabulated map queried outside its table");
    const Jet3 j = detail::eval_user_table(table, t);
    return {j.v, j.d1, j.d2, j.d3, std::numeric_limits<double>::quiet_NaN()};
  };
  return m;
}

namespace detail {

// Orbit traces and their t-derivatives along a map, all from one pass over
// the blocks.  With q = p'(t)/p(t):
//   A      = trA(t) = sum m q
//   Adot   = sum m (p''/p - q^2)
//   Addot  = sum m (p'''/p - 3 q p''/p + 2 q^3)
//   S      = trAr = sum m p'(r)/p(t), and Sdot/Sddot its total t-derivatives
//   trBr   = sum m p''(r)/p(t)
struct MapTraces {
  double A = 0.0, Adot = 0.0, Addot = 0.0;
  double S = 0.0, Sdot = 0.0, Sddot = 0.0;
  double trBr = 0.0;
};

inline MapTraces map_traces(const MetricFamily& fam, double t, double r,
                            double r1, double r2) {
  require_interior(fam, t);
  require_mixed_point(fam, r);
  MapTraces mt;
  for (const auto& b : fam.blocks) {
    const Jet3 pt = b.profile.eval(t);
    if (!(std::fabs(pt.v) >= kJetDivFloor))
      throw std::domain_error("profile value vanishes at evaluation point");
    const Jet3 pr = b.profile.eval(r);
    const double m = static_cast<double>(b.multiplicity);
    const double q = pt.d1 / pt.v;
    mt.A += m * q;
    mt.Adot += m * (pt.d2 / pt.v - q * q);
    // -3q p''/p is split as -2(p''/p)q - q(p''/p) so the expression shape
    // mirrors Sddot exactly; for the identity map the two then cancel bitwise.
    mt.Addot += m * (pt.d3 / pt.v - 2.0 * (pt.d2 / pt.v) * q -
                     q * (pt.d2 / pt.v) + 2.0 * q * q * q);
    mt.S += m * (pr.d1 / pt.v);
    mt.Sdot += m * ((pr.d2 * r1) / pt.v - (pr.d1 / pt.v) * q);
    mt.Sddot +=
        m * ((pr.d3 * r1 * r1 + pr.d2 * r2) / pt.v -
             2.0 * (pr.d2 * r1 / pt.v) * q - (pr.d1 / pt.v) * (pt.d2 / pt.v) +
             2.0 * (pr.d1 / pt.v) * q * q);
    mt.trBr += m * (pr.d2 / pt.v);
  }
  return mt;
}

}  // namespace detail

// Cross term of the two bitension expansions:
//   M = sum m p'(r)^2 / (p(t) p(r)).
inline double mixed_ratio_trace(const MetricFamily& fam, double t, double r) {
  require_interior(fam, t);
  require_mixed_point(fam, r);
  double acc = 0.0;
  for (const auto& b : fam.blocks) {
    const Jet3 pt = b.profile.eval(t);
    const Jet3 pr = b.profile.eval(r);
    if (!(std::fabs(pt.v) >= kJetDivFloor) ||
        !(std::fabs(pr.v) >= kJetDivFloor))
      throw std::domain_error("profile value vanishes at evaluation point");
    acc += double(b.multiplicity) * (pr.d1 * pr.d1) / (pt.v * pr.v);
  }
  return acc;
}

inline double tension(const EquivariantMap& m, double t) {
  const RJet rj = m.r_fn(t);
  const auto mt = detail::map_traces(m.fam, t, rj.r, rj.d1, rj.d2);
  return rj.d2 + 0.5 * rj.d1 * mt.A - 0.5 * mt.S;
}

struct TensionJets {
  double F = 0.0;
  double dF = 0.0;
  double ddF = 0.0;
};

// F and its first two t-derivatives, expanded through the jets of r.
inline TensionJets tension_jets(const EquivariantMap& m, double t) {
  const RJet rj = m.r_fn(t);
  if (!std::isfinite(rj.d3))
    throw std::invalid_argument("tension_jets: r jets of order 3 required");
  if (!std::isfinite(rj.d4))
    throw std::invalid_argument(
        "tension_jets: r jets of order 4 required (F'' contains r'''')");
  const auto mt = detail::map_traces(m.fam, t, rj.r, rj.d1, rj.d2);
  TensionJets out;
  out.F = rj.d2 + 0.5 * rj.d1 * mt.A - 0.5 * mt.S;
  out.dF = rj.d3 + 0.5 * (rj.d2 * mt.A + rj.d1 * mt.Adot) - 0.5 * mt.Sdot;
  out.ddF = rj.d4 +
            0.5 * (rj.d3 * mt.A + 2.0 * rj.d2 * mt.Adot + rj.d1 * mt.Addot) -
            0.5 * mt.Sddot;
  return out;
}

inline double bitension(const EquivariantMap& m, double t) {
  const RJet rj = m.r_fn(t);
  const TensionJets tj = tension_jets(m, t);
  const auto mt = detail::map_traces(m.fam, t, rj.r, rj.d1, rj.d2);
  return tj.ddF + 0.5 * tj.dF * mt.A - 0.5 * tj.F * mt.trBr;
}

// Same quantity assembled the way the curvature-term lemma states it; the
// mixed ratio trace M cancels and the result must agree with bitension.
inline double bitension_lemma_form(const EquivariantMap& m, double t) {
  const RJet rj = m.r_fn(t);
  const TensionJets tj = tension_jets(m, t);
  const auto mt = detail::map_traces(m.fam, t, rj.r, rj.d1, rj.d2);
  const double M = mixed_ratio_trace(m.fam, t, rj.r);
  return tj.ddF + 0.5 * tj.dF * mt.A - 0.25 * tj.F * M +
         0.25 * tj.F * (M - 2.0 * mt.trBr);
}

// --- admissibility and degree bookkeeping --------------------------------

// Admissible boundary windings have the form k = j |W| / 2 + 1.
inline int admissible_k(int j, int weyl_order) {
  if (weyl_order < 2 || weyl_order % 2 != 0)
    throw std::invalid_argument("admissible_k: |W| must be even and >= 2");
  if (j < 0) throw std::invalid_argument("admissible_k: j must be >= 0");
  return j * weyl_order / 2 + 1;
}

struct DegreeInput {
  bool j_even = true;
  bool codim_n0_even = false;
  bool codim_n1_even = false;
  int weyl_order = 2;
};

// Brouwer degree of a (k,r)-map, by the two case tables:
//   j even: k when both codimensions are odd, +1 otherwise;
//   j odd:  k when both odd; 0 when both even and |W| not in 4Z;
//           -1 when codim N0 even, codim N1 odd and |W| not in 8Z;
//           +1 otherwise.
inline int brouwer_degree(const DegreeInput& d, int k) {
  if (d.weyl_order < 2 || d.weyl_order % 2 != 0)
    throw std::invalid_argument("brouwer_degree: |W| must be even and >= 2");
  const bool both_odd = !d.codim_n0_even && !d.codim_n1_even;
  if (d.j_even) return both_odd ? k : 1;
  if (both_odd) return k;
  if (d.codim_n0_even && d.codim_n1_even)
    return d.weyl_order % 4 != 0 ? 0 : 1;
  if (d.codim_n0_even && !d.codim_n1_even)
    return d.weyl_order % 8 != 0 ? -1 : 1;
  return 1;
}

// --- shooting solver ------------------------------------------------------

struct TrajectorySample {
  double t = 0.0;
  double r = 0.0;
  double r1 = 0.0;
  double F = 0.0;
  double F1 = 0.0;
};

struct ShootResult {
  bool converged = false;
  std::string message;
  double slope = 0.0;       // a in the seed r(eps) = a*eps
  double fdot = 0.0;        // F'(eps)
  double mismatch = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  std::vector<TrajectorySample> trajectory;
  std::optional<EquivariantMap> map;
};

namespace detail {

using State4 = std::array<double, 4>;  // (r, r', F, F')

inline State4 bvp_rhs(const MetricFamily& fam, double t, const State4& y) {
  const auto mt = map_traces(fam, t, y[0], y[1], 0.0);
  return {y[1], y[2] - 0.5 * y[1] * mt.A + 0.5 * mt.S, y[3],
          -0.5 * y[3] * mt.A + 0.5 * y[2] * mt.trBr};
}

// Dormand-Prince 5(4) with standard PI-free step control.
// Returns false when the trajectory escapes or the step collapses.
template <class Rhs, class Emit>
inline bool integrate_dopri5(Rhs&& rhs, double t0, double t1, State4 y,
                             double tol, double h_max, Emit&& emit) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  const auto finite = [](const State4& v) {
    for (double x : v)
      if (!std::isfinite(x) || std::fabs(x) > 1e14) return false;
    return true;
  };

  double t = t0;
  double h = std::min(h_max, (t1 - t0) / 16.0);
  emit(t, y);
  State4 k1 = rhs(t, y);
  for (long step = 0; step < 2000000 && t < t1; ++step) {
    if (t + h > t1) h = t1 - t;
    State4 k2, k3, k4, k5, k6, k7, ynew, ytmp;
    for (int i = 0; i < 4; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    k2 = rhs(t + c2 * h, ytmp);
    for (int i = 0; i < 4; ++i)
      ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(t + c3 * h, ytmp);
    for (int i = 0; i < 4; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(t + c4 * h, ytmp);
    for (int i = 0; i < 4; ++i)
      ytmp[i] =
          y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(t + c5 * h, ytmp);
    for (int i = 0; i < 4; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                            a64 * k4[i] + a65 * k5[i]);
    k6 = rhs(t + h, ytmp);
    for (int i = 0; i < 4; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    if (!finite(ynew)) return false;
    k7 = rhs(t + h, ynew);
    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc =
          tol + tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(err / 4.0);
    if (err <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      emit(t, y);
      if (t >= t1) return true;
    }
    const double factor =
        std::clamp(0.9 * std::pow(err > 0.0 ? err : 1e-10, -0.2), 0.2, 5.0);
    h = std::min({h * factor, h_max, t1 - t > 0.0 ? t1 - t : h_max});
    if (!(h > 1e-15)) return false;
  }
  return t >= t1;
}

// Cubic Hermite interpolation of (value, slope) node data.
inline std::pair<double, double> hermite_eval(double ta, double va, double sa,
                                              double tb, double vb, double sb,
                                              double t) {
  const double h = tb - ta, th = (t - ta) / h;
  const double th2 = th * th, th3 = th2 * th;
  const double h00 = 2 * th3 - 3 * th2 + 1, h10 = th3 - 2 * th2 + th;
  const double h01 = -2 * th3 + 3 * th2, h11 = th3 - th2;
  const double d00 = (6 * th2 - 6 * th) / h, d10 = (3 * th2 - 4 * th + 1) / h;
  const double d01 = (-6 * th2 + 6 * th) / h, d11 = (3 * th2 - 2 * th) / h;
  return {h00 * va + h10 * h * sa + h01 * vb + h11 * h * sb,
          d00 * va + d10 * h * sa + d01 * vb + d11 * h * sb};
}

}  // namespace detail

// Wraps an integrated trajectory as an EquivariantMap.  r and F interpolate
// the samples (cubic Hermite); the higher r-jets are reconstructed from the
// boundary-value ODE itself, so the jets are exactly ODE-consistent.
inline EquivariantMap make_sampled_map(MetricFamily fam, int k,
                                       std::vector<TrajectorySample> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("make_sampled_map: need at least 2 samples");
  auto data =
      std::make_shared<const std::vector<TrajectorySample>>(std::move(samples));
  auto fam_ptr = std::make_shared<const MetricFamily>(fam);
  EquivariantMap m;
  m.fam = std::move(fam);
  m.k = k;
  m.from_samples = true;
  m.r_fn = [data, fam_ptr](double t) -> RJet {
    const auto& s = *data;
    if (!(t >= s.front().t) || !(t <= s.back().t))
      throw std::domain_error("sampled map queried outside its trajectory");
    auto it = std::lower_bound(
        s.begin(), s.end(), t,
        [](const TrajectorySample& a, double u) { return a.t < u; });
    if (it == s.begin()) ++it;
    if (it == s.end()) --it;
    const auto& b = *it;
    const auto& a = *(it - 1);
    const auto [r, r1] = detail::hermite_eval(a.t, a.r, a.r1, b.t, b.r, b.r1, t);
    const auto [F, F1] = detail::hermite_eval(a.t, a.F, a.F1, b.t, b.F, b.F1, t);
    const auto mt = detail::map_traces(*fam_ptr, t, r, r1, 0.0);
    const double r2 = F - 0.5 * r1 * mt.A + 0.5 * mt.S;
    const auto mt2 = detail::map_traces(*fam_ptr, t, r, r1, r2);
    const double F2 = -0.5 * F1 * mt2.A + 0.5 * F * mt2.trBr;
    const double r3 =
        F1 - 0.5 * (r2 * mt2.A + r1 * mt2.Adot) + 0.5 * mt2.Sdot;
    const double r4 = F2 -
                      0.5 * (r3 * mt2.A + 2.0 * r2 * mt2.Adot +
                             r1 * mt2.Addot) +
                      0.5 * mt2.Sddot;
    return {r, r1, r2, r3, r4};
  };
  return m;
}

// Shooting solver for the biharmonic boundary-value problem r(0)=0, r(L)=kL.
// The linearized ODE has a t^-3 mode at each singular orbit, so a single
// end-to-end shot amplifies its own integration noise beyond any useful
// tolerance.  Instead we shoot from both ends toward the midpoint and run
// damped Newton on the four unknowns (slope and F' at each end) against the
// four matching defects there; each half-trajectory only ever moves away
// from its own boundary layer, so both halves are stable.
inline ShootResult shoot_kr(const MetricFamily& fam, int k,
                            std::pair<double, double> init_slope_range = {0.25,
                                                                          2.5},
                            double tol = 1e-8) {
  if (!fam.extendable)
    throw std::invalid_argument(
        "shoot_kr: family profiles must extend past the orbit interval");
  if (k < 1) throw std::invalid_argument("shoot_kr: winding k must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("shoot_kr: tol must be > 0");
  const double L = fam.t_max - fam.t_min;
  if (!std::isfinite(L) || !(L > 0.0))
    throw std::invalid_argument("shoot_kr: orbit interval must be finite");

  const double eps = 1e-4 * L;
  const double t0 = fam.t_min + eps, t1 = fam.t_max - eps;
  const double tm = 0.5 * (fam.t_min + fam.t_max);
  const double ode_tol = 1e-10;
  const double h_max = L / 256.0;
  const double target = double(k) * fam.t_max + double(k - 1) * (-fam.t_min);

  using detail::State4;
  const auto forward_rhs = [&fam](double t, const State4& y) {
    return detail::bvp_rhs(fam, t, y);
  };
  // Backward half in the stretched variable s = t1 - t.
  const auto backward_rhs = [&fam, t1](double s, const State4& y) {
    State4 f = detail::bvp_rhs(fam, t1 - s, y);
    for (double& v : f) v = -v;
    return f;
  };

  // Each end is seeded with r linear through its singular orbit and F
  // consistent with r'' = 0 there; slope and F' are the free parameters.
  const auto fire_left = [&](double a, double d,
                             std::vector<TrajectorySample>* keep)
      -> std::optional<State4> {
    State4 y{fam.t_min + a * eps, a, 0.0, d};
    const auto mt = detail::map_traces(fam, t0, y[0], y[1], 0.0);
    y[2] = 0.5 * a * mt.A - 0.5 * mt.S;
    State4 fin = y;
    const bool ok = detail::integrate_dopri5(
        forward_rhs, t0, tm, y, ode_tol, h_max,
        [&](double t, const State4& s) {
          if (keep) keep->push_back({t, s[0], s[1], s[2], s[3]});
          fin = s;
        });
    if (!ok) return std::nullopt;
    return fin;
  };
  const auto fire_right = [&](double b, double e,
                              std::vector<TrajectorySample>* keep)
      -> std::optional<State4> {
    State4 y{target - b * eps, b, 0.0, e};
    const auto mt = detail::map_traces(fam, t1, y[0], y[1], 0.0);
    y[2] = 0.5 * b * mt.A - 0.5 * mt.S;
    State4 fin = y;
    const bool ok = detail::integrate_dopri5(
        backward_rhs, 0.0, t1 - tm, y, ode_tol, h_max,
        [&](double s, const State4& w) {
          if (keep) keep->push_back({t1 - s, w[0], w[1], w[2], w[3]});
          fin = w;
        });
    if (!ok) return std::nullopt;
    return fin;
  };

  // Matching defect at the midpoint for unknowns u = (a, d, b, e).
  const auto defect = [&](const std::array<double, 4>& u)
      -> std::optional<State4> {
    const auto yl = fire_left(u[0], u[1], nullptr);
    const auto yr = fire_right(u[2], u[3], nullptr);
    if (!yl || !yr) return std::nullopt;
    State4 m;
    for (int i = 0; i < 4; ++i) m[i] = (*yl)[i] - (*yr)[i];
    return m;
  };
  const auto sup = [](const State4& m) {
    double n = 0.0;
    for (double v : m) n = std::max(n, std::fabs(v));
    return n;
  };

  ShootResult best;
  best.message = "no trajectory converged";

  // Seed slopes nearest the natural guess a = k first (r(t) ~ k t).
  std::vector<double> seeds{
      std::clamp(double(k), init_slope_range.first, init_slope_range.second)};
  const int n_grid = 5;
  for (int si = 0; si < n_grid; ++si)
    seeds.push_back(init_slope_range.first +
                    (init_slope_range.second - init_slope_range.first) * si /
                        double(n_grid - 1));
  std::sort(seeds.begin(), seeds.end(), [&](double x, double y) {
    return std::fabs(x - double(k)) < std::fabs(y - double(k));
  });

  for (double seed : seeds) {
    std::array<double, 4> u{seed, 0.0, seed, 0.0};
    auto m = defect(u);
    if (!m) continue;
    int iters = 0;
    bool converged = false;
    for (; iters < 50; ++iters) {
      const double norm = sup(*m);
      if (norm < tol) {
        converged = true;
        break;
      }
      // Finite-difference Jacobian of the 4-parameter defect map.
      double jac[4][4];
      bool jac_ok = true;
      for (int c = 0; c < 4; ++c) {
        auto up = u;
        const double h = 1e-7 * std::max(1.0, std::fabs(u[c]));
        up[c] += h;
        const auto mp = defect(up);
        if (!mp) {
          jac_ok = false;
          break;
        }
        for (int r = 0; r < 4; ++r) jac[r][c] = ((*mp)[r] - (*m)[r]) / h;
      }
      if (!jac_ok) break;
      // Solve jac * du = -m by Gaussian elimination with partial pivoting.
      double aug[4][5];
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) aug[r][c] = jac[r][c];
        aug[r][4] = -(*m)[r];
      }
      bool singular = false;
      for (int c = 0; c < 4 && !singular; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
          if (std::fabs(aug[r][c]) > std::fabs(aug[piv][c])) piv = r;
        if (!(std::fabs(aug[piv][c]) > 1e-300)) {
          singular = true;
          break;
        }
        if (piv != c)
          for (int cc = 0; cc < 5; ++cc) std::swap(aug[piv][cc], aug[c][cc]);
        for (int r = c + 1; r < 4; ++r) {
          const double f = aug[r][c] / aug[c][c];
          for (int cc = c; cc < 5; ++cc) aug[r][cc] -= f * aug[c][cc];
        }
      }
      if (singular) break;
      std::array<double, 4> du;
      for (int r = 3; r >= 0; --r) {
        double s = aug[r][4];
        for (int c = r + 1; c < 4; ++c) s -= aug[r][c] * du[c];
        du[r] = s / aug[r][r];
      }
      if (!std::isfinite(du[0] + du[1] + du[2] + du[3])) break;
      // Damping: halve the step until the defect decreases.
      bool improved = false;
      for (int half = 0; half < 8; ++half) {
        auto utrial = u;
        for (int i = 0; i < 4; ++i) utrial[i] += du[i];
        const auto mtrial = defect(utrial);
        if (mtrial && sup(*mtrial) < norm) {
          u = utrial;
          m = mtrial;
          improved = true;
          break;
        }
        for (double& v : du) v *= 0.5;
      }
      if (!improved) break;
    }
    if (!converged) continue;

    std::vector<TrajectorySample> left, right;
    const auto yl = fire_left(u[0], u[1], &left);
    const auto yr = fire_right(u[2], u[3], &right);
    if (!yl || !yr) continue;
    State4 mfinal;
    for (int i = 0; i < 4; ++i) mfinal[i] = (*yl)[i] - (*yr)[i];
    if (!(sup(mfinal) < tol)) continue;  // re-validated; spurious fits rejected

    // Stitch the halves (right half was emitted with decreasing t); drop
    // near-duplicate nodes so the Hermite intervals stay well separated.
    std::reverse(right.begin(), right.end());
    std::vector<TrajectorySample> samples;
    samples.reserve(left.size() + right.size());
    const double min_dt = 1e-9 * L;
    for (const auto& s : left)
      if (samples.empty() || s.t > samples.back().t + min_dt)
        samples.push_back(s);
    for (const auto& s : right)
      if (s.t > samples.back().t + min_dt) samples.push_back(s);

    ShootResult out;
    out.converged = true;
    out.message = "converged";
    out.slope = u[0];
    out.fdot = u[1];
    out.mismatch = sup(mfinal);
    out.iterations = iters;
    out.map = make_sampled_map(fam, k, samples);
    out.trajectory = std::move(samples);
    return out;
  }
  return best;
}

}  // namespace coh1
