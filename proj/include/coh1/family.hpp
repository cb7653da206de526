#pragma once

// Diagonal metric families on a cohomogeneity-one manifold.  A family is a
// list of blocks (profile p_i, multiplicity m_i) over an orbit interval
// [t_min, t_max]; the shape operator of the principal orbit at time t has
// eigenvalue -p_i'/(2 p_i) with multiplicity m_i, so every curvature trace
// used here reduces to weighted sums of jet quotients of the profiles.

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coh1/jet.hpp"
#include "coh1/profile.hpp"

namespace coh1 {

struct Block {
  Profile profile;
  int multiplicity = 1;
};

struct MetricFamily {
  std::string name;
  std::vector<Block> blocks;
  double t_min = 0.0;
  double t_max = 1.0;
  // Named parameters the family was built with (n, k, cheeger_s, ...).
  std::map<std::string, double> params;
  // When set, roots are also reported in the substituted variable
  // x = substitution(t); only "cos2" (x = cos^2 t) is used by the catalog.
  std::optional<std::string> substitution;
  // True when the profiles extend analytically beyond [t_min, t_max]
  // (round spheres and Clifford-type families); mixed traces may then be
  // evaluated at any finite second argument.
  bool extendable = false;

  int dim() const {
    int d = 0;
    for (const auto& b : blocks) d += b.multiplicity;
    return d;
  }

  bool verify_only() const {
    for (const auto& b : blocks)
      if (b.profile.verify_only()) return true;
    return false;
  }

  bool has_finite_domain() const {
    return std::isfinite(t_min) && std::isfinite(t_max);
  }
};

// Minimum distance from a singular orbit at which profiles may be evaluated.
inline constexpr double kDomainMargin = 1e-9;

inline void require_interior(const MetricFamily& fam, double t) {
  if (!std::isfinite(t))
    throw std::domain_error("evaluation point must be finite");
  if (!(t >= fam.t_min + kDomainMargin) ||
      (std::isfinite(fam.t_max) && !(t <= fam.t_max - kDomainMargin)))
    throw std::domain_error("evaluation point outside open orbit interval");
}

// Substituted coordinate for root reporting (x = cos^2 t).
inline std::optional<double> substituted_value(const MetricFamily& fam,
                                               double t) {
  if (!fam.substitution) return std::nullopt;
  if (*fam.substitution == "cos2") {
    const double c = std::cos(t);
    return c * c;
  }
  throw std::logic_error("unknown substitution tag: " + *fam.substitution);
}

// Curvature traces of the shape-operator family A(t) and its derivatives.
// With q_i = p_i'/p_i:
//   trA  = sum m_i q_i                trA2 = sum m_i q_i^2
//   trA3 = sum m_i q_i^3              trB  = sum m_i p_i''/p_i
//   trC  = sum m_i p_i'''/p_i         trAB = sum m_i q_i p_i''/p_i
struct TraceInvariants {
  double trA = 0.0;
  double trA2 = 0.0;
  double trA3 = 0.0;
  double trB = 0.0;
  double trC = 0.0;
  double trAB = 0.0;

  // Mean-curvature scalar of the orbit: alpha = -trA/2.
  double alpha() const { return -0.5 * trA; }
  // Squared-norm term beta = trA2/4.
  double beta() const { return 0.25 * trA2; }
};

inline TraceInvariants trace_invariants(const MetricFamily& fam, double t) {
  require_interior(fam, t);
  TraceInvariants inv;
  for (const auto& b : fam.blocks) {
    const Jet3 p = b.profile.eval(t);
    if (!(std::fabs(p.v) >= kJetDivFloor))
      throw std::domain_error("profile value vanishes at evaluation point");
    const double m = static_cast<double>(b.multiplicity);
    const double q = p.d1 / p.v;
    inv.trA += m * q;
    inv.trA2 += m * q * q;
    inv.trA3 += m * q * q * q;
    inv.trB += m * (p.d2 / p.v);
    inv.trC += m * (p.d3 / p.v);
    inv.trAB += m * q * (p.d2 / p.v);
  }
  return inv;
}

// Normal-direction Ricci curvature of the ambient metric at (t):
//   Ric(N,N) = (trA2 - 2 trB) / 4.
inline double ricci_normal(const MetricFamily& fam, double t) {
  const TraceInvariants inv = trace_invariants(fam, t);
  return 0.25 * (inv.trA2 - 2.0 * inv.trB);
}

// Traces mixing two orbit times: profiles differentiated at r, normalized by
// their values at t.  Used by the equivariant-map tension field, where the
// map sends the orbit at t to the orbit at r(t):
//   trAr = sum m_i p_i'(r)/p_i(t)      trBr = sum m_i p_i''(r)/p_i(t)
struct MixedTraces {
  double trAr = 0.0;
  double trBr = 0.0;
};

inline void require_mixed_point(const MetricFamily& fam, double r) {
  if (!std::isfinite(r))
    throw std::domain_error("mixed trace point must be finite");
  if (fam.extendable) return;  // profiles are entire; any finite r is valid
  if (!(r >= fam.t_min) || !(r <= fam.t_max))
    throw std::domain_error(
        "mixed trace point outside orbit interval of a non-extendable family");
}

inline MixedTraces mixed_traces(const MetricFamily& fam, double t, double r) {
  require_interior(fam, t);
  require_mixed_point(fam, r);
  MixedTraces mt;
  for (const auto& b : fam.blocks) {
    const Jet3 pt = b.profile.eval(t);
    if (!(std::fabs(pt.v) >= kJetDivFloor))
      throw std::domain_error("profile value vanishes at evaluation point");
    const Jet3 pr = b.profile.eval(r);
    const double m = static_cast<double>(b.multiplicity);
    mt.trAr += m * (pr.d1 / pt.v);
    mt.trBr += m * (pr.d2 / pt.v);
  }
  return mt;
}

}  // namespace coh1
