#pragma once

// Built-in cohomogeneity-one geometries.  Each constructor returns the
// block-diagonal profile family of the principal orbits, the orbit interval,
// and bookkeeping (parameters, substitution variable, extendability).

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coh1/family.hpp"

namespace coh1::catalog {

inline constexpr double kPi = 3.14159265358979323846;

// Round sphere S^(n+1): one block sin^2(t) with multiplicity n on (0, pi).
inline MetricFamily sphere(int n) {
  if (n < 1) throw std::invalid_argument("sphere: need n >= 1");
  MetricFamily fam;
  fam.name = "sphere";
  fam.blocks = {{Profile::sin_sq(1.0), n}};
  fam.t_min = 0.0;
  fam.t_max = kPi;
  fam.params = {{"n", double(n)}};
  fam.extendable = true;
  return fam;
}

// Generalized Clifford family in S^(n+1): cos^2(t) x k + sin^2(t) x (n-k)
// on (0, pi/2).
inline MetricFamily clifford(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1)
    throw std::invalid_argument("clifford: need n >= 2 and 1 <= k <= n-1");
  MetricFamily fam;
  fam.name = "clifford";
  fam.blocks = {{Profile::cos_sq(1.0), k}, {Profile::sin_sq(1.0), n - k}};
  fam.t_min = 0.0;
  fam.t_max = kPi / 2.0;
  fam.params = {{"n", double(n)}, {"k", double(k)}};
  fam.extendable = true;
  return fam;
}

// Tubes around CP^p inside CP^n (Fubini-Study): blocks cos^2 t x 2p,
// sin^2 t x 2(n-p-1), and a fiber block (eta^2/4) sin^2(2t) with
//   eta^2 = 2(n-p-1)/(n-p) + 2p/(p+1).
// Polynomial reductions use x = cos^2 t.
inline MetricFamily cpn(int n, int p) {
  if (n < 2 || p < 1 || p > n - 1)
    throw std::invalid_argument("cpn: need n >= 2 and 1 <= p <= n-1");
  const double eta2 =
      2.0 * double(n - p - 1) / double(n - p) + 2.0 * double(p) / double(p + 1);
  MetricFamily fam;
  fam.name = "cpn";
  fam.blocks.push_back({Profile::cos_sq(1.0), 2 * p});
  if (n - p - 1 > 0)
    fam.blocks.push_back({Profile::sin_sq(1.0), 2 * (n - p - 1)});
  fam.blocks.push_back({Profile::sin_sq(2.0, 0.0, eta2 / 4.0), 1});
  fam.t_min = 0.0;
  fam.t_max = kPi / 2.0;
  fam.params = {{"n", double(n)}, {"p", double(p)}};
  fam.substitution = "cos2";
  fam.extendable = false;
  return fam;
}

// Geodesic spheres in quaternionic projective space HP^n:
// sin^2 t x 4(n-1) + sin^2(2t) x 3 on (0, pi/2); x = cos^2 t.
inline MetricFamily hpn(int n) {
  if (n < 2) throw std::invalid_argument("hpn: need n >= 2");
  MetricFamily fam;
  fam.name = "hpn";
  fam.blocks = {{Profile::sin_sq(1.0), 4 * (n - 1)}, {Profile::sin_sq(2.0), 3}};
  fam.t_min = 0.0;
  fam.t_max = kPi / 2.0;
  fam.params = {{"n", double(n)}};
  fam.substitution = "cos2";
  fam.extendable = false;
  return fam;
}

// Tubes around the complex quadric: cos^2 t x 1 + 1 x (n-1) + sin^2 t x (n-1)
// on (0, pi/2); x = cos^2 t.
inline MetricFamily quadric(int n) {
  if (n < 2) throw std::invalid_argument("quadric: need n >= 2");
  MetricFamily fam;
  fam.name = "quadric";
  fam.blocks = {{Profile::cos_sq(1.0), 1},
                {Profile::constant(1.0), n - 1},
                {Profile::sin_sq(1.0), n - 1}};
  fam.t_min = 0.0;
  fam.t_max = kPi / 2.0;
  fam.params = {{"n", double(n)}};
  fam.substitution = "cos2";
  fam.extendable = false;
  return fam;
}

// Bi-invariant SU(3) acted on by SU(2) x SU(2): blocks
// 4 x 1, 4cos^2 t x 2, 4sin^2(t/2) x 2, 4cos^2(t/2) x 2 on (0, pi/2).
inline MetricFamily su3() {
  MetricFamily fam;
  fam.name = "su3";
  fam.blocks = {{Profile::constant(4.0), 1},
                {Profile::cos_sq(1.0, 0.0, 4.0), 2},
                {Profile::sin_sq(0.5, 0.0, 4.0), 2},
                {Profile::cos_sq(0.5, 0.0, 4.0), 2}};
  fam.t_min = 0.0;
  fam.t_max = kPi / 2.0;
  fam.extendable = false;
  return fam;
}

// S^2 x S^2 under the diagonal SO(3) action: blocks 2 sin t, 2 cos t, 2
// on (0, pi/2).
inline MetricFamily s2xs2_so3() {
  MetricFamily fam;
  fam.name = "s2xs2_so3";
  fam.blocks = {{Profile::sin_first(2.0, 1.0), 1},
                {Profile::cos_first(2.0, 1.0), 1},
                {Profile::constant(2.0), 1}};
  fam.t_min = 0.0;
  fam.t_max = kPi / 2.0;
  fam.extendable = false;
  return fam;
}

// S^2 x S^2 under SU(2): blocks sin^2(2t), 1, cos^2(2t) on (0, pi/4).
inline MetricFamily s2xs2_su2() {
  MetricFamily fam;
  fam.name = "s2xs2_su2";
  fam.blocks = {{Profile::sin_sq(2.0), 1},
                {Profile::constant(1.0), 1},
                {Profile::cos_sq(2.0), 1}};
  fam.t_min = 0.0;
  fam.t_max = kPi / 4.0;
  fam.extendable = false;
  return fam;
}

// Isoparametric family with g = 3 principal curvatures in S^7:
// sin^2(t - k pi/3) x 2 for k = 0, 1, 2 on (0, pi/3).
inline MetricFamily s7g3() {
  MetricFamily fam;
  fam.name = "s7g3";
  for (int k = 0; k < 3; ++k)
    fam.blocks.push_back({Profile::sin_sq(1.0, -double(k) * kPi / 3.0), 2});
  fam.t_min = 0.0;
  fam.t_max = kPi / 3.0;
  fam.extendable = false;
  return fam;
}

// Isoparametric family with g = 4 curvatures in S^9 (exploratory).
inline MetricFamily s9g4() {
  MetricFamily fam;
  fam.name = "s9g4";
  for (int k = 0; k < 4; ++k)
    fam.blocks.push_back({Profile::sin_sq(1.0, -double(k) * kPi / 4.0), 2});
  fam.t_min = 0.0;
  fam.t_max = kPi / 4.0;
  fam.extendable = false;
  return fam;
}

// Isoparametric family with g = 6 curvatures in S^13 (exploratory).
inline MetricFamily s13g6() {
  MetricFamily fam;
  fam.name = "s13g6";
  for (int k = 0; k < 6; ++k)
    fam.blocks.push_back({Profile::sin_sq(1.0, -double(k) * kPi / 6.0), 2});
  fam.t_min = 0.0;
  fam.t_max = kPi / 6.0;
  fam.extendable = false;
  return fam;
}

// Surface of revolution with generating profile phi(t): single block phi^2.
inline MetricFamily surface_of_revolution(Profile phi, double t_min,
                                          double t_max) {
  MetricFamily fam;
  fam.name = "revolution";
  fam.blocks = {{Profile::square_of(std::move(phi)), 1}};
  fam.t_min = t_min;
  fam.t_max = t_max;
  fam.extendable = false;
  return fam;
}

// Warped product over an interval with fiber dimension n; "p" is the squared
// warping function f^2.
inline MetricFamily warped_product(Profile p, int n, double t_min = 0.0,
                                   double t_max =
                                       std::numeric_limits<double>::infinity()) {
  if (n < 1) throw std::invalid_argument("warped_product: need n >= 1");
  MetricFamily fam;
  fam.name = "warped";
  fam.blocks = {{std::move(p), n}};
  fam.t_min = t_min;
  fam.t_max = t_max;
  fam.params = {{"n", double(n)}};
  fam.extendable = false;
  return fam;
}

// Doubly warped product: blocks p_f = f^2 (dim n) and p_h = h^2 (dim m).
inline MetricFamily doubly_warped_product(Profile p_f, int n, Profile p_h,
                                          int m, double t_min, double t_max) {
  if (n < 1 || m < 1)
    throw std::invalid_argument("doubly_warped_product: need n, m >= 1");
  MetricFamily fam;
  fam.name = "doubly_warped";
  fam.blocks = {{std::move(p_f), n}, {std::move(p_h), m}};
  fam.t_min = t_min;
  fam.t_max = t_max;
  fam.params = {{"n", double(n)}, {"m", double(m)}};
  fam.extendable = false;
  return fam;
}

struct CatalogEntry {
  std::string name;
  std::string params;  // comma-separated parameter names
  std::string description;
};

inline const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> table = {
      {"sphere", "n", "geodesic spheres in the round S^(n+1)"},
      {"clifford", "n,k", "Clifford-type tori S^k x S^(n-k) in S^(n+1)"},
      {"cpn", "n,p", "tubes around CP^p in CP^n (Fubini-Study)"},
      {"hpn", "n", "geodesic spheres in HP^n"},
      {"quadric", "n", "tubes around the complex quadric in CP^(n+1)"},
      {"su3", "", "SU(3) with bi-invariant metric, SU(2) x SU(2) action"},
      {"s2xs2_so3", "", "S^2 x S^2 under the diagonal SO(3) action"},
      {"s2xs2_su2", "", "S^2 x S^2 under the SU(2) action"},
      {"s7g3", "", "isoparametric family with g = 3 in S^7"},
      {"s9g4", "", "isoparametric family with g = 4 in S^9"},
      {"s13g6", "", "isoparametric family with g = 6 in S^13"},
  };
  return table;
}

namespace detail {
inline int require_int_param(const std::map<std::string, double>& params,
                             const std::string& key, const std::string& who) {
  auto it = params.find(key);
  if (it == params.end())
    throw std::invalid_argument(who + ": missing parameter '" + key + "'");
  const double v = it->second;
  const double r = std::round(v);
  if (!std::isfinite(v) || std::fabs(v - r) > 0.0)
    throw std::invalid_argument(who + ": parameter '" + key +
                                "' must be an integer");
  return static_cast<int>(r);
}
}  // namespace detail

// Builds a catalog family by name; throws std::invalid_argument for unknown
// names or malformed parameters.
inline MetricFamily make_catalog_family(
    const std::string& name, const std::map<std::string, double>& params = {}) {
  using detail::require_int_param;
  if (name == "sphere") return sphere(require_int_param(params, "n", name));
  if (name == "clifford")
    return clifford(require_int_param(params, "n", name),
                    require_int_param(params, "k", name));
  if (name == "cpn")
    return cpn(require_int_param(params, "n", name),
               require_int_param(params, "p", name));
  if (name == "hpn") return hpn(require_int_param(params, "n", name));
  if (name == "quadric") return quadric(require_int_param(params, "n", name));
  if (name == "su3") return su3();
  if (name == "s2xs2_so3") return s2xs2_so3();
  if (name == "s2xs2_su2") return s2xs2_su2();
  if (name == "s7g3") return s7g3();
  if (name == "s9g4") return s9g4();
  if (name == "s13g6") return s13g6();
  throw std::invalid_argument("unknown catalog family: " + name);
}

}  // namespace coh1::catalog
