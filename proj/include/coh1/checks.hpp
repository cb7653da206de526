#pragma once

// Built-in verification suite.  Each check reproduces one family of worked
// results end to end through the public API and reports pass/fail with a
// short measurement summary.  The CLI `verify` subcommand and the acceptance
// test binary both run this registry.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coh1/catalog.hpp"
#include "coh1/cheeger.hpp"
#include "coh1/equivariant.hpp"
#include "coh1/finite_diff.hpp"
#include "coh1/foliation.hpp"
#include "coh1/solve.hpp"
#include "coh1/stability.hpp"

namespace coh1 {

struct CheckResult {
  std::string id;    // stable identifier, e.g. "03-cpn-quadratic"
  bool passed = false;
  std::string detail;
};

namespace checks_detail {

inline std::string num(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failures_;
      if (!log_.empty()) log_ += "; ";
      log_ += what;
    }
  }
  void note(const std::string& s) {
    if (failures_ == 0) note_ = s;
  }
  CheckResult finish(const std::string& id) const {
    return {id, failures_ == 0, failures_ == 0 ? note_ : log_};
  }

 private:
  int failures_ = 0;
  std::string log_;
  std::string note_;
};

// True when the two sorted lists match pairwise within tol.
inline bool set_match(std::vector<double> a, std::vector<double> b,
                      double tol) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (size_t i = 0; i < a.size(); ++i)
    if (!(std::fabs(a[i] - b[i]) <= tol)) return false;
  return true;
}

inline std::vector<double> root_ts(const std::vector<OrbitSolution>& sols) {
  std::vector<double> out;
  for (const auto& s : sols) out.push_back(s.t_root);
  return out;
}

inline std::vector<double> proper_xs(const std::vector<OrbitSolution>& sols) {
  std::vector<double> out;
  for (const auto& s : sols)
    if (s.classification != OrbitClass::Minimal && s.x_value)
      out.push_back(*s.x_value);
  return out;
}

inline int proper_count(const std::vector<OrbitSolution>& sols) {
  int n = 0;
  for (const auto& s : sols)
    if (s.classification != OrbitClass::Minimal) ++n;
  return n;
}

inline std::vector<double> minimal_ts(const std::vector<OrbitSolution>& sols) {
  std::vector<double> out;
  for (const auto& s : sols)
    if (s.classification == OrbitClass::Minimal) out.push_back(s.t_root);
  return out;
}

inline constexpr double kPi = catalog::kPi;

// --- the 18 checks --------------------------------------------------------

inline CheckResult check_01_sphere() {
  Checker c;
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const auto sols = find_roots(catalog::sphere(n), Functional::biharmonic());
    int in_window = 0;
    for (const auto& s : sols) {
      if (std::fabs(s.t_root - kPi / 4.0) < 1e-10) {
        ++in_window;
        worst = std::max(worst, std::fabs(s.t_root - kPi / 4.0));
        c.expect(s.classification == OrbitClass::ProperBiharmonic,
                 "n=" + std::to_string(n) + ": root at pi/4 not proper");
      }
    }
    c.expect(in_window == 1,
             "n=" + std::to_string(n) + ": expected one root at pi/4, got " +
                 std::to_string(in_window));
  }
  c.note("max |t - pi/4| = " + num(worst));
  return c.finish("01-sphere-biharmonic");
}

inline CheckResult check_02_clifford() {
  Checker c;
  double worst = 0.0;
  const std::pair<int, int> cases[] = {{4, 1}, {5, 2}, {6, 3}};
  for (auto [n, k] : cases) {
    std::vector<double> expected = {kPi / 4.0,
                                    std::atan(std::sqrt(double(n - k) / k))};
    std::sort(expected.begin(), expected.end());
    if (expected[1] - expected[0] < 1e-10) expected.pop_back();
    const auto sols =
        find_roots(catalog::clifford(n, k), Functional::biharmonic());
    const auto ts = root_ts(sols);
    c.expect(set_match(ts, expected, 1e-10),
             "(" + std::to_string(n) + "," + std::to_string(k) +
                 "): root set mismatch, got " + std::to_string(ts.size()) +
                 " roots");
    for (const auto& s : sols) {
      const bool at_pi4 = std::fabs(s.t_root - kPi / 4.0) < 1e-10;
      if (at_pi4) {
        const bool want_proper = (n != 2 * k);
        c.expect((s.classification == OrbitClass::ProperBiharmonic) ==
                     want_proper,
                 "(" + std::to_string(n) + "," + std::to_string(k) +
                     "): pi/4 classification wrong");
      } else {
        c.expect(s.classification == OrbitClass::Minimal,
                 "(" + std::to_string(n) + "," + std::to_string(k) +
                     "): second root should be minimal");
      }
      for (double e : expected)
        if (std::fabs(s.t_root - e) < 1e-10)
          worst = std::max(worst, std::fabs(s.t_root - e));
    }
  }
  c.note("max root error = " + num(worst));
  return c.finish("02-clifford-biharmonic");
}

inline CheckResult check_03_cpn() {
  Checker c;
  double worst = 0.0;
  const std::pair<int, int> cases[] = {{2, 1}, {3, 1}, {3, 2}};
  for (auto [n, p] : cases) {
    auto sols = find_roots(catalog::cpn(n, p), Functional::biharmonic());
    auto xs = proper_xs(sols);
    auto want = polynomial_roots(polys::cpn_biharmonic(n, p), 0.0, 1.0);
    c.expect(set_match(xs, want, 1e-10),
             "(" + std::to_string(n) + "," + std::to_string(p) +
                 "): x-roots do not match quadratic");
    std::sort(xs.begin(), xs.end());
    std::sort(want.begin(), want.end());
    for (size_t i = 0; i < std::min(xs.size(), want.size()); ++i)
      worst = std::max(worst, std::fabs(xs[i] - want[i]));
  }
  c.note("max |x - quadratic root| = " + num(worst));
  return c.finish("03-cpn-quadratic");
}

inline CheckResult check_04_hpn() {
  Checker c;
  for (int n : {2, 3, 5}) {
    auto sols = find_roots(catalog::hpn(n), Functional::biharmonic());
    auto xs = proper_xs(sols);
    auto want = polynomial_roots(polys::hpn_biharmonic(n), 0.0, 1.0);
    c.expect(xs.size() == 2,
             "n=" + std::to_string(n) + ": expected 2 proper roots");
    c.expect(set_match(xs, want, 1e-10),
             "n=" + std::to_string(n) + ": quadratic root mismatch");
    const double x_minimal = 3.0 / (2.0 * (2.0 * n + 1.0));
    for (double x : xs)
      c.expect(std::fabs(x - x_minimal) > 1e-6,
               "n=" + std::to_string(n) + ": proper root collides with the "
                                          "minimal orbit");
    if (n == 2 && !xs.empty()) {
      const double xlo = *std::min_element(xs.begin(), xs.end());
      c.expect(std::fabs(xlo - 0.125) <= 1e-12,
               "n=2: x_- = " + num(xlo, 17) + " but expected 1/8");
      c.note("n=2 x_- error = " + num(std::fabs(xlo - 0.125)));
    }
  }
  return c.finish("04-hpn-quadratic");
}

inline CheckResult check_05_quadric() {
  Checker c;
  double worst = 0.0;
  for (int n : {3, 4, 5}) {
    const auto sols = find_roots(catalog::quadric(n), Functional::biharmonic());
    c.expect(sols.size() == 2, "n=" + std::to_string(n) + ": expected 2 roots");
    int seen_min = 0, seen_prop = 0;
    for (const auto& s : sols) {
      if (!s.x_value) continue;
      if (s.classification == OrbitClass::Minimal) {
        ++seen_min;
        worst = std::max(worst, std::fabs(*s.x_value - 1.0 / n));
        c.expect(std::fabs(*s.x_value - 1.0 / n) <= 1e-10,
                 "n=" + std::to_string(n) + ": minimal root not at x=1/n");
      } else {
        ++seen_prop;
        worst = std::max(worst, std::fabs(*s.x_value - 0.5));
        c.expect(std::fabs(*s.x_value - 0.5) <= 1e-10,
                 "n=" + std::to_string(n) + ": proper root not at x=1/2");
      }
    }
    c.expect(seen_min == 1 && seen_prop == 1,
             "n=" + std::to_string(n) + ": classification counts wrong");
  }
  c.note("max x error = " + num(worst));
  return c.finish("05-quadric-roots");
}

inline CheckResult check_06_null_cases() {
  Checker c;
  const auto su3_sols = find_roots(catalog::su3(), Functional::biharmonic());
  c.expect(proper_count(su3_sols) == 0, "su3: unexpected proper root");
  const auto fam = catalog::s2xs2_so3();
  const auto so3_sols = find_roots(fam, Functional::biharmonic());
  c.expect(proper_count(so3_sols) == 0, "s2xs2_so3: unexpected proper root");
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double t = 0.05 + (kPi / 2.0 - 0.1) * i / 19.0;
    worst = std::max(worst, std::fabs(biharmonic_residual(fam, t) + 2.0));
  }
  c.expect(worst <= 1e-12, "s2xs2_so3: residual deviates from -2 by " +
                               num(worst));
  c.note("max |trB + 2| = " + num(worst));
  return c.finish("06-null-cases");
}

inline CheckResult check_07_cheeger_s7g3() {
  Checker c;
  const auto base = catalog::s7g3();
  c.expect(proper_count(find_roots(base, Functional::biharmonic())) == 0,
           "s=0: unexpected proper root");
  const auto deformed = cheeger_deform(base, 1.0);
  bool found = false;
  double resid = 0.0;
  for (const auto& s : find_roots(deformed, Functional::biharmonic())) {
    if (s.classification != OrbitClass::Minimal && s.t_root > kPi / 6.0 &&
        s.t_root < kPi / 4.0) {
      found = true;
      resid = std::fabs(s.residual);
    }
  }
  c.expect(found, "s=1: no proper root in (pi/6, pi/4)");
  c.expect(resid < 1e-12, "s=1: root residual " + num(resid) + " too large");
  for (double s : {0.0, 0.5, 1.0, 2.0}) {
    const auto fam = cheeger_deform(base, s);
    const auto mins =
        minimal_ts(find_roots(fam, Functional::biharmonic()));
    c.expect(mins.size() == 1 && std::fabs(mins[0] - kPi / 6.0) <= 1e-10,
             "s=" + num(s) + ": minimal locus is not {pi/6}");
  }
  c.note("s=1 proper-root residual = " + num(resid));
  return c.finish("07-cheeger-s7g3");
}

inline CheckResult check_08_cheeger_su3() {
  Checker c;
  const auto fam = cheeger_deform(catalog::su3(), 1.0);
  const double trB = biharmonic_residual(fam, kPi / 6.0);
  c.expect(std::fabs(trB + 1.0) <= 1e-12,
           "trB(pi/6) = " + num(trB, 17) + ", expected -1");
  bool found = false;
  for (const auto& s : find_roots(fam, Functional::biharmonic()))
    if (s.classification != OrbitClass::Minimal && s.t_root > 0.0 &&
        s.t_root < kPi / 6.0)
      found = true;
  c.expect(found, "no proper root in (0, pi/6)");
  c.note("trB(pi/6) + 1 = " + num(trB + 1.0));
  return c.finish("08-cheeger-su3");
}

inline CheckResult check_09_cheeger_s2xs2() {
  Checker c;
  const auto fam = cheeger_deform(catalog::s2xs2_su2(), 1.0);
  const auto sols = find_roots(fam, Functional::biharmonic());
  bool found = false;
  for (const auto& s : sols)
    if (s.classification != OrbitClass::Minimal && s.t_root > 0.0 &&
        s.t_root < kPi / 8.0)
      found = true;
  c.expect(found, "no proper root in (0, pi/8)");
  const auto mins = minimal_ts(sols);
  c.expect(mins.size() == 1 && std::fabs(mins[0] - kPi / 8.0) <= 1e-10,
           "minimal locus is not {pi/8}");
  if (!mins.empty()) c.note("minimal root error = " + num(std::fabs(mins[0] - kPi / 8.0)));
  return c.finish("09-cheeger-s2xs2");
}

inline CheckResult check_10_quadric_stability() {
  Checker c;
  double worst = 0.0;
  for (int n : {3, 4, 5}) {
    const auto rep = stability_report(catalog::quadric(n), kPi / 4.0);
    const double want = -16.0 * double(n - 2) * double(n - 2);
    worst = std::max(worst, std::fabs(rep.criterion - want));
    c.expect(std::fabs(rep.criterion - want) <= 1e-9,
             "n=" + std::to_string(n) + ": criterion " + num(rep.criterion, 12) +
                 " != " + num(want, 12));
    c.expect(rep.unstable, "n=" + std::to_string(n) + ": instability flag not set");
  }
  c.note("max criterion error = " + num(worst));
  return c.finish("10-quadric-stability");
}

inline CheckResult check_11_hpn_asymptotics() {
  Checker c;
  const auto probe = hpn_asymptotics_probe(1000000);
  const double want_a = -12.0 * std::sqrt(3.0);
  const double want_c = 48.0 * std::sqrt(3.0);
  const double rel_a = std::fabs(probe.sqrt_n_times_trA - want_a) / std::fabs(want_a);
  const double rel_c = std::fabs(probe.trC_over_sqrt_n - want_c) / want_c;
  c.expect(rel_a <= 0.02, "sqrt(n) trA off by " + num(rel_a));
  c.expect(rel_c <= 0.02, "trC/sqrt(n) off by " + num(rel_c));
  c.note("rel errors: trA " + num(rel_a) + ", trC " + num(rel_c));
  return c.finish("11-hpn-asymptotics");
}

inline CheckResult check_12_rharmonic_sphere() {
  Checker c;
  double worst = 0.0;
  for (int r = 2; r <= 6; ++r) {
    const double want = std::asin(1.0 / std::sqrt(double(r)));
    bool found = false;
    for (const auto& s :
         find_roots(catalog::sphere(3), Functional::rharmonic(r))) {
      if (std::fabs(s.t_root - want) <= 1e-10) {
        found = true;
        worst = std::max(worst, std::fabs(s.t_root - want));
        c.expect(s.classification != OrbitClass::Minimal,
                 "r=" + std::to_string(r) + ": root misclassified as minimal");
      }
    }
    c.expect(found, "r=" + std::to_string(r) + ": no root at arcsin(1/sqrt r)");
  }
  c.note("max root error = " + num(worst));
  return c.finish("12-rharmonic-sphere");
}

inline CheckResult check_13_quadric_clifford() {
  Checker c;
  double worst = 0.0;
  for (int r = 2; r <= 6; ++r) {
    for (int n : {3, 4, 5}) {
      const auto fn = Functional::rharmonic(r);
      const auto sq = find_roots(catalog::quadric(n), fn);
      const auto sc = find_roots(catalog::clifford(n, 1), fn);
      c.expect(set_match(root_ts(sq), root_ts(sc), 1e-10),
               "r=" + std::to_string(r) + ", n=" + std::to_string(n) +
                   ": quadric/clifford root sets differ");
      auto xs = proper_xs(sq);
      auto want = polynomial_roots(polys::quadric_rharmonic(n, r), 0.0, 1.0);
      c.expect(set_match(xs, want, 1e-10),
               "r=" + std::to_string(r) + ", n=" + std::to_string(n) +
                   ": cubic root mismatch");
      std::sort(xs.begin(), xs.end());
      std::sort(want.begin(), want.end());
      for (size_t i = 0; i < std::min(xs.size(), want.size()); ++i)
        worst = std::max(worst, std::fabs(xs[i] - want[i]));
    }
  }
  c.note("max |x - cubic root| = " + num(worst));
  return c.finish("13-quadric-clifford-rharmonic");
}

inline CheckResult check_14_hpn_quartic() {
  Checker c;
  for (int r : {2, 3, 4}) {
    for (int n : {2, 3, 5}) {
      const auto P = polys::hpn_rharmonic(n, r);
      const double xm = 3.0 / (2.0 * (2.0 * n + 1.0));
      const std::string tag = "r=" + std::to_string(r) + ", n=" + std::to_string(n);
      c.expect(polynomial_eval(P, 0.0) == 18.0, tag + ": P(0) != 18");
      c.expect(polynomial_eval(P, xm) < 0.0, tag + ": P(x_min) not negative");
      const auto want = polynomial_roots(P, 0.0, xm);
      c.expect(!want.empty(), tag + ": quartic has no root below x_min");
      bool matched = false;
      for (const auto& s :
           find_roots(catalog::hpn(n), Functional::rharmonic(r))) {
        if (s.classification == OrbitClass::Minimal || !s.x_value) continue;
        if (*s.x_value <= 0.0 || *s.x_value >= xm) continue;
        for (double w : want)
          if (std::fabs(*s.x_value - w) <= 1e-8) matched = true;
      }
      c.expect(matched, tag + ": solver root below x_min misses the quartic");
      if (r == 2) {
        const auto quartic_roots = polynomial_roots(P, 0.0, 1.0);
        const auto quad_roots =
            polynomial_roots(polys::hpn_biharmonic(n), 0.0, 1.0);
        c.expect(set_match(quartic_roots, quad_roots, 1e-8),
                 tag + ": quartic/quadratic roots differ at r=2");
      }
    }
  }
  c.note("sign pattern and root matches hold");
  return c.finish("14-hpn-quartic");
}

inline CheckResult check_15_foliations() {
  Checker c;
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> unif(0.1, 5.0);
  double worst_w = 0.0;
  for (int r : {2, 3, 4, 5}) {
    const double c1 = unif(rng), c2 = unif(rng);
    for (int i = 0; i < 50; ++i) {
      const double t = 10.0 * i / 49.0;
      worst_w = std::max(worst_w, std::fabs(warped_leaf_residual(r, c1, c2, t)));
    }
  }
  c.expect(worst_w < 1e-12, "warped residual " + num(worst_w));
  double worst_d = 0.0, worst_t = 0.0;
  const std::pair<int, int> cases[] = {{1, 1}, {2, 3}, {3, 2}};
  for (auto [n, m] : cases) {
    const double T = doubly_warped_halfwidth(n, m);
    for (int i = 0; i < 50; ++i) {
      const double t = -0.9 * T + 1.8 * T * i / 49.0;
      worst_d = std::max(worst_d, std::fabs(doubly_warped_residual(n, m, t)));
    }
    const auto mins = find_roots(doubly_warped_foliation(n, m),
                                 Functional::minimal());
    const double want = doubly_warped_minimal_time(n, m);
    c.expect(mins.size() == 1, "(" + std::to_string(n) + "," +
                                   std::to_string(m) + "): minimal locus size");
    if (!mins.empty()) {
      worst_t = std::max(worst_t, std::fabs(mins[0].t_root - want));
      c.expect(std::fabs(mins[0].t_root - want) <= 1e-10,
               "(" + std::to_string(n) + "," + std::to_string(m) +
                   "): minimal time off by " +
                   num(std::fabs(mins[0].t_root - want)));
    }
  }
  c.expect(worst_d < 1e-12, "doubly warped residual " + num(worst_d));
  const TorusCubic tc = torus_family(1.0, 0.25);
  c.expect(tc.a + tc.b + tc.c == 0.0, "torus: a+b+c != 0");
  c.expect(3.0 * tc.a + 2.0 * tc.b == 0.0, "torus: 3a+2b != 0");
  c.expect(torus_partition_check(1.0, 10000), "torus partition (a=1) failed");
  c.expect(torus_partition_check(0.37, 10000),
           "torus partition (a=0.37) failed");
  c.note("residuals: warped " + num(worst_w) + ", doubly " + num(worst_d) +
         ", minimal-time err " + num(worst_t));
  return c.finish("15-foliations");
}

inline CheckResult check_16_index_nullity() {
  Checker c;
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> pick_n(2, 6);
  std::uniform_real_distribution<double> pick_t(0.01, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = pick_n(rng);
    const double t = pick_t(rng);
    const auto got = warped_index_nullity(n, t);
    // Brute-force spectrum enumeration oracle.
    std::int64_t index = 0, nullity = 1;
    for (int k = 1; k <= 1000; ++k) {
      const double z = t * double(k) * double(n + k - 1);
      if (std::fabs(z - 1.0) <= 1e-12)
        nullity += sphere_multiplicity(k, n);
      else if (z < 1.0)
        index += sphere_multiplicity(k, n);
    }
    c.expect(got.index == index && got.nullity == nullity,
             "oracle mismatch at n=" + std::to_string(n) + ", t=" + num(t, 12));
  }
  const auto a = warped_index_nullity(2, 0.1);
  const auto b = warped_index_nullity(2, 0.5);
  const auto d = warped_index_nullity(2, 2.0);
  c.expect(a.index == 8 && a.nullity == 1, "(2,0.1) != (8,1)");
  c.expect(b.index == 0 && b.nullity == 4, "(2,0.5) != (0,4)");
  c.expect(d.index == 0 && d.nullity == 1, "(2,2) != (0,1)");
  c.note("spots (8,1), (0,4), (0,1) and 100 oracle draws agree");
  return c.finish("16-index-nullity");
}

inline CheckResult check_17_krmaps() {
  Checker c;
  double worst_f = 0.0, worst_g = 0.0;
  const MetricFamily fams[] = {catalog::sphere(3), catalog::clifford(4, 1),
                               catalog::quadric(3)};
  for (const auto& fam : fams) {
    const auto id = identity_map(fam);
    const double len = fam.t_max - fam.t_min;
    for (int i = 0; i < 50; ++i) {
      const double t = fam.t_min + len * (0.05 + 0.9 * i / 49.0);
      worst_f = std::max(worst_f, std::fabs(tension(id, t)));
      worst_g = std::max(worst_g, std::fabs(bitension(id, t)));
    }
  }
  c.expect(worst_f < 1e-12, "identity tension " + num(worst_f));
  c.expect(worst_g < 1e-12, "identity bitension " + num(worst_g));

  const auto shot = shoot_kr(catalog::sphere(3), 1);
  c.expect(shot.converged, "shooting on sphere(3), k=1 did not converge");
  double sup = 0.0;
  for (const auto& s : shot.trajectory)
    sup = std::max(sup, std::fabs(s.r - s.t));
  c.expect(shot.converged && sup <= 1e-4,
           "shooting sup-norm vs identity = " + num(sup));

  // All eight branches of the degree table.
  const auto deg = [](bool je, bool n0e, bool n1e, int w, int k) {
    return brouwer_degree(DegreeInput{je, n0e, n1e, w}, k);
  };
  c.expect(deg(true, false, false, 2, 5) == 5, "branch 1 (j even, both odd)");
  c.expect(deg(true, true, false, 2, 5) == 1, "branch 2 (j even, n0 even)");
  c.expect(deg(false, false, false, 2, 7) == 7, "branch 3 (j odd, both odd)");
  c.expect(deg(false, true, true, 6, 7) == 0, "branch 4 (both even, |W|=6)");
  c.expect(deg(false, true, true, 8, 7) == 1, "branch 5 (both even, |W|=8)");
  c.expect(deg(false, true, false, 6, 7) == -1, "branch 6 (n0 even, |W|=6)");
  c.expect(deg(false, true, false, 8, 7) == 1, "branch 7 (n0 even, |W|=8)");
  c.expect(deg(false, false, true, 4, 7) == 1, "branch 8 (n1 even)");
  c.note("identity |F| " + num(worst_f) + ", |G| " + num(worst_g) +
         ", shoot sup " + num(sup));
  return c.finish("17-krmaps");
}

inline CheckResult check_18_jets() {
  Checker c;
  const MetricFamily fams[] = {
      catalog::sphere(3),    catalog::clifford(4, 1), catalog::cpn(3, 1),
      catalog::hpn(2),       catalog::quadric(3),     catalog::su3(),
      catalog::s2xs2_so3(),  catalog::s2xs2_su2(),    catalog::s7g3(),
      catalog::s9g4(),       catalog::s13g6()};
  std::mt19937 rng(424242);
  double worst = 0.0;
  for (const auto& fam : fams) {
    const double len = fam.t_max - fam.t_min;
    std::uniform_real_distribution<double> pick(fam.t_min + 0.08 * len,
                                                fam.t_max - 0.08 * len);
    for (const auto& block : fam.blocks) {
      const auto value = [&](double u) { return block.profile.eval(u).v; };
      for (int trial = 0; trial < 100; ++trial) {
        const double t = pick(rng);
        const Jet3 jet = block.profile.eval(t);
        const double f1 = fd::d1(value, t, 8e-4);
        const double f2 = fd::d2(value, t, 3e-3);
        const double f3 = fd::d3(value, t, 4e-3);
        const double e1 = std::fabs(f1 - jet.d1) / std::max(1.0, std::fabs(jet.d1));
        const double e2 = std::fabs(f2 - jet.d2) / std::max(1.0, std::fabs(jet.d2));
        const double e3 = std::fabs(f3 - jet.d3) / std::max(1.0, std::fabs(jet.d3));
        worst = std::max({worst, e1, e2, e3});
        c.expect(e1 <= 1e-6 && e2 <= 1e-6 && e3 <= 1e-6,
                 fam.name + ": jet/fd mismatch at t=" + num(t, 12));
      }
    }
    // Cheeger s=0 must reproduce the family bit for bit.
    const auto same = cheeger_deform(fam, 0.0);
    for (int i = 0; i < 25; ++i) {
      const double t = fam.t_min + len * (0.04 + 0.92 * i / 24.0);
      for (size_t bi = 0; bi < fam.blocks.size(); ++bi) {
        const Jet3 a = fam.blocks[bi].profile.eval(t);
        const Jet3 b = same.blocks[bi].profile.eval(t);
        c.expect(a.v == b.v && a.d1 == b.d1 && a.d2 == b.d2 && a.d3 == b.d3,
                 fam.name + ": Cheeger s=0 not exact");
      }
    }
  }
  c.note("max fd relative error = " + num(worst));
  return c.finish("18-jets");
}

}  // namespace checks_detail

struct CheckEntry {
  std::string id;
  std::function<CheckResult()> run;
};

// Registry in presentation order.  `filter` selects by substring of the id,
// so e.g. "cheeger" runs checks 07-09 and "17" runs only the map check.
inline const std::vector<CheckEntry>& acceptance_checks() {
  using namespace checks_detail;
  static const std::vector<CheckEntry> table = {
      {"01-sphere-biharmonic", check_01_sphere},
      {"02-clifford-biharmonic", check_02_clifford},
      {"03-cpn-quadratic", check_03_cpn},
      {"04-hpn-quadratic", check_04_hpn},
      {"05-quadric-roots", check_05_quadric},
      {"06-null-cases", check_06_null_cases},
      {"07-cheeger-s7g3", check_07_cheeger_s7g3},
      {"08-cheeger-su3", check_08_cheeger_su3},
      {"09-cheeger-s2xs2", check_09_cheeger_s2xs2},
      {"10-quadric-stability", check_10_quadric_stability},
      {"11-hpn-asymptotics", check_11_hpn_asymptotics},
      {"12-rharmonic-sphere", check_12_rharmonic_sphere},
      {"13-quadric-clifford-rharmonic", check_13_quadric_clifford},
      {"14-hpn-quartic", check_14_hpn_quartic},
      {"15-foliations", check_15_foliations},
      {"16-index-nullity", check_16_index_nullity},
      {"17-krmaps", check_17_krmaps},
      {"18-jets", check_18_jets},
  };
  return table;
}

inline std::vector<CheckResult> run_acceptance_checks(
    const std::string& filter = "") {
  std::vector<CheckResult> results;
  for (const auto& entry : acceptance_checks()) {
    if (!filter.empty() && entry.id.find(filter) == std::string::npos)
      continue;
    results.push_back(entry.run());
  }
  return results;
}

}  // namespace coh1
