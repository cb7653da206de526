#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "coh1/catalog.hpp"
#include "coh1/family.hpp"
#include "coh1/finite_diff.hpp"

using namespace coh1;

namespace {
constexpr double kPi = catalog::kPi;
}

TEST_CASE("trA is the logarithmic derivative of det P") {
  // det P = prod p_i^{m_i}, so (log det P)' = sum m_i p_i'/p_i = trA.
  const MetricFamily fams[] = {catalog::sphere(4), catalog::clifford(5, 2),
                               catalog::cpn(3, 1), catalog::hpn(2),
                               catalog::su3(), catalog::s7g3()};
  std::mt19937 rng(2024);
  for (const auto& fam : fams) {
    const double len = fam.t_max - fam.t_min;
    std::uniform_real_distribution<double> pick(fam.t_min + 0.1 * len,
                                                fam.t_max - 0.1 * len);
    const auto log_det = [&](double u) {
      double acc = 0.0;
      for (const auto& b : fam.blocks)
        acc += double(b.multiplicity) * std::log(b.profile.eval(u).v);
      return acc;
    };
    for (int i = 0; i < 50; ++i) {
      const double t = pick(rng);
      const auto inv = trace_invariants(fam, t);
      const double want = fd::d1(log_det, t, 1e-4);
      REQUIRE(inv.trA ==
              Catch::Approx(want).margin(1e-8 * std::max(1.0, std::fabs(want))));
    }
  }
}

TEST_CASE("trace invariants are additive over blocks") {
  const MetricFamily fam = catalog::clifford(5, 2);
  MetricFamily first, second;
  first.blocks = {fam.blocks[0]};
  second.blocks = {fam.blocks[1]};
  first.t_min = second.t_min = fam.t_min;
  first.t_max = second.t_max = fam.t_max;
  for (double t : {0.3, 0.7, 1.1, 1.4}) {
    const auto all = trace_invariants(fam, t);
    const auto a = trace_invariants(first, t);
    const auto b = trace_invariants(second, t);
    CHECK(all.trA == Catch::Approx(a.trA + b.trA).margin(1e-13));
    CHECK(all.trA2 == Catch::Approx(a.trA2 + b.trA2).margin(1e-13));
    CHECK(all.trA3 == Catch::Approx(a.trA3 + b.trA3).margin(1e-12));
    CHECK(all.trB == Catch::Approx(a.trB + b.trB).margin(1e-13));
    CHECK(all.trC == Catch::Approx(a.trC + b.trC).margin(1e-12));
    CHECK(all.trAB == Catch::Approx(a.trAB + b.trAB).margin(1e-12));
  }
}

TEST_CASE("geodesic spheres in the round sphere have normal Ricci n") {
  for (int n : {2, 3, 5, 8}) {
    const auto fam = catalog::sphere(n);
    for (double t : {0.2, 0.7, kPi / 2.0, 2.1, 2.9}) {
      REQUIRE(ricci_normal(fam, t) == Catch::Approx(double(n)).margin(1e-9));
    }
  }
}

TEST_CASE("diagonal SO(3) action on S^2 x S^2 has constant trB = -2") {
  const auto fam = catalog::s2xs2_so3();
  for (int i = 0; i < 30; ++i) {
    const double t = 0.02 + (kPi / 2.0 - 0.04) * i / 29.0;
    const auto inv = trace_invariants(fam, t);
    REQUIRE(inv.trB == Catch::Approx(-2.0).margin(1e-12));
  }
}

TEST_CASE("orbit dimensions") {
  CHECK(catalog::sphere(3).dim() == 3);
  CHECK(catalog::clifford(6, 3).dim() == 6);
  CHECK(catalog::cpn(3, 1).dim() == 5);
  CHECK(catalog::hpn(2).dim() == 7);
  CHECK(catalog::quadric(4).dim() == 7);
  CHECK(catalog::su3().dim() == 7);
  CHECK(catalog::s2xs2_so3().dim() == 3);
  CHECK(catalog::s2xs2_su2().dim() == 3);
  CHECK(catalog::s7g3().dim() == 6);
  CHECK(catalog::s9g4().dim() == 8);
  CHECK(catalog::s13g6().dim() == 12);
}

TEST_CASE("catalog constructors validate parameters") {
  CHECK_THROWS_AS(catalog::sphere(0), std::invalid_argument);
  CHECK_THROWS_AS(catalog::clifford(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(catalog::clifford(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(catalog::cpn(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(catalog::hpn(1), std::invalid_argument);
  CHECK_THROWS_AS(catalog::quadric(1), std::invalid_argument);
  CHECK_THROWS_AS(catalog::make_catalog_family("nope"), std::invalid_argument);
  CHECK_THROWS_AS(catalog::make_catalog_family("sphere"), std::invalid_argument);
  CHECK_THROWS_AS(catalog::make_catalog_family("sphere", {{"n", 2.5}}),
                  std::invalid_argument);
}

TEST_CASE("evaluation outside the orbit interval is rejected") {
  const auto fam = catalog::clifford(4, 1);
  CHECK_THROWS_AS(trace_invariants(fam, -0.1), std::domain_error);
  CHECK_THROWS_AS(trace_invariants(fam, kPi), std::domain_error);
  CHECK_THROWS_AS(trace_invariants(fam, fam.t_min), std::domain_error);
  CHECK_NOTHROW(trace_invariants(fam, 0.5));
}

TEST_CASE("substituted coordinate reports x = cos^2 t") {
  const auto fam = catalog::quadric(3);
  REQUIRE(fam.substitution.has_value());
  const double t = 0.9;
  const auto x = substituted_value(fam, t);
  REQUIRE(x.has_value());
  REQUIRE(*x == Catch::Approx(std::cos(t) * std::cos(t)).margin(1e-15));
  REQUIRE_FALSE(substituted_value(catalog::sphere(2), t).has_value());
}
