#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "coh1/catalog.hpp"
#include "coh1/equivariant.hpp"
#include "coh1/finite_diff.hpp"

using namespace coh1;

namespace {
constexpr double kPi = catalog::kPi;

EquivariantMap closed_form_map(MetricFamily fam, int k) {
  // r(t) = t + 0.3 sin t: fixes both endpoints of (0, pi), winding 1.
  EquivariantMap m;
  m.fam = std::move(fam);
  m.k = k;
  m.r_fn = [](double t) {
    return RJet{t + 0.3 * std::sin(t), 1.0 + 0.3 * std::cos(t),
                -0.3 * std::sin(t), -0.3 * std::cos(t), 0.3 * std::sin(t)};
  };
  return m;
}
}  // namespace

TEST_CASE("tension of the doubling map on sphere(2)") {
  // r = 2t at t = pi/4: F = (1/2) r' trA - (1/2) trAr = 4 cot(pi/4) = 4.
  EquivariantMap m;
  m.fam = catalog::sphere(2);
  m.k = 2;
  m.r_fn = [](double t) { return RJet{2.0 * t, 2.0, 0.0, 0.0, 0.0}; };
  REQUIRE(tension(m, kPi / 4.0) == Catch::Approx(4.0).margin(1e-12));
}

TEST_CASE("the antipodal reflection r = pi - t is harmonic on sphere(3)") {
  EquivariantMap m;
  m.fam = catalog::sphere(3);
  m.k = 1;
  m.r_fn = [](double t) { return RJet{kPi - t, -1.0, 0.0, 0.0, 0.0}; };
  for (int i = 0; i < 20; ++i) {
    const double t = 0.3 + (kPi - 0.6) * i / 19.0;
    REQUIRE(tension(m, t) == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("identity maps have vanishing tension and bitension") {
  const auto m = identity_map(catalog::clifford(4, 1));
  for (int i = 0; i < 25; ++i) {
    const double t = 0.1 + (kPi / 2.0 - 0.2) * i / 24.0;
    REQUIRE(std::fabs(tension(m, t)) < 1e-12);
    REQUIRE(std::fabs(bitension(m, t)) < 1e-12);
  }
}

TEST_CASE("tension jets match finite differences of the tension") {
  const auto m = closed_form_map(catalog::sphere(3), 1);
  const auto F = [&](double t) { return tension(m, t); };
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> pick(0.5, kPi - 0.5);
  for (int i = 0; i < 25; ++i) {
    const double t = pick(rng);
    const auto tj = tension_jets(m, t);
    CHECK(tj.F == Catch::Approx(F(t)).margin(1e-12));
    CHECK(tj.dF == Catch::Approx(fd::d1(F, t, 8e-4))
                       .margin(1e-6 * std::max(1.0, std::fabs(tj.dF))));
    CHECK(tj.ddF == Catch::Approx(fd::d2(F, t, 3e-3))
                        .margin(1e-6 * std::max(1.0, std::fabs(tj.ddF))));
  }
}

TEST_CASE("both bitension expansions agree") {
  const auto m = closed_form_map(catalog::sphere(3), 1);
  for (int i = 0; i < 40; ++i) {
    const double t = 0.3 + (kPi - 0.6) * i / 39.0;
    REQUIRE(bitension(m, t) ==
            Catch::Approx(bitension_lemma_form(m, t)).margin(1e-10));
  }
}

TEST_CASE("bitension requires order-4 jets") {
  EquivariantMap m;
  m.fam = catalog::sphere(3);
  m.k = 1;
  m.r_fn = [](double t) {
    RJet j{t, 1.0, 0.0, 0.0, 0.0};
    j.d4 = std::numeric_limits<double>::quiet_NaN();
    return j;
  };
  REQUIRE_NOTHROW(tension(m, 1.0));
  REQUIRE_THROWS_AS(bitension(m, 1.0), std::invalid_argument);
}

TEST_CASE("admissible windings") {
  CHECK(admissible_k(0, 2) == 1);
  CHECK(admissible_k(0, 6) == 1);
  CHECK(admissible_k(2, 2) == 3);
  CHECK(admissible_k(1, 4) == 3);
  CHECK_THROWS_AS(admissible_k(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(admissible_k(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(admissible_k(-1, 2), std::invalid_argument);
}

TEST_CASE("Brouwer degree case table") {
  const auto deg = [](bool je, bool n0e, bool n1e, int w, int k) {
    return brouwer_degree(DegreeInput{je, n0e, n1e, w}, k);
  };
  CHECK(deg(true, false, false, 2, 5) == 5);
  CHECK(deg(true, true, true, 2, 5) == 1);
  CHECK(deg(false, false, false, 6, 4) == 4);
  CHECK(deg(false, true, true, 6, 4) == 0);
  CHECK(deg(false, true, true, 8, 4) == 1);
  CHECK(deg(false, true, false, 6, 4) == -1);
  CHECK(deg(false, true, false, 16, 4) == 1);
  CHECK(deg(false, false, true, 6, 4) == 1);
  CHECK_THROWS_AS(brouwer_degree(DegreeInput{true, false, false, 3}, 2),
                  std::invalid_argument);
}

TEST_CASE("shooting recovers the identity on sphere(3)") {
  const auto shot = shoot_kr(catalog::sphere(3), 1);
  REQUIRE(shot.converged);
  REQUIRE(shot.mismatch < 1e-8);
  REQUIRE(shot.slope == Catch::Approx(1.0).margin(1e-4));
  REQUIRE(shot.map.has_value());
  double sup = 0.0;
  for (const auto& s : shot.trajectory)
    sup = std::max(sup, std::fabs(s.r - s.t));
  REQUIRE(sup < 1e-4);
  // The reconstructed map exposes ODE-consistent jets along the trajectory.
  const double mid = 0.5 * (shot.trajectory.front().t + shot.trajectory.back().t);
  REQUIRE(std::fabs(tension(*shot.map, mid)) < 1e-6);
  REQUIRE(std::fabs(bitension(*shot.map, mid)) < 1e-3);
}

TEST_CASE("shooting contracts") {
  CHECK_THROWS_AS(shoot_kr(catalog::quadric(3), 1), std::invalid_argument);
  CHECK_THROWS_AS(shoot_kr(catalog::sphere(3), 0), std::invalid_argument);
  CHECK_THROWS_AS(shoot_kr(catalog::sphere(3), 1, {0.25, 2.5}, -1.0),
                  std::invalid_argument);
}

TEST_CASE("sampled maps reject queries outside their trajectory") {
  const auto shot = shoot_kr(catalog::sphere(3), 1);
  REQUIRE(shot.converged);
  CHECK_THROWS_AS(shot.map->r_fn(-1.0), std::domain_error);
  CHECK_THROWS_AS(shot.map->r_fn(kPi), std::domain_error);
  CHECK_THROWS_AS(make_sampled_map(catalog::sphere(3), 1, {}),
                  std::invalid_argument);
}

TEST_CASE("tabulated maps evaluate tension but not bitension") {
  const auto fam = catalog::sphere(3);
  const double dt = kPi / 400.0;
  std::vector<double> rs;
  for (int i = 0; i <= 400; ++i) rs.push_back(double(i) * dt);  // identity
  const auto m = tabulated_map(fam, 1, 0.0, dt, rs);
  REQUIRE(std::fabs(tension(m, 1.1)) < 1e-8);
  REQUIRE_THROWS_AS(bitension(m, 1.1), std::invalid_argument);
  REQUIRE_THROWS_AS(m.r_fn(-0.5), std::domain_error);
  REQUIRE_THROWS_AS(tabulated_map(fam, 1, 0.0, 0.0, rs), std::invalid_argument);
}
