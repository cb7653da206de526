#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "coh1/catalog.hpp"
#include "coh1/foliation.hpp"
#include "coh1/solve.hpp"

using namespace coh1;

namespace {
constexpr double kPi = catalog::kPi;
}

TEST_CASE("warped leaves solve the r-harmonic leaf equation") {
  for (double t : {0.1, 1.0, 10.0})
    REQUIRE(std::fabs(warped_leaf_residual(2, 1.0, 1.0, t)) < 1e-12);
  for (int i = 0; i < 20; ++i) {
    const double t = 0.5 * i;
    REQUIRE(std::fabs(warped_leaf_residual(5, 2.0, 0.3, t)) < 1e-12);
  }
  REQUIRE_THROWS_AS(warped_leaf_residual(1, 1.0, 1.0, 0.5),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(warped_leaf_residual(2, -1.0, 1.0, 0.5),
                    std::invalid_argument);
}

TEST_CASE("warped leaf family is r-harmonic through the orbit pipeline") {
  // The reduced orbit functional vanishes identically along f = c1 (c2+t)^p,
  // p = (r-1)/r, for every fiber dimension.
  for (int r : {2, 3, 5}) {
    for (int n : {1, 2, 4}) {
      const auto fam = warped_leaf_family(r, 1.3, 0.8, n);
      for (int i = 0; i < 30; ++i) {
        const double t = 0.05 + 0.4 * i;
        REQUIRE(std::fabs(rharmonic_residual(fam, t, r)) < 1e-10);
      }
    }
  }
}

TEST_CASE("the f^2 = t foliation has shape operator trace n/(2t) scale") {
  // p = t gives trA = n p'/p = n/t; the shape eigenvalue is p'/(2p) = 1/(2t).
  const auto fam = catalog::warped_product(Profile::power_law(1.0, 0.0, 0.5), 3);
  for (double t : {0.25, 0.5, 1.0, 4.0}) {
    REQUIRE(minimal_residual(fam, t) == Catch::Approx(3.0 / t).margin(1e-12));
  }
}

TEST_CASE("doubly warped foliation residual vanishes identically") {
  const std::pair<int, int> cases[] = {{1, 1}, {2, 3}, {3, 2}};
  for (auto [n, m] : cases) {
    const double T = doubly_warped_halfwidth(n, m);
    for (int i = 0; i < 50; ++i) {
      const double t = -0.9 * T + 1.8 * T * i / 49.0;
      REQUIRE(std::fabs(doubly_warped_residual(n, m, t)) < 1e-12);
    }
    REQUIRE_THROWS_AS(doubly_warped_residual(n, m, T), std::domain_error);
  }
}

TEST_CASE("doubly warped minimal leaf time") {
  REQUIRE(doubly_warped_minimal_time(1, 1) ==
          Catch::Approx(kPi / 8.0).margin(1e-14));
  // The minimal locus found by the solver matches the closed form.
  const auto sols = find_roots(doubly_warped_foliation(2, 3),
                               Functional::minimal());
  REQUIRE(sols.size() == 1);
  REQUIRE(sols[0].classification == OrbitClass::Minimal);
  REQUIRE(sols[0].t_root ==
          Catch::Approx(doubly_warped_minimal_time(2, 3)).margin(1e-10));
}

TEST_CASE("general leaf residual") {
  // Constant f: both terms vanish.
  REQUIRE(leaf_residual(2.0, 0.0, 0.0, 3) == 0.0);
  // f = t, r = 2: residual is f'^2 = 1.
  REQUIRE(leaf_residual(1.0, 1.0, 0.0, 2) == Catch::Approx(1.0));
}

TEST_CASE("torus cubic family") {
  const TorusCubic tc = torus_family(1.0, 0.0);
  CHECK(tc.a == 2.0);
  CHECK(tc.b == -3.0);
  CHECK(tc.c == 1.0);
  CHECK(tc.d == 0.0);
  CHECK(tc.proper());
  CHECK(tc.c0_periodic());
  CHECK(tc.c1_periodic());
  CHECK(tc.second_derivative_jump() == Catch::Approx(-6.0 * tc.a));
  CHECK(tc.psi(0.0) == Catch::Approx(tc.psi(1.0)).margin(1e-15));
  CHECK(tc.d1(0.0) == Catch::Approx(tc.d1(1.0)).margin(1e-15));
  CHECK_THROWS_AS(torus_family(0.0, 0.5), std::invalid_argument);
}

TEST_CASE("torus leaves partition the square") {
  CHECK(torus_partition_check(1.0, 10000));
  CHECK(torus_partition_check(0.37, 10000));
  CHECK_THROWS_AS(torus_partition_check(0.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(torus_partition_check(1.0, 0), std::invalid_argument);
}

TEST_CASE("doubly warped family profiles match the closed forms") {
  const int n = 2, m = 3;
  const auto fam = doubly_warped_foliation(n, m);
  const double ratio = std::sqrt(double(n) / double(m));
  for (double t : {-0.3, 0.0, 0.2}) {
    const double f2 = std::exp(2.0 * t);
    const double h2 = std::cos(2.0 * t * ratio);
    REQUIRE(fam.blocks[0].profile.eval(t).v == Catch::Approx(f2).margin(1e-13));
    REQUIRE(fam.blocks[1].profile.eval(t).v == Catch::Approx(h2).margin(1e-13));
  }
  REQUIRE(fam.blocks[0].multiplicity == n);
  REQUIRE(fam.blocks[1].multiplicity == m);
}
