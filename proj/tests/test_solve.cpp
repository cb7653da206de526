#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "coh1/catalog.hpp"
#include "coh1/solve.hpp"

using namespace coh1;

namespace {
constexpr double kPi = catalog::kPi;
}

TEST_CASE("g = 3 isoparametric trB satisfies the polynomial identity") {
  // (4/3) trB prod_k sin^2(t - k pi/3) = 2 (4x - 3)^2 x + 1 with x = cos^2 t.
  const auto fam = catalog::s7g3();
  for (int i = 1; i <= 200; ++i) {
    const double t = (kPi / 3.0) * i / 201.0;
    const double trB = biharmonic_residual(fam, t);
    double weight = 1.0;
    for (int k = 0; k < 3; ++k) {
      const double s = std::sin(t - k * kPi / 3.0);
      weight *= s * s;
    }
    const double x = std::cos(t) * std::cos(t);
    const double rhs = 2.0 * (4.0 * x - 3.0) * (4.0 * x - 3.0) * x + 1.0;
    REQUIRE((4.0 / 3.0) * trB * weight == Catch::Approx(rhs).margin(1e-10));
  }
}

TEST_CASE("surface of revolution residual matches the closed form") {
  // phi = 2 + sin t: R_r = (2 phi'^2 / phi^4) (phi'^2 + (r-1) phi phi'').
  const auto fam = catalog::surface_of_revolution(
      Profile::sin_first(1.0, 1.0, 0.0, 2.0), 0.0, 2.0 * kPi);
  for (double r : {2.0, 3.0, 5.0}) {
    for (int i = 1; i <= 200; ++i) {
      const double t = 2.0 * kPi * i / 201.0;
      const double phi = 2.0 + std::sin(t);
      const double phi1 = std::cos(t);
      const double phi2 = -std::sin(t);
      const double want = (2.0 * phi1 * phi1 / std::pow(phi, 4)) *
                          (phi1 * phi1 + (r - 1.0) * phi * phi2);
      REQUIRE(rharmonic_residual(fam, t, r) ==
              Catch::Approx(want).margin(1e-12 * std::max(1.0, std::fabs(want))));
    }
  }
}

TEST_CASE("surface of revolution root set") {
  // sin t solves 1 - 2(r-1) u - r u^2 = 0; minimal orbits sit at phi' = 0.
  const auto fam = catalog::surface_of_revolution(
      Profile::sin_first(1.0, 1.0, 0.0, 2.0), 0.0, 2.0 * kPi);
  const int r = 2;
  const auto sols = find_roots(fam, Functional::rharmonic(r));
  const double u = (-(r - 1.0) + std::sqrt(double(r * r - r + 1))) / double(r);
  std::vector<double> expect_proper = {std::asin(u), kPi - std::asin(u)};
  std::vector<double> expect_minimal = {kPi / 2.0, 1.5 * kPi};
  std::vector<double> got_proper, got_minimal;
  for (const auto& s : sols) {
    (s.classification == OrbitClass::Minimal ? got_minimal : got_proper)
        .push_back(s.t_root);
  }
  REQUIRE(got_proper.size() == expect_proper.size());
  REQUIRE(got_minimal.size() == expect_minimal.size());
  for (size_t i = 0; i < expect_proper.size(); ++i)
    REQUIRE(got_proper[i] == Catch::Approx(expect_proper[i]).margin(1e-10));
  for (size_t i = 0; i < expect_minimal.size(); ++i)
    REQUIRE(got_minimal[i] == Catch::Approx(expect_minimal[i]).margin(1e-10));
}

TEST_CASE("solver roots satisfy the reduced polynomials") {
  const auto fam = catalog::cpn(2, 1);
  const auto coeffs = polys::cpn_biharmonic(2, 1);
  int proper = 0;
  for (const auto& s : find_roots(fam, Functional::biharmonic())) {
    if (s.classification == OrbitClass::Minimal) continue;
    ++proper;
    REQUIRE(std::fabs(polynomial_check(fam, s.t_root, coeffs)) < 1e-9);
  }
  REQUIRE(proper == 2);
  REQUIRE_THROWS_AS(polynomial_check(catalog::sphere(2), 0.5, coeffs),
                    std::invalid_argument);
}

TEST_CASE("root finder validates its inputs") {
  auto unbounded = catalog::warped_product(Profile::exp2(1.0), 2);
  CHECK_THROWS_AS(find_roots(unbounded, Functional::biharmonic()),
                  std::domain_error);
  CHECK_THROWS_AS(Functional::rharmonic(1), std::invalid_argument);
  RootFindOptions opts;
  opts.grid_points = 3;
  CHECK_THROWS_AS(find_roots(catalog::sphere(2), Functional::biharmonic(), opts),
                  std::invalid_argument);
}

TEST_CASE("residuals at reported roots are small and classified consistently") {
  const auto fam = catalog::clifford(5, 2);
  for (const auto& s : find_roots(fam, Functional::biharmonic())) {
    if (s.classification == OrbitClass::Minimal) {
      REQUIRE(std::fabs(s.trA_at_root) < 1e-10);
    } else {
      REQUIRE(std::fabs(s.residual) < 1e-12);
      REQUIRE(std::fabs(s.trA_at_root) > 1e-6);
    }
    REQUIRE(s.bracket_lo <= s.t_root);
    REQUIRE(s.t_root <= s.bracket_hi);
  }
}

TEST_CASE("polynomial root scanning") {
  // (x - 1/4)(x - 3/4) = x^2 - x + 3/16, ascending coefficients.
  const auto roots = polynomial_roots({3.0 / 16.0, -1.0, 1.0}, 0.0, 1.0);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == Catch::Approx(0.25).margin(1e-12));
  CHECK(roots[1] == Catch::Approx(0.75).margin(1e-12));
  CHECK(polynomial_eval({3.0 / 16.0, -1.0, 1.0}, 0.5) ==
        Catch::Approx(-1.0 / 16.0).margin(1e-15));
}
