#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "coh1/catalog.hpp"
#include "coh1/stability.hpp"

using namespace coh1;

namespace {
constexpr double kPi = catalog::kPi;
}

TEST_CASE("spherical harmonic multiplicities") {
  // On S^2 the k-th eigenspace has dimension 2k+1.
  for (int k = 1; k <= 50; ++k)
    REQUIRE(sphere_multiplicity(k, 2) == 2 * k + 1);
  for (int n : {1, 2, 3, 7, 12})
    REQUIRE(sphere_multiplicity(1, n) == n + 1);
  REQUIRE(sphere_multiplicity(2, 3) == 9);
  REQUIRE(sphere_multiplicity(3, 4) == 30);
  // S^1 has two Fourier modes per frequency.
  for (int k : {1, 2, 9}) REQUIRE(sphere_multiplicity(k, 1) == 2);
}

TEST_CASE("multiplicity guards") {
  CHECK_THROWS_AS(sphere_multiplicity(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(sphere_multiplicity(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(sphere_multiplicity(40, 40), std::overflow_error);
}

TEST_CASE("quadric instability criterion at the proper root") {
  const auto rep = stability_report(catalog::quadric(3), kPi / 4.0);
  REQUIRE(rep.criterion == Catch::Approx(-16.0).margin(1e-9));
  REQUIRE(rep.hessian_const == Catch::Approx(-4.0).margin(1e-9));
  REQUIRE(rep.unstable);
  // trB vanishes at the proper biharmonic point, so no caveat is attached.
  REQUIRE(rep.notes.empty());
  // Away from the biharmonic locus the report carries a warning note.
  REQUIRE_FALSE(stability_report(catalog::quadric(3), 0.3).notes.empty());
}

TEST_CASE("spectral lower bound for the normal Hessian") {
  // mu^2 + trA trC / 4 at quadric(3), pi/4: 16 - 4 = 12.
  REQUIRE(hessian_lower_bound(catalog::quadric(3), kPi / 4.0, 4.0) ==
          Catch::Approx(12.0).margin(1e-9));
  REQUIRE_THROWS_AS(hessian_lower_bound(catalog::quadric(3), kPi / 4.0, -1.0),
                    std::invalid_argument);
  // Large-n geodesic spheres: the negative Hessian constant is O(n), so any
  // frequency mu of order n keeps the bound positive.
  const int n = 10000;
  const auto probe = hpn_asymptotics_probe(n);
  const double t = std::acos(std::sqrt(probe.x_minus));
  REQUIRE(hessian_lower_bound(catalog::hpn(n), t, 2.0 * n) > 0.0);
  REQUIRE(hessian_lower_bound(catalog::hpn(n), t, 0.0) < 0.0);
}

TEST_CASE("higher-order eigenvalue bound") {
  REQUIRE(ho_eigenvalue_bound(2.0, 1, 0.5) == Catch::Approx(0.75));
  REQUIRE_THROWS_AS(ho_eigenvalue_bound(0.0, 1, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(ho_eigenvalue_bound(-2.0, 1, 0.5), std::invalid_argument);
}

TEST_CASE("warped hessian form agrees with the index rule mode by mode") {
  const int n = 2;
  for (double t : {0.1, 0.5, 2.0}) {
    const auto in = warped_index_nullity(n, t);
    for (int k = 1; k <= in.k_max + 5; ++k) {
      const double form = warped_hessian_form(n, t, k);
      const double z = t * double(k) * double(n + k - 1);
      if (std::fabs(z - 1.0) <= 1e-12) {
        REQUIRE(form == Catch::Approx(0.0).margin(1e-9));
      } else if (z < 1.0) {
        REQUIRE(form < 0.0);
        REQUIRE(k <= in.k_max);
      } else {
        REQUIRE(form > 0.0);
        REQUIRE(k > in.k_max);
      }
    }
  }
}

TEST_CASE("warped index and nullity spot values") {
  const auto a = warped_index_nullity(2, 0.1);
  CHECK(a.index == 8);
  CHECK(a.nullity == 1);
  const auto b = warped_index_nullity(2, 0.5);
  CHECK(b.index == 0);
  CHECK(b.nullity == 4);
  const auto c = warped_index_nullity(2, 2.0);
  CHECK(c.index == 0);
  CHECK(c.nullity == 1);
  CHECK_THROWS_AS(warped_index_nullity(2, 0.0), std::invalid_argument);
}

TEST_CASE("probe values approach the large-n limits monotonically in error") {
  const double want_a = -12.0 * std::sqrt(3.0);
  const double want_c = 48.0 * std::sqrt(3.0);
  double prev_err = 1e9;
  for (int n : {100, 10000, 1000000}) {
    const auto probe = hpn_asymptotics_probe(n);
    const double err = std::fabs(probe.sqrt_n_times_trA - want_a) +
                       std::fabs(probe.trC_over_sqrt_n - want_c);
    REQUIRE(err < prev_err);
    prev_err = err;
  }
  REQUIRE(prev_err < 0.1);
}
