#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "coh1/catalog.hpp"
#include "coh1/cheeger.hpp"

using namespace coh1;

TEST_CASE("Cheeger deformation is p / (1 + s p) blockwise") {
  const auto base = catalog::clifford(4, 1);
  const double s = 0.8;
  const auto fam = cheeger_deform(base, s);
  REQUIRE(fam.blocks.size() == base.blocks.size());
  for (double t : {0.3, 0.7, 1.2}) {
    for (size_t i = 0; i < fam.blocks.size(); ++i) {
      const double p = base.blocks[i].profile.eval(t).v;
      const double got = fam.blocks[i].profile.eval(t).v;
      REQUIRE(got == Catch::Approx(p / (1.0 + s * p)).margin(1e-15));
      REQUIRE(fam.blocks[i].multiplicity == base.blocks[i].multiplicity);
    }
  }
}

TEST_CASE("successive deformations compose additively in s") {
  const auto base = catalog::s7g3();
  const auto once = cheeger_deform(base, 1.5);
  const auto twice = cheeger_deform(cheeger_deform(base, 0.9), 0.6);
  for (int i = 1; i <= 50; ++i) {
    const double t = (catalog::kPi / 3.0) * i / 51.0;
    for (size_t bi = 0; bi < base.blocks.size(); ++bi) {
      const Jet3 a = once.blocks[bi].profile.eval(t);
      const Jet3 b = twice.blocks[bi].profile.eval(t);
      // The nested Cheeger structure is flattened, so s adds exactly and the
      // two evaluation paths coincide bitwise.
      REQUIRE(a.v == b.v);
      REQUIRE(a.d1 == b.d1);
      REQUIRE(a.d2 == b.d2);
      REQUIRE(a.d3 == b.d3);
    }
  }
  REQUIRE(twice.params.at("cheeger_s") == Catch::Approx(1.5));
}

TEST_CASE("deformation records its parameter") {
  const auto fam = cheeger_deform(catalog::su3(), 0.25);
  REQUIRE(fam.params.at("cheeger_s") == Catch::Approx(0.25));
  const auto again = cheeger_deform(fam, 0.5);
  REQUIRE(again.params.at("cheeger_s") == Catch::Approx(0.75));
}

TEST_CASE("negative deformation parameters are rejected") {
  REQUIRE_THROWS_AS(cheeger_deform(catalog::sphere(2), -0.1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(Profile::cheeger(Profile::sin_sq(1.0), -1.0),
                    std::invalid_argument);
}
