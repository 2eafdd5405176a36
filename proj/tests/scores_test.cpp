#include "pfis/scores.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace pfis;

TEST_CASE("ignorance: coin-flip anchors") {
  CHECK(ignorance(Degree(1.0)) == 0.0);
  CHECK(ignorance(Degree(0.5)) == 1.0);
  CHECK(ignorance(Degree(0.25)) == 2.0);
}

TEST_CASE("ignorance: zero support is infinite surprise") {
  const double h = ignorance(Degree(0.0));
  CHECK(std::isinf(h));
  CHECK(h > 0.0);
  CHECK(h > ignorance(Degree(1e-300)));
}

TEST_CASE("property: ignorance is decreasing and additive over products") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(1e-6, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double a = u(rng), b = u(rng);
    if (a < b) {
      CHECK(ignorance(Degree(a)) >= ignorance(Degree(b)));
    }
    CHECK(ignorance(Degree(a * b)) ==
          doctest::Approx(ignorance(Degree(a)) + ignorance(Degree(b))).epsilon(1e-9));
    CHECK(ignorance(Degree(a)) >= 0.0);
  }
}

TEST_CASE("notional info gain: anchors") {
  CHECK(notional_info_gain(Degree(1.0), Degree(0.5)) == doctest::Approx(1.0));
  CHECK(notional_info_gain(Degree(0.25), Degree(0.5)) == doctest::Approx(-1.0));
  CHECK(notional_info_gain(Degree(0.37), Degree(0.37)) == 0.0);
}

TEST_CASE("notional info gain: undefined when both supports vanish") {
  CHECK_THROWS_AS(notional_info_gain(Degree(0.0), Degree(0.0)), DomainError);
  CHECK(std::isinf(notional_info_gain(Degree(0.5), Degree(0.0))));
  CHECK(notional_info_gain(Degree(0.5), Degree(0.0)) > 0.0);
  CHECK(std::isinf(notional_info_gain(Degree(0.0), Degree(0.5))));
  CHECK(notional_info_gain(Degree(0.0), Degree(0.5)) < 0.0);
}

TEST_CASE("property: info gain is antisymmetric") {
  std::mt19937 rng(32);
  std::uniform_real_distribution<double> u(1e-6, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const Degree x{u(rng)}, y{u(rng)};
    CHECK(notional_info_gain(x, y) == doctest::Approx(-notional_info_gain(y, x)).epsilon(1e-12));
  }
}
