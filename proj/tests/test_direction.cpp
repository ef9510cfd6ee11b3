#include <doctest.h>

#include <cmath>

#include "hexnav/direction.hpp"

using namespace hexnav;

TEST_CASE("opposite is three steps round") {
  for (HexDirection d : kAllDirections) {
    CHECK(index(opposite(d)) == (index(d) + 3) % 6);
    CHECK(opposite(opposite(d)) == d);
  }
}

TEST_CASE("unit vectors cancel and sit 60 degrees apart") {
  Vec2 sum;
  for (HexDirection d : kAllDirections) {
    const Vec2 u = unit_vector(d);
    CHECK(u.norm() == doctest::Approx(1.0));
    sum = sum + u;
    const Vec2 v = unit_vector(rotate(d, 1));
    CHECK(std::acos(u.x * v.x + u.y * v.y) * 180.0 / M_PI == doctest::Approx(60.0));
  }
  CHECK(std::fabs(sum.x) < 1e-12);
  CHECK(std::fabs(sum.y) < 1e-12);
}

TEST_CASE("nearest bearing recovers each direction") {
  for (HexDirection d : kAllDirections) {
    const auto m = nearest_bearing(0.64 * unit_vector(d));
    CHECK(m.direction == d);
    CHECK(m.error_deg < 1e-9);
  }
  // Halfway between N and NE rounds either way but reports a 30 degree error.
  const auto half = nearest_bearing({std::sin(M_PI / 6), std::cos(M_PI / 6)});
  CHECK(half.error_deg == doctest::Approx(30.0));
}

TEST_CASE("names parse back") {
  for (HexDirection d : kAllDirections) CHECK(parse_direction(to_string(d)) == d);
  CHECK_FALSE(parse_direction("E"));
  CHECK_FALSE(parse_direction("ne"));
}
