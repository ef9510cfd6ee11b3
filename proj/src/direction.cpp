#include "hexnav/direction.hpp"

#include <numbers>

namespace hexnav {

namespace {

constexpr double kHalfSqrt3 = std::numbers::sqrt3 / 2.0;

constexpr std::array<Vec2, 6> kUnit = {{
    {0.0, 1.0},
    {kHalfSqrt3, 0.5},
    {kHalfSqrt3, -0.5},
    {0.0, -1.0},
    {-kHalfSqrt3, -0.5},
    {-kHalfSqrt3, 0.5},
}};

constexpr std::array<std::string_view, 6> kNames = {"N", "NE", "SE", "S", "SW", "NW"};

}  // namespace

Vec2 unit_vector(HexDirection d) { return kUnit[index(d)]; }

std::string_view to_string(HexDirection d) { return kNames[index(d)]; }

std::optional<HexDirection> parse_direction(std::string_view text) {
  for (int i = 0; i < 6; ++i) {
    if (kNames[i] == text) return direction_from_index(i);
  }
  return std::nullopt;
}

BearingMatch nearest_bearing(Vec2 v) {
  // Compass angle, clockwise from +y.
  double compass = std::atan2(v.x, v.y) * 180.0 / std::numbers::pi;
  if (compass < 0.0) compass += 360.0;
  const int sector = static_cast<int>(std::lround(compass / 60.0)) % 6;
  double err = std::fabs(compass - 60.0 * sector);
  if (err > 180.0) err = 360.0 - err;
  return {direction_from_index(sector), err};
}

}  // namespace hexnav
