#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>

namespace hexnav {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;

  double norm() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/**
 * The six bearings of the triangular tag lattice, numbered clockwise from
 * North.  +y is North; there is no East/West bearing.
 */
enum class HexDirection : std::uint8_t { N = 0, NE = 1, SE = 2, S = 3, SW = 4, NW = 5 };

inline constexpr std::array<HexDirection, 6> kAllDirections = {
    HexDirection::N,  HexDirection::NE, HexDirection::SE,
    HexDirection::S,  HexDirection::SW, HexDirection::NW};

constexpr int index(HexDirection d) { return static_cast<int>(d); }

/// Direction with clockwise index `i mod 6` (negative values wrap).
constexpr HexDirection direction_from_index(int i) {
  return static_cast<HexDirection>(((i % 6) + 6) % 6);
}

constexpr HexDirection rotate(HexDirection d, int steps) {
  return direction_from_index(index(d) + steps);
}

constexpr HexDirection opposite(HexDirection d) { return rotate(d, 3); }

Vec2 unit_vector(HexDirection d);

std::string_view to_string(HexDirection d);

/// Parses "N", "NE", ... (case-sensitive); nullopt otherwise.
std::optional<HexDirection> parse_direction(std::string_view text);

/**
 * Nearest lattice bearing to `v` and the angular error in degrees.
 * `v` must be non-zero.
 */
struct BearingMatch {
  HexDirection direction;
  double error_deg;
};
BearingMatch nearest_bearing(Vec2 v);

}  // namespace hexnav
