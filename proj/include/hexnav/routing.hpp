#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "hexnav/direction.hpp"
#include "hexnav/map.hpp"

namespace hexnav {

struct PathResult {
  std::vector<TagId> nodes;  // source first, destination last
  int cost = 0;

  friend bool operator==(const PathResult&, const PathResult&) = default;
};

/**
 * Minimum-cost route from src to dst.  Among equal-cost routes the one with
 * the lexicographically smallest id sequence is returned, so results are
 * deterministic and every suffix of a route is itself the route for its own
 * start.
 *
 * Throws UnknownTag, or Unreachable when no route exists.
 */
PathResult shortest_path(const RoomMap& map, TagId src, TagId dst);

/// Heading of a user who stepped from `prev` onto `cur`.
HexDirection infer_heading(const RoomMap& map, TagId prev, TagId cur);

/// Clockwise turn, in sixths of a revolution, from `heading` to `next`: 0..5.
constexpr int relative_turn(HexDirection heading, HexDirection next) {
  return ((index(next) - index(heading)) % 6 + 6) % 6;
}

enum class InstructionKind {
  Straight,
  TwoOClock,
  FourOClock,
  UTurn,
  EightOClock,
  TenOClock,
  Arrived,
};

struct Instruction {
  InstructionKind kind = InstructionKind::Straight;

  std::string_view cue_text() const;
  bool is_movement() const { return kind != InstructionKind::Arrived; }
  /// Turn delta 0..5 of a movement instruction.
  int turn() const { return static_cast<int>(kind); }

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// The seven sentences an instruction cue can carry.
extern const std::array<std::string_view, 7> kInstructionTexts;

std::string_view to_string(InstructionKind kind);

/// delta must be in 0..5; `at_destination` overrides it with Arrived.
Instruction instruction_for(int delta, bool at_destination);

/// Absolute bearing a user facing `heading` walks when obeying `movement`.
HexDirection instructed_direction(HexDirection heading, Instruction movement);

/**
 * Guidance for a user standing on `cur` facing `heading`: the turn onto the
 * first hop of a fresh shortest route to `dst`, or Arrived.  Depends on its
 * arguments only.
 */
Instruction plan_instruction(const RoomMap& map, TagId cur, HexDirection heading, TagId dst);

}  // namespace hexnav
