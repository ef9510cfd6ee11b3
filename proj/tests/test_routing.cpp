#include <doctest.h>

#include "hexnav/routing.hpp"
#include "support/oracles.hpp"

using namespace hexnav;
using hexnav::testing::brute_force_route;
using hexnav::testing::clinic;
using hexnav::testing::id_of;

namespace {

std::vector<TagId> ids(const RoomMap& map, std::initializer_list<const char*> names) {
  std::vector<TagId> out;
  for (const char* n : names) out.push_back(id_of(map, n));
  return out;
}

}  // namespace

TEST_CASE("trivial routes") {
  const RoomMap map = clinic();
  const TagId a = id_of(map, "A");
  CHECK(shortest_path(map, a, a) == PathResult{{a}, 0});
  CHECK(shortest_path(map, a, id_of(map, "B")).cost == 1);
  CHECK_THROWS_AS(shortest_path(map, a, 400), UnknownTag);
  CHECK_THROWS_AS(shortest_path(map, 400, a), UnknownTag);
}

TEST_CASE("unreachable only when connectivity is bypassed") {
  const RoomMap split("split", 0.64, {2, 2}, {{1, "A", {0.5, 0.5}, {}}, {2, "B", {1.5, 1.5}, {}}},
                      {});
  CHECK_THROWS_AS(shortest_path(split, 1, 2), Unreachable);
}

TEST_CASE("weight-2 shortcut ties with a two-hop detour") {
  // Triangle 1-2-3: direct 1-3 costs 2, detour 1-2-3 costs 1+1.
  const double h = 0.64 * std::sqrt(3.0) / 2.0;
  const RoomMap tri("tri", 0.64, {2, 2},
                    {{1, "A", {0.2, 0.2}, {}}, {2, "B", {0.2 + h, 0.52}, {}}, {3, "C", {0.2, 0.84}, {}}},
                    {{1, 2, 1}, {2, 3, 1}, {1, 3, 2}});
  REQUIRE(validate_map(tri).empty());
  // Hand enumeration: [1,2,3] cost 2 and [1,3] cost 2; [1,2,3] < [1,3].
  const PathResult expected{{1, 2, 3}, 2};
  CHECK(shortest_path(tri, 1, 3) == expected);
  CHECK(brute_force_route(tri, 1, 3) == expected);
}

TEST_CASE("clinic A to Q") {
  const RoomMap map = clinic();
  const PathResult route = shortest_path(map, id_of(map, "A"), id_of(map, "Q"));
  // Frozen from exhaustive enumeration of the bundled map.
  CHECK(route.cost == 7);
  CHECK(route.nodes == ids(map, {"A", "B", "K", "L", "T", "S", "R", "Q"}));
  CHECK(brute_force_route(map, id_of(map, "A"), id_of(map, "Q")) == route);
}

TEST_CASE("routes match exhaustive enumeration on random lattice maps") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    const RoomMap map = hexnav::testing::random_lattice_map(seed, 9);
    for (const TagNode& s : map.nodes()) {
      for (const TagNode& d : map.nodes()) {
        CHECK(shortest_path(map, s.id, d.id) == brute_force_route(map, s.id, d.id));
      }
    }
  }
}

TEST_CASE("suffixes of a route are routes") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RoomMap map = hexnav::testing::random_lattice_map(seed);
    for (const TagNode& s : map.nodes()) {
      for (const TagNode& d : map.nodes()) {
        const PathResult route = shortest_path(map, s.id, d.id);
        int remaining = route.cost;
        for (std::size_t i = 0; i < route.nodes.size(); ++i) {
          const PathResult tail = shortest_path(map, route.nodes[i], d.id);
          CHECK(tail.nodes == std::vector<TagId>(route.nodes.begin() + i, route.nodes.end()));
          CHECK(tail.cost == remaining);
          if (i + 1 < route.nodes.size()) {
            remaining -= *map.edge_weight(route.nodes[i], route.nodes[i + 1]);
          }
        }
      }
    }
  }
}

TEST_CASE("heading from two consecutive tags") {
  const RoomMap map = clinic();
  // A lies directly south of I.
  CHECK(infer_heading(map, id_of(map, "A"), id_of(map, "I")) == HexDirection::N);
  CHECK(infer_heading(map, id_of(map, "I"), id_of(map, "A")) == HexDirection::S);
  CHECK_THROWS_AS(infer_heading(map, id_of(map, "A"), id_of(map, "A")), NotAdjacent);
  // First hops of A -> Q: A->B and B->K run north-east, S->R south-east.
  CHECK(infer_heading(map, id_of(map, "A"), id_of(map, "B")) == HexDirection::NE);
  CHECK(infer_heading(map, id_of(map, "B"), id_of(map, "K")) == HexDirection::NE);
  CHECK(infer_heading(map, id_of(map, "S"), id_of(map, "R")) == HexDirection::SE);
}

TEST_CASE("relative turn") {
  CHECK(relative_turn(HexDirection::N, HexDirection::NE) == 1);
  CHECK(relative_turn(HexDirection::SW, HexDirection::N) == 2);
  for (HexDirection d : kAllDirections) CHECK(relative_turn(d, d) == 0);
  for (HexDirection h : kAllDirections) {
    for (HexDirection d : kAllDirections) {
      // The oracle's clock hour is twice the turn in sixths.
      const int hour = hexnav::testing::clock_hour(h, d);
      CHECK(relative_turn(h, d) == (hour == 12 ? 0 : hour / 2));
      for (int k = 0; k < 6; ++k) {
        CHECK(relative_turn(rotate(h, k), rotate(d, k)) == relative_turn(h, d));
      }
    }
  }
}

TEST_CASE("instruction texts") {
  CHECK(instruction_for(0, false).kind == InstructionKind::Straight);
  CHECK(instruction_for(0, false).cue_text() == "Walk straight ahead.");
  CHECK(instruction_for(3, false).kind == InstructionKind::UTurn);
  CHECK(instruction_for(3, false).cue_text() == "Make U-turn");
  CHECK(instruction_for(1, false).cue_text() == "Turn to your 2 o'clock and keep walking slowly.");
  CHECK(instruction_for(2, false).cue_text() == "Turn to your 4 o'clock and keep walking slowly.");
  CHECK(instruction_for(4, false).cue_text() == "Turn to your 8 o'clock and keep walking slowly.");
  CHECK(instruction_for(5, false).cue_text() == "Turn to your 10 o'clock and keep walking slowly.");
  for (int d = 0; d < 6; ++d) CHECK(instruction_for(d, true).kind == InstructionKind::Arrived);
  CHECK(instruction_for(0, true).cue_text() == "You have arrived at your destination.");
  CHECK_THROWS_AS(instruction_for(6, false), DomainError);

  std::set<InstructionKind> seen;
  for (int d = 0; d < 6; ++d) {
    const Instruction ins = instruction_for(d, false);
    CHECK(ins.turn() == d);
    CHECK(seen.insert(ins.kind).second);
    for (HexDirection h : kAllDirections) CHECK(relative_turn(h, instructed_direction(h, ins)) == d);
  }
}

TEST_CASE("plan_instruction") {
  const RoomMap map = clinic();
  const TagId a = id_of(map, "A"), q = id_of(map, "Q"), i = id_of(map, "I");

  CHECK(plan_instruction(map, q, HexDirection::S, q).kind == InstructionKind::Arrived);
  // I is one hop north of A.
  CHECK(plan_instruction(map, a, HexDirection::N, i).kind == InstructionKind::Straight);
  CHECK(plan_instruction(map, a, HexDirection::S, i).kind == InstructionKind::UTurn);

  // Heading set by the first hop of the enumerated A -> Q route.
  const auto oracle = *brute_force_route(map, a, q);
  const HexDirection first = direction_between(map, oracle.nodes[0], oracle.nodes[1]);
  const Instruction ins = plan_instruction(map, a, first, q);
  CHECK(ins.kind == InstructionKind::Straight);
  CHECK(neighbors(map, a).size() == 2);
  CHECK(instructed_direction(first, ins) == direction_between(map, a, oracle.nodes[1]));

  CHECK_THROWS_AS(plan_instruction(map, 99, HexDirection::N, q), UnknownTag);
}

TEST_CASE("plan_instruction is history independent") {
  const RoomMap map = clinic();
  const TagId q = id_of(map, "Q");
  std::vector<Instruction> first_pass;
  for (const TagNode& n : map.nodes()) {
    for (HexDirection h : kAllDirections) first_pass.push_back(plan_instruction(map, n.id, h, q));
  }
  // Interleave unrelated calls, then ask again in reverse order.
  for (const TagNode& n : map.nodes()) plan_instruction(map, n.id, HexDirection::SW, 1);
  std::size_t k = first_pass.size();
  for (auto it = map.nodes().rbegin(); it != map.nodes().rend(); ++it) {
    for (auto h = kAllDirections.rbegin(); h != kAllDirections.rend(); ++h) {
      CHECK(plan_instruction(map, it->id, *h, q) == first_pass[--k]);
    }
  }
}
