#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hexnav/map.hpp"
#include "support/oracles.hpp"

using namespace hexnav;
using hexnav::testing::clinic;
using hexnav::testing::id_of;

namespace {

bool has_kind(const std::vector<Violation>& vs, ViolationKind k) {
  return std::any_of(vs.begin(), vs.end(), [k](const Violation& v) { return v.kind == k; });
}

RoomMap two_nodes(double gap, int weight = 1) {
  return RoomMap("pair", 0.64, {2.0, 2.0},
                 {{1, "A", {0.5, 0.5}, std::nullopt}, {2, "B", {0.5, 0.5 + gap}, std::nullopt}},
                 {{1, 2, weight}});
}

std::string pair_json(int weight) {
  return R"({"name":"pair","spacing_m":0.64,"bounds":{"width_m":2,"height_m":2},
    "nodes":[{"id":1,"name":"A","x_m":0.5,"y_m":0.5},{"id":2,"name":"B","x_m":0.5,"y_m":1.14}],
    "edges":[{"a":1,"b":2,"weight":)" +
         std::to_string(weight) + "}]}";
}

}  // namespace

TEST_CASE("bundled clinic map loads with 24 lettered tags") {
  const RoomMap map = clinic();
  REQUIRE(map.nodes().size() == 24);
  for (TagId id = 1; id <= 24; ++id) {
    CHECK(map.node(id).name == std::string(1, static_cast<char>('A' + id - 1)));
  }
  CHECK(map.spacing_m() == 0.64);
  CHECK(map.bounds().width_m == 4.1);
  CHECK(map.bounds().height_m == 2.0);
  CHECK(validate_map(map).empty());
}

TEST_CASE("single node map is valid") {
  const RoomMap map = load_map(R"({"name":"one","spacing_m":0.64,
      "bounds":{"width_m":1,"height_m":1},
      "nodes":[{"id":1,"name":"A","x_m":0.5,"y_m":0.5}],"edges":[]})");
  CHECK(map.nodes().size() == 1);
  CHECK(neighbors(map, 1).empty());
}

TEST_CASE("weight outside {1,2} is rejected") {
  CHECK_NOTHROW(load_map(pair_json(2)));
  try {
    load_map(pair_json(3));
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE(e.violations().size() == 1);
    CHECK(e.violations()[0].kind == ViolationKind::BadWeight);
    CHECK(e.violations()[0].where == "edge 1-2");
  }
}

TEST_CASE("malformed text is a parse error") {
  CHECK_THROWS_AS(load_map("{not json"), ParseError);
  CHECK_THROWS_AS(load_map(R"({"name":"x"})"), ParseError);
  CHECK_THROWS_AS(load_map(R"({"name":"x","spacing_m":"far","bounds":{"width_m":1,"height_m":1},
      "nodes":[],"edges":[]})"),
                  ParseError);
  CHECK_THROWS_AS(load_map(R"({"name":"x","spacing_m":1,"bounds":{"width_m":1,"height_m":1},
      "nodes":[],"edges":[{"a":1,"b":2,"weight":1.5}]})"),
                  ParseError);
}

TEST_CASE("validator finds geometric and structural violations") {
  SUBCASE("edge 1.5 spacings long") {
    const auto vs = validate_map(two_nodes(1.5 * 0.64));
    CHECK(has_kind(vs, ViolationKind::BadLength));
  }
  SUBCASE("edge off the lattice bearings") {
    const RoomMap map("skew", 0.64, {2, 2},
                      {{1, "A", {0.5, 0.5}, {}}, {2, "B", {0.5 + 0.64, 0.5}, {}}}, {{1, 2, 1}});
    const auto vs = validate_map(map);
    CHECK(has_kind(vs, ViolationKind::BadBearing));
    CHECK_FALSE(has_kind(vs, ViolationKind::BadLength));
  }
  SUBCASE("two components") {
    const RoomMap map("split", 0.64, {2, 2},
                      {{1, "A", {0.5, 0.5}, {}}, {2, "B", {1.5, 1.5}, {}}}, {});
    const auto vs = validate_map(map);
    CHECK(has_kind(vs, ViolationKind::Disconnected));
  }
  SUBCASE("duplicates, bounds, order and self loops") {
    const RoomMap map("bad", 0.64, {1, 1},
                      {{2, "A", {0.5, 0.5}, {}}, {2, "A", {0.5, 1.14}, {}}, {0, "Z", {3, 3}, {}}},
                      {{2, 1, 1}, {2, 2, 1}});
    const auto vs = validate_map(map);
    CHECK(has_kind(vs, ViolationKind::DuplicateId));
    CHECK(has_kind(vs, ViolationKind::DuplicateName));
    CHECK(has_kind(vs, ViolationKind::OutOfBounds));
    CHECK(has_kind(vs, ViolationKind::BadTagId));
    CHECK(has_kind(vs, ViolationKind::EdgeOrder));
    CHECK(has_kind(vs, ViolationKind::SelfLoop));
    CHECK(has_kind(vs, ViolationKind::UnknownEndpoint));
  }
  SUBCASE("two edges in one direction") {
    // B and C both north of A within tolerance.
    const RoomMap map("dup", 0.64, {3, 3},
                      {{1, "A", {1, 1}, {}}, {2, "B", {1, 1.64}, {}}, {3, "C", {1.003, 1.6395}, {}}},
                      {{1, 2, 1}, {1, 3, 1}});
    CHECK(has_kind(validate_map(map), ViolationKind::DirectionConflict));
  }
  SUBCASE("empty map") { CHECK(has_kind(validate_map(RoomMap()), ViolationKind::EmptyMap)); }
}

TEST_CASE("direction_between follows the lattice bearings") {
  const RoomMap north("n", 0.64, {2, 2}, {{1, "A", {0, 0}, {}}, {2, "B", {0, 0.64}, {}}},
                      {{1, 2, 1}});
  CHECK(direction_between(north, 1, 2) == HexDirection::N);
  CHECK(direction_between(north, 2, 1) == HexDirection::S);

  const RoomMap ne("ne", 0.64, {2, 2}, {{1, "A", {0, 0}, {}}, {2, "B", {0.5543, 0.32}, {}}},
                   {{1, 2, 1}});
  CHECK(direction_between(ne, 1, 2) == HexDirection::NE);
  CHECK(direction_between(ne, 2, 1) == HexDirection::SW);

  const RoomMap map = clinic();
  CHECK_THROWS_AS(direction_between(map, id_of(map, "A"), id_of(map, "Q")), NotAdjacent);
  CHECK_THROWS_AS(direction_between(map, 1, 1), NotAdjacent);
  CHECK_THROWS_AS(direction_between(map, 1, 99), UnknownTag);
}

TEST_CASE("every clinic edge reads as opposite bearings from its two ends") {
  const RoomMap map = clinic();
  for (const Edge& e : map.edges()) {
    CHECK(direction_between(map, e.a, e.b) == opposite(direction_between(map, e.b, e.a)));
  }
}

TEST_CASE("neighbours are sorted, distinct and at most six") {
  const RoomMap map = clinic();
  for (const TagNode& n : map.nodes()) {
    const auto around = neighbors(map, n.id);
    CHECK(around.size() <= 6);
    for (std::size_t i = 1; i < around.size(); ++i) {
      CHECK(index(around[i - 1].direction) < index(around[i].direction));
    }
  }
  // Degrees counted off the bundled map file.
  CHECK(neighbors(map, id_of(map, "J")).size() == 6);
  CHECK(neighbors(map, id_of(map, "K")).size() == 6);
  const auto corner = neighbors(map, id_of(map, "A"));
  CHECK(corner.size() == 2);
  CHECK(corner[0] == Neighbor{HexDirection::N, id_of(map, "I"), 1});
  CHECK(corner[1] == Neighbor{HexDirection::NE, id_of(map, "B"), 1});
  CHECK_THROWS_AS(neighbors(map, 77), UnknownTag);
}

TEST_CASE("clinic landmark catalog") {
  const RoomMap map = clinic();
  std::map<std::string, std::string> found;
  for (const TagNode& n : map.nodes()) {
    if (n.landmark) found[n.name] = *n.landmark;
  }
  CHECK(found == hexnav::testing::landmark_table());
}

TEST_CASE("serialisation round-trips") {
  const RoomMap map = clinic();
  CHECK(load_map(serialize_map(map)) == map);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const RoomMap random = hexnav::testing::random_lattice_map(seed);
    REQUIRE(validate_map(random).empty());
    CHECK(load_map(serialize_map(random)) == random);
  }
}

TEST_CASE("tag density") {
  CHECK(tag_density(0.64) == doctest::Approx(28.1909).epsilon(1e-4));
  CHECK(tag_density(1.0) == doctest::Approx(11.5470).epsilon(1e-4));
  CHECK_THROWS_AS(tag_density(0.0), DomainError);
  CHECK_THROWS_AS(tag_density(-1.0), DomainError);
  double prev = tag_density(0.05);
  for (double s = 0.1; s < 3.0; s += 0.05) {
    const double d = tag_density(s);
    CHECK(d < prev);
    prev = d;
  }
}
