#include "hexnav/map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hexnav {

using ojson = nlohmann::ordered_json;

RoomMap::RoomMap(std::string name, double spacing_m, Bounds bounds, std::vector<TagNode> nodes,
                 std::vector<Edge> edges)
    : name_(std::move(name)),
      spacing_m_(spacing_m),
      bounds_(bounds),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    by_id_.emplace(nodes_[i].id, i);
    by_name_.emplace(nodes_[i].name, i);
  }
  adjacency_.resize(nodes_.size());
  for (const Edge& e : edges_) {
    auto ia = by_id_.find(e.a);
    auto ib = by_id_.find(e.b);
    if (ia == by_id_.end() || ib == by_id_.end() || e.a == e.b) continue;
    adjacency_[ia->second].emplace_back(e.b, e.weight);
    adjacency_[ib->second].emplace_back(e.a, e.weight);
  }
}

const TagNode& RoomMap::node(TagId id) const {
  const TagNode* n = find(id);
  if (n == nullptr) throw UnknownTag("unknown tag " + std::to_string(id));
  return *n;
}

const TagNode* RoomMap::find(TagId id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &nodes_[it->second];
}

const TagNode* RoomMap::find_by_name(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? nullptr : &nodes_[it->second];
}

std::optional<int> RoomMap::edge_weight(TagId a, TagId b) const {
  auto it = by_id_.find(a);
  if (it == by_id_.end()) return std::nullopt;
  for (const auto& [other, w] : adjacency_[it->second]) {
    if (other == b) return w;
  }
  return std::nullopt;
}

Vec2 RoomMap::centroid() const {
  if (nodes_.empty()) return {};
  Vec2 sum;
  for (const TagNode& n : nodes_) sum = sum + n.pos;
  return (1.0 / static_cast<double>(nodes_.size())) * sum;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::BadSpacing: return "bad-spacing";
    case ViolationKind::BadBounds: return "bad-bounds";
    case ViolationKind::EmptyMap: return "empty-map";
    case ViolationKind::BadTagId: return "bad-tag-id";
    case ViolationKind::DuplicateId: return "duplicate-id";
    case ViolationKind::DuplicateName: return "duplicate-name";
    case ViolationKind::OutOfBounds: return "out-of-bounds";
    case ViolationKind::SelfLoop: return "self-loop";
    case ViolationKind::EdgeOrder: return "edge-order";
    case ViolationKind::UnknownEndpoint: return "unknown-endpoint";
    case ViolationKind::BadWeight: return "bad-weight";
    case ViolationKind::DuplicateEdge: return "duplicate-edge";
    case ViolationKind::BadLength: return "bad-length";
    case ViolationKind::BadBearing: return "bad-bearing";
    case ViolationKind::DirectionConflict: return "direction-conflict";
    case ViolationKind::DegreeExceeded: return "degree-exceeded";
    case ViolationKind::Disconnected: return "disconnected";
  }
  return "unknown";
}

namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << "invalid map: " << violations.size() << " violation(s)";
  for (const Violation& v : violations) {
    out << "\n  " << to_string(v.kind) << " at " << v.where << ": " << v.message;
  }
  return out.str();
}

std::string edge_label(const Edge& e) {
  return "edge " + std::to_string(e.a) + "-" + std::to_string(e.b);
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(describe(violations)), violations_(std::move(violations)) {}

std::vector<Violation> validate_map(const RoomMap& map) {
  std::vector<Violation> out;
  auto report = [&](ViolationKind k, std::string where, std::string msg) {
    out.push_back({k, std::move(where), std::move(msg)});
  };

  const double spacing = map.spacing_m();
  const bool spacing_ok = std::isfinite(spacing) && spacing > 0.0;
  if (!spacing_ok) report(ViolationKind::BadSpacing, "map", "spacing_m must be positive");
  const Bounds& bounds = map.bounds();
  if (!(bounds.width_m > 0.0) || !(bounds.height_m > 0.0)) {
    report(ViolationKind::BadBounds, "map", "bounds must have positive width and height");
  }
  if (map.nodes().empty()) report(ViolationKind::EmptyMap, "map", "map has no nodes");

  std::set<TagId> ids;
  std::set<std::string> names;
  for (const TagNode& n : map.nodes()) {
    const std::string where = "node " + std::to_string(n.id);
    if (n.id == 0) report(ViolationKind::BadTagId, where, "tag id must be a positive integer");
    if (!ids.insert(n.id).second) report(ViolationKind::DuplicateId, where, "duplicate tag id");
    if (!names.insert(n.name).second) {
      report(ViolationKind::DuplicateName, where, "duplicate name '" + n.name + "'");
    }
    if (!bounds.contains(n.pos)) {
      report(ViolationKind::OutOfBounds, where, "position lies outside the room bounds");
    }
  }

  std::set<std::pair<TagId, TagId>> seen;
  // (node, direction) -> number of edges leaving that node in that direction
  std::map<std::pair<TagId, int>, int> per_direction;
  std::map<TagId, int> degree;
  for (const Edge& e : map.edges()) {
    const std::string where = edge_label(e);
    if (e.a == e.b) {
      report(ViolationKind::SelfLoop, where, "edge joins a tag to itself");
      continue;
    }
    if (e.a > e.b) report(ViolationKind::EdgeOrder, where, "edge must be listed with a < b");
    if (e.weight != 1 && e.weight != 2) {
      report(ViolationKind::BadWeight, where,
             "weight " + std::to_string(e.weight) + " is not 1 or 2");
    }
    const TagNode* a = map.find(e.a);
    const TagNode* b = map.find(e.b);
    if (a == nullptr || b == nullptr) {
      report(ViolationKind::UnknownEndpoint, where, "edge references an unknown tag");
      continue;
    }
    if (!seen.insert(std::minmax(e.a, e.b)).second) {
      report(ViolationKind::DuplicateEdge, where, "tags are joined more than once");
      continue;
    }
    ++degree[e.a];
    ++degree[e.b];

    const Vec2 d = b->pos - a->pos;
    const double len = d.norm();
    if (spacing_ok && std::fabs(len - spacing) > kSpacingTolerance * spacing) {
      std::ostringstream msg;
      msg << "length " << len << " m differs from spacing " << spacing << " m";
      report(ViolationKind::BadLength, where, msg.str());
    }
    if (len <= 0.0) {
      report(ViolationKind::BadBearing, where, "endpoints coincide");
      continue;
    }
    const BearingMatch m = nearest_bearing(d);
    if (m.error_deg > kBearingToleranceDeg) {
      std::ostringstream msg;
      msg << "bearing is " << m.error_deg << " deg off the nearest lattice direction";
      report(ViolationKind::BadBearing, where, msg.str());
    }
    if (++per_direction[{e.a, index(m.direction)}] == 2) {
      report(ViolationKind::DirectionConflict, "node " + std::to_string(e.a),
             std::string("two edges leave in direction ") + std::string(to_string(m.direction)));
    }
    const HexDirection back = opposite(m.direction);
    if (++per_direction[{e.b, index(back)}] == 2) {
      report(ViolationKind::DirectionConflict, "node " + std::to_string(e.b),
             std::string("two edges leave in direction ") + std::string(to_string(back)));
    }
  }
  for (const auto& [id, deg] : degree) {
    if (deg > 6) {
      report(ViolationKind::DegreeExceeded, "node " + std::to_string(id),
             "degree " + std::to_string(deg) + " exceeds 6");
    }
  }

  if (!map.nodes().empty()) {
    std::set<TagId> reached{map.nodes().front().id};
    std::vector<TagId> stack{map.nodes().front().id};
    while (!stack.empty()) {
      const TagId cur = stack.back();
      stack.pop_back();
      for (const Neighbor& n : neighbors(map, cur)) {
        if (reached.insert(n.id).second) stack.push_back(n.id);
      }
    }
    if (reached.size() != ids.size()) {
      for (const TagNode& n : map.nodes()) {
        if (!reached.contains(n.id)) {
          report(ViolationKind::Disconnected, "node " + std::to_string(n.id),
                 "not reachable from node " + std::to_string(map.nodes().front().id));
        }
      }
    }
  }
  return out;
}

namespace {

template <typename T>
T require(const ojson& obj, const char* key, const std::string& ctx) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(ctx + ": missing field '" + key + "'");
  }
  const ojson& v = obj.at(key);
  if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw ParseError(ctx + ": field '" + key + "' must be a string");
    return v.get<std::string>();
  } else if constexpr (std::is_same_v<T, double>) {
    if (!v.is_number()) throw ParseError(ctx + ": field '" + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ParseError(ctx + ": field '" + key + "' must be finite");
    return d;
  } else {
    static_assert(std::is_same_v<T, std::int64_t>);
    if (!v.is_number_integer()) {
      throw ParseError(ctx + ": field '" + key + "' must be an integer");
    }
    return v.get<std::int64_t>();
  }
}

TagId to_tag_id(std::int64_t raw) {
  // Non-positive ids are kept as 0 so validation reports them.
  if (raw <= 0) return 0;
  if (raw > std::numeric_limits<TagId>::max()) throw ParseError("tag id out of range");
  return static_cast<TagId>(raw);
}

}  // namespace

RoomMap load_map(std::string_view source) {
  ojson doc;
  try {
    doc = ojson::parse(source);
  } catch (const ojson::parse_error& e) {
    throw ParseError(std::string("malformed map JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("map file must be a JSON object");

  const auto name = require<std::string>(doc, "name", "map");
  const auto spacing = require<double>(doc, "spacing_m", "map");
  if (!doc.contains("bounds")) throw ParseError("map: missing field 'bounds'");
  const ojson& b = doc["bounds"];
  const Bounds bounds{require<double>(b, "width_m", "bounds"),
                      require<double>(b, "height_m", "bounds")};

  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw ParseError("map: 'nodes' must be an array");
  }
  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    throw ParseError("map: 'edges' must be an array");
  }

  std::vector<TagNode> nodes;
  std::size_t i = 0;
  for (const ojson& n : doc["nodes"]) {
    const std::string ctx = "nodes[" + std::to_string(i++) + "]";
    TagNode node;
    node.id = to_tag_id(require<std::int64_t>(n, "id", ctx));
    node.name = require<std::string>(n, "name", ctx);
    node.pos = {require<double>(n, "x_m", ctx), require<double>(n, "y_m", ctx)};
    if (n.contains("landmark") && !n["landmark"].is_null()) {
      node.landmark = require<std::string>(n, "landmark", ctx);
    }
    nodes.push_back(std::move(node));
  }

  std::vector<Edge> edges;
  i = 0;
  for (const ojson& e : doc["edges"]) {
    const std::string ctx = "edges[" + std::to_string(i++) + "]";
    const auto w = require<std::int64_t>(e, "weight", ctx);
    if (w < std::numeric_limits<int>::min() || w > std::numeric_limits<int>::max()) {
      throw ParseError(ctx + ": weight out of range");
    }
    edges.push_back({to_tag_id(require<std::int64_t>(e, "a", ctx)),
                     to_tag_id(require<std::int64_t>(e, "b", ctx)), static_cast<int>(w)});
  }

  RoomMap map(name, spacing, bounds, std::move(nodes), std::move(edges));
  auto violations = validate_map(map);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return map;
}

RoomMap load_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read map file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_map(buf.str());
}

std::string serialize_map(const RoomMap& map) {
  ojson doc;
  doc["name"] = map.name();
  doc["spacing_m"] = map.spacing_m();
  doc["bounds"] = {{"width_m", map.bounds().width_m}, {"height_m", map.bounds().height_m}};
  ojson nodes = ojson::array();
  for (const TagNode& n : map.nodes()) {
    ojson j = {{"id", n.id}, {"name", n.name}, {"x_m", n.pos.x}, {"y_m", n.pos.y}};
    if (n.landmark) j["landmark"] = *n.landmark;
    nodes.push_back(std::move(j));
  }
  ojson edges = ojson::array();
  for (const Edge& e : map.edges()) {
    edges.push_back({{"a", e.a}, {"b", e.b}, {"weight", e.weight}});
  }
  doc["nodes"] = std::move(nodes);
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

HexDirection direction_between(const RoomMap& map, TagId a, TagId b) {
  const TagNode& from = map.node(a);
  const TagNode& to = map.node(b);
  if (a == b || !map.edge_weight(a, b)) {
    throw NotAdjacent("tags " + std::to_string(a) + " and " + std::to_string(b) +
                      " are not joined by an edge");
  }
  return nearest_bearing(to.pos - from.pos).direction;
}

std::vector<Neighbor> neighbors(const RoomMap& map, TagId n) {
  const TagNode& self = map.node(n);
  std::vector<Neighbor> out;
  for (const auto& [other, w] : map.adjacency_[map.by_id_.at(n)]) {
    const Vec2 d = map.node(other).pos - self.pos;
    const HexDirection dir = d.norm() > 0.0 ? nearest_bearing(d).direction : HexDirection::N;
    out.push_back({dir, other, w});
  }
  std::stable_sort(out.begin(), out.end(), [](const Neighbor& x, const Neighbor& y) {
    return index(x.direction) < index(y.direction);
  });
  return out;
}

double tag_density(double spacing_m) {
  if (!(spacing_m > 0.0) || !std::isfinite(spacing_m)) {
    throw DomainError("tag spacing must be positive");
  }
  const double cell_area = spacing_m * spacing_m * std::numbers::sqrt3 / 2.0;
  return 10.0 / cell_area;
}

}  // namespace hexnav
