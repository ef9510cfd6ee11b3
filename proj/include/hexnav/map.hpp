#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hexnav/direction.hpp"
#include "hexnav/errors.hpp"

namespace hexnav {

/// Numeric tag id, the number keyed in on the keypad.
using TagId = std::uint32_t;

struct TagNode {
  TagId id = 0;
  std::string name;
  Vec2 pos;
  std::optional<std::string> landmark;

  friend bool operator==(const TagNode&, const TagNode&) = default;
};

struct Edge {
  TagId a = 0;
  TagId b = 0;
  int weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Bounds {
  double width_m = 0.0;
  double height_m = 0.0;

  bool contains(Vec2 p) const {
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= width_m && p.y <= height_m;
  }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

struct Neighbor {
  HexDirection direction;
  TagId id;
  int weight;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Relative tolerance on edge length against the lattice spacing.
inline constexpr double kSpacingTolerance = 0.01;
/// Maximum bearing error of an edge, in degrees.
inline constexpr double kBearingToleranceDeg = 1.0;

/**
 * An immutable tag graph: floor tags with planar positions and undirected
 * weighted edges between lattice neighbours.
 *
 * Construction only indexes the data; it does not enforce the lattice
 * invariants.  Use `validate_map` to inspect a map, or `load_map` to get one
 * that is guaranteed valid.
 */
class RoomMap {
public:
  RoomMap() = default;
  RoomMap(std::string name, double spacing_m, Bounds bounds, std::vector<TagNode> nodes,
          std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  double spacing_m() const { return spacing_m_; }
  const Bounds& bounds() const { return bounds_; }
  std::span<const TagNode> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }

  bool contains(TagId id) const { return by_id_.contains(id); }
  /// Throws UnknownTag.
  const TagNode& node(TagId id) const;
  const TagNode* find(TagId id) const;
  const TagNode* find_by_name(std::string_view name) const;

  /// Edge weight between a and b, if they are joined.
  std::optional<int> edge_weight(TagId a, TagId b) const;

  /// Mean node position (origin for an empty map).
  Vec2 centroid() const;

  friend bool operator==(const RoomMap& a, const RoomMap& b) {
    return a.name_ == b.name_ && a.spacing_m_ == b.spacing_m_ && a.bounds_ == b.bounds_ &&
           a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

private:
  friend std::vector<Neighbor> neighbors(const RoomMap&, TagId);

  std::string name_;
  double spacing_m_ = 0.0;
  Bounds bounds_;
  std::vector<TagNode> nodes_;
  std::vector<Edge> edges_;

  std::unordered_map<TagId, std::size_t> by_id_;
  std::unordered_map<std::string, std::size_t> by_name_;
  // Per node index: (other id, weight), in edge-list order.
  std::vector<std::vector<std::pair<TagId, int>>> adjacency_;
};

enum class ViolationKind {
  BadSpacing,
  BadBounds,
  EmptyMap,
  BadTagId,
  DuplicateId,
  DuplicateName,
  OutOfBounds,
  SelfLoop,
  EdgeOrder,
  UnknownEndpoint,
  BadWeight,
  DuplicateEdge,
  BadLength,
  BadBearing,
  DirectionConflict,
  DegreeExceeded,
  Disconnected,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string where;    // e.g. "node 3" or "edge 4-9"
  std::string message;
};

class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

private:
  std::vector<Violation> violations_;
};

/// Every violated invariant; empty iff the map is valid.
std::vector<Violation> validate_map(const RoomMap& map);

/// Parses and validates map-file JSON.  Throws ParseError or ValidationError.
RoomMap load_map(std::string_view source);
RoomMap load_map_file(const std::string& path);

/// Map-file JSON text; `load_map(serialize_map(m)) == m` for valid maps.
std::string serialize_map(const RoomMap& map);

/// Bearing from a to b.  Throws UnknownTag, or NotAdjacent when no edge joins them.
HexDirection direction_between(const RoomMap& map, TagId a, TagId b);

/// Neighbours of n sorted by direction index.  Throws UnknownTag.
std::vector<Neighbor> neighbors(const RoomMap& map, TagId n);

/// Triangular-lattice tag count per 10 m^2.  Throws DomainError for spacing <= 0.
double tag_density(double spacing_m);

}  // namespace hexnav
