#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hexnav/map.hpp"
#include "hexnav/routing.hpp"

namespace hexnav::testing {

inline std::string data_path(const std::string& file) {
  return std::string(HEXNAV_DATA_DIR) + "/" + file;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline RoomMap clinic() { return load_map_file(data_path("clinic.map.json")); }

inline TagId id_of(const RoomMap& map, const std::string& name) {
  return map.find_by_name(name)->id;
}

/// Exhaustive simple-path enumeration: minimum cost, then smallest id sequence.
inline std::optional<PathResult> brute_force_route(const RoomMap& map, TagId src, TagId dst) {
  std::map<TagId, std::vector<std::pair<TagId, int>>> adj;
  for (const Edge& e : map.edges()) {
    adj[e.a].emplace_back(e.b, e.weight);
    adj[e.b].emplace_back(e.a, e.weight);
  }
  std::optional<PathResult> best;
  std::vector<TagId> path{src};
  std::set<TagId> on_path{src};
  auto dfs = [&](auto&& self, TagId u, int cost) -> void {
    if (best && cost > best->cost) return;
    if (u == dst) {
      if (!best || cost < best->cost || (cost == best->cost && path < best->nodes)) {
        best = PathResult{path, cost};
      }
      return;
    }
    for (const auto& [v, w] : adj[u]) {
      if (on_path.contains(v)) continue;
      path.push_back(v);
      on_path.insert(v);
      self(self, v, cost + w);
      on_path.erase(v);
      path.pop_back();
    }
  };
  dfs(dfs, src, 0);
  return best;
}

/// Compass angle in degrees of each named bearing, computed from scratch.
inline double compass_deg(HexDirection d) {
  switch (d) {
    case HexDirection::N: return 0.0;
    case HexDirection::NE: return 60.0;
    case HexDirection::SE: return 120.0;
    case HexDirection::S: return 180.0;
    case HexDirection::SW: return 240.0;
    case HexDirection::NW: return 300.0;
  }
  return 0.0;
}

/// Clock hour (1..12) at which `next` lies for a user facing `heading`.
inline int clock_hour(HexDirection heading, HexDirection next) {
  const double h = compass_deg(heading) * std::numbers::pi / 180.0;
  const double n = compass_deg(next) * std::numbers::pi / 180.0;
  // Signed angle from heading to next; positive is clockwise seen from above.
  const double hx = std::sin(h), hy = std::cos(h);
  const double nx = std::sin(n), ny = std::cos(n);
  const double cw = std::atan2(hy * nx - hx * ny, hx * nx + hy * ny) * 180.0 / std::numbers::pi;
  double deg = cw < 0 ? cw + 360.0 : cw;
  const int hour = static_cast<int>(std::lround(deg / 30.0)) % 12;
  return hour == 0 ? 12 : hour;
}

/// Sentence for a clock hour, built from the cue pattern.
inline std::string sentence_for_hour(int hour) {
  if (hour == 12) return "Walk straight ahead.";
  if (hour == 6) return "Make U-turn";
  return "Turn to your " + std::to_string(hour) + " o'clock and keep walking slowly.";
}

/**
 * Random connected patch of the triangular lattice with at most `max_nodes`
 * nodes, shuffled ids, some lattice edges dropped and some doubled in weight.
 */
inline RoomMap random_lattice_map(std::uint64_t seed, int max_nodes = 12) {
  std::mt19937_64 rng(seed);
  auto coin = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };
  const int n = std::uniform_int_distribution<int>(1, max_nodes)(rng);
  // Axial offsets matching N, NE, SE, S, SW, NW.
  const int dq[6] = {0, 1, 1, 0, -1, -1};
  const int dr[6] = {1, 0, -1, -1, 0, 1};

  std::vector<std::pair<int, int>> cells{{0, 0}};
  std::set<std::pair<int, int>> taken{{0, 0}};
  std::set<std::pair<int, int>> tree;  // pairs of cell indices
  while (static_cast<int>(cells.size()) < n) {
    const std::size_t from = std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng);
    const int k = std::uniform_int_distribution<int>(0, 5)(rng);
    const std::pair<int, int> c{cells[from].first + dq[k], cells[from].second + dr[k]};
    if (taken.insert(c).second) {
      cells.push_back(c);
      tree.insert({static_cast<int>(from), static_cast<int>(cells.size() - 1)});
    }
  }

  const double s = 0.5;
  std::vector<Vec2> pos;
  double minx = 0, miny = 0, maxx = 0, maxy = 0;
  for (const auto& [q, r] : cells) {
    const Vec2 p{q * s * std::numbers::sqrt3 / 2.0, s * (r + q / 2.0)};
    pos.push_back(p);
    minx = std::min(minx, p.x);
    miny = std::min(miny, p.y);
    maxx = std::max(maxx, p.x);
    maxy = std::max(maxy, p.y);
  }
  std::vector<TagId> ids(cells.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<TagId>(i + 1);
  std::shuffle(ids.begin(), ids.end(), rng);

  std::vector<TagNode> nodes;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    nodes.push_back({ids[i], "T" + std::to_string(ids[i]),
                     {pos[i].x - minx + 0.25, pos[i].y - miny + 0.25}, std::nullopt});
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      const int ddq = cells[j].first - cells[i].first;
      const int ddr = cells[j].second - cells[i].second;
      bool adjacent = false;
      for (int k = 0; k < 6; ++k) adjacent |= (ddq == dq[k] && ddr == dr[k]);
      if (!adjacent) continue;
      const bool in_tree = tree.contains({static_cast<int>(i), static_cast<int>(j)});
      if (!in_tree && coin(0.3)) continue;
      const int w = coin(0.3) ? 2 : 1;
      edges.push_back({std::min(ids[i], ids[j]), std::max(ids[i], ids[j]), w});
    }
  }
  return RoomMap("random-" + std::to_string(seed), s, {maxx - minx + 0.5, maxy - miny + 0.5},
                 std::move(nodes), std::move(edges));
}

/// Clinic landmarks, node letter -> sentence.
inline const std::map<std::string, std::string>& landmark_table() {
  static const std::map<std::string, std::string> table = {
      {"A", "Office number 1 is located here."},
      {"C", "This is the women's bathroom."},
      {"I", "This is the doctor's office."},
      {"J", "This is office number 2."},
      {"M", "There is a coffee table around."},
      {"N", "This is the waiting area."},
      {"Q", "This is the reception table."},
      {"R", "There is a round table here."},
      {"V", "This is the vending machine."},
      {"X", "The receptionist is here."},
  };
  return table;
}

}  // namespace hexnav::testing
