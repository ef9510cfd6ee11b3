#include "hexnav/routing.hpp"

#include <limits>
#include <queue>
#include <unordered_map>

namespace hexnav {

const std::array<std::string_view, 7> kInstructionTexts = {
    "Walk straight ahead.",
    "Turn to your 2 o'clock and keep walking slowly.",
    "Turn to your 4 o'clock and keep walking slowly.",
    "Make U-turn",
    "Turn to your 8 o'clock and keep walking slowly.",
    "Turn to your 10 o'clock and keep walking slowly.",
    "You have arrived at your destination.",
};

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max();

// Cost-to-go from every node to dst.
std::unordered_map<TagId, long long> distances_to(const RoomMap& map, TagId dst) {
  std::unordered_map<TagId, long long> dist;
  for (const TagNode& n : map.nodes()) dist[n.id] = kInf;
  using Item = std::pair<long long, TagId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[dst] = 0;
  queue.emplace(0, dst);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d != dist[u]) continue;
    for (const Neighbor& n : neighbors(map, u)) {
      const long long nd = d + n.weight;
      if (nd < dist[n.id]) {
        dist[n.id] = nd;
        queue.emplace(nd, n.id);
      }
    }
  }
  return dist;
}

}  // namespace

PathResult shortest_path(const RoomMap& map, TagId src, TagId dst) {
  map.node(src);
  map.node(dst);
  const auto dist = distances_to(map, dst);
  if (dist.at(src) == kInf) {
    throw Unreachable("no route from tag " + std::to_string(src) + " to tag " +
                      std::to_string(dst));
  }
  // Walk down the cost-to-go field, always taking the smallest id that stays
  // on some optimal route.
  PathResult out;
  out.cost = static_cast<int>(dist.at(src));
  out.nodes.push_back(src);
  TagId cur = src;
  while (cur != dst) {
    TagId best = 0;
    bool found = false;
    for (const Neighbor& n : neighbors(map, cur)) {
      if (dist.at(n.id) != kInf && dist.at(n.id) + n.weight == dist.at(cur) &&
          (!found || n.id < best)) {
        best = n.id;
        found = true;
      }
    }
    cur = best;
    out.nodes.push_back(cur);
  }
  return out;
}

HexDirection infer_heading(const RoomMap& map, TagId prev, TagId cur) {
  return direction_between(map, prev, cur);
}

std::string_view Instruction::cue_text() const { return kInstructionTexts[static_cast<int>(kind)]; }

std::string_view to_string(InstructionKind kind) {
  switch (kind) {
    case InstructionKind::Straight: return "straight";
    case InstructionKind::TwoOClock: return "two-oclock";
    case InstructionKind::FourOClock: return "four-oclock";
    case InstructionKind::UTurn: return "u-turn";
    case InstructionKind::EightOClock: return "eight-oclock";
    case InstructionKind::TenOClock: return "ten-oclock";
    case InstructionKind::Arrived: return "arrived";
  }
  return "unknown";
}

Instruction instruction_for(int delta, bool at_destination) {
  if (at_destination) return {InstructionKind::Arrived};
  if (delta < 0 || delta > 5) throw DomainError("turn delta must be in 0..5");
  return {static_cast<InstructionKind>(delta)};
}

HexDirection instructed_direction(HexDirection heading, Instruction movement) {
  if (!movement.is_movement()) throw DomainError("arrival carries no direction");
  return rotate(heading, movement.turn());
}

Instruction plan_instruction(const RoomMap& map, TagId cur, HexDirection heading, TagId dst) {
  map.node(cur);
  map.node(dst);
  if (cur == dst) return instruction_for(0, true);
  const PathResult route = shortest_path(map, cur, dst);
  const TagId next = route.nodes[1];
  return instruction_for(relative_turn(heading, direction_between(map, cur, next)), false);
}

}  // namespace hexnav
