#include "hexnav/session.hpp"

#include <charconv>

namespace hexnav {

SessionEvent SessionEvent::key(char symbol) {
  if (!is_keypad_symbol(symbol)) {
    throw BadSymbol(std::string("not a keypad symbol: '") + symbol + "'");
  }
  return {KeyPress{symbol}};
}

std::string_view phase_name(const SessionState& state) {
  static constexpr std::string_view kNames[] = {
      "idle", "entering-destination", "awaiting-first-scan",
      "awaiting-second-scan", "navigating", "arrived"};
  return kNames[state.index()];
}

std::string_view to_string(CueKind kind) {
  switch (kind) {
    case CueKind::Instruction: return "instruction";
    case CueKind::Landmark: return "landmark";
    case CueKind::System: return "system";
  }
  return "unknown";
}

NavSession::NavSession(const RoomMap& map) : map_(&map), state_(phase::Idle{}) {}

std::optional<TagId> NavSession::position() const {
  if (const auto* s = std::get_if<phase::AwaitingSecondScan>(&state_)) return s->first;
  if (const auto* s = std::get_if<phase::Navigating>(&state_)) return s->current;
  if (const auto* s = std::get_if<phase::Arrived>(&state_)) return s->dst;
  return std::nullopt;
}

std::optional<TagId> NavSession::destination() const {
  return std::visit(
      [](const auto& s) -> std::optional<TagId> {
        if constexpr (requires { s.dst; }) {
          return s.dst;
        } else {
          return std::nullopt;
        }
      },
      state_);
}

std::vector<Cue> NavSession::handle_event(const SessionEvent& event, double at_s) {
  std::vector<Cue> out;
  if (const auto* k = std::get_if<KeyPress>(&event.value)) {
    on_key(k->symbol, out, at_s);
  } else {
    on_scan(std::get<TagScan>(event.value).tag, out, at_s);
  }
  cues_.insert(cues_.end(), out.begin(), out.end());
  transcript_.push_back({transcript_.size() + 1, event, at_s, state_, out});
  return out;
}

namespace {

Cue system_cue(std::string_view text, double at_s, std::optional<TagId> at = std::nullopt) {
  return {CueKind::System, std::string(text), at_s, at};
}

}  // namespace

void NavSession::on_key(char symbol, std::vector<Cue>& out, double at_s) {
  if (!is_keypad_symbol(symbol)) {
    throw BadSymbol(std::string("not a keypad symbol: '") + symbol + "'");
  }
  if (symbol >= '0' && symbol <= '9') {
    auto* entering = std::get_if<phase::EnteringDestination>(&state_);
    std::string digits = entering ? entering->digits : std::string();
    if (digits.size() == kDigitCapacity) {
      state_ = phase::Idle{};
      out.push_back(system_cue(cue_text::kNumberTooLong, at_s));
      return;
    }
    digits.push_back(symbol);
    state_ = phase::EnteringDestination{std::move(digits)};
    return;
  }

  switch (symbol) {
    case '*':
      state_ = phase::Idle{};
      last_instruction_.reset();
      out.push_back(system_cue(cue_text::kRestarted, at_s));
      return;

    case '#': {
      const auto* entering = std::get_if<phase::EnteringDestination>(&state_);
      if (entering == nullptr) {
        out.push_back(system_cue(cue_text::kEnterDestinationFirst, at_s));
        return;
      }
      const std::string digits = entering->digits;
      TagId id = 0;
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
      const TagNode* node = (ec == std::errc{}) ? map_->find(id) : nullptr;
      if (node == nullptr) {
        state_ = phase::Idle{};
        out.push_back(system_cue("Unknown destination " + digits + ".", at_s));
        return;
      }
      state_ = phase::AwaitingFirstScan{id};
      last_instruction_.reset();
      out.push_back(system_cue("Destination set to " + node->name + ".", at_s, id));
      return;
    }

    case 'A': {
      const auto here = position();
      if (!here) {
        out.push_back(system_cue(cue_text::kPositionUnknown, at_s));
        return;
      }
      const TagNode& node = map_->node(*here);
      if (node.landmark) {
        out.push_back({CueKind::Landmark, *node.landmark, at_s, *here});
      } else {
        out.push_back(system_cue(cue_text::kNoInformation, at_s, *here));
      }
      return;
    }
  }
}

void NavSession::emit_instruction(Instruction ins, TagId at, std::vector<Cue>& out,
                                  double at_s) {
  last_instruction_ = ins;
  out.push_back({CueKind::Instruction, std::string(ins.cue_text()), at_s, at});
}

void NavSession::on_scan(TagId tag, std::vector<Cue>& out, double at_s) {
  map_->node(tag);  // rejects corrupt reads

  const auto arrive = [&](TagId dst) {
    state_ = phase::Arrived{dst};
    emit_instruction(instruction_for(0, true), dst, out, at_s);
  };

  if (const auto* s = std::get_if<phase::AwaitingFirstScan>(&state_)) {
    if (tag == s->dst) return arrive(s->dst);
    state_ = phase::AwaitingSecondScan{s->dst, tag};
    out.push_back(system_cue(cue_text::kWalkToAdjacent, at_s, tag));
    return;
  }

  if (const auto* s = std::get_if<phase::AwaitingSecondScan>(&state_)) {
    if (tag == s->first) return;
    const TagId dst = s->dst;
    if (tag == dst) return arrive(dst);
    if (!map_->edge_weight(s->first, tag)) {
      state_ = phase::AwaitingSecondScan{dst, tag};
      out.push_back(system_cue(cue_text::kWalkToAdjacent, at_s, tag));
      return;
    }
    const HexDirection heading = infer_heading(*map_, s->first, tag);
    state_ = phase::Navigating{dst, tag, heading};
    emit_instruction(plan_instruction(*map_, tag, heading, dst), tag, out, at_s);
    return;
  }

  if (const auto* s = std::get_if<phase::Navigating>(&state_)) {
    const TagId dst = s->dst;
    if (tag == s->current) {
      emit_instruction(*last_instruction_, tag, out, at_s);
      return;
    }
    if (tag == dst) return arrive(dst);
    if (!map_->edge_weight(s->current, tag)) {
      state_ = phase::AwaitingSecondScan{dst, tag};
      out.push_back(system_cue(cue_text::kOrientationLost, at_s, tag));
      return;
    }
    const HexDirection heading = infer_heading(*map_, s->current, tag);
    state_ = phase::Navigating{dst, tag, heading};
    emit_instruction(plan_instruction(*map_, tag, heading, dst), tag, out, at_s);
    return;
  }

  out.push_back(system_cue(cue_text::kEnterDestinationFirst, at_s, tag));
}

NavSession replay(const RoomMap& map, const std::vector<TranscriptEntry>& transcript) {
  NavSession session(map);
  for (const TranscriptEntry& e : transcript) session.handle_event(e.event, e.at_s);
  return session;
}

}  // namespace hexnav
