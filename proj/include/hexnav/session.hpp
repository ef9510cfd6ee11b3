#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hexnav/direction.hpp"
#include "hexnav/map.hpp"
#include "hexnav/routing.hpp"

namespace hexnav {

/// True for the keypad alphabet: digits, '#', '*' and 'A'.
constexpr bool is_keypad_symbol(char c) {
  return (c >= '0' && c <= '9') || c == '#' || c == '*' || c == 'A';
}

struct KeyPress {
  char symbol;
  friend bool operator==(const KeyPress&, const KeyPress&) = default;
};

struct TagScan {
  TagId tag;
  friend bool operator==(const TagScan&, const TagScan&) = default;
};

struct SessionEvent {
  std::variant<KeyPress, TagScan> value;

  /// Throws BadSymbol outside the keypad alphabet.
  static SessionEvent key(char symbol);
  static SessionEvent scan(TagId tag) { return {TagScan{tag}}; }

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

namespace phase {

struct Idle {
  friend bool operator==(const Idle&, const Idle&) = default;
};
struct EnteringDestination {
  std::string digits;
  friend bool operator==(const EnteringDestination&, const EnteringDestination&) = default;
};
struct AwaitingFirstScan {
  TagId dst;
  friend bool operator==(const AwaitingFirstScan&, const AwaitingFirstScan&) = default;
};
struct AwaitingSecondScan {
  TagId dst;
  TagId first;
  friend bool operator==(const AwaitingSecondScan&, const AwaitingSecondScan&) = default;
};
struct Navigating {
  TagId dst;
  TagId current;
  HexDirection heading;
  friend bool operator==(const Navigating&, const Navigating&) = default;
};
struct Arrived {
  TagId dst;
  friend bool operator==(const Arrived&, const Arrived&) = default;
};

}  // namespace phase

using SessionState = std::variant<phase::Idle, phase::EnteringDestination, phase::AwaitingFirstScan,
                                  phase::AwaitingSecondScan, phase::Navigating, phase::Arrived>;

std::string_view phase_name(const SessionState& state);

enum class CueKind { Instruction, Landmark, System };

std::string_view to_string(CueKind kind);

struct Cue {
  CueKind kind = CueKind::System;
  std::string text;
  double timestamp_s = 0.0;
  std::optional<TagId> at_tag;

  friend bool operator==(const Cue&, const Cue&) = default;
};

// System sentences.
namespace cue_text {
inline constexpr std::string_view kRestarted = "Program restarted.";
inline constexpr std::string_view kEnterDestinationFirst = "Enter destination first.";
inline constexpr std::string_view kWalkToAdjacent = "Walk to any adjacent tag.";
inline constexpr std::string_view kOrientationLost = "Orientation lost. Walk to any adjacent tag.";
inline constexpr std::string_view kNoInformation = "No information available here.";
inline constexpr std::string_view kPositionUnknown = "Position unknown.";
inline constexpr std::string_view kNumberTooLong = "Destination number too long.";
}  // namespace cue_text

/// Maximum number of digits in a keyed-in destination.
inline constexpr std::size_t kDigitCapacity = 4;

struct TranscriptEntry {
  std::uint64_t seq = 0;
  SessionEvent event;
  double at_s = 0.0;
  SessionState state;
  std::vector<Cue> cues;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

/**
 * Keypad-and-scan guidance state machine for one user.
 *
 * The user keys a destination number and '#', walks over two adjacent tags
 * so the heading can be inferred, and then hears one instruction per scanned
 * tag.  Each instruction is re-planned from scratch.  '*' restarts from any
 * state; 'A' announces the landmark at the current tag.
 *
 * Single-writer: events must be applied serially.  The map must outlive the
 * session.
 */
class NavSession {
public:
  explicit NavSession(const RoomMap& map);

  /// Applies one event at session time `at_s` and returns the cues it produced.
  /// Throws UnknownTag for a scan of a tag absent from the map.
  std::vector<Cue> handle_event(const SessionEvent& event, double at_s = 0.0);

  const SessionState& state() const { return state_; }
  const RoomMap& map() const { return *map_; }
  const std::vector<Cue>& cues() const { return cues_; }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  const std::optional<Instruction>& last_instruction() const { return last_instruction_; }

  /// Tag the user is known to stand on, if any.
  std::optional<TagId> position() const;
  std::optional<TagId> destination() const;

private:
  void on_key(char symbol, std::vector<Cue>& out, double at_s);
  void on_scan(TagId tag, std::vector<Cue>& out, double at_s);
  void emit_instruction(Instruction ins, TagId at, std::vector<Cue>& out, double at_s);

  const RoomMap* map_;
  SessionState state_;
  std::optional<Instruction> last_instruction_;
  std::vector<Cue> cues_;
  std::vector<TranscriptEntry> transcript_;
};

inline NavSession new_session(const RoomMap& map) { return NavSession(map); }

/// Re-applies the recorded events, with their times, to a fresh session.
NavSession replay(const RoomMap& map, const std::vector<TranscriptEntry>& transcript);

/// One JSON object per line: {seq, event, at_s, state, cues}.
std::string transcript_to_jsonl(const std::vector<TranscriptEntry>& transcript);
std::string transcript_line(const TranscriptEntry& entry);
/// Throws ParseError.
std::vector<TranscriptEntry> parse_transcript_jsonl(std::string_view text);

}  // namespace hexnav
