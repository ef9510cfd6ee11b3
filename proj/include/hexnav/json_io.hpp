#pragma once

// JSON encodings shared by transcripts, the service and the CLI.

#include <json.hpp>

#include "hexnav/session.hpp"

namespace hexnav {

// {"key": "7"} or {"scan": 17}
void to_json(nlohmann::ordered_json& j, const SessionEvent& e);
void from_json(const nlohmann::ordered_json& j, SessionEvent& e);

// {"phase": "navigating", "dst": 17, "current": 4, "heading": "NE"}, fields per phase.
// (SessionState is a std::variant, so these are not ADL hooks.)
nlohmann::ordered_json state_to_json(const SessionState& s);
SessionState state_from_json(const nlohmann::ordered_json& j);

// {"kind": "instruction", "text": ..., "timestamp_s": ..., "at_tag": 4}
void to_json(nlohmann::ordered_json& j, const Cue& c);
void from_json(const nlohmann::ordered_json& j, Cue& c);

void to_json(nlohmann::ordered_json& j, const TranscriptEntry& t);
void from_json(const nlohmann::ordered_json& j, TranscriptEntry& t);

}  // namespace hexnav
