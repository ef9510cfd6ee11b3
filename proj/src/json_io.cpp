#include "hexnav/json_io.hpp"

#include <sstream>

namespace hexnav {

using ojson = nlohmann::ordered_json;

void to_json(ojson& j, const SessionEvent& e) {
  if (const auto* k = std::get_if<KeyPress>(&e.value)) {
    j = {{"key", std::string(1, k->symbol)}};
  } else {
    j = {{"scan", std::get<TagScan>(e.value).tag}};
  }
}

void from_json(const ojson& j, SessionEvent& e) {
  if (j.contains("key")) {
    const auto s = j.at("key").get<std::string>();
    if (s.size() != 1) throw BadSymbol("key must be a single symbol");
    e = SessionEvent::key(s[0]);
  } else if (j.contains("scan")) {
    e = SessionEvent::scan(j.at("scan").get<TagId>());
  } else {
    throw ParseError("event must carry 'key' or 'scan'");
  }
}

ojson state_to_json(const SessionState& s) {
  ojson j = {{"phase", std::string(phase_name(s))}};
  std::visit(
      [&j](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, phase::EnteringDestination>) {
          j["digits"] = p.digits;
        } else if constexpr (std::is_same_v<P, phase::AwaitingFirstScan> ||
                             std::is_same_v<P, phase::Arrived>) {
          j["dst"] = p.dst;
        } else if constexpr (std::is_same_v<P, phase::AwaitingSecondScan>) {
          j["dst"] = p.dst;
          j["first"] = p.first;
        } else if constexpr (std::is_same_v<P, phase::Navigating>) {
          j["dst"] = p.dst;
          j["current"] = p.current;
          j["heading"] = std::string(to_string(p.heading));
        }
      },
      s);
  return j;
}

SessionState state_from_json(const ojson& j) {
  SessionState s;
  const auto name = j.at("phase").get<std::string>();
  if (name == "idle") {
    s = phase::Idle{};
  } else if (name == "entering-destination") {
    s = phase::EnteringDestination{j.at("digits").get<std::string>()};
  } else if (name == "awaiting-first-scan") {
    s = phase::AwaitingFirstScan{j.at("dst").get<TagId>()};
  } else if (name == "awaiting-second-scan") {
    s = phase::AwaitingSecondScan{j.at("dst").get<TagId>(), j.at("first").get<TagId>()};
  } else if (name == "navigating") {
    const auto heading = parse_direction(j.at("heading").get<std::string>());
    if (!heading) throw ParseError("bad heading");
    s = phase::Navigating{j.at("dst").get<TagId>(), j.at("current").get<TagId>(), *heading};
  } else if (name == "arrived") {
    s = phase::Arrived{j.at("dst").get<TagId>()};
  } else {
    throw ParseError("unknown phase '" + name + "'");
  }
  return s;
}

void to_json(ojson& j, const Cue& c) {
  j = {{"kind", std::string(to_string(c.kind))}, {"text", c.text}, {"timestamp_s", c.timestamp_s}};
  if (c.at_tag) j["at_tag"] = *c.at_tag;
}

void from_json(const ojson& j, Cue& c) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "instruction") {
    c.kind = CueKind::Instruction;
  } else if (kind == "landmark") {
    c.kind = CueKind::Landmark;
  } else if (kind == "system") {
    c.kind = CueKind::System;
  } else {
    throw ParseError("unknown cue kind '" + kind + "'");
  }
  c.text = j.at("text").get<std::string>();
  c.timestamp_s = j.at("timestamp_s").get<double>();
  c.at_tag.reset();
  if (j.contains("at_tag")) c.at_tag = j.at("at_tag").get<TagId>();
}

void to_json(ojson& j, const TranscriptEntry& t) {
  j = {{"seq", t.seq}, {"event", t.event}, {"at_s", t.at_s}, {"state", state_to_json(t.state)},
       {"cues", t.cues}};
}

void from_json(const ojson& j, TranscriptEntry& t) {
  t.seq = j.at("seq").get<std::uint64_t>();
  t.event = j.at("event").get<SessionEvent>();
  t.at_s = j.at("at_s").get<double>();
  t.state = state_from_json(j.at("state"));
  t.cues = j.at("cues").get<std::vector<Cue>>();
}

std::string transcript_line(const TranscriptEntry& entry) { return ojson(entry).dump(); }

std::string transcript_to_jsonl(const std::vector<TranscriptEntry>& transcript) {
  std::string out;
  for (const TranscriptEntry& e : transcript) {
    out += transcript_line(e);
    out += '\n';
  }
  return out;
}

std::vector<TranscriptEntry> parse_transcript_jsonl(std::string_view text) {
  std::vector<TranscriptEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(ojson::parse(line).get<TranscriptEntry>());
    } catch (const ojson::exception& e) {
      throw ParseError("transcript line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw ParseError("transcript line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace hexnav
