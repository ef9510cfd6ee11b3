#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

#include "hexnav/map.hpp"
#include "hexnav/session.hpp"
#include "hexnav/simulator.hpp"

namespace hexnav {

class UnknownMap : public Error {
public:
  using Error::Error;
};

class UnknownWalk : public Error {
public:
  using Error::Error;
};

/// A cue as seen on the wire, stamped with the sequence number of its event.
struct WireCue {
  std::uint64_t seq = 0;
  CueKind kind = CueKind::System;
  std::string text;
  std::optional<TagId> at_tag;

  friend bool operator==(const WireCue&, const WireCue&) = default;
};

struct WalkSnapshot {
  std::string walk_id;
  std::string map_id;
  std::uint64_t seq = 0;  // latest event
  SessionState state;
  Vec2 position;
  std::vector<WireCue> cues;
  std::optional<TagId> scanned;  // set by moves that fired a scan

  friend bool operator==(const WalkSnapshot&, const WalkSnapshot&) = default;
};

/// Lattice hop in a bearing, or a free planar displacement in metres.
using Move = std::variant<HexDirection, Vec2>;

/**
 * Live walks over a fixed set of maps: a nav session plus a virtual walker
 * whose moves drive the tag reader.  Events on one walk are serialised;
 * distinct walks proceed independently.
 */
class WalkService {
public:
  /// Registers a map under its name.  Maps must be added before serving.
  void add_map(RoomMap map);

  std::vector<std::string> map_ids() const;
  /// Throws UnknownMap.
  std::shared_ptr<const RoomMap> map(const std::string& id) const;

  /// New walk in the Idle state with the walker at the map centroid.
  std::string create_walk(const std::string& map_id, std::optional<ReaderModel> reader = {});

  /// Throws UnknownWalk, BadSymbol.  `cues` holds only this event's cues.
  WalkSnapshot post_key(const std::string& walk_id, char symbol);

  /// Moves the walker (clamped to the room), then feeds any detected tag as a scan.
  WalkSnapshot post_move(const std::string& walk_id, Move move);

  /**
   * Snapshot with every cue newer than `since`.  When nothing newer exists,
   * waits up to `wait` for the next event.
   */
  WalkSnapshot get_state(const std::string& walk_id, std::uint64_t since,
                         std::chrono::milliseconds wait = std::chrono::milliseconds{0});

  /// The walk's session transcript.
  std::vector<TranscriptEntry> transcript(const std::string& walk_id);

private:
  struct Walk {
    Walk(std::string id, std::shared_ptr<const RoomMap> m, ReaderModel reader);

    std::string id;
    std::shared_ptr<const RoomMap> map;
    NavSession session;
    ScanTrigger trigger;
    Vec2 position;
    std::uint64_t seq = 0;
    std::vector<WireCue> log;
    std::chrono::steady_clock::time_point started;

    std::mutex mutex;
    std::condition_variable changed;
  };

  std::shared_ptr<Walk> walk(const std::string& id) const;
  static WalkSnapshot snapshot(const Walk& w, std::uint64_t since);
  static std::vector<WireCue> record(Walk& w, const std::vector<Cue>& cues);

  mutable std::shared_mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<const RoomMap>> maps_;
  std::map<std::string, std::shared_ptr<Walk>> walks_;
  std::uint64_t next_walk_ = 1;
};

}  // namespace hexnav
