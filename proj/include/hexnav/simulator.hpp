#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hexnav/direction.hpp"
#include "hexnav/map.hpp"
#include "hexnav/routing.hpp"
#include "hexnav/session.hpp"

namespace hexnav {

/// Tag reader geometry.  At height 0 the reader sees a disc of radius range_m.
struct ReaderModel {
  double range_m = 0.05;
  double half_angle_deg = 60.0;
  double height_m = 0.0;
  double gain_dbi = 5.5;  // recorded only

  /// Throws DomainError when the invariants do not hold.
  void validate() const;
  double effective_radius() const;
};

/// Nearest tag within the reader's effective radius; ties go to the smaller id.
std::optional<TagId> detect(const ReaderModel& reader, Vec2 pos, const RoomMap& map);

/**
 * Edge-triggered wrapper around `detect`: a tag is reported once when the
 * reader comes over it and not again until the reader has left its radius.
 */
class ScanTrigger {
public:
  explicit ScanTrigger(ReaderModel reader) : reader_(reader) {}

  std::optional<TagId> update(Vec2 pos, const RoomMap& map);
  void reset() { dwelling_.reset(); }

private:
  ReaderModel reader_;
  std::optional<TagId> dwelling_;
};

struct WalkerModel {
  Vec2 pos;
  double walk_speed_mps = 0.0627;
  double compliance = 1.0;
  std::uint64_t seed = 0;
  double pause_s = 1.5;

  void validate() const;
};

/// Deterministic generator for walker decisions; portable across standard libraries.
class WalkerRng {
public:
  explicit WalkerRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [0, n).
  std::size_t below(std::size_t n);

private:
  std::mt19937_64 engine_;
};

/**
 * The walker's next hop from `current`.  With probability `compliance` it is
 * the instructed bearing; otherwise one of the other existing neighbour
 * bearings, uniformly.  Throws NoNeighbors for an isolated tag.
 */
HexDirection step_compliant_move(const WalkerModel& walker, WalkerRng& rng, Instruction cue,
                                 const RoomMap& map, TagId current, HexDirection heading);

struct TrialResult {
  bool arrived = false;
  double elapsed_s = 0.0;
  int scans = 0;
  int hops = 0;
  std::vector<TagId> path;  // tags stood on, in order
  double distance_m = 0.0;
  std::vector<TranscriptEntry> transcript;
};

/**
 * One simulated walk from src to dst.  The walker keys in the destination,
 * steps onto a neighbour to establish a heading, and then hops tag to tag,
 * pausing after every scan for the cue, until it arrives or has made
 * `step_cap` hops.  Keypad time is not counted.
 */
TrialResult run_trial(const RoomMap& map, TagId src, TagId dst, const WalkerModel& walker,
                      const ReaderModel& reader, int step_cap);

struct TrialScenario {
  const RoomMap* map = nullptr;
  TagId src = 0;
  TagId dst = 0;
  WalkerModel walker;
  ReaderModel reader;
  int step_cap = 0;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  bool arrived = false;
  double elapsed_s = 0.0;
  int hops = 0;
  double distance_m = 0.0;
  int scans = 0;
};

struct BatchAggregate {
  int trials = 0;
  double arrival_rate = 0.0;
  double mean_elapsed_s = 0.0;
  double stddev_elapsed_s = 0.0;
  double mean_hops = 0.0;
  double stddev_hops = 0.0;
  // distance walked over shortest-route length, averaged over arrived trials
  double mean_detour_factor = 0.0;
};

struct BatchResult {
  std::vector<TrialRecord> records;
  BatchAggregate aggregate;
};

/// Trial i runs with seed base_seed + i.  Standard deviations are population values.
BatchResult run_batch(const TrialScenario& scenario, int trials, std::uint64_t base_seed);

BatchAggregate aggregate(const std::vector<TrialRecord>& records, double optimal_distance_m);

struct PowerProfile {
  double idle_w = 2.85;
  double active_w = 3.25;
  double idle_fraction = 0.6;

  void validate() const;
  double mean_power_w() const { return idle_fraction * idle_w + (1.0 - idle_fraction) * active_w; }
};

/// Watt-hours drawn over `duration_h`.  Throws DomainError for negative durations.
double energy_consumption(const PowerProfile& profile, double duration_h);

/// Hours a battery lasts at the profile's mean draw.
double battery_runtime(const PowerProfile& profile, double capacity_mah, double cell_voltage_v,
                       double conversion_efficiency);

}  // namespace hexnav
