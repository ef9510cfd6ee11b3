#include "hexnav/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hexnav {

void ReaderModel::validate() const {
  if (!(range_m > 0.0)) throw DomainError("reader range must be positive");
  if (!(half_angle_deg > 0.0 && half_angle_deg <= 90.0)) {
    throw DomainError("reader half-angle must be in (0, 90] degrees");
  }
  if (!(height_m >= 0.0)) throw DomainError("reader height must be non-negative");
}

double ReaderModel::effective_radius() const {
  if (height_m > 0.0) {
    return std::min(range_m, height_m * std::tan(half_angle_deg * std::numbers::pi / 180.0));
  }
  return range_m;
}

std::optional<TagId> detect(const ReaderModel& reader, Vec2 pos, const RoomMap& map) {
  const double radius = reader.effective_radius();
  std::optional<TagId> best;
  double best_d = 0.0;
  for (const TagNode& n : map.nodes()) {
    const double d = distance(pos, n.pos);
    if (d > radius) continue;
    if (!best || d < best_d || (d == best_d && n.id < *best)) {
      best = n.id;
      best_d = d;
    }
  }
  return best;
}

std::optional<TagId> ScanTrigger::update(Vec2 pos, const RoomMap& map) {
  const auto seen = detect(reader_, pos, map);
  if (seen == dwelling_) return std::nullopt;
  dwelling_ = seen;
  return seen;
}

void WalkerModel::validate() const {
  if (!(walk_speed_mps > 0.0)) throw DomainError("walking speed must be positive");
  if (!(compliance >= 0.0 && compliance <= 1.0)) throw DomainError("compliance must be in [0, 1]");
  if (!(pause_s >= 0.0)) throw DomainError("pause must be non-negative");
}

double WalkerRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t WalkerRng::below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

HexDirection step_compliant_move(const WalkerModel& walker, WalkerRng& rng, Instruction cue,
                                 const RoomMap& map, TagId current, HexDirection heading) {
  const auto around = neighbors(map, current);
  if (around.empty()) {
    throw NoNeighbors("tag " + std::to_string(current) + " has no neighbours");
  }
  const HexDirection wanted = instructed_direction(heading, cue);
  const bool available = std::any_of(around.begin(), around.end(),
                                     [&](const Neighbor& n) { return n.direction == wanted; });
  const bool comply = rng.uniform() < walker.compliance;
  if (available && comply) return wanted;

  std::vector<HexDirection> others;
  for (const Neighbor& n : around) {
    if (n.direction != wanted) others.push_back(n.direction);
  }
  if (others.empty()) return wanted;
  return others[rng.below(others.size())];
}

namespace {

TagId neighbor_in(const RoomMap& map, TagId from, HexDirection dir) {
  for (const Neighbor& n : neighbors(map, from)) {
    if (n.direction == dir) return n.id;
  }
  throw NotAdjacent("no neighbour of tag " + std::to_string(from) + " towards " +
                    std::string(to_string(dir)));
}

class Trial {
public:
  Trial(const RoomMap& map, TagId dst, const WalkerModel& walker, const ReaderModel& reader)
      : map_(map),
        dst_(dst),
        walker_(walker),
        rng_(walker.seed),
        trigger_(reader),
        reader_radius_(reader.effective_radius()),
        session_(map) {}

  TrialResult run(TagId src, int step_cap) {
    const std::string digits = std::to_string(dst_);
    for (char c : digits) session_.handle_event(SessionEvent::key(c), 0.0);
    session_.handle_event(SessionEvent::key('#'), 0.0);

    pos_ = map_.node(src).pos;
    standing_ = src;
    observe(pos_, 0.0);
    settle();

    while (!arrived() && result_.hops < step_cap) {
      const TagId next = neighbor_in(map_, standing_, choose());
      hop(next);
    }
    result_.arrived = arrived();
    result_.transcript = session_.transcript();
    return std::move(result_);
  }

private:
  bool arrived() const { return std::holds_alternative<phase::Arrived>(session_.state()); }

  HexDirection choose() {
    if (const auto* nav = std::get_if<phase::Navigating>(&session_.state());
        nav != nullptr && nav->current == standing_ && session_.last_instruction()) {
      return step_compliant_move(walker_, rng_, *session_.last_instruction(), map_, standing_,
                                 nav->heading);
    }
    // No heading yet: a compliant walker steps onto the first hop of the
    // route, anyone else onto some other neighbour.
    const PathResult route = shortest_path(map_, standing_, dst_);
    const HexDirection first = direction_between(map_, standing_, route.nodes[1]);
    return step_compliant_move(walker_, rng_, instruction_for(0, false), map_, standing_, first);
  }

  void hop(TagId next) {
    const Vec2 from = pos_;
    const Vec2 to = map_.node(next).pos;
    const double length = distance(from, to);
    const double duration = length / walker_.walk_speed_mps;
    // Sample finely enough that the reader cannot skip over a tag.
    const double step = std::max(reader_radius_ / 4.0, 1e-3);
    const int samples = std::max(1, static_cast<int>(std::ceil(length / step)));
    const double start = clock_;
    for (int i = 1; i <= samples; ++i) {
      const double f = static_cast<double>(i) / samples;
      observe(from + f * (to - from), start + f * duration);
    }
    pos_ = to;
    standing_ = next;
    clock_ = start + duration;
    ++result_.hops;
    result_.distance_m += length;
    settle();
  }

  void observe(Vec2 p, double at_s) {
    if (const auto tag = trigger_.update(p, map_)) {
      session_.handle_event(SessionEvent::scan(*tag), at_s);
      result_.path.push_back(*tag);
      ++result_.scans;
      ++pending_pauses_;
    }
  }

  // The walker waits out the cue of every scan made on the way in.
  void settle() {
    clock_ += pending_pauses_ * walker_.pause_s;
    pending_pauses_ = 0;
    result_.elapsed_s = clock_;
  }

  const RoomMap& map_;
  TagId dst_;
  WalkerModel walker_;
  WalkerRng rng_;
  ScanTrigger trigger_;
  double reader_radius_ = 0.0;
  NavSession session_;
  TrialResult result_;
  Vec2 pos_;
  TagId standing_ = 0;
  double clock_ = 0.0;
  int pending_pauses_ = 0;
};

}  // namespace

TrialResult run_trial(const RoomMap& map, TagId src, TagId dst, const WalkerModel& walker,
                      const ReaderModel& reader, int step_cap) {
  walker.validate();
  reader.validate();
  if (step_cap <= 0) throw DomainError("step cap must be positive");
  map.node(src);
  map.node(dst);
  return Trial(map, dst, walker, reader).run(src, step_cap);
}

BatchAggregate aggregate(const std::vector<TrialRecord>& records, double optimal_distance_m) {
  BatchAggregate agg;
  agg.trials = static_cast<int>(records.size());
  if (records.empty()) return agg;
  const double n = static_cast<double>(records.size());
  int arrived = 0;
  double detour_sum = 0.0;
  for (const TrialRecord& r : records) {
    agg.mean_elapsed_s += r.elapsed_s;
    agg.mean_hops += r.hops;
    if (r.arrived) {
      ++arrived;
      detour_sum += optimal_distance_m > 0.0 ? r.distance_m / optimal_distance_m : 1.0;
    }
  }
  agg.mean_elapsed_s /= n;
  agg.mean_hops /= n;
  for (const TrialRecord& r : records) {
    agg.stddev_elapsed_s += (r.elapsed_s - agg.mean_elapsed_s) * (r.elapsed_s - agg.mean_elapsed_s);
    agg.stddev_hops += (r.hops - agg.mean_hops) * (r.hops - agg.mean_hops);
  }
  agg.stddev_elapsed_s = std::sqrt(agg.stddev_elapsed_s / n);
  agg.stddev_hops = std::sqrt(agg.stddev_hops / n);
  agg.arrival_rate = arrived / n;
  agg.mean_detour_factor = arrived > 0 ? detour_sum / arrived : 0.0;
  return agg;
}

BatchResult run_batch(const TrialScenario& scenario, int trials, std::uint64_t base_seed) {
  if (scenario.map == nullptr) throw DomainError("scenario has no map");
  if (trials < 1) throw DomainError("at least one trial is required");
  const RoomMap& map = *scenario.map;

  const PathResult best = shortest_path(map, scenario.src, scenario.dst);
  double optimal = 0.0;
  for (std::size_t i = 1; i < best.nodes.size(); ++i) {
    optimal += distance(map.node(best.nodes[i - 1]).pos, map.node(best.nodes[i]).pos);
  }

  BatchResult out;
  out.records.reserve(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) {
    WalkerModel walker = scenario.walker;
    walker.seed = base_seed + static_cast<std::uint64_t>(i);
    const TrialResult r =
        run_trial(map, scenario.src, scenario.dst, walker, scenario.reader, scenario.step_cap);
    out.records.push_back(
        {i, walker.seed, r.arrived, r.elapsed_s, r.hops, r.distance_m, r.scans});
  }
  out.aggregate = aggregate(out.records, optimal);
  return out;
}

void PowerProfile::validate() const {
  if (!(idle_w > 0.0 && idle_w <= active_w)) {
    throw DomainError("power profile needs 0 < idle_w <= active_w");
  }
  if (!(idle_fraction >= 0.0 && idle_fraction <= 1.0)) {
    throw DomainError("idle fraction must be in [0, 1]");
  }
}

double energy_consumption(const PowerProfile& profile, double duration_h) {
  profile.validate();
  if (!(duration_h >= 0.0)) throw DomainError("duration must be non-negative");
  return duration_h * profile.mean_power_w();
}

double battery_runtime(const PowerProfile& profile, double capacity_mah, double cell_voltage_v,
                       double conversion_efficiency) {
  profile.validate();
  if (!(capacity_mah > 0.0)) throw DomainError("capacity must be positive");
  if (!(cell_voltage_v > 0.0)) throw DomainError("cell voltage must be positive");
  if (!(conversion_efficiency > 0.0 && conversion_efficiency <= 1.0)) {
    throw DomainError("conversion efficiency must be in (0, 1]");
  }
  const double usable_wh = capacity_mah / 1000.0 * cell_voltage_v * conversion_efficiency;
  return usable_wh / profile.mean_power_w();
}

}  // namespace hexnav
