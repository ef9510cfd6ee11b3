#include "hexnav/service.hpp"

#include <algorithm>

namespace hexnav {

WalkService::Walk::Walk(std::string walk_id, std::shared_ptr<const RoomMap> m, ReaderModel reader)
    : id(std::move(walk_id)),
      map(std::move(m)),
      session(*map),
      trigger(reader),
      position(map->centroid()),
      started(std::chrono::steady_clock::now()) {}

void WalkService::add_map(RoomMap map) {
  std::unique_lock lock(registry_mutex_);
  auto shared = std::make_shared<const RoomMap>(std::move(map));
  maps_[shared->name()] = std::move(shared);
}

std::vector<std::string> WalkService::map_ids() const {
  std::shared_lock lock(registry_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : maps_) out.push_back(id);
  return out;
}

std::shared_ptr<const RoomMap> WalkService::map(const std::string& id) const {
  std::shared_lock lock(registry_mutex_);
  auto it = maps_.find(id);
  if (it == maps_.end()) throw UnknownMap("unknown map '" + id + "'");
  return it->second;
}

std::string WalkService::create_walk(const std::string& map_id, std::optional<ReaderModel> reader) {
  auto m = map(map_id);
  const ReaderModel r = reader.value_or(ReaderModel{});
  r.validate();
  std::unique_lock lock(registry_mutex_);
  std::string id = "w" + std::to_string(next_walk_++);
  walks_[id] = std::make_shared<Walk>(id, std::move(m), r);
  return id;
}

std::shared_ptr<WalkService::Walk> WalkService::walk(const std::string& id) const {
  std::shared_lock lock(registry_mutex_);
  auto it = walks_.find(id);
  if (it == walks_.end()) throw UnknownWalk("unknown walk '" + id + "'");
  return it->second;
}

WalkSnapshot WalkService::snapshot(const Walk& w, std::uint64_t since) {
  WalkSnapshot s;
  s.walk_id = w.id;
  s.map_id = w.map->name();
  s.seq = w.seq;
  s.state = w.session.state();
  s.position = w.position;
  auto first = std::find_if(w.log.begin(), w.log.end(),
                            [since](const WireCue& c) { return c.seq > since; });
  s.cues.assign(first, w.log.end());
  return s;
}

std::vector<WireCue> WalkService::record(Walk& w, const std::vector<Cue>& cues) {
  std::vector<WireCue> out;
  for (const Cue& c : cues) out.push_back({w.seq, c.kind, c.text, c.at_tag});
  w.log.insert(w.log.end(), out.begin(), out.end());
  return out;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

WalkSnapshot WalkService::post_key(const std::string& walk_id, char symbol) {
  const SessionEvent event = SessionEvent::key(symbol);
  auto w = walk(walk_id);
  std::unique_lock lock(w->mutex);
  const auto cues = w->session.handle_event(event, seconds_since(w->started));
  ++w->seq;
  WalkSnapshot s = snapshot(*w, w->seq);
  s.cues = record(*w, cues);
  w->changed.notify_all();
  return s;
}

WalkSnapshot WalkService::post_move(const std::string& walk_id, Move move) {
  auto w = walk(walk_id);
  std::unique_lock lock(w->mutex);
  const RoomMap& m = *w->map;
  const Vec2 delta = std::holds_alternative<HexDirection>(move)
                         ? m.spacing_m() * unit_vector(std::get<HexDirection>(move))
                         : std::get<Vec2>(move);
  const Vec2 target = w->position + delta;
  w->position = {std::clamp(target.x, 0.0, m.bounds().width_m),
                 std::clamp(target.y, 0.0, m.bounds().height_m)};

  ++w->seq;
  std::vector<Cue> cues;
  const auto scanned = w->trigger.update(w->position, m);
  if (scanned) {
    cues = w->session.handle_event(SessionEvent::scan(*scanned), seconds_since(w->started));
  }
  WalkSnapshot s = snapshot(*w, w->seq);
  s.cues = record(*w, cues);
  s.scanned = scanned;
  w->changed.notify_all();
  return s;
}

WalkSnapshot WalkService::get_state(const std::string& walk_id, std::uint64_t since,
                                    std::chrono::milliseconds wait) {
  auto w = walk(walk_id);
  std::unique_lock lock(w->mutex);
  if (wait.count() > 0) {
    w->changed.wait_for(lock, wait, [&] { return w->seq > since; });
  }
  return snapshot(*w, since);
}

std::vector<TranscriptEntry> WalkService::transcript(const std::string& walk_id) {
  auto w = walk(walk_id);
  std::unique_lock lock(w->mutex);
  return w->session.transcript();
}

}  // namespace hexnav
