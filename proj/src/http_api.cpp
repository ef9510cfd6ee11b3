#include "hexnav/http_api.hpp"

#include <algorithm>

#include <httplib.h>
#include <json.hpp>

#include "hexnav/json_io.hpp"
#include "hexnav/service.hpp"

namespace hexnav {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kJson = "application/json";

ojson wire_cue(const WireCue& c) {
  ojson j = {{"seq", c.seq}, {"kind", std::string(to_string(c.kind))}, {"text", c.text}};
  if (c.at_tag) j["at_tag"] = *c.at_tag;
  return j;
}

ojson snapshot_json(const WalkSnapshot& s) {
  ojson cues = ojson::array();
  for (const WireCue& c : s.cues) cues.push_back(wire_cue(c));
  ojson j = {{"walk_id", s.walk_id},
             {"map_id", s.map_id},
             {"seq", s.seq},
             {"state", state_to_json(s.state)},
             {"position", {{"x_m", s.position.x}, {"y_m", s.position.y}}},
             {"cues", std::move(cues)}};
  if (s.scanned) j["scanned"] = *s.scanned;
  return j;
}

void reply(httplib::Response& res, int status, const ojson& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void fail(httplib::Response& res, int status, const std::string& message) {
  reply(res, status, {{"error", message}});
}

// Runs a handler, mapping library errors onto status codes.
template <typename F>
void guarded(httplib::Response& res, F&& handler) {
  try {
    handler();
  } catch (const UnknownMap& e) {
    fail(res, 404, e.what());
  } catch (const UnknownWalk& e) {
    fail(res, 404, e.what());
  } catch (const BadSymbol& e) {
    fail(res, 422, e.what());
  } catch (const Error& e) {
    fail(res, 422, e.what());
  } catch (const ojson::exception& e) {
    fail(res, 422, std::string("bad request body: ") + e.what());
  }
}

ojson parse_body(const httplib::Request& req) {
  ojson body = ojson::parse(req.body);
  if (!body.is_object()) throw ParseError("request body must be a JSON object");
  return body;
}

ReaderModel reader_from(const ojson& j) {
  ReaderModel r;
  r.range_m = j.value("range_m", r.range_m);
  r.half_angle_deg = j.value("half_angle_deg", r.half_angle_deg);
  r.height_m = j.value("height_m", r.height_m);
  r.gain_dbi = j.value("gain_dbi", r.gain_dbi);
  return r;
}

}  // namespace

void install_routes(httplib::Server& server, WalkService& service) {
  server.Get("/maps", [&service](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      ojson maps = ojson::array();
      for (const auto& id : service.map_ids()) {
        const auto m = service.map(id);
        maps.push_back({{"id", id}, {"nodes", m->nodes().size()}, {"edges", m->edges().size()}});
      }
      reply(res, 200, {{"maps", std::move(maps)}});
    });
  });

  server.Get(R"(/maps/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto m = service.map(req.matches[1]);
      res.status = 200;
      res.set_content(serialize_map(*m), kJson);
    });
  });

  server.Post("/walks", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const ojson body = parse_body(req);
      std::optional<ReaderModel> reader;
      if (body.contains("reader")) reader = reader_from(body.at("reader"));
      const auto id = service.create_walk(body.at("map_id").get<std::string>(), reader);
      reply(res, 200, {{"walk_id", id}});
    });
  });

  server.Post(R"(/walks/([^/]+)/keys)",
              [&service](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  const ojson body = parse_body(req);
                  const auto symbol = body.at("symbol").get<std::string>();
                  if (symbol.size() != 1) throw BadSymbol("symbol must be one character");
                  reply(res, 200, snapshot_json(service.post_key(req.matches[1], symbol[0])));
                });
              });

  server.Post(R"(/walks/([^/]+)/moves)",
              [&service](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  const ojson body = parse_body(req);
                  Move move;
                  if (body.contains("direction")) {
                    const auto d = parse_direction(body.at("direction").get<std::string>());
                    if (!d) throw DomainError("unknown direction");
                    move = *d;
                  } else {
                    move = Vec2{body.at("dx_m").get<double>(), body.at("dy_m").get<double>()};
                  }
                  reply(res, 200, snapshot_json(service.post_move(req.matches[1], move)));
                });
              });

  server.Get(R"(/walks/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      std::uint64_t since = 0;
      std::chrono::milliseconds wait{0};
      try {
        if (req.has_param("since")) since = std::stoull(req.get_param_value("since"));
        if (req.has_param("wait_ms")) {
          wait = std::min(kMaxPollWait,
                          std::chrono::milliseconds{std::stoll(req.get_param_value("wait_ms"))});
        }
      } catch (const std::exception&) {
        throw DomainError("bad query parameter");
      }
      reply(res, 200, snapshot_json(service.get_state(req.matches[1], since, wait)));
    });
  });
}

}  // namespace hexnav
