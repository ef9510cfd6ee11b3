#pragma once

#include <chrono>

namespace httplib {
class Server;
}

namespace hexnav {

class WalkService;

/// Longest long-poll wait a client may request.
inline constexpr std::chrono::milliseconds kMaxPollWait{30000};

/**
 * JSON-over-HTTP surface of a WalkService:
 *
 *   GET  /maps                 ids and sizes of loaded maps
 *   GET  /maps/{id}            map-file payload
 *   POST /walks                {"map_id", "reader"?}  -> {"walk_id"}
 *   POST /walks/{id}/keys      {"symbol"}
 *   POST /walks/{id}/moves     {"direction"} or {"dx_m", "dy_m"}
 *   GET  /walks/{id}?since=n&wait_ms=t
 *
 * Unknown resources answer 404, invalid symbols, directions or bodies 422.
 */
void install_routes(httplib::Server& server, WalkService& service);

}  // namespace hexnav
