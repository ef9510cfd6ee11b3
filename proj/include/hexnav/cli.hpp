#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace httplib {
class Server;
}

namespace hexnav::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation or routing failure, replay mismatch
inline constexpr int kExitUsage = 2;    // bad flags, unreadable or malformed input

struct Hooks {
  /// Called once `serve` is bound and about to accept connections.
  std::function<void(httplib::Server&, int port)> on_serving;
};

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Hooks& hooks = {});

/**
 * Finds a map file: `arg` itself if it exists, else `arg` or `arg.map.json`
 * under $HEXNAV_MAP_DIR and then the bundled data directory.  Returns `arg`
 * unchanged when nothing matches.
 */
std::string resolve_map_path(const std::string& arg);

}  // namespace hexnav::cli
