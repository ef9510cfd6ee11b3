#include "hexnav/cli.hpp"

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "hexnav/http_api.hpp"
#include "hexnav/json_io.hpp"
#include "hexnav/map.hpp"
#include "hexnav/routing.hpp"
#include "hexnav/service.hpp"
#include "hexnav/session.hpp"
#include "hexnav/simulator.hpp"

#ifndef HEXNAV_DATA_DIR
#define HEXNAV_DATA_DIR "data"
#endif

namespace hexnav::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string resolve_map_path(const std::string& arg) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) return arg;
  std::vector<fs::path> dirs;
  if (const char* env = std::getenv("HEXNAV_MAP_DIR"); env != nullptr && *env != '\0') {
    dirs.emplace_back(env);
  }
  dirs.emplace_back(HEXNAV_DATA_DIR);
  for (const auto& dir : dirs) {
    for (const auto& candidate : {dir / arg, dir / (arg + ".map.json")}) {
      if (fs::is_regular_file(candidate, ec)) return candidate.string();
    }
  }
  return arg;
}

namespace {

// Thrown inside a command to leave with a specific exit code.
struct Exit {
  int code;
};

std::string read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read '" << path << "'\n";
    throw Exit{kExitUsage};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RoomMap open_map(const std::string& arg, std::ostream& err) {
  const std::string path = resolve_map_path(arg);
  const std::string text = read_file(path, err);
  try {
    return load_map(text);
  } catch (const ParseError& e) {
    err << "error: " << path << ": " << e.what() << "\n";
    throw Exit{kExitUsage};
  } catch (const ValidationError& e) {
    err << "error: " << path << ": " << e.what() << "\n";
    throw Exit{kExitFailure};
  }
}

TagId resolve_tag(const RoomMap& map, const std::string& name, std::ostream& err) {
  if (const TagNode* n = map.find_by_name(name)) return n->id;
  if (!name.empty() && name.find_first_not_of("0123456789") == std::string::npos &&
      name.size() <= 9) {
    const auto id = static_cast<TagId>(std::stoul(name));
    if (map.contains(id)) return id;
  }
  err << "error: unknown tag '" << name << "' in map '" << map.name() << "'\n";
  throw Exit{kExitFailure};
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

void write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) {
    err << "error: cannot write '" << path << "'\n";
    throw Exit{kExitUsage};
  }
}

int cmd_validate(const std::string& arg, std::ostream& out, std::ostream& err) {
  const std::string path = resolve_map_path(arg);
  const std::string text = read_file(path, err);
  try {
    const RoomMap map = load_map(text);
    out << "OK, " << map.nodes().size() << " nodes\n";
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << path << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    out << e.violations().size() << " violation(s)\n";
    for (const Violation& v : e.violations()) {
      out << to_string(v.kind) << " at " << v.where << ": " << v.message << "\n";
    }
    return kExitFailure;
  }
}

int cmd_route(const std::string& arg, const std::string& from, const std::string& to,
              std::ostream& out, std::ostream& err) {
  const RoomMap map = open_map(arg, err);
  const TagId src = resolve_tag(map, from, err);
  const TagId dst = resolve_tag(map, to, err);
  PathResult route;
  try {
    route = shortest_path(map, src, dst);
  } catch (const Unreachable& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  out << "path:";
  for (TagId id : route.nodes) out << ' ' << map.node(id).name;
  out << "\ncost: " << route.cost << "\n";
  // A compliant user already faces the first hop when guidance starts.
  HexDirection heading = route.nodes.size() > 1
                             ? direction_between(map, route.nodes[0], route.nodes[1])
                             : HexDirection::N;
  for (std::size_t i = 0; i < route.nodes.size(); ++i) {
    if (i > 0) heading = infer_heading(map, route.nodes[i - 1], route.nodes[i]);
    const Instruction ins = plan_instruction(map, route.nodes[i], heading, dst);
    out << map.node(route.nodes[i]).name << ": " << ins.cue_text() << "\n";
  }
  return kExitOk;
}

struct SimulateOptions {
  std::string map = "clinic";
  std::string from = "A";
  std::string to = "Q";
  int trials = 1;
  std::uint64_t seed = 0;
  double compliance = 1.0;
  double speed = WalkerModel{}.walk_speed_mps;
  double pause = WalkerModel{}.pause_s;
  int step_cap = 0;
  std::string format = "csv";
  std::string aggregate_path;
  std::string transcript_path;
};

ojson aggregate_json(const BatchAggregate& a) {
  return {{"trials", a.trials},
          {"arrival_rate", a.arrival_rate},
          {"mean_elapsed_s", a.mean_elapsed_s},
          {"stddev_elapsed_s", a.stddev_elapsed_s},
          {"mean_hops", a.mean_hops},
          {"stddev_hops", a.stddev_hops},
          {"mean_detour_factor", a.mean_detour_factor}};
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  const RoomMap map = open_map(opt.map, err);
  TrialScenario scenario;
  scenario.map = &map;
  scenario.src = resolve_tag(map, opt.from, err);
  scenario.dst = resolve_tag(map, opt.to, err);
  scenario.walker.compliance = opt.compliance;
  scenario.walker.walk_speed_mps = opt.speed;
  scenario.walker.pause_s = opt.pause;
  scenario.step_cap = opt.step_cap;
  if (scenario.step_cap == 0) {
    scenario.step_cap = std::max(10, 10 * shortest_path(map, scenario.src, scenario.dst).cost);
  }

  const BatchResult batch = run_batch(scenario, opt.trials, opt.seed);
  if (opt.format == "json") {
    ojson trials = ojson::array();
    for (const TrialRecord& r : batch.records) {
      trials.push_back({{"trial", r.trial},
                        {"seed", r.seed},
                        {"arrived", r.arrived},
                        {"elapsed_s", r.elapsed_s},
                        {"hops", r.hops},
                        {"distance_m", r.distance_m},
                        {"scans", r.scans}});
    }
    out << ojson{{"trials", std::move(trials)}, {"aggregate", aggregate_json(batch.aggregate)}}
               .dump(2)
        << "\n";
  } else {
    out << "trial,seed,arrived,elapsed_s,hops,distance_m,scans\n";
    for (const TrialRecord& r : batch.records) {
      out << r.trial << ',' << r.seed << ',' << (r.arrived ? 1 : 0) << ','
          << fixed(r.elapsed_s, 3) << ',' << r.hops << ',' << fixed(r.distance_m, 4) << ','
          << r.scans << "\n";
    }
  }
  if (!opt.aggregate_path.empty()) {
    write_file(opt.aggregate_path, aggregate_json(batch.aggregate).dump(2) + "\n", err);
  }
  if (!opt.transcript_path.empty()) {
    WalkerModel walker = scenario.walker;
    walker.seed = opt.seed;
    const TrialResult first =
        run_trial(map, scenario.src, scenario.dst, walker, scenario.reader, scenario.step_cap);
    write_file(opt.transcript_path, transcript_to_jsonl(first.transcript), err);
  }
  return kExitOk;
}

int cmd_energy(const PowerProfile& profile, double hours, std::ostream& out, std::ostream& err) {
  try {
    out << fixed(energy_consumption(profile, hours), 2) << " Wh\n";
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_replay(const std::string& path, const std::string& map_arg, std::ostream& out,
               std::ostream& err) {
  const RoomMap map = open_map(map_arg, err);
  const std::string text = read_file(path, err);
  std::istringstream lines(text);
  std::string line;
  NavSession session(map);
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    TranscriptEntry recorded;
    try {
      recorded = parse_transcript_jsonl(line).at(0);
    } catch (const Error& e) {
      err << "error: " << path << ": " << e.what() << "\n";
      return kExitUsage;
    }
    try {
      session.handle_event(recorded.event, recorded.at_s);
    } catch (const Error& e) {
      err << "mismatch at seq " << recorded.seq << ": " << e.what() << "\n";
      return kExitFailure;
    }
    ++count;
    const std::string reproduced = transcript_line(session.transcript().back());
    if (reproduced != line) {
      err << "mismatch at seq " << recorded.seq << "\n  recorded:   " << line
          << "\n  reproduced: " << reproduced << "\n";
      return kExitFailure;
    }
  }
  out << "OK, " << count << " events reproduced\n";
  return kExitOk;
}

int cmd_serve(const std::string& host, int port, const std::vector<std::string>& maps,
              std::ostream& err, const Hooks& hooks) {
  WalkService service;
  for (const auto& m : maps) service.add_map(open_map(m, err));
  httplib::Server server;
  install_routes(server, service);
  // Refuse ports another process is already listening on.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  const int bound = port == 0 ? server.bind_to_any_port(host)
                              : (server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    err << "error: cannot bind " << host << ":" << port << "\n";
    return kExitFailure;
  }
  err << "serving on http://" << host << ":" << bound << "\n";
  if (hooks.on_serving) hooks.on_serving(server, bound);
  return server.listen_after_bind() ? kExitOk : kExitFailure;
}

void banner(std::ostream& err) {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  err << "hexnav " << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Hooks& hooks) {
  CLI::App app{"RFID floor-tag wayfinding: routing, guidance and simulation", "hexnav"};
  app.require_subcommand(1);
  bool no_banner = false;
  app.add_flag("--no-banner", no_banner, "Suppress the timestamp header");

  std::string map_arg;

  auto* validate = app.add_subcommand("validate", "Check a map file");
  validate->add_option("map", map_arg, "Map file or bundled map name")->required();

  std::string from, to;
  auto* route = app.add_subcommand("route", "Print the route and the cues a compliant user hears");
  route->add_option("map", map_arg, "Map file or bundled map name")->required();
  route->add_option("--from", from, "Start tag (name or id)")->required();
  route->add_option("--to", to, "Destination tag (name or id)")->required();

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run seeded walking trials");
  simulate->add_option("map", sim.map, "Map file or bundled map name")->capture_default_str();
  simulate->add_option("--from", sim.from, "Start tag")->capture_default_str();
  simulate->add_option("--to", sim.to, "Destination tag")->capture_default_str();
  simulate->add_option("--trials", sim.trials, "Number of trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Seed of trial 0")->capture_default_str();
  simulate->add_option("--compliance", sim.compliance, "Probability of following a cue")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  simulate->add_option("--speed", sim.speed, "Walking speed, m/s")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--pause", sim.pause, "Wait after each scan, s")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  simulate->add_option("--step-cap", sim.step_cap, "Hop limit (default 10x the optimal route)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--format", sim.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  simulate->add_option("--aggregate", sim.aggregate_path, "Write the aggregate JSON here");
  simulate->add_option("--transcript", sim.transcript_path,
                       "Write the transcript of trial 0 (JSON lines) here");

  PowerProfile profile;
  double hours = 24.0;
  auto* energy = app.add_subcommand("energy", "Energy drawn over a period");
  energy->add_option("--idle-w", profile.idle_w, "Idle power, W")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  energy->add_option("--active-w", profile.active_w, "Active power, W")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  energy->add_option("--idle-frac", profile.idle_fraction, "Fraction of time idle")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  energy->add_option("--hours", hours, "Duration, h")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  std::string host = "127.0.0.1";
  int port = 8080;
  std::vector<std::string> serve_maps;
  auto* serve = app.add_subcommand("serve", "Serve the walk API");
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "TCP port (0 picks a free one)")->check(CLI::Range(0, 65535))->capture_default_str();
  serve->add_option("--map", serve_maps, "Maps to load (default: clinic)");

  std::string transcript_path;
  std::string replay_map = "clinic";
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a transcript and compare it");
  replay_cmd->add_option("transcript", transcript_path, "Transcript file (JSON lines)")
      ->required();
  replay_cmd->add_option("--map", replay_map, "Map the transcript was recorded on")
      ->capture_default_str();

  std::vector<const char*> argv{"hexnav"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (app.get_subcommands().size() == 1) err << "Run with --help for usage.\n";
    return kExitUsage;
  }

  if (!no_banner) banner(err);
  try {
    if (*validate) return cmd_validate(map_arg, out, err);
    if (*route) return cmd_route(map_arg, from, to, out, err);
    if (*simulate) return cmd_simulate(sim, out, err);
    if (*energy) return cmd_energy(profile, hours, out, err);
    if (*serve) {
      if (serve_maps.empty()) serve_maps.push_back("clinic");
      return cmd_serve(host, port, serve_maps, err, hooks);
    }
    if (*replay_cmd) return cmd_replay(transcript_path, replay_map, out, err);
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace hexnav::cli
