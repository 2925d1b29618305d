#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <thread>

#include <CLI11.hpp>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include "riskocc/edge_service.hpp"
#include "riskocc/eval.hpp"
#include "riskocc/json_io.hpp"
#include "riskocc/render.hpp"

namespace fs = std::filesystem;
using namespace riskocc;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitPlanning = 3;
constexpr int kExitUsage = 64;

struct CommonOpts {
  std::string map_prior;
  std::string frames;
  std::string config;
  std::string out = ".";
};

AppConfig resolve_config(const CommonOpts& opts) {
  std::string path = opts.config;
  if (const char* env = std::getenv("RISKOCC_CONFIG"); env != nullptr && *env != '\0') {
    path = env;
  }
  if (path.empty()) return AppConfig{};
  return load_app_config(path);
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ParseError("write failed: " + path.string());
}

Point2 parse_xy(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) {
    throw ValidationError("expected X,Y but got '" + s + "'");
  }
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::string frame_name(const char* stem, std::size_t index, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%04zu.%s", stem, index, ext);
  return buf;
}

const Centerline& main_centerline(const MapPrior& prior) {
  if (prior.centerlines.empty()) {
    throw ValidationError("map prior has no centerlines; 'map' needs one");
  }
  const auto main = prior.centerlines.find("main");
  return main != prior.centerlines.end() ? main->second
                                         : prior.centerlines.begin()->second;
}

std::vector<SamplePoint> maneuver_samples(const ManeuverNodeSet& set,
                                          double resolution) {
  std::vector<SamplePoint> samples;
  for (std::size_t r = 0; r < set.rows.size(); ++r) {
    for (const ManeuverNode& n : set.rows[r]) {
      samples.push_back({static_cast<int>(r), n.col, n.position,
                         {static_cast<double>(r) * resolution, n.col * resolution}});
    }
  }
  return samples;
}

int cmd_map(const CommonOpts& opts, std::size_t frame_index,
            const std::vector<std::string>& formats) {
  const AppConfig cfg = resolve_config(opts);
  const MapPrior prior = load_map_prior(opts.map_prior);
  const auto frames = load_frames(opts.frames);
  if (frame_index >= frames.size()) {
    throw ValidationError("--frame " + std::to_string(frame_index) + " out of range (" +
                          std::to_string(frames.size()) + " frames)");
  }
  const auto samples =
      layout_samples(main_centerline(prior), cfg.road_half_width, cfg.resolution);
  const RiskGrid grid =
      compute_map(samples, frames[frame_index], prior.statics, cfg.risk, cfg.resolution);

  fs::create_directories(opts.out);
  for (const std::string& fmt : formats) {
    if (fmt == "csv") {
      write_file(fs::path(opts.out) / frame_name("grid", frame_index, "csv"),
                 grid_to_csv(grid));
    } else if (fmt == "pgm") {
      write_file(fs::path(opts.out) / frame_name("grid", frame_index, "pgm"),
                 grid_to_pgm(grid));
    } else if (fmt == "ppm") {
      write_file(fs::path(opts.out) / frame_name("grid", frame_index, "ppm"),
                 grid_to_ppm(grid));
    } else {
      throw ValidationError("unknown format '" + fmt + "'");
    }
  }
  return 0;
}

int cmd_plan(const CommonOpts& opts, std::size_t frame_index, const std::string& maneuver,
             const std::string& icv, const std::string& strategy) {
  AppConfig cfg = resolve_config(opts);
  if (strategy == "global") cfg.planner.strategy = SearchStrategy::global;
  else if (strategy == "local") cfg.planner.strategy = SearchStrategy::local;
  else throw ValidationError("--strategy must be local or global");

  const MapPrior prior = load_map_prior(opts.map_prior);
  const auto frames = load_frames(opts.frames);
  if (frame_index >= frames.size()) {
    throw ValidationError("--frame out of range");
  }
  const Maneuver m = maneuver_from_string(maneuver);
  const auto set_it = prior.maneuver_sets.find(m);
  if (set_it == prior.maneuver_sets.end()) {
    throw ValidationError(std::string("map prior has no ") + maneuver + " maneuver set");
  }

  // inside the intersection the preset node set is the sample set
  const auto samples = maneuver_samples(set_it->second, cfg.resolution);
  const RiskGrid grid =
      compute_map(samples, frames[frame_index], prior.statics, cfg.risk, cfg.resolution);
  const FreeNodeSet free_set =
      collision_free(set_it->second, grid, cfg.planner.risk_threshold);
  const PlannedPath path =
      plan(free_set, parse_xy(icv), set_it->second.dest, cfg.planner);

  fs::create_directories(opts.out);
  write_file(fs::path(opts.out) / frame_name("path", frame_index, "json"),
             path_to_json(path).dump(2) + "\n");
  write_file(fs::path(opts.out) / frame_name("overlay", frame_index, "ppm"),
             grid_to_ppm_overlay(grid, path));
  return 0;
}

int cmd_replay(const CommonOpts& opts, const std::string& range,
               const std::string& maneuver, const std::string& icv, int threads) {
  const AppConfig cfg = resolve_config(opts);
  const MapPrior prior = load_map_prior(opts.map_prior);
  auto frames = load_frames(opts.frames);

  std::size_t begin = 0, end = frames.size();
  if (!range.empty()) {
    const auto colon = range.find(':');
    if (colon == std::string::npos) throw ValidationError("--range must be A:B");
    begin = std::stoul(range.substr(0, colon));
    end = std::min<std::size_t>(std::stoul(range.substr(colon + 1)), frames.size());
    if (begin >= end) throw ValidationError("--range is empty");
  }

  const ManeuverNodeSet* set = nullptr;
  if (!maneuver.empty()) {
    const auto it = prior.maneuver_sets.find(maneuver_from_string(maneuver));
    if (it == prior.maneuver_sets.end()) {
      throw ValidationError("map prior has no " + maneuver + " maneuver set");
    }
    set = &it->second;
  }
  const auto samples = set != nullptr
                           ? maneuver_samples(*set, cfg.resolution)
                           : layout_samples(main_centerline(prior), cfg.road_half_width,
                                            cfg.resolution);

  std::vector<double> millis(end - begin, 0.0);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(std::max(threads, 1)));
  fs::create_directories(opts.out);

  auto work = [&](int worker, int stride) {
    try {
      for (std::size_t i = begin + static_cast<std::size_t>(worker); i < end;
           i += static_cast<std::size_t>(stride)) {
        const auto t_start = std::chrono::steady_clock::now();
        const RiskGrid grid =
            compute_map(samples, frames[i], prior.statics, cfg.risk, cfg.resolution);
        // fixed scale keeps frames comparable across the replay
        write_file(fs::path(opts.out) / frame_name("grid", i, "csv"), grid_to_csv(grid));
        write_file(fs::path(opts.out) / frame_name("grid", i, "pgm"),
                   grid_to_pgm(grid, /*fixed_scale=*/true));
        if (set != nullptr) {
          const FreeNodeSet free_set =
              collision_free(*set, grid, cfg.planner.risk_threshold);
          const PlannedPath path =
              plan(free_set, parse_xy(icv), set->dest, cfg.planner);
          write_file(fs::path(opts.out) / frame_name("path", i, "json"),
                     path_to_json(path).dump(2) + "\n");
          write_file(fs::path(opts.out) / frame_name("overlay", i, "ppm"),
                     grid_to_ppm_overlay(grid, path, /*fixed_scale=*/true));
        }
        const auto t_end = std::chrono::steady_clock::now();
        millis[i - begin] =
            std::chrono::duration<double, std::milli>(t_end - t_start).count();
      }
    } catch (...) {
      errors[static_cast<std::size_t>(worker)] = std::current_exception();
    }
  };

  const int n = std::max(threads, 1);
  if (n == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n; ++w) pool.emplace_back(work, w, n);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // timing goes to stdout only; the files on disk stay byte-deterministic
  std::vector<double> sorted = millis;
  std::sort(sorted.begin(), sorted.end());
  const double mean =
      std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
  const double p95 = sorted[static_cast<std::size_t>(
      std::min(sorted.size() - 1, static_cast<std::size_t>(0.95 * sorted.size())))];
  std::printf("frames: %zu\nmean ms/frame: %.3f\np95 ms/frame: %.3f\n", sorted.size(),
              mean, p95);
  return 0;
}

int serve_pipe(EdgeService& service) {
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    if (auto reply = service.process_line(line)) {
      std::cout << *reply << "\n" << std::flush;
    }
  }
  return 0;
}

int serve_tcp(EdgeService& service, const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw ValidationError("--listen must be HOST:PORT");
  const std::string host = listen.substr(0, colon);
  const int port = std::stoi(listen.substr(colon + 1));

  const int server = ::socket(AF_INET, SOCK_STREAM, 0);
  if (server < 0) throw ParseError("socket() failed");
  const int one = 1;
  ::setsockopt(server, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(server);
    throw ValidationError("cannot parse listen host '" + host + "'");
  }
  if (::bind(server, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(server, 4) != 0) {
    ::close(server);
    throw ParseError("cannot bind/listen on " + listen);
  }
  std::cerr << "listening on " << listen << "\n";

  for (;;) {
    const int client = ::accept(server, nullptr, nullptr);
    if (client < 0) break;
    std::string buffer;
    char chunk[4096];
    ssize_t n;
    while ((n = ::read(client, chunk, sizeof(chunk))) > 0) {
      buffer.append(chunk, static_cast<std::size_t>(n));
      std::size_t pos;
      while ((pos = buffer.find('\n')) != std::string::npos) {
        const std::string line = buffer.substr(0, pos);
        buffer.erase(0, pos + 1);
        if (line.empty()) continue;
        if (auto reply = service.process_line(line)) {
          const std::string out = *reply + "\n";
          if (::write(client, out.data(), out.size()) < 0) break;
        }
      }
    }
    ::close(client);
  }
  ::close(server);
  return 0;
}

int cmd_serve(const CommonOpts& opts, bool pipe_mode, const std::string& listen) {
  const AppConfig cfg = resolve_config(opts);
  MapPrior prior = load_map_prior(opts.map_prior);
  EdgeService service(std::move(prior), cfg);

  int rc;
  if (pipe_mode) {
    rc = serve_pipe(service);
  } else {
    rc = serve_tcp(service, listen);
  }
  // flush the session log on shutdown
  std::ostream* log_out = &std::cerr;
  std::ofstream log_file;
  if (opts.out != ".") {
    fs::create_directories(opts.out);
    log_file.open(fs::path(opts.out) / "session.log");
    if (log_file) log_out = &log_file;
  }
  for (const std::string& entry : service.session_log()) {
    *log_out << entry << "\n";
  }
  return rc;
}

int cmd_eval(const CommonOpts& opts, const std::string& scenario_path, double v0,
             double amax) {
  const AppConfig cfg = resolve_config(opts);
  const EvalScenario scenario = load_eval_scenario(scenario_path);
  BrakingConfig braking;
  braking.v0 = v0;
  braking.a_max = amax;
  const StudyReport report = run_study(scenario, cfg.risk, cfg.planner, braking);
  std::cout << report.to_csv() << "\n" << report.summary();
  if (opts.out != ".") {
    fs::create_directories(opts.out);
    write_file(fs::path(opts.out) / "braking_report.csv", report.to_csv());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"risk occupancy mapping, local path planning, and edge-service emulation"};
  app.require_subcommand(1);
  app.fallthrough();  // common options may follow the subcommand

  CommonOpts opts;
  app.add_option("--map-prior", opts.map_prior, "map prior JSON")->envname("RISKOCC_MAP");
  app.add_option("--frames", opts.frames, "frame stream (line-delimited JSON)");
  app.add_option("--config", opts.config, "config JSON (RISKOCC_CONFIG overrides)");
  app.add_option("--out", opts.out, "output directory");

  std::size_t frame_index = 0;
  std::vector<std::string> formats{"csv", "pgm"};
  auto* map_cmd = app.add_subcommand("map", "compute one frame's risk grid");
  map_cmd->add_option("--frame", frame_index, "frame index");
  map_cmd->add_option("--format", formats, "csv, pgm, ppm");

  std::string maneuver, icv = "0,0", strategy = "local";
  auto* plan_cmd = app.add_subcommand("plan", "plan a low-risk local path");
  plan_cmd->add_option("--frame", frame_index, "frame index");
  plan_cmd->add_option("--maneuver", maneuver, "left, straight, right")->required();
  plan_cmd->add_option("--icv", icv, "ICV position as X,Y");
  plan_cmd->add_option("--strategy", strategy, "local or global");

  std::string range;
  int threads = 1;
  auto* replay_cmd = app.add_subcommand("replay", "process every frame");
  replay_cmd->add_option("--range", range, "frame range A:B");
  replay_cmd->add_option("--maneuver", maneuver, "also plan per frame");
  replay_cmd->add_option("--icv", icv, "ICV position as X,Y");
  replay_cmd->add_option("--threads", threads, "worker threads");

  bool pipe_mode = false;
  std::string listen;
  auto* serve_cmd = app.add_subcommand("serve", "run the edge service");
  serve_cmd->add_flag("--pipe", pipe_mode, "stdin/stdout line protocol");
  serve_cmd->add_option("--listen", listen, "HOST:PORT");

  std::string scenario_path;
  double v0 = 8.0, amax = 4.0;
  auto* eval_cmd = app.add_subcommand("eval", "kinematic braking study");
  eval_cmd->add_option("--scenario", scenario_path, "scenario jsonl")->required();
  eval_cmd->add_option("--v0", v0, "initial braking speed, m/s");
  eval_cmd->add_option("--amax", amax, "max deceleration, m/s^2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (map_cmd->parsed()) {
      if (opts.map_prior.empty() || opts.frames.empty()) {
        std::cerr << "map requires --map-prior and --frames\n";
        return kExitUsage;
      }
      return cmd_map(opts, frame_index, formats);
    }
    if (plan_cmd->parsed()) {
      if (opts.map_prior.empty() || opts.frames.empty()) {
        std::cerr << "plan requires --map-prior and --frames\n";
        return kExitUsage;
      }
      return cmd_plan(opts, frame_index, maneuver, icv, strategy);
    }
    if (replay_cmd->parsed()) {
      if (opts.map_prior.empty() || opts.frames.empty()) {
        std::cerr << "replay requires --map-prior and --frames\n";
        return kExitUsage;
      }
      return cmd_replay(opts, range, maneuver, icv, threads);
    }
    if (serve_cmd->parsed()) {
      if (opts.map_prior.empty()) {
        std::cerr << "serve requires --map-prior\n";
        return kExitUsage;
      }
      if (!pipe_mode && listen.empty()) {
        std::cerr << "serve requires --pipe or --listen\n";
        return kExitUsage;
      }
      return cmd_serve(opts, pipe_mode, listen);
    }
    if (eval_cmd->parsed()) {
      return cmd_eval(opts, scenario_path, v0, amax);
    }
  } catch (const PlanError& e) {
    std::cerr << "planning error [" << e.code() << "]: " << e.what() << "\n";
    return kExitPlanning;
  } catch (const ParseError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
