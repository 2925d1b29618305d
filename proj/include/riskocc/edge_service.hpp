#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "riskocc/json_io.hpp"
#include "riskocc/planner.hpp"

namespace riskocc {

// Edge-cloud emulation: one writer ingests roadside frames and recomputes
// the risk grid; plan requests read an immutable grid snapshot. The wire
// protocol is one JSON object per line, both directions.
class EdgeService {
 public:
  EdgeService(MapPrior prior, AppConfig config);

  // Handles one wire line. Returns the response line (without trailing
  // newline) or nullopt when the message needs no reply (accepted frame).
  std::optional<std::string> process_line(const std::string& line);

  // Merges/accepts a frame from `unit`. Returns false on stale rejection.
  bool ingest_frame(const std::string& unit, const Frame& frame);

  std::shared_ptr<const RiskGrid> grid_snapshot() const;

  const std::vector<std::string>& session_log() const { return log_; }

 private:
  void rebuild_grid();

  MapPrior prior_;
  AppConfig cfg_;
  std::vector<SamplePoint> samples_;  // fixed sample set over the map prior
  // per-maneuver index ranges into samples_, so planning can look up risks
  std::map<Maneuver, std::pair<std::size_t, std::size_t>> maneuver_ranges_;

  mutable std::mutex mu_;
  std::shared_ptr<const RiskGrid> grid_;
  Frame current_;
  bool has_frame_ = false;
  std::map<std::string, std::string> reporter_;  // object id -> unit, current t
  std::vector<std::string> log_;
};

}  // namespace riskocc
