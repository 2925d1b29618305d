#include "riskocc/edge_service.hpp"

#include <algorithm>

namespace riskocc {

using nlohmann::json;

EdgeService::EdgeService(MapPrior prior, AppConfig config)
    : prior_(std::move(prior)), cfg_(std::move(config)) {
  // The service grid samples every preset maneuver node; rows are offset
  // per maneuver so (row, col) stays unique across sets. Frenet indices
  // come from the first centerline when one exists.
  const Centerline* cl =
      prior_.centerlines.empty() ? nullptr : &prior_.centerlines.begin()->second;
  int row_offset = 0;
  for (const auto& [man, set] : prior_.maneuver_sets) {
    const std::size_t begin = samples_.size();
    for (std::size_t r = 0; r < set.rows.size(); ++r) {
      for (const ManeuverNode& n : set.rows[r]) {
        SamplePoint sp;
        sp.row = row_offset + static_cast<int>(r);
        sp.col = n.col;
        sp.position = n.position;
        sp.frenet = cl != nullptr
                        ? cl->project(n.position)
                        : FrenetCoord{sp.row * cfg_.resolution, n.col * cfg_.resolution};
        samples_.push_back(sp);
      }
    }
    maneuver_ranges_[man] = {begin, samples_.size()};
    row_offset += static_cast<int>(set.rows.size());
  }
}

std::shared_ptr<const RiskGrid> EdgeService::grid_snapshot() const {
  std::lock_guard lock(mu_);
  return grid_;
}

void EdgeService::rebuild_grid() {
  auto grid = std::make_shared<RiskGrid>(
      compute_map(samples_, current_, prior_.statics, cfg_.risk, cfg_.resolution));
  grid_ = std::move(grid);
}

bool EdgeService::ingest_frame(const std::string& unit, const Frame& frame) {
  std::lock_guard lock(mu_);
  if (has_frame_ && frame.t < current_.t) {
    log_.push_back("stale frame t=" + std::to_string(frame.t) + " from " + unit);
    return false;
  }
  if (!has_frame_ || frame.t > current_.t) {
    current_ = frame;
    has_frame_ = true;
    reporter_.clear();
    for (const DynamicObject& d : frame.dynamics) reporter_[d.id] = unit;
  } else {
    // same timestamp from another unit: union by id, duplicates keep the
    // report nearest to its unit (first received when unit positions are
    // unknown or tie)
    for (const DynamicObject& d : frame.dynamics) {
      auto existing = std::find_if(current_.dynamics.begin(), current_.dynamics.end(),
                                   [&](const DynamicObject& o) { return o.id == d.id; });
      if (existing == current_.dynamics.end()) {
        current_.dynamics.push_back(d);
        reporter_[d.id] = unit;
        continue;
      }
      const auto prev_unit = prior_.units.find(reporter_[d.id]);
      const auto this_unit = prior_.units.find(unit);
      if (prev_unit != prior_.units.end() && this_unit != prior_.units.end()) {
        const double prev_dist = dist_point_point(existing->position, prev_unit->second);
        const double this_dist = dist_point_point(d.position, this_unit->second);
        if (this_dist < prev_dist) {
          *existing = d;
          reporter_[d.id] = unit;
        }
      }
    }
  }
  rebuild_grid();
  log_.push_back("frame t=" + std::to_string(current_.t) + " objects=" +
                 std::to_string(current_.dynamics.size()));
  return true;
}

std::optional<std::string> EdgeService::process_line(const std::string& line) {
  auto error = [](const std::string& code, const std::string& detail) {
    return json{{"type", "error"}, {"code", code}, {"detail", detail}}.dump();
  };

  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    return error("BAD_MESSAGE", e.what());
  }

  try {
    const std::string type = j.value("type", "");
    if (type == "frame") {
      const Frame frame = parse_frame_json(j, "wire");
      const std::string unit = j.value("unit", "rsu");
      if (!ingest_frame(unit, frame)) {
        return error("STALE_FRAME", "frame older than latest grid");
      }
      return std::nullopt;
    }
    if (type == "plan_request") {
      const std::string icv_id = j.value("icv_id", "icv");
      Point2 icv;
      if (j.contains("lat") && j.contains("lon")) {
        icv = geodetic_to_local(j.at("lat").get<double>(), j.at("lon").get<double>(),
                                prior_.origin);
      } else {
        icv = {j.at("x").get<double>(), j.at("y").get<double>()};
      }
      Maneuver maneuver;
      try {
        maneuver = maneuver_from_string(j.at("maneuver").get<std::string>());
      } catch (const ValidationError& e) {
        return error("UNKNOWN_MANEUVER", e.what());
      }

      auto grid = grid_snapshot();  // whole request served from one snapshot
      if (grid == nullptr) {
        return error("NO_GRID", "no frame ingested yet");
      }
      const auto set_it = prior_.maneuver_sets.find(maneuver);
      if (set_it == prior_.maneuver_sets.end()) {
        return error("UNKNOWN_MANEUVER",
                     std::string("no node set for ") + to_string(maneuver));
      }

      const FreeNodeSet free_set =
          collision_free(set_it->second, *grid, cfg_.planner.risk_threshold);
      PlannedPath path;
      try {
        path = plan(free_set, icv, set_it->second.dest, cfg_.planner);
      } catch (const PlanError& e) {
        return error(e.code(), std::string(e.what()) + " (icv " + icv_id + ")");
      }

      json window = json::array();
      for (std::size_t i = 0; i < grid->samples.size(); ++i) {
        const SamplePoint& sp = grid->samples[i];
        if (dist_point_point(sp.position, icv) <= cfg_.window_radius) {
          window.push_back({{"row", sp.row},
                            {"col", sp.col},
                            {"x", sp.position.x},
                            {"y", sp.position.y},
                            {"risk", grid->risks[i]}});
        }
      }
      return json{{"type", "plan_response"},
                  {"icv_id", icv_id},
                  {"grid_t", grid->timestamp},
                  {"path", path_to_json(path)},
                  {"risk_window", std::move(window)}}
          .dump();
    }
    return error("BAD_MESSAGE", "unknown message type '" + type + "'");
  } catch (const json::exception& e) {
    return error("BAD_MESSAGE", e.what());
  } catch (const ValidationError& e) {
    return error("BAD_MESSAGE", e.what());
  }
}

}  // namespace riskocc
