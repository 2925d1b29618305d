#pragma once

#include <json.hpp>

#include "riskocc/planner.hpp"
#include "riskocc/risk_model.hpp"
#include "riskocc/scenario.hpp"

namespace riskocc {

// One frame object, as found on a frames.jsonl line or in a wire "frame"
// message. `where` prefixes error messages (file:line or "wire").
Frame parse_frame_json(const nlohmann::json& j, const std::string& where);

nlohmann::json path_to_json(const PlannedPath& path);

// Config file: {"risk": {...}, "planner": {...}, "weights": {...}}; every
// key optional, defaults apply. Weight overrides are re-validated against
// the ordering rules.
struct AppConfig {
  RiskConfig risk;
  PlannerConfig planner;
  double window_radius = 30.0;  // plan-response risk window, meters
  double resolution = 1.9;
  double road_half_width = 3.8;
};

AppConfig load_app_config(const std::string& path);
AppConfig app_config_from_json(const nlohmann::json& j);

}  // namespace riskocc
