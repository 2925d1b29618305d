#include "riskocc/json_io.hpp"

#include <fstream>

namespace riskocc {

using nlohmann::json;

json path_to_json(const PlannedPath& path) {
  json raw = json::array();
  for (const RawPathNode& n : path.raw_nodes) {
    raw.push_back({{"row", n.row},
                   {"col", n.col},
                   {"x", n.position.x},
                   {"y", n.position.y},
                   {"risk", n.risk}});
  }
  json smoothed = json::array();
  for (const Point2& p : path.smoothed) {
    smoothed.push_back({p.x, p.y});
  }
  return {{"status", path.status == PathStatus::reached ? "reached" : "exhausted"},
          {"raw", std::move(raw)},
          {"smoothed", std::move(smoothed)},
          {"total_cost", path.total_cost}};
}

namespace {

void apply_weights(WeightTable& w, const json& j) {
  if (j.contains("dynamic")) {
    const auto& d = j.at("dynamic");
    if (d.contains("pedestrian")) w.pedestrian = d.at("pedestrian").get<double>();
    if (d.contains("non_motorized")) w.non_motorized = d.at("non_motorized").get<double>();
    if (d.contains("large_vehicle")) w.large_vehicle = d.at("large_vehicle").get<double>();
    if (d.contains("small_vehicle")) w.small_vehicle = d.at("small_vehicle").get<double>();
  }
  if (j.contains("static")) {
    for (const auto& [name, sd] : j.at("static").items()) {
      StaticDefaults& target = w.statics[static_kind_from_string(name)];
      if (sd.contains("risk_value")) target.risk_value = sd.at("risk_value").get<double>();
      if (sd.contains("weight")) target.weight = sd.at("weight").get<double>();
    }
  }
}

}  // namespace

AppConfig app_config_from_json(const json& j) {
  AppConfig cfg;
  if (j.contains("risk")) {
    const auto& r = j.at("risk");
    cfg.risk.dynamic_radius = r.value("dynamic_radius", cfg.risk.dynamic_radius);
    cfg.risk.static_radius = r.value("static_radius", cfg.risk.static_radius);
    cfg.risk.horizon = r.value("horizon", cfg.risk.horizon);
    cfg.risk.speed_epsilon = r.value("speed_epsilon", cfg.risk.speed_epsilon);
    cfg.risk.clamp_dynamic = r.value("clamp_dynamic", cfg.risk.clamp_dynamic);
    cfg.risk.gate_on_segment = r.value("gate_on_segment", cfg.risk.gate_on_segment);
  }
  if (j.contains("weights")) {
    apply_weights(cfg.risk.weights, j.at("weights"));
  }
  if (j.contains("planner")) {
    const auto& p = j.at("planner");
    cfg.planner.risk_threshold = p.value("risk_threshold", cfg.planner.risk_threshold);
    cfg.planner.w_risk = p.value("w_risk", cfg.planner.w_risk);
    cfg.planner.w_dis = p.value("w_dis", cfg.planner.w_dis);
    cfg.planner.kernel_size = p.value("kernel_size", cfg.planner.kernel_size);
    cfg.planner.sigma = p.value("sigma", cfg.planner.sigma);
    cfg.planner.resample_step = p.value("resample_step", cfg.planner.resample_step);
    if (p.contains("strategy")) {
      const std::string s = p.at("strategy").get<std::string>();
      if (s == "local") cfg.planner.strategy = SearchStrategy::local;
      else if (s == "global") cfg.planner.strategy = SearchStrategy::global;
      else throw ConfigError("planner.strategy must be 'local' or 'global'");
    }
  }
  cfg.window_radius = j.value("window_radius", cfg.window_radius);
  cfg.resolution = j.value("resolution", cfg.resolution);
  cfg.road_half_width = j.value("road_half_width", cfg.road_half_width);
  cfg.risk.validate();
  cfg.planner.validate();
  return cfg;
}

AppConfig load_app_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("config " + path + ": " + e.what());
  }
  return app_config_from_json(j);
}

}  // namespace riskocc
