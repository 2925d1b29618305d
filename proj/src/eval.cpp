#include "riskocc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "riskocc/json_io.hpp"

namespace riskocc {

using nlohmann::json;

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::baseline: return "baseline";
    case Scheme::occupancy: return "occupancy";
    case Scheme::occupancy_plus_plan: return "occupancy_plus_plan";
  }
  return "?";
}

double max_safe_speed(double d, double a_max) {
  if (d < 0.0) throw ValidationError("max_safe_speed: distance must be >= 0");
  return std::sqrt(2.0 * a_max * d);
}

double avg_decel(double v0, double d) {
  if (!(v0 > 0.0)) throw ValidationError("avg_decel: v0 must be > 0");
  if (d == 0.0) return std::numeric_limits<double>::infinity();
  if (d < 0.0) throw ValidationError("avg_decel: distance must be >= 0");
  return v0 * v0 / (2.0 * d);
}

EvalScenario load_eval_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario: " + path);
  EvalScenario sc{Centerline({{0, 0}, {1, 0}}), 0.0, 8.0, {}, Maneuver::left, {}, {}, {}};
  std::string line;
  std::size_t lineno = 0;
  bool have_meta = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!have_meta) {
      std::vector<Point2> lane;
      for (const auto& p : j.at("lane")) {
        lane.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      sc.lane = Centerline(std::move(lane));
      sc.icv_s0 = j.at("icv").value("s0", 0.0);
      sc.icv_speed = j.at("icv").value("speed", 8.0);
      sc.hazard_id = j.at("hazard_id").get<std::string>();
      sc.maneuver = maneuver_from_string(j.value("maneuver", "left"));
      sc.dest = {j.at("dest")[0].get<double>(), j.at("dest")[1].get<double>()};
      have_meta = true;
      continue;
    }
    Frame f = parse_frame_json(j, path + ":" + std::to_string(lineno));
    if (!sc.frames.empty() && !(f.t > sc.frames.back().t)) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": timestamps must be strictly increasing");
    }
    sc.frames.push_back(std::move(f));
  }
  if (!have_meta || sc.frames.empty()) {
    throw ValidationError(path + ": scenario needs a meta line and frames");
  }
  return sc;
}

namespace {

struct Corridor {
  std::vector<Point2> pts;  // densified
  std::vector<double> arc;
};

Corridor densify(const std::vector<Point2>& polyline, double step) {
  Corridor c;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const Point2 a = polyline[i];
    const Point2 b = polyline[i + 1];
    const double len = dist_point_point(a, b);
    const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int k = 0; k < n; ++k) {
      c.pts.push_back(a + (b - a) * (static_cast<double>(k) / n));
    }
  }
  c.pts.push_back(polyline.back());
  c.arc.resize(c.pts.size(), 0.0);
  for (std::size_t i = 1; i < c.pts.size(); ++i) {
    c.arc[i] = c.arc[i - 1] + dist_point_point(c.pts[i - 1], c.pts[i]);
  }
  return c;
}

// node set over the scenario lane, one column per lane: d in {-r, 0, +r}
ManeuverNodeSet lane_node_set(const EvalScenario& sc, double resolution) {
  ManeuverNodeSet set;
  set.maneuver = sc.maneuver;
  set.dest = sc.dest;
  const int n_rows = static_cast<int>(std::floor(sc.lane.length() / resolution + 1e-9)) + 1;
  for (int r = 0; r < n_rows; ++r) {
    std::vector<ManeuverNode> row;
    for (int col = -1; col <= 1; ++col) {
      row.push_back({col, sc.lane.to_cartesian({r * resolution, col * resolution})});
    }
    set.rows.push_back(std::move(row));
  }
  return set;
}

std::vector<Point2> planned_corridor(const EvalScenario& sc, const RiskConfig& risk_cfg,
                                     const PlannerConfig& planner_cfg, double resolution) {
  const ManeuverNodeSet set = lane_node_set(sc, resolution);
  std::vector<SamplePoint> samples;
  for (std::size_t r = 0; r < set.rows.size(); ++r) {
    for (const ManeuverNode& n : set.rows[r]) {
      samples.push_back({static_cast<int>(r), n.col, n.position,
                         {static_cast<double>(r) * resolution, n.col * resolution}});
    }
  }
  // the path is planned once against the first frame's grid
  const RiskGrid grid =
      compute_map(samples, sc.frames.front(), sc.statics, risk_cfg, resolution);
  const FreeNodeSet free_set = collision_free(set, grid, planner_cfg.risk_threshold);
  const Point2 icv = sc.lane.to_cartesian({sc.icv_s0, 0.0});
  const PlannedPath path = plan_global(free_set, icv, set.dest, planner_cfg);
  return path.smoothed;
}

}  // namespace

std::optional<double> detection_distance(const EvalScenario& scenario, Scheme scheme,
                                         const RiskConfig& risk_cfg,
                                         const PlannerConfig& planner_cfg,
                                         const BrakingConfig& braking) {
  const double resolution = 1.9;
  Corridor corridor;
  if (scheme == Scheme::occupancy_plus_plan) {
    corridor = densify(planned_corridor(scenario, risk_cfg, planner_cfg, resolution), 0.25);
  } else {
    corridor = densify(scenario.lane.points(), 0.25);
  }

  const double t0 = scenario.frames.front().t;
  for (const Frame& frame : scenario.frames) {
    const auto hazard =
        std::find_if(frame.dynamics.begin(), frame.dynamics.end(),
                     [&](const DynamicObject& d) { return d.id == scenario.hazard_id; });
    if (hazard == frame.dynamics.end()) continue;

    double best_dist = std::numeric_limits<double>::infinity();
    double s_conflict = 0.0;
    if (scheme == Scheme::baseline) {
      for (std::size_t i = 0; i < corridor.pts.size(); ++i) {
        const double d = dist_point_point(corridor.pts[i], hazard->position);
        if (d < best_dist) {
          best_dist = d;
          s_conflict = corridor.arc[i];
        }
      }
      if (best_dist > braking.corridor_halfwidth) continue;
    } else {
      const DirectedSegment footprint = project_future(*hazard, risk_cfg.horizon);
      for (std::size_t i = 0; i < corridor.pts.size(); ++i) {
        const double d = dist_point_segment(corridor.pts[i], footprint);
        if (d < best_dist) {
          best_dist = d;
          s_conflict = corridor.arc[i];
        }
      }
      if (best_dist > braking.corridor_halfwidth + risk_cfg.dynamic_radius) continue;
    }

    const double icv_s = scheme == Scheme::occupancy_plus_plan
                             ? scenario.icv_speed * (frame.t - t0)
                             : scenario.icv_s0 + scenario.icv_speed * (frame.t - t0);
    return std::max(0.0, s_conflict - icv_s);
  }
  return std::nullopt;
}

StudyReport run_study(const EvalScenario& scenario, const RiskConfig& risk_cfg,
                      const PlannerConfig& planner_cfg, const BrakingConfig& braking) {
  StudyReport report;
  for (Scheme scheme :
       {Scheme::baseline, Scheme::occupancy, Scheme::occupancy_plus_plan}) {
    SchemeResult res;
    res.scheme = scheme;
    const auto d = detection_distance(scenario, scheme, risk_cfg, planner_cfg, braking);
    if (!d.has_value()) {
      res.conflict = false;
      res.detection_distance = std::numeric_limits<double>::infinity();
      res.max_safe_speed = std::numeric_limits<double>::infinity();
      res.avg_decel = 0.0;
    } else {
      res.detection_distance = *d;
      res.max_safe_speed = max_safe_speed(*d, braking.a_max);
      res.avg_decel = avg_decel(braking.v0, *d);
      res.unavoidable = *d == 0.0;
    }
    report.results.push_back(res);
  }
  const SchemeResult& s2 = report.results[1];
  const SchemeResult& s3 = report.results[2];
  if (s2.conflict && s3.conflict && s2.avg_decel > 0.0) {
    report.decel_delta_pct = (s2.avg_decel - s3.avg_decel) / s2.avg_decel * 100.0;
  }
  if (s3.conflict) {
    report.speed_delta_vs_v0_pct = (s3.max_safe_speed - braking.v0) / braking.v0 * 100.0;
    if (s2.conflict && s2.max_safe_speed > 0.0) {
      report.speed_delta_vs_s2_pct =
          (s3.max_safe_speed - s2.max_safe_speed) / s2.max_safe_speed * 100.0;
    }
  }
  return report;
}

std::string StudyReport::to_csv() const {
  std::string out = "scheme,detection_distance,max_safe_speed,avg_decel\n";
  char buf[160];
  for (const SchemeResult& r : results) {
    std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f\n", to_string(r.scheme),
                  r.detection_distance, r.max_safe_speed, r.avg_decel);
    out += buf;
  }
  return out;
}

std::string StudyReport::summary() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "avg decel reduced by %.2f%% (scheme 3 vs scheme 2)\n"
                "max safe speed vs operating speed: +%.2f%%\n"
                "max safe speed vs scheme 2: +%.2f%%\n",
                decel_delta_pct, speed_delta_vs_v0_pct, speed_delta_vs_s2_pct);
  return buf;
}

}  // namespace riskocc
