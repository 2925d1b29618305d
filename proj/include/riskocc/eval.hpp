#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riskocc/planner.hpp"

namespace riskocc {

struct BrakingConfig {
  double a_max = 4.0;                  // m/s^2, braking limit
  double v0 = 8.0;                     // m/s, initial braking speed
  double corridor_halfwidth = 1.9;     // one lane
};

enum class Scheme { baseline, occupancy, occupancy_plus_plan };
const char* to_string(Scheme s);

struct SchemeResult {
  Scheme scheme = Scheme::baseline;
  double detection_distance = 0.0;  // meters remaining at first detection
  double max_safe_speed = 0.0;      // m/s
  double avg_decel = 0.0;           // m/s^2 magnitude at the configured v0
  bool conflict = true;             // false: hazard never intersects
  bool unavoidable = false;         // detection distance was zero
};

// Braking scenario: an ICV advancing along a lane at constant speed while a
// hazard (typically a jaywalking pedestrian) approaches the corridor.
// File format is line-delimited JSON: a meta line, then one frame per line.
struct EvalScenario {
  Centerline lane;
  double icv_s0 = 0.0;
  double icv_speed = 8.0;
  std::string hazard_id;
  Maneuver maneuver = Maneuver::left;
  Point2 dest;
  std::vector<StaticFactor> statics;
  std::vector<Frame> frames;
};

EvalScenario load_eval_scenario(const std::string& path);

double max_safe_speed(double d, double a_max);

// v0^2 / (2 d), magnitude; infinity when d == 0 (unavoidable collision)
double avg_decel(double v0, double d);

// Distance remaining when the hazard first triggers detection. Baseline
// checks the hazard's current position against the lane corridor; the
// occupancy schemes check its 3-second projected footprint, and the
// plus-plan scheme checks it against the planned-path corridor instead of
// the lane. No conflict returns nullopt.
std::optional<double> detection_distance(const EvalScenario& scenario, Scheme scheme,
                                         const RiskConfig& risk_cfg,
                                         const PlannerConfig& planner_cfg,
                                         const BrakingConfig& braking);

struct StudyReport {
  std::vector<SchemeResult> results;    // baseline, occupancy, occupancy_plus_plan
  double decel_delta_pct = 0.0;         // (s2 - s3) / s2, percent
  double speed_delta_vs_v0_pct = 0.0;   // (v3 - v0) / v0, percent
  double speed_delta_vs_s2_pct = 0.0;   // (v3 - v2) / v2, percent

  std::string to_csv() const;
  std::string summary() const;
};

StudyReport run_study(const EvalScenario& scenario, const RiskConfig& risk_cfg,
                      const PlannerConfig& planner_cfg, const BrakingConfig& braking);

}  // namespace riskocc
