#include "riskocc/risk_model.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace riskocc {

double eta(double distance, double speed, const RiskConfig& cfg) {
  return distance / (speed + cfg.speed_epsilon);
}

double dynamic_risk(double eta_val, const RiskConfig& cfg) {
  if (eta_val > 3.0) {
    return 0.5;
  }
  const double r = 0.0667 * eta_val * eta_val * eta_val -
                   0.3 * eta_val * eta_val + 0.0333 * eta_val + 1.0;
  return cfg.clamp_dynamic ? std::clamp(r, 0.0, 1.0) : r;
}

double static_risk(double distance, const StaticFactor& factor, const RiskConfig& cfg) {
  return distance <= cfg.static_radius ? factor.risk_value : 0.0;
}

DirectedSegment project_future(const DynamicObject& dyn, double horizon) {
  const double travel = dyn.speed * horizon;
  const Point2 end{dyn.position.x + travel * std::cos(dyn.heading),
                   dyn.position.y + travel * std::sin(dyn.heading)};
  return {dyn.position, end};
}

double point_risk(const Point2& p, const Frame& frame,
                  std::span<const DirectedSegment> segments,
                  std::span<const StaticFactor> statics, const RiskConfig& cfg) {
  double degree_risk = 0.0;
  for (std::size_t i = 0; i < frame.dynamics.size(); ++i) {
    const DynamicObject& dyn = frame.dynamics[i];
    const double gate = cfg.gate_on_segment
                            ? dist_point_segment(p, segments[i])
                            : dist_point_point(p, dyn.position);
    if (gate <= cfg.dynamic_radius) {
      // ETA always measures to the current position, not the segment
      const double e = eta(dist_point_point(p, dyn.position), dyn.speed, cfg);
      degree_risk += dynamic_risk(e, cfg) * cfg.weights.dynamic(dyn.category);
    }
  }
  for (const StaticFactor& f : statics) {
    const double d = f.geometry.distance_to(p);
    if (d <= cfg.static_radius) {
      degree_risk += f.risk_value * f.weight;
    }
  }
  return degree_risk;
}

double point_risk(const Point2& p, const Frame& frame,
                  std::span<const StaticFactor> statics, const RiskConfig& cfg) {
  std::vector<DirectedSegment> segments;
  segments.reserve(frame.dynamics.size());
  for (const DynamicObject& dyn : frame.dynamics) {
    segments.push_back(project_future(dyn, cfg.horizon));
  }
  return point_risk(p, frame, segments, statics, cfg);
}

}  // namespace riskocc
