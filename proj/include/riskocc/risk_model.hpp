#pragma once

#include <span>

#include "riskocc/geometry.hpp"
#include "riskocc/scenario.hpp"

namespace riskocc {

struct RiskConfig {
  double dynamic_radius = 2.0;   // perception range for dynamic factors
  double static_radius = 1.0;    // perception range for static factors
  double horizon = 3.0;          // seconds of constant-velocity lookahead
  double speed_epsilon = 0.01;   // guards the ETA division for stationary objects
  bool clamp_dynamic = true;     // clamp the cubic's ~1.0009 overshoot into [0,1]
  // Gate dynamic interaction on distance to the current->future segment
  // (reproduces the speed-elongated footprint). The alternative gates on
  // distance to the current position only.
  bool gate_on_segment = true;
  WeightTable weights;

  void validate() const {
    if (!(dynamic_radius > 0.0 && static_radius > 0.0 && horizon > 0.0 &&
          speed_epsilon > 0.0)) {
      throw ConfigError("risk config: radii, horizon and speed_epsilon must be > 0");
    }
    weights.validate();
  }
};

// distance / (speed + epsilon)
double eta(double distance, double speed, const RiskConfig& cfg);

// Piecewise risk-vs-ETA curve: a fitted cubic up to 3 s, 0.5 beyond.
double dynamic_risk(double eta_val, const RiskConfig& cfg);

// Fixed risk value inside the static perception radius, zero outside.
double static_risk(double distance, const StaticFactor& factor, const RiskConfig& cfg);

// Position the object will reach at constant speed and heading after
// `horizon` seconds, joined to its current position.
DirectedSegment project_future(const DynamicObject& dyn, double horizon);

// Accumulated weighted risk at one sampling point. `segments` must be the
// future projections of `frame.dynamics`, index-aligned.
double point_risk(const Point2& p, const Frame& frame,
                  std::span<const DirectedSegment> segments,
                  std::span<const StaticFactor> statics, const RiskConfig& cfg);

// Convenience overload that projects the dynamics itself.
double point_risk(const Point2& p, const Frame& frame,
                  std::span<const StaticFactor> statics, const RiskConfig& cfg);

}  // namespace riskocc
