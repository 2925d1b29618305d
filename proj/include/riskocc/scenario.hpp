#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riskocc/errors.hpp"
#include "riskocc/geometry.hpp"

namespace riskocc {

enum class ParticipantCategory { pedestrian, non_motorized, small_vehicle, large_vehicle };
enum class StaticKind { solid_lane_line, curb, guardrail, roadblock, pothole };
enum class Maneuver { left, straight, right };

const char* to_string(ParticipantCategory c);
const char* to_string(StaticKind k);
const char* to_string(Maneuver m);
ParticipantCategory participant_category_from_string(const std::string& s);
StaticKind static_kind_from_string(const std::string& s);
Maneuver maneuver_from_string(const std::string& s);

struct DynamicObject {
  std::string id;
  ParticipantCategory category = ParticipantCategory::small_vehicle;
  Point2 position;
  double speed = 0.0;          // m/s, >= 0
  double heading = 0.0;        // radians east-ccw, normalized to [-pi, pi)
};

double normalize_heading(double radians);

enum class GeometryKind { point, points, polyline };

// Point, point cloud, or polyline geometry of a static road factor.
struct StaticGeometry {
  GeometryKind kind = GeometryKind::point;
  std::vector<Point2> pts;

  double distance_to(const Point2& p) const;
};

struct StaticFactor {
  StaticKind kind = StaticKind::curb;
  StaticGeometry geometry;
  double risk_value = 0.0;  // in [0, 1]
  double weight = 0.0;      // > 0
};

struct Frame {
  double t = 0.0;
  std::vector<DynamicObject> dynamics;
};

// Per-maneuver preset road points, row-ordered along the travel direction.
// Columns increase leftward (matching positive Frenet d).
struct ManeuverNode {
  int col = 0;
  Point2 position;
};

struct ManeuverNodeSet {
  Maneuver maneuver = Maneuver::straight;
  std::vector<std::vector<ManeuverNode>> rows;
  Point2 dest;  // preset endpoint for this maneuver
};

// Risk weights. Only the ordering is load-bearing; the numbers are
// documented defaults and every one is overridable from config, with the
// ordering re-validated on load.
struct StaticDefaults {
  double risk_value = 0.0;
  double weight = 0.0;
};

struct WeightTable {
  double pedestrian = 1.0;
  double non_motorized = 0.9;
  double large_vehicle = 0.8;
  double small_vehicle = 0.7;
  std::map<StaticKind, StaticDefaults> statics = {
      {StaticKind::curb, {0.5, 0.5}},
      {StaticKind::guardrail, {0.5, 0.5}},
      {StaticKind::roadblock, {0.5, 0.5}},
      {StaticKind::pothole, {0.3, 0.3}},
      {StaticKind::solid_lane_line, {0.3, 0.3}},
  };

  double dynamic(ParticipantCategory c) const;
  const StaticDefaults& static_kind(StaticKind k) const;

  // Throws ConfigError unless pedestrian > non_motorized > large_vehicle >
  // small_vehicle > every static weight, and curb/guardrail weights exceed
  // pothole/lane-line weights.
  void validate() const;
};

WeightTable default_weights();

struct MapPrior {
  GeoOrigin origin;
  std::map<std::string, Centerline> centerlines;
  std::vector<StaticFactor> statics;
  std::map<Maneuver, ManeuverNodeSet> maneuver_sets;
  std::vector<Point2> road_polygon;
  std::map<std::string, Point2> units;  // optional roadside unit positions
  std::vector<std::string> warnings;    // non-fatal diagnostics from loading
};

MapPrior load_map_prior(const std::string& path);
std::vector<Frame> load_frames(const std::string& path);

}  // namespace riskocc
