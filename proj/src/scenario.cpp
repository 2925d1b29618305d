#include "riskocc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace riskocc {

using nlohmann::json;

const char* to_string(ParticipantCategory c) {
  switch (c) {
    case ParticipantCategory::pedestrian: return "pedestrian";
    case ParticipantCategory::non_motorized: return "non_motorized";
    case ParticipantCategory::small_vehicle: return "small_vehicle";
    case ParticipantCategory::large_vehicle: return "large_vehicle";
  }
  return "?";
}

const char* to_string(StaticKind k) {
  switch (k) {
    case StaticKind::solid_lane_line: return "solid_lane_line";
    case StaticKind::curb: return "curb";
    case StaticKind::guardrail: return "guardrail";
    case StaticKind::roadblock: return "roadblock";
    case StaticKind::pothole: return "pothole";
  }
  return "?";
}

const char* to_string(Maneuver m) {
  switch (m) {
    case Maneuver::left: return "left";
    case Maneuver::straight: return "straight";
    case Maneuver::right: return "right";
  }
  return "?";
}

ParticipantCategory participant_category_from_string(const std::string& s) {
  if (s == "pedestrian") return ParticipantCategory::pedestrian;
  if (s == "non_motorized") return ParticipantCategory::non_motorized;
  if (s == "small_vehicle") return ParticipantCategory::small_vehicle;
  if (s == "large_vehicle") return ParticipantCategory::large_vehicle;
  throw ValidationError("unknown participant category: " + s);
}

StaticKind static_kind_from_string(const std::string& s) {
  if (s == "solid_lane_line") return StaticKind::solid_lane_line;
  if (s == "curb") return StaticKind::curb;
  if (s == "guardrail") return StaticKind::guardrail;
  if (s == "roadblock") return StaticKind::roadblock;
  if (s == "pothole") return StaticKind::pothole;
  throw ValidationError("unknown static kind: " + s);
}

Maneuver maneuver_from_string(const std::string& s) {
  if (s == "left") return Maneuver::left;
  if (s == "straight") return Maneuver::straight;
  if (s == "right") return Maneuver::right;
  throw ValidationError("unknown maneuver: " + s);
}

double normalize_heading(double radians) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double h = std::fmod(radians + std::numbers::pi, two_pi);
  if (h < 0.0) h += two_pi;
  return h - std::numbers::pi;
}

double StaticGeometry::distance_to(const Point2& p) const {
  double best = std::numeric_limits<double>::infinity();
  if (kind == GeometryKind::polyline && pts.size() >= 2) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      best = std::min(best, dist_point_segment(p, {pts[i], pts[i + 1]}));
    }
  } else {
    for (const Point2& q : pts) {
      best = std::min(best, dist_point_point(p, q));
    }
  }
  return best;
}

double WeightTable::dynamic(ParticipantCategory c) const {
  switch (c) {
    case ParticipantCategory::pedestrian: return pedestrian;
    case ParticipantCategory::non_motorized: return non_motorized;
    case ParticipantCategory::large_vehicle: return large_vehicle;
    case ParticipantCategory::small_vehicle: return small_vehicle;
  }
  return 0.0;
}

const StaticDefaults& WeightTable::static_kind(StaticKind k) const {
  return statics.at(k);
}

void WeightTable::validate() const {
  double max_static = 0.0;
  for (const auto& [kind, sd] : statics) {
    if (sd.risk_value < 0.0 || sd.risk_value > 1.0) {
      throw ConfigError(std::string("static risk_value out of [0,1] for ") + to_string(kind));
    }
    if (sd.weight <= 0.0) {
      throw ConfigError(std::string("static weight must be > 0 for ") + to_string(kind));
    }
    max_static = std::max(max_static, sd.weight);
  }
  if (!(pedestrian > non_motorized && non_motorized > large_vehicle &&
        large_vehicle > small_vehicle && small_vehicle > max_static)) {
    throw ConfigError(
        "weight ordering violated: need pedestrian > non_motorized > "
        "large_vehicle > small_vehicle > every static weight");
  }
  const double lo_bound =
      std::max(statics.at(StaticKind::pothole).weight,
               statics.at(StaticKind::solid_lane_line).weight);
  if (!(statics.at(StaticKind::curb).weight > lo_bound &&
        statics.at(StaticKind::guardrail).weight > lo_bound)) {
    throw ConfigError("weight ordering violated: curb/guardrail must exceed pothole/lane-line");
  }
}

WeightTable default_weights() {
  WeightTable w;
  w.validate();
  return w;
}

namespace {

Point2 parse_point(const json& j, bool geodetic, const GeoOrigin& origin,
                   const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(where + ": expected a [a, b] number pair");
  }
  if (geodetic) {
    return geodetic_to_local(j[0].get<double>(), j[1].get<double>(), origin);
  }
  Point2 p{j[0].get<double>(), j[1].get<double>()};
  if (!p.finite()) throw ValidationError(where + ": non-finite coordinate");
  return p;
}

std::vector<Point2> parse_points(const json& j, bool geodetic,
                                 const GeoOrigin& origin, const std::string& where) {
  std::vector<Point2> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_point(j[i], geodetic, origin, where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

DynamicObject parse_dynamic(const json& j, bool degrees, const std::string& where) {
  DynamicObject d;
  if (!j.contains("id")) throw ValidationError(where + ".id missing");
  d.id = j.at("id").get<std::string>();
  d.category = participant_category_from_string(j.at("category").get<std::string>());
  d.position = {j.at("x").get<double>(), j.at("y").get<double>()};
  if (!d.position.finite()) throw ValidationError(where + ": non-finite position");
  d.speed = j.at("speed").get<double>();
  if (!(d.speed >= 0.0)) throw ValidationError(where + ".speed must be >= 0");
  double heading = j.at("heading").get<double>();
  if (degrees) heading *= std::numbers::pi / 180.0;
  if (!std::isfinite(heading)) throw ValidationError(where + ".heading non-finite");
  d.heading = normalize_heading(heading);
  return d;
}

}  // namespace

Frame parse_frame_json(const json& j, const std::string& where);

Frame parse_frame_json(const json& j, const std::string& where) {
  Frame f;
  f.t = j.at("t").get<double>();
  const bool degrees = j.value("degrees", false);
  std::set<std::string> ids;
  const auto& dyns = j.at("dynamics");
  for (std::size_t i = 0; i < dyns.size(); ++i) {
    DynamicObject d = parse_dynamic(dyns[i], degrees, where + ".dynamics[" + std::to_string(i) + "]");
    if (!ids.insert(d.id).second) {
      throw ValidationError(where + ": duplicate dynamic id '" + d.id + "'");
    }
    f.dynamics.push_back(std::move(d));
  }
  return f;
}

MapPrior load_map_prior(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open map prior: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("map prior " + path + ": " + e.what());
  }

  MapPrior mp;
  const auto& jo = j.at("origin");
  mp.origin = {jo.at("lat").get<double>(), jo.at("lon").get<double>()};
  const std::string coords = j.value("coords", "local");
  const bool geodetic = coords == "geodetic";
  if (!geodetic && coords != "local") {
    throw ValidationError("coords must be 'local' or 'geodetic'");
  }

  if (j.contains("centerlines")) {
    for (const auto& [name, pts] : j.at("centerlines").items()) {
      mp.centerlines.emplace(
          name, Centerline(parse_points(pts, geodetic, mp.origin, "centerlines." + name)));
    }
  }

  if (j.contains("statics")) {
    const auto& js = j.at("statics");
    for (std::size_t i = 0; i < js.size(); ++i) {
      const std::string where = "statics[" + std::to_string(i) + "]";
      StaticFactor f;
      f.kind = static_kind_from_string(js[i].at("kind").get<std::string>());
      const auto& g = js[i].at("geometry");
      if (g.contains("point")) {
        f.geometry.kind = GeometryKind::point;
        f.geometry.pts = {parse_point(g.at("point"), geodetic, mp.origin, where)};
      } else if (g.contains("points")) {
        f.geometry.kind = GeometryKind::points;
        f.geometry.pts = parse_points(g.at("points"), geodetic, mp.origin, where);
      } else if (g.contains("polyline")) {
        f.geometry.kind = GeometryKind::polyline;
        f.geometry.pts = parse_points(g.at("polyline"), geodetic, mp.origin, where);
        if (f.geometry.pts.size() < 2) {
          throw ValidationError(where + ".geometry.polyline needs >= 2 points");
        }
      } else {
        throw ValidationError(where + ".geometry must be point/points/polyline");
      }
      if (f.geometry.pts.empty()) throw ValidationError(where + ".geometry empty");
      f.risk_value = js[i].at("risk_value").get<double>();
      if (f.risk_value < 0.0 || f.risk_value > 1.0) {
        throw ValidationError(where + ".risk_value out of [0,1]");
      }
      f.weight = js[i].at("weight").get<double>();
      if (!(f.weight > 0.0)) throw ValidationError(where + ".weight must be > 0");
      mp.statics.push_back(std::move(f));
    }
  }

  if (!j.contains("maneuver_sets") || j.at("maneuver_sets").empty()) {
    throw ValidationError("maneuver_sets must be present and non-empty");
  }
  for (const auto& [name, ms] : j.at("maneuver_sets").items()) {
    ManeuverNodeSet set;
    set.maneuver = maneuver_from_string(name);
    set.dest = parse_point(ms.at("dest"), geodetic, mp.origin, "maneuver_sets." + name + ".dest");
    const auto& rows = ms.at("rows");
    if (rows.empty()) {
      throw ValidationError("maneuver_sets." + name + ".rows must be non-empty");
    }
    for (const auto& row : rows) {
      std::vector<ManeuverNode> r;
      int prev_col = std::numeric_limits<int>::min();
      for (const auto& node : row) {
        // node encoded as [col, x, y] (or [col, lat, lon] when geodetic)
        if (!node.is_array() || node.size() != 3) {
          throw ValidationError("maneuver_sets." + name + ": node must be [col, x, y]");
        }
        ManeuverNode n;
        n.col = node[0].get<int>();
        if (n.col <= prev_col) {
          throw ValidationError("maneuver_sets." + name + ": cols must strictly increase in a row");
        }
        prev_col = n.col;
        n.position = parse_point(json::array({node[1], node[2]}), geodetic, mp.origin,
                                 "maneuver_sets." + name);
        r.push_back(n);
      }
      set.rows.push_back(std::move(r));
    }
    mp.maneuver_sets.emplace(set.maneuver, std::move(set));
  }

  if (j.contains("road_polygon")) {
    mp.road_polygon = parse_points(j.at("road_polygon"), geodetic, mp.origin, "road_polygon");
  }
  if (j.contains("units")) {
    for (const auto& [name, p] : j.at("units").items()) {
      mp.units.emplace(name, parse_point(p, geodetic, mp.origin, "units." + name));
    }
  }

  // bounding-box sanity: outside road polygon bbox + 50 m is suspicious but
  // not fatal
  if (!mp.road_polygon.empty()) {
    double xmin = mp.road_polygon[0].x, xmax = xmin;
    double ymin = mp.road_polygon[0].y, ymax = ymin;
    for (const Point2& p : mp.road_polygon) {
      xmin = std::min(xmin, p.x); xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y); ymax = std::max(ymax, p.y);
    }
    const double m = 50.0;
    auto check = [&](const Point2& p, const std::string& what) {
      if (p.x < xmin - m || p.x > xmax + m || p.y < ymin - m || p.y > ymax + m) {
        mp.warnings.push_back(what + " lies outside road_polygon bbox + 50 m");
      }
    };
    for (const auto& [name, cl] : mp.centerlines) {
      for (const Point2& p : cl.points()) check(p, "centerline " + name);
    }
    for (std::size_t i = 0; i < mp.statics.size(); ++i) {
      for (const Point2& p : mp.statics[i].geometry.pts) {
        check(p, "static[" + std::to_string(i) + "]");
      }
    }
    for (const auto& [man, set] : mp.maneuver_sets) {
      for (const auto& row : set.rows) {
        for (const auto& n : row) {
          check(n.position, std::string("maneuver_sets.") + to_string(man));
        }
      }
    }
  }
  return mp;
}

std::vector<Frame> load_frames(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open frames: " + path);
  std::vector<Frame> frames;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    Frame f = parse_frame_json(j, path + ":" + std::to_string(lineno));
    if (!frames.empty() && !(f.t > frames.back().t)) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": timestamps must be strictly increasing");
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

}  // namespace riskocc
