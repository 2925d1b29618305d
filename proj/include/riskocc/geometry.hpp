#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace riskocc {

// Local Cartesian frame: x east, y north, meters.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double k) const { return {x * k, y * k}; }
  double dot(const Point2& o) const { return x * o.x + y * o.y; }
  double cross(const Point2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

// Zero length is allowed; the segment degenerates to a point.
struct DirectedSegment {
  Point2 start;
  Point2 end;

  double length() const { return (end - start).norm(); }
};

// Station along a centerline plus signed lateral offset, positive to the
// left of the travel direction.
struct FrenetCoord {
  double s = 0.0;
  double d = 0.0;
};

double dist_point_point(const Point2& a, const Point2& b);
double dist_point_segment(const Point2& p, const DirectedSegment& seg);
double dist_segment_segment(const DirectedSegment& a, const DirectedSegment& b);

// Equirectangular local tangent plane, spherical earth radius 6378137 m.
// Accurate to sub-centimeter at intersection scale (< 0.1 deg extents).
struct GeoOrigin {
  double lat = 0.0;
  double lon = 0.0;
};

Point2 geodetic_to_local(double lat, double lon, const GeoOrigin& origin);

// Piecewise-linear road centerline with cached cumulative arc length.
class Centerline {
 public:
  explicit Centerline(std::vector<Point2> points);

  const std::vector<Point2>& points() const { return points_; }
  double length() const { return arc_.back(); }

  // Nearest-point projection onto the polyline. s is clamped to [0, L];
  // d is the signed offset against the local segment direction (positive
  // left). Ties between adjacent segments resolve to the smaller s.
  FrenetCoord project(const Point2& p) const;

  // Inverse mapping: point at station s offset d to the left. s is clamped.
  Point2 to_cartesian(const FrenetCoord& fc) const;

  // Unit tangent of the segment containing station s.
  Point2 tangent_at(double s) const;

 private:
  std::vector<Point2> points_;
  std::vector<double> arc_;

  // index of the segment containing station s (clamped)
  std::size_t segment_at(double s) const;
};

inline FrenetCoord frenet_project(const Centerline& cl, const Point2& p) {
  return cl.project(p);
}

}  // namespace riskocc
