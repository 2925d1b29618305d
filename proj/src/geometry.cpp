#include "riskocc/geometry.hpp"

#include <algorithm>
#include <numbers>

namespace riskocc {

namespace {
constexpr double kEarthRadius = 6378137.0;
constexpr double kDegToRad = std::numbers::pi / 180.0;
}  // namespace

double dist_point_point(const Point2& a, const Point2& b) {
  return (a - b).norm();
}

double dist_point_segment(const Point2& p, const DirectedSegment& seg) {
  const Point2 ab = seg.end - seg.start;
  const double len2 = ab.dot(ab);
  if (len2 == 0.0) {
    return dist_point_point(p, seg.start);
  }
  double t = (p - seg.start).dot(ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist_point_point(p, seg.start + ab * t);
}

namespace {

bool segments_intersect(const DirectedSegment& a, const DirectedSegment& b) {
  const Point2 r = a.end - a.start;
  const Point2 s = b.end - b.start;
  const double denom = r.cross(s);
  const Point2 qp = b.start - a.start;
  if (denom == 0.0) return false;  // parallel; endpoint distances cover it
  const double t = qp.cross(s) / denom;
  const double u = qp.cross(r) / denom;
  return t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0;
}

}  // namespace

double dist_segment_segment(const DirectedSegment& a, const DirectedSegment& b) {
  if (segments_intersect(a, b)) return 0.0;
  return std::min(std::min(dist_point_segment(a.start, b), dist_point_segment(a.end, b)),
                  std::min(dist_point_segment(b.start, a), dist_point_segment(b.end, a)));
}

Point2 geodetic_to_local(double lat, double lon, const GeoOrigin& origin) {
  if (!std::isfinite(lat) || !std::isfinite(lon) ||
      !std::isfinite(origin.lat) || !std::isfinite(origin.lon)) {
    throw std::invalid_argument("geodetic_to_local: non-finite input");
  }
  const double x = kEarthRadius * (lon - origin.lon) * kDegToRad *
                   std::cos(origin.lat * kDegToRad);
  const double y = kEarthRadius * (lat - origin.lat) * kDegToRad;
  return {x, y};
}

Centerline::Centerline(std::vector<Point2> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw std::invalid_argument("centerline needs at least 2 points");
  }
  arc_.resize(points_.size());
  arc_[0] = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double step = dist_point_point(points_[i - 1], points_[i]);
    if (step <= 0.0) {
      throw std::invalid_argument("centerline has repeated consecutive points");
    }
    arc_[i] = arc_[i - 1] + step;
  }
}

FrenetCoord Centerline::project(const Point2& p) const {
  double best_dist = std::numeric_limits<double>::infinity();
  FrenetCoord best{};
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const Point2 a = points_[i];
    const Point2 ab = points_[i + 1] - a;
    const double len = arc_[i + 1] - arc_[i];
    double t = (p - a).dot(ab) / (len * len);
    t = std::clamp(t, 0.0, 1.0);
    const Point2 foot = a + ab * t;
    const double dist = dist_point_point(p, foot);
    if (dist < best_dist) {  // strict: ties keep the earlier segment
      best_dist = dist;
      const Point2 unit = ab * (1.0 / len);
      best.s = arc_[i] + t * len;
      best.d = unit.cross(p - foot);
    }
  }
  return best;
}

std::size_t Centerline::segment_at(double s) const {
  const auto it = std::upper_bound(arc_.begin(), arc_.end(), s);
  std::size_t i = static_cast<std::size_t>(it - arc_.begin());
  if (i > 0) --i;
  return std::min(i, points_.size() - 2);
}

Point2 Centerline::to_cartesian(const FrenetCoord& fc) const {
  const double s = std::clamp(fc.s, 0.0, length());
  const std::size_t i = segment_at(s);
  const Point2 a = points_[i];
  const Point2 ab = points_[i + 1] - a;
  const double len = arc_[i + 1] - arc_[i];
  const Point2 unit = ab * (1.0 / len);
  const Point2 left{-unit.y, unit.x};
  const double t = (s - arc_[i]) / len;
  return a + ab * t + left * fc.d;
}

Point2 Centerline::tangent_at(double s) const {
  const std::size_t i = segment_at(std::clamp(s, 0.0, length()));
  const Point2 ab = points_[i + 1] - points_[i];
  return ab * (1.0 / (arc_[i + 1] - arc_[i]));
}

}  // namespace riskocc
