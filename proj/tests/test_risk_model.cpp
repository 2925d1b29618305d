#include <doctest.h>

#include <random>

#include "riskocc/risk_model.hpp"

using namespace riskocc;

namespace {

const RiskConfig kCfg{};

// Independent brute-force accumulation: same formulas re-coded from scratch
// without reusing the library's distance or risk helpers. Used as the
// oracle for point_risk.
double oracle_point_dist(double px, double py, double qx, double qy) {
  return std::sqrt((px - qx) * (px - qx) + (py - qy) * (py - qy));
}

double oracle_seg_dist(double px, double py, double ax, double ay, double bx,
                       double by) {
  const double abx = bx - ax, aby = by - ay;
  const double len2 = abx * abx + aby * aby;
  if (len2 == 0.0) return oracle_point_dist(px, py, ax, ay);
  double t = ((px - ax) * abx + (py - ay) * aby) / len2;
  if (t < 0.0) t = 0.0;
  if (t > 1.0) t = 1.0;
  return oracle_point_dist(px, py, ax + t * abx, ay + t * aby);
}

double oracle_risk(const Point2& p, const Frame& frame,
                   const std::vector<StaticFactor>& statics,
                   const RiskConfig& cfg) {
  double total = 0.0;
  for (const DynamicObject& dyn : frame.dynamics) {
    const double fx = dyn.position.x + dyn.speed * cfg.horizon * std::cos(dyn.heading);
    const double fy = dyn.position.y + dyn.speed * cfg.horizon * std::sin(dyn.heading);
    const double gate =
        oracle_seg_dist(p.x, p.y, dyn.position.x, dyn.position.y, fx, fy);
    if (gate > cfg.dynamic_radius) continue;
    const double eta_v = oracle_point_dist(p.x, p.y, dyn.position.x, dyn.position.y) /
                         (dyn.speed + cfg.speed_epsilon);
    double r;
    if (eta_v > 3.0) {
      r = 0.5;
    } else {
      r = 0.0667 * eta_v * eta_v * eta_v - 0.3 * eta_v * eta_v + 0.0333 * eta_v + 1.0;
      if (r > 1.0) r = 1.0;
      if (r < 0.0) r = 0.0;
    }
    total += r * cfg.weights.dynamic(dyn.category);
  }
  for (const StaticFactor& f : statics) {
    double d = std::numeric_limits<double>::infinity();
    if (f.geometry.kind == GeometryKind::polyline && f.geometry.pts.size() >= 2) {
      for (std::size_t i = 0; i + 1 < f.geometry.pts.size(); ++i) {
        d = std::min(d, oracle_seg_dist(p.x, p.y, f.geometry.pts[i].x,
                                        f.geometry.pts[i].y, f.geometry.pts[i + 1].x,
                                        f.geometry.pts[i + 1].y));
      }
    } else {
      for (const Point2& q : f.geometry.pts) {
        d = std::min(d, oracle_point_dist(p.x, p.y, q.x, q.y));
      }
    }
    if (d <= cfg.static_radius) total += f.risk_value * f.weight;
  }
  return total;
}

Frame random_frame(std::mt19937& rng, int max_dynamics) {
  std::uniform_real_distribution<double> pos(-20.0, 20.0);
  std::uniform_real_distribution<double> speed(0.0, 15.0);
  std::uniform_real_distribution<double> heading(-3.14, 3.14);
  std::uniform_int_distribution<int> count(0, max_dynamics);
  std::uniform_int_distribution<int> cat(0, 3);
  Frame f;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    DynamicObject d;
    d.id = "dyn-" + std::to_string(i);
    d.category = static_cast<ParticipantCategory>(cat(rng));
    d.position = {pos(rng), pos(rng)};
    d.speed = speed(rng);
    d.heading = heading(rng);
    f.dynamics.push_back(d);
  }
  return f;
}

std::vector<StaticFactor> random_statics(std::mt19937& rng, int max_statics) {
  std::uniform_real_distribution<double> pos(-20.0, 20.0);
  std::uniform_real_distribution<double> rv(0.0, 1.0);
  std::uniform_int_distribution<int> count(0, max_statics);
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<int> shape(0, 2);
  std::vector<StaticFactor> out;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    StaticFactor f;
    f.kind = static_cast<StaticKind>(kind(rng));
    f.risk_value = rv(rng);
    f.weight = 0.1 + 0.5 * rv(rng);
    const int s = shape(rng);
    if (s == 0) {
      f.geometry.kind = GeometryKind::point;
      f.geometry.pts = {{pos(rng), pos(rng)}};
    } else if (s == 1) {
      f.geometry.kind = GeometryKind::points;
      f.geometry.pts = {{pos(rng), pos(rng)}, {pos(rng), pos(rng)}};
    } else {
      f.geometry.kind = GeometryKind::polyline;
      f.geometry.pts = {{pos(rng), pos(rng)}, {pos(rng), pos(rng)}, {pos(rng), pos(rng)}};
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace

TEST_CASE("eta with the epsilon guard") {
  CHECK(eta(10.0, 5.0, kCfg) == doctest::Approx(10.0 / 5.01));
  CHECK(eta(0.0, 7.3, kCfg) == 0.0);
  CHECK(eta(1.0, 0.0, kCfg) == doctest::Approx(100.0));
}

TEST_CASE("dynamic risk curve") {
  CHECK(dynamic_risk(0.0, kCfg) == 1.0);
  CHECK(dynamic_risk(1.0, kCfg) == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(dynamic_risk(3.0, kCfg) == doctest::Approx(0.2008).epsilon(1e-4));
  CHECK(dynamic_risk(3.5, kCfg) == 0.5);
}

TEST_CASE("dynamic risk clamps the cubic's overshoot") {
  // the raw cubic peaks slightly above 1 near eta = 0.057
  RiskConfig raw = kCfg;
  raw.clamp_dynamic = false;
  CHECK(dynamic_risk(0.057, raw) > 1.0);
  CHECK(dynamic_risk(0.057, kCfg) == 1.0);
  for (double e = 0.0; e <= 3.0; e += 1e-3) {
    CHECK(dynamic_risk(e, kCfg) <= 1.0);
  }
}

TEST_CASE("dynamic risk is non-increasing between the cubic's critical points") {
  double prev = dynamic_risk(0.06, kCfg);
  for (double e = 0.06 + 1e-3; e <= 2.94; e += 1e-3) {
    const double cur = dynamic_risk(e, kCfg);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("static risk is a step function") {
  StaticFactor curb;
  curb.kind = StaticKind::curb;
  curb.risk_value = 0.5;
  curb.weight = 0.5;
  CHECK(static_risk(0.4, curb, kCfg) == 0.5);
  CHECK(static_risk(1.0, curb, kCfg) == 0.5);  // boundary inclusive
  CHECK(static_risk(1.5, curb, kCfg) == 0.0);
}

TEST_CASE("point risk base cases") {
  const Frame empty;
  CHECK(point_risk({0, 0}, empty, {}, kCfg) == 0.0);

  // a stationary vehicle 1 m away contributes exactly 0.5 * weight
  Frame f;
  f.dynamics.push_back({"v", ParticipantCategory::small_vehicle, {1, 0}, 0.0, 0.0});
  CHECK(point_risk({0, 0}, f, {}, kCfg) == doctest::Approx(0.5 * 0.7).epsilon(1e-12));
}

TEST_CASE("point risk is additive over disjoint object sets") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    Frame a = random_frame(rng, 5);
    Frame b = random_frame(rng, 5);
    auto sa = random_statics(rng, 5);
    auto sb = random_statics(rng, 5);
    Frame both = a;
    for (auto d : b.dynamics) {
      d.id += "-b";
      both.dynamics.push_back(d);
    }
    auto statics_both = sa;
    statics_both.insert(statics_both.end(), sb.begin(), sb.end());
    const Point2 p{0, 0};
    CHECK(point_risk(p, both, statics_both, kCfg) ==
          doctest::Approx(point_risk(p, a, sa, kCfg) + point_risk(p, b, sb, kCfg))
              .epsilon(1e-12));
  }
}

TEST_CASE("point risk matches the brute-force oracle on randomized scenes") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> pos(-20.0, 20.0);
  for (int scene = 0; scene < 100; ++scene) {
    const Frame f = random_frame(rng, 10);
    const auto statics = random_statics(rng, 10);
    for (int k = 0; k < 20; ++k) {
      const Point2 p{pos(rng), pos(rng)};
      const double got = point_risk(p, f, statics, kCfg);
      const double want = oracle_risk(p, f, statics, kCfg);
      CHECK(std::abs(got - want) < 1e-12);
    }
  }
}

TEST_CASE("weight ordering makes a pedestrian riskier than a small vehicle") {
  Frame ped, car;
  ped.dynamics.push_back({"p", ParticipantCategory::pedestrian, {1.5, 0}, 2.0, 0.0});
  car.dynamics.push_back({"c", ParticipantCategory::small_vehicle, {1.5, 0}, 2.0, 0.0});
  CHECK(point_risk({0, 0}, ped, {}, kCfg) > point_risk({0, 0}, car, {}, kCfg));
}
