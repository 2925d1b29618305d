#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "riskocc/scenario.hpp"

using namespace riskocc;

namespace {

const std::string kData = RISKOCC_DATA_DIR;

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("/tmp/riskocc_test_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("enum round trips") {
  for (auto c : {ParticipantCategory::pedestrian, ParticipantCategory::non_motorized,
                 ParticipantCategory::small_vehicle, ParticipantCategory::large_vehicle}) {
    CHECK(participant_category_from_string(to_string(c)) == c);
  }
  for (auto k : {StaticKind::solid_lane_line, StaticKind::curb, StaticKind::guardrail,
                 StaticKind::roadblock, StaticKind::pothole}) {
    CHECK(static_kind_from_string(to_string(k)) == k);
  }
  for (auto m : {Maneuver::left, Maneuver::straight, Maneuver::right}) {
    CHECK(maneuver_from_string(to_string(m)) == m);
  }
  CHECK_THROWS_AS(participant_category_from_string("bicyclist"), ValidationError);
  CHECK_THROWS_AS(maneuver_from_string("u_turn"), ValidationError);
}

TEST_CASE("heading normalization lands in [-pi, pi)") {
  constexpr double pi = 3.14159265358979323846;
  CHECK(normalize_heading(0.0) == 0.0);
  CHECK(normalize_heading(pi) == doctest::Approx(-pi));
  CHECK(normalize_heading(-pi) == doctest::Approx(-pi));
  CHECK(normalize_heading(3 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(normalize_heading(5 * pi) == doctest::Approx(-pi));
  for (double h = -20.0; h <= 20.0; h += 0.37) {
    const double n = normalize_heading(h);
    CHECK(n >= -pi);
    CHECK(n < pi);
    CHECK(std::abs(std::sin(n) - std::sin(h)) < 1e-12);
    CHECK(std::abs(std::cos(n) - std::cos(h)) < 1e-12);
  }
}

TEST_CASE("default weights validate and keep the required ordering") {
  const WeightTable w = default_weights();
  CHECK(w.pedestrian > w.non_motorized);
  CHECK(w.non_motorized > w.large_vehicle);
  CHECK(w.large_vehicle > w.small_vehicle);
  for (const auto& [kind, sd] : w.statics) {
    CHECK(w.small_vehicle > sd.weight);
  }
  CHECK(w.static_kind(StaticKind::curb).weight >
        w.static_kind(StaticKind::pothole).weight);
  CHECK(w.static_kind(StaticKind::guardrail).weight >
        w.static_kind(StaticKind::solid_lane_line).weight);
}

TEST_CASE("weight table rejects ordering violations") {
  WeightTable w = default_weights();
  w.pedestrian = 0.85;  // now below non_motorized
  CHECK_THROWS_AS(w.validate(), ConfigError);

  WeightTable w2 = default_weights();
  w2.statics[StaticKind::curb].weight = 0.2;  // below pothole
  CHECK_THROWS_AS(w2.validate(), ConfigError);

  WeightTable w3 = default_weights();
  w3.statics[StaticKind::roadblock].weight = 0.75;  // above small_vehicle
  CHECK_THROWS_AS(w3.validate(), ConfigError);
}

TEST_CASE("static geometry distance per kind") {
  StaticGeometry poly{GeometryKind::polyline, {{0, 0}, {10, 0}}};
  CHECK(poly.distance_to({5, 3}) == doctest::Approx(3.0));

  StaticGeometry cloud{GeometryKind::points, {{0, 0}, {10, 0}}};
  CHECK(cloud.distance_to({5, 3}) == doctest::Approx(std::sqrt(25.0 + 9.0)));

  StaticGeometry pt{GeometryKind::point, {{2, 2}}};
  CHECK(pt.distance_to({2, 5}) == doctest::Approx(3.0));
}

TEST_CASE("bundled map prior loads cleanly") {
  const MapPrior mp = load_map_prior(kData + "/intersection_dair.json");
  CHECK(mp.centerlines.count("main") == 1);
  CHECK(mp.statics.size() == 5);
  CHECK(mp.maneuver_sets.size() == 3);
  CHECK(mp.units.size() == 2);
  CHECK(mp.warnings.empty());

  const ManeuverNodeSet& straight = mp.maneuver_sets.at(Maneuver::straight);
  // approach rows y = -38..0 step 1.9 (21) plus 15 more to y = 28.5
  CHECK(straight.rows.size() == 36);
  for (const auto& row : straight.rows) {
    CHECK(row.size() == 5);
    for (std::size_t i = 1; i < row.size(); ++i) {
      CHECK(row[i].col > row[i - 1].col);
    }
  }
  CHECK(straight.dest.x == doctest::Approx(0.0));
  CHECK(straight.dest.y == doctest::Approx(28.5));
}

TEST_CASE("bundled frames load with strictly increasing timestamps") {
  const auto frames = load_frames(kData + "/frames_intersection.jsonl");
  CHECK(frames.size() == 4);
  for (std::size_t i = 1; i < frames.size(); ++i) {
    CHECK(frames[i].t > frames[i - 1].t);
  }
  CHECK(frames[0].dynamics.size() == 3);
  CHECK(frames[0].dynamics[2].category == ParticipantCategory::pedestrian);
}

TEST_CASE("frame loading rejects bad input") {
  TempFile dup("dup.jsonl",
               R"({"t": 0, "dynamics": [{"id": "a", "category": "pedestrian", "x": 0, "y": 0, "speed": 1, "heading": 0}, {"id": "a", "category": "pedestrian", "x": 1, "y": 1, "speed": 1, "heading": 0}]})"
               "\n");
  CHECK_THROWS_AS(load_frames(dup.path), ValidationError);

  TempFile back("back.jsonl",
                "{\"t\": 1.0, \"dynamics\": []}\n{\"t\": 0.5, \"dynamics\": []}\n");
  CHECK_THROWS_AS(load_frames(back.path), ValidationError);

  TempFile neg("neg.jsonl",
               R"({"t": 0, "dynamics": [{"id": "a", "category": "pedestrian", "x": 0, "y": 0, "speed": -1, "heading": 0}]})"
               "\n");
  CHECK_THROWS_AS(load_frames(neg.path), ValidationError);

  TempFile junk("junk.jsonl", "not json\n");
  CHECK_THROWS_AS(load_frames(junk.path), ParseError);

  CHECK_THROWS_AS(load_frames("/nonexistent/frames.jsonl"), ParseError);
}

TEST_CASE("frame loading converts degree headings") {
  TempFile deg("deg.jsonl",
               R"({"t": 0, "degrees": true, "dynamics": [{"id": "a", "category": "pedestrian", "x": 0, "y": 0, "speed": 1, "heading": 90}]})"
               "\n");
  const auto frames = load_frames(deg.path);
  CHECK(frames[0].dynamics[0].heading == doctest::Approx(3.14159265358979 / 2));
}

TEST_CASE("map prior validation failures") {
  TempFile no_sets("nosets.json",
                   R"({"origin": {"lat": 0, "lon": 0}, "maneuver_sets": {}})");
  CHECK_THROWS_AS(load_map_prior(no_sets.path), ValidationError);

  TempFile bad_cols("badcols.json", R"({
    "origin": {"lat": 0, "lon": 0},
    "maneuver_sets": {"straight": {"dest": [0, 10],
      "rows": [[[1, 0, 0], [0, 1, 0]]]}}})");
  CHECK_THROWS_AS(load_map_prior(bad_cols.path), ValidationError);

  TempFile bad_rv("badrv.json", R"({
    "origin": {"lat": 0, "lon": 0},
    "statics": [{"kind": "curb", "geometry": {"point": [0, 0]},
                 "risk_value": 1.5, "weight": 0.5}],
    "maneuver_sets": {"straight": {"dest": [0, 10], "rows": [[[0, 0, 0]]]}}})");
  CHECK_THROWS_AS(load_map_prior(bad_rv.path), ValidationError);

  CHECK_THROWS_AS(load_map_prior("/nonexistent/map.json"), ParseError);
}

TEST_CASE("map prior geodetic mode converts coordinates") {
  TempFile geo("geo.json", R"({
    "coords": "geodetic",
    "origin": {"lat": 0, "lon": 0},
    "maneuver_sets": {"straight": {"dest": [1e-5, 0],
      "rows": [[[0, 0, 0]], [[0, 1e-5, 0]]]}}})");
  const MapPrior mp = load_map_prior(geo.path);
  const auto& set = mp.maneuver_sets.at(Maneuver::straight);
  CHECK(set.rows[1][0].position.y == doctest::Approx(1.11319).epsilon(1e-4));
  CHECK(set.rows[1][0].position.x == doctest::Approx(0.0));
}

TEST_CASE("map prior warns about far-off geometry") {
  TempFile far("far.json", R"({
    "origin": {"lat": 0, "lon": 0},
    "road_polygon": [[-10, -10], [10, -10], [10, 10], [-10, 10]],
    "statics": [{"kind": "pothole", "geometry": {"point": [500, 0]},
                 "risk_value": 0.3, "weight": 0.3}],
    "maneuver_sets": {"straight": {"dest": [0, 10], "rows": [[[0, 0, 0]]]}}})");
  const MapPrior mp = load_map_prior(far.path);
  REQUIRE(mp.warnings.size() == 1);
  CHECK(mp.warnings[0].find("static[0]") != std::string::npos);
}
