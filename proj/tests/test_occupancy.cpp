#include <doctest.h>

#include <random>
#include <sstream>

#include "riskocc/occupancy.hpp"

using namespace riskocc;

namespace {

const RiskConfig kCfg{};

}  // namespace

TEST_CASE("layout_samples counting oracle") {
  // rows = floor(L / r) + 1, cols = 2 * floor(W / r) + 1
  const Centerline cl({{0, 0}, {0, 70}});
  const auto samples = layout_samples(cl, 3.8, 1.9);
  const int rows = static_cast<int>(std::floor(70.0 / 1.9)) + 1;  // 37
  const int cols = 2 * static_cast<int>(std::floor(3.8 / 1.9)) + 1;  // 5
  CHECK(rows == 37);
  CHECK(cols == 5);
  CHECK(samples.size() == static_cast<std::size_t>(rows) * cols);

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> len(5.0, 100.0);
  std::uniform_real_distribution<double> width(1.0, 10.0);
  std::uniform_real_distribution<double> res(0.5, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double L = len(rng), W = width(rng), r = res(rng);
    const Centerline c({{0, 0}, {L, 0}});
    const auto s = layout_samples(c, W, r);
    const std::size_t want =
        (static_cast<std::size_t>(std::floor(L / r + 1e-9)) + 1) *
        (2 * static_cast<std::size_t>(std::floor(W / r + 1e-9)) + 1);
    CHECK(s.size() == want);
  }
}

TEST_CASE("layout_samples positions on a straight centerline") {
  const Centerline cl({{0, -10}, {0, 10}});  // travel is +y, so left is -x
  const auto samples = layout_samples(cl, 1.9, 1.9);
  // first row, columns -1, 0, 1
  REQUIRE(samples.size() >= 3);
  CHECK(samples[0].col == -1);
  CHECK(samples[0].position.x == doctest::Approx(1.9));  // right of travel
  CHECK(samples[0].position.y == doctest::Approx(-10.0));
  CHECK(samples[1].col == 0);
  CHECK(samples[1].position.x == doctest::Approx(0.0));
  CHECK(samples[2].col == 1);
  CHECK(samples[2].position.x == doctest::Approx(-1.9));  // left of travel
}

TEST_CASE("layout_samples follows a curved centerline") {
  const Centerline cl({{0, 0}, {10, 0}, {10, 10}});
  const auto samples = layout_samples(cl, 1.0, 1.0);
  for (const SamplePoint& sp : samples) {
    // inverse mapping must be consistent with projection
    const Point2 back = cl.to_cartesian(sp.frenet);
    CHECK(dist_point_point(back, sp.position) < 1e-9);
  }
  // a sample beyond the bend sits on the second leg
  const SamplePoint& last = samples.back();
  CHECK(last.frenet.s == doctest::Approx(20.0));
  CHECK(last.position.x < 10.1);
}

TEST_CASE("layout_samples rejects bad parameters") {
  const Centerline cl({{0, 0}, {10, 0}});
  CHECK_THROWS_AS(layout_samples(cl, 3.8, 0.0), ValidationError);
  CHECK_THROWS_AS(layout_samples(cl, -1.0, 1.9), ValidationError);
}

TEST_CASE("compute_map matches per-point risk") {
  const Centerline cl({{0, 0}, {0, 20}});
  const auto samples = layout_samples(cl, 1.9, 1.9);
  Frame f;
  f.t = 1.25;
  f.dynamics.push_back({"v", ParticipantCategory::small_vehicle, {1.0, 5.0}, 4.0, 1.57});
  StaticFactor pothole;
  pothole.kind = StaticKind::pothole;
  pothole.geometry = {GeometryKind::point, {{0.5, 10.0}}};
  pothole.risk_value = 0.3;
  pothole.weight = 0.3;
  const std::vector<StaticFactor> statics{pothole};

  const RiskGrid grid = compute_map(samples, f, statics, kCfg, 1.9);
  CHECK(grid.timestamp == 1.25);
  CHECK(grid.resolution == 1.9);
  REQUIRE(grid.risks.size() == samples.size());
  double max_risk = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(grid.risks[i] ==
          doctest::Approx(point_risk(samples[i].position, f, statics, kCfg))
              .epsilon(1e-12));
    CHECK(grid.risks[i] >= 0.0);
    max_risk = std::max(max_risk, grid.risks[i]);
  }
  CHECK(max_risk > 0.0);
}

TEST_CASE("nearest_sample honors the distance cap") {
  const Centerline cl({{0, 0}, {0, 10}});
  RiskGrid grid = compute_map(layout_samples(cl, 1.9, 1.9), {}, {}, kCfg, 1.9);
  const int hit = grid.nearest_sample({0.1, 0.2}, 0.95);
  REQUIRE(hit >= 0);
  CHECK(grid.samples[hit].row == 0);
  CHECK(grid.samples[hit].col == 0);
  CHECK(grid.nearest_sample({50.0, 50.0}, 0.95) == -1);

  RiskGrid empty;
  CHECK(empty.nearest_sample({0, 0}, 1.0) == -1);
}

TEST_CASE("csv export format") {
  RiskGrid grid;
  grid.resolution = 1.0;
  grid.samples = {{0, 0, {1.25, -2.5}, {0, 0}}, {0, 1, {1.0, 3.0}, {0, 1}}};
  grid.risks = {0.123456789, 1.5};
  const std::string csv = grid_to_csv(grid);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "row,col,x,y,risk");
  std::getline(in, line);
  CHECK(line == "0,0,1.250000,-2.500000,0.123457");
  std::getline(in, line);
  CHECK(line == "0,1,1.000000,3.000000,1.500000");
  CHECK(!std::getline(in, line));
}

TEST_CASE("pgm export: header, normalization, round half up") {
  RiskGrid grid;
  grid.resolution = 1.0;
  grid.samples = {{0, 0, {0, 0}, {0, 0}}, {0, 1, {1, 0}, {0, 1}},
                  {1, 0, {0, 1}, {1, 0}}, {1, 1, {1, 1}, {1, 1}}};
  grid.risks = {0.0, 1.0, 0.5, 0.25};
  const std::string pgm = grid_to_pgm(grid);
  CHECK(pgm.substr(0, 11) == "P5\n2 2\n255\n");
  const auto* px = reinterpret_cast<const unsigned char*>(pgm.data() + 11);
  CHECK(px[0] == 0);
  CHECK(px[1] == 255);
  CHECK(px[2] == 128);  // 127.5 rounds half up
  CHECK(px[3] == 64);   // 63.75 rounds to 64

  const std::string fixed = grid_to_pgm(grid, true);
  const auto* fx = reinterpret_cast<const unsigned char*>(fixed.data() + 11);
  CHECK(fx[0] == 0);
  CHECK(fx[1] == 128);  // 1.0 on the 0..2 scale
  CHECK(fx[2] == 64);
  CHECK(fx[3] == 32);
}

TEST_CASE("pgm export on a flat grid is all zero") {
  RiskGrid grid;
  grid.samples = {{0, 0, {0, 0}, {0, 0}}, {0, 1, {1, 0}, {0, 1}}};
  grid.risks = {0.7, 0.7};
  const std::string pgm = grid_to_pgm(grid);
  const auto* px = reinterpret_cast<const unsigned char*>(pgm.data() + 11);
  CHECK(px[0] == 0);
  CHECK(px[1] == 0);
}

TEST_CASE("rasterize rejects holes and duplicates") {
  RiskGrid holes;
  holes.samples = {{0, 0, {0, 0}, {0, 0}}, {1, 1, {1, 1}, {1, 1}}};
  holes.risks = {0.1, 0.2};
  CHECK_THROWS_AS(rasterize(holes), ValidationError);

  RiskGrid dup;
  dup.samples = {{0, 0, {0, 0}, {0, 0}}, {0, 0, {0, 0}, {0, 0}}};
  dup.risks = {0.1, 0.2};
  CHECK_THROWS_AS(rasterize(dup), ValidationError);

  RiskGrid empty;
  CHECK_THROWS_AS(rasterize(empty), ValidationError);
}

TEST_CASE("raster ordering: row_min first, col_min leftmost") {
  RiskGrid grid;
  grid.samples = {{2, -1, {0, 0}, {}}, {2, 0, {0, 0}, {}},
                  {3, -1, {0, 0}, {}}, {3, 0, {0, 0}, {}}};
  grid.risks = {0.1, 0.2, 0.3, 0.4};
  const GridRaster r = rasterize(grid);
  CHECK(r.row_min == 2);
  CHECK(r.col_min == -1);
  CHECK(r.width() == 2);
  CHECK(r.height() == 2);
  CHECK(r.cells == std::vector<double>{0.1, 0.2, 0.3, 0.4});
}
