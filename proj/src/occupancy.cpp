#include "riskocc/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace riskocc {

int RiskGrid::nearest_sample(const Point2& p, double max_dist) const {
  int best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double d = dist_point_point(samples[i].position, p);
    if (d < best_dist) {
      best_dist = d;
      best = static_cast<int>(i);
    }
  }
  return best_dist <= max_dist ? best : -1;
}

std::vector<SamplePoint> layout_samples(const Centerline& cl,
                                        double road_half_width,
                                        double resolution) {
  if (!(resolution > 0.0) || !(road_half_width > 0.0)) {
    throw ValidationError("layout_samples: resolution and half width must be > 0");
  }
  const double L = cl.length();
  const int n_rows = static_cast<int>(std::floor(L / resolution + 1e-9)) + 1;
  const int half_cols = static_cast<int>(std::floor(road_half_width / resolution + 1e-9));

  std::vector<SamplePoint> samples;
  samples.reserve(static_cast<std::size_t>(n_rows) * (2 * half_cols + 1));
  for (int row = 0; row < n_rows; ++row) {
    const double s = row * resolution;
    for (int col = -half_cols; col <= half_cols; ++col) {
      SamplePoint sp;
      sp.row = row;
      sp.col = col;
      sp.frenet = {s, col * resolution};
      sp.position = cl.to_cartesian(sp.frenet);
      samples.push_back(sp);
    }
  }
  return samples;
}

RiskGrid compute_map(const std::vector<SamplePoint>& samples, const Frame& frame,
                     std::span<const StaticFactor> statics, const RiskConfig& cfg,
                     double resolution) {
  std::vector<DirectedSegment> segments;
  segments.reserve(frame.dynamics.size());
  for (const DynamicObject& dyn : frame.dynamics) {
    segments.push_back(project_future(dyn, cfg.horizon));
  }

  RiskGrid grid;
  grid.timestamp = frame.t;
  grid.resolution = resolution;
  grid.samples = samples;
  grid.risks.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    grid.risks[i] = point_risk(samples[i].position, frame, segments, statics, cfg);
  }
  return grid;
}

std::string grid_to_csv(const RiskGrid& grid) {
  std::string out = "row,col,x,y,risk\n";
  char buf[160];
  for (std::size_t i = 0; i < grid.samples.size(); ++i) {
    const SamplePoint& sp = grid.samples[i];
    std::snprintf(buf, sizeof(buf), "%d,%d,%.6f,%.6f,%.6f\n", sp.row, sp.col,
                  sp.position.x, sp.position.y, grid.risks[i]);
    out += buf;
  }
  return out;
}

GridRaster rasterize(const RiskGrid& grid) {
  if (grid.samples.empty()) throw ValidationError("cannot rasterize an empty grid");
  GridRaster r{grid.samples[0].row, grid.samples[0].row,
               grid.samples[0].col, grid.samples[0].col, {}};
  for (const SamplePoint& sp : grid.samples) {
    r.row_min = std::min(r.row_min, sp.row);
    r.row_max = std::max(r.row_max, sp.row);
    r.col_min = std::min(r.col_min, sp.col);
    r.col_max = std::max(r.col_max, sp.col);
  }
  const std::size_t n = static_cast<std::size_t>(r.width()) * r.height();
  if (n != grid.samples.size()) {
    throw ValidationError("grid is not rectangular; only CSV export is available");
  }
  r.cells.assign(n, -1.0);
  for (std::size_t i = 0; i < grid.samples.size(); ++i) {
    const SamplePoint& sp = grid.samples[i];
    const std::size_t idx = static_cast<std::size_t>(sp.row - r.row_min) * r.width() +
                            (sp.col - r.col_min);
    if (r.cells[idx] >= 0.0) {
      throw ValidationError("grid has duplicate (row, col) indices");
    }
    r.cells[idx] = grid.risks[i];
  }
  return r;
}

std::pair<double, double> raster_bounds(const GridRaster& raster, bool fixed_scale) {
  if (fixed_scale) return {0.0, 2.0};
  return {*std::min_element(raster.cells.begin(), raster.cells.end()),
          *std::max_element(raster.cells.begin(), raster.cells.end())};
}

std::string grid_to_pgm(const RiskGrid& grid, bool fixed_scale) {
  const GridRaster r = rasterize(grid);
  const auto [lo, hi] = raster_bounds(r, fixed_scale);
  std::string out = "P5\n" + std::to_string(r.width()) + " " +
                    std::to_string(r.height()) + "\n255\n";
  out.reserve(out.size() + r.cells.size());
  for (double risk : r.cells) {
    double norm = 0.0;
    if (hi > lo) norm = std::clamp((risk - lo) / (hi - lo), 0.0, 1.0);
    // round half up
    out.push_back(static_cast<char>(
        static_cast<unsigned char>(std::floor(norm * 255.0 + 0.5))));
  }
  return out;
}

}  // namespace riskocc
