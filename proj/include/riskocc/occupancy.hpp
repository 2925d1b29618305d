#pragma once

#include <string>
#include <vector>

#include "riskocc/risk_model.hpp"

namespace riskocc {

struct SamplePoint {
  int row = 0;  // station index along the road direction
  int col = 0;  // lateral index, increasing leftward
  Point2 position;
  FrenetCoord frenet;
};

struct RiskGrid {
  double timestamp = 0.0;
  double resolution = 0.0;
  std::vector<SamplePoint> samples;
  std::vector<double> risks;  // aligned with samples

  // index of the nearest sample to p, or -1 when none is within max_dist
  int nearest_sample(const Point2& p, double max_dist) const;
};

// Uniform grid over the road: rows at stations 0, r, 2r, ... <= L and
// columns at lateral offsets -W..+W in steps of r. Positions come from the
// inverse Frenet mapping so the layout follows curved centerlines.
std::vector<SamplePoint> layout_samples(const Centerline& cl,
                                        double road_half_width,
                                        double resolution);

RiskGrid compute_map(const std::vector<SamplePoint>& samples, const Frame& frame,
                     std::span<const StaticFactor> statics, const RiskConfig& cfg,
                     double resolution);

// `row,col,x,y,risk` header plus one 6-decimal line per sample.
std::string grid_to_csv(const RiskGrid& grid);

// P5 grayscale raster, min-max normalized (fixed_scale maps risk 0..2
// linearly instead, for cross-frame comparability). Throws ValidationError
// when the grid is not a complete rectangle of (row, col) indices.
std::string grid_to_pgm(const RiskGrid& grid, bool fixed_scale = false);

// Rectangular view of a grid: risk per (row, col), row-major with row_min
// emitted first and col_min leftmost. Throws ValidationError when the
// (row, col) set is not a complete rectangle.
struct GridRaster {
  int row_min = 0, row_max = 0, col_min = 0, col_max = 0;
  std::vector<double> cells;

  int width() const { return col_max - col_min + 1; }
  int height() const { return row_max - row_min + 1; }
};

GridRaster rasterize(const RiskGrid& grid);

// normalization bounds: min-max per grid, or the fixed 0..2 scale
std::pair<double, double> raster_bounds(const GridRaster& raster, bool fixed_scale);

}  // namespace riskocc
