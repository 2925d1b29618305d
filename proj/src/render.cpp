#include "riskocc/render.hpp"

#include <algorithm>
#include <cmath>

namespace riskocc {

namespace {

struct Stop {
  double at;
  std::array<double, 3> rgb;
};

constexpr std::array<Stop, 5> kStops{{
    {0.00, {0, 0, 96}},
    {0.25, {0, 64, 255}},
    {0.50, {255, 255, 0}},
    {0.75, {255, 128, 0}},
    {1.00, {128, 0, 0}},
}};

unsigned char quantize(double v) {
  return static_cast<unsigned char>(std::floor(std::clamp(v, 0.0, 255.0) + 0.5));
}

std::string ppm_pixels(const RiskGrid& grid, bool fixed_scale,
                       const PlannedPath* path) {
  const GridRaster r = rasterize(grid);
  const auto [lo, hi] = raster_bounds(r, fixed_scale);
  std::string out = "P6\n" + std::to_string(r.width()) + " " +
                    std::to_string(r.height()) + "\n255\n";
  std::vector<std::array<unsigned char, 3>> pixels(r.cells.size());
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    double norm = 0.0;
    if (hi > lo) norm = std::clamp((r.cells[i] - lo) / (hi - lo), 0.0, 1.0);
    pixels[i] = risk_color(norm);
  }
  if (path != nullptr) {
    for (const RawPathNode& n : path->raw_nodes) {
      const int pi = n.row - r.row_min;
      const int pj = n.col - r.col_min;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          const int ii = pi + di;
          const int jj = pj + dj;
          if (ii < 0 || ii >= r.height() || jj < 0 || jj >= r.width()) continue;
          pixels[static_cast<std::size_t>(ii) * r.width() + jj] = {255, 255, 0};
        }
      }
    }
  }
  for (const auto& px : pixels) {
    out.push_back(static_cast<char>(px[0]));
    out.push_back(static_cast<char>(px[1]));
    out.push_back(static_cast<char>(px[2]));
  }
  return out;
}

}  // namespace

std::array<unsigned char, 3> risk_color(double normalized) {
  const double v = std::clamp(normalized, 0.0, 1.0);
  for (std::size_t i = 0; i + 1 < kStops.size(); ++i) {
    if (v <= kStops[i + 1].at) {
      const double t = (v - kStops[i].at) / (kStops[i + 1].at - kStops[i].at);
      std::array<unsigned char, 3> rgb{};
      for (int c = 0; c < 3; ++c) {
        rgb[static_cast<std::size_t>(c)] = quantize(
            kStops[i].rgb[static_cast<std::size_t>(c)] * (1.0 - t) +
            kStops[i + 1].rgb[static_cast<std::size_t>(c)] * t);
      }
      return rgb;
    }
  }
  return {128, 0, 0};
}

std::string grid_to_ppm(const RiskGrid& grid, bool fixed_scale) {
  return ppm_pixels(grid, fixed_scale, nullptr);
}

std::string grid_to_ppm_overlay(const RiskGrid& grid, const PlannedPath& path,
                                bool fixed_scale) {
  return ppm_pixels(grid, fixed_scale, &path);
}

}  // namespace riskocc
