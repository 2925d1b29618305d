#pragma once

#include <array>
#include <string>
#include <vector>

#include "riskocc/occupancy.hpp"
#include "riskocc/planner.hpp"

namespace riskocc {

// 5-stop linear colormap over normalized risk, low to high:
//   0.00 dark blue (0,0,96)   0.25 blue (0,64,255)   0.50 yellow (255,255,0)
//   0.75 orange (255,128,0)   1.00 dark red (128,0,0)
std::array<unsigned char, 3> risk_color(double normalized);

// P6 color raster of the grid through the colormap, same rectangle rule and
// normalization modes as grid_to_pgm.
std::string grid_to_ppm(const RiskGrid& grid, bool fixed_scale = false);

// Colormap raster with planned-path nodes drawn as 3x3 pure-yellow squares.
std::string grid_to_ppm_overlay(const RiskGrid& grid, const PlannedPath& path,
                                bool fixed_scale = false);

}  // namespace riskocc
