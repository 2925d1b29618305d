#pragma once

#include <array>
#include <string>
#include <vector>

#include "riskocc/occupancy.hpp"

namespace riskocc {

enum class SearchStrategy { local, global };

struct PlannerConfig {
  double risk_threshold = 0.4;
  double w_risk = 0.7;
  double w_dis = 0.3;
  SearchStrategy strategy = SearchStrategy::local;
  int kernel_size = 5;        // odd
  double sigma = 1.0;         // in node-index units
  double resample_step = 0.5; // meters

  void validate() const {
    if (!(risk_threshold > 0.0)) throw ConfigError("risk_threshold must be > 0");
    if (w_risk < 0.0 || w_dis < 0.0 || (w_risk == 0.0 && w_dis == 0.0)) {
      throw ConfigError("w_risk/w_dis must be >= 0 and not both 0");
    }
    if (kernel_size < 1 || kernel_size % 2 == 0) {
      throw ConfigError("kernel_size must be an odd integer >= 1");
    }
    if (!(sigma > 0.0) || !(resample_step > 0.0)) {
      throw ConfigError("sigma and resample_step must be > 0");
    }
  }
};

struct FreeNode {
  int col = 0;
  Point2 position;
  double risk = 0.0;
};

// Per-frame subset of a preset maneuver node set whose risk is below the
// threshold. Empty rows are retained so row indices stay aligned with the
// preset set; row_refs keeps each original row's centroid for start-row
// selection even when the row is fully filtered out.
struct FreeNodeSet {
  Maneuver maneuver = Maneuver::straight;
  std::vector<std::vector<FreeNode>> rows;
  std::vector<Point2> row_refs;
  Point2 dest;
};

FreeNodeSet collision_free(const ManeuverNodeSet& nodes, const RiskGrid& grid,
                           double threshold);

// Column deltas a hop may take, by maneuver. Columns increase leftward, so
// a left turn may keep straight or move up to two columns left; right
// mirrors it; straight may shift one column either way.
std::array<int, 3> allowed_dcol(Maneuver m);

// Indices into free_set.rows[row + 1] reachable from (row, col).
std::vector<std::size_t> successors(const FreeNodeSet& free_set,
                                    std::size_t row, int col);

double score(const Point2& sample, double risk, const Point2& icv,
             const Point2& dest, const PlannerConfig& cfg);

enum class PathStatus { reached, exhausted };

struct RawPathNode {
  int row = 0;
  int col = 0;
  Point2 position;
  double risk = 0.0;
};

struct PlannedPath {
  std::vector<RawPathNode> raw_nodes;
  std::vector<Point2> smoothed;
  PathStatus status = PathStatus::exhausted;
  double total_cost = 0.0;
};

PlannedPath plan_local(const FreeNodeSet& free_set, const Point2& icv,
                       const Point2& dest, const PlannerConfig& cfg);
PlannedPath plan_global(const FreeNodeSet& free_set, const Point2& icv,
                        const Point2& dest, const PlannerConfig& cfg);
PlannedPath plan(const FreeNodeSet& free_set, const Point2& icv,
                 const Point2& dest, const PlannerConfig& cfg);

// Truncated-and-renormalized Gaussian average over node indices; first and
// last points are pinned.
std::vector<Point2> gaussian_smooth(const std::vector<Point2>& pts,
                                    int kernel_size, double sigma);

// Arc-length resampling through the points with Catmull-Rom segments;
// endpoints are emitted exactly.
std::vector<Point2> resample_path(const std::vector<Point2>& pts, double step);

std::vector<Point2> smooth(const std::vector<RawPathNode>& raw,
                           const PlannerConfig& cfg);

}  // namespace riskocc
