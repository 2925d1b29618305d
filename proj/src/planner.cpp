#include "riskocc/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace riskocc {

FreeNodeSet collision_free(const ManeuverNodeSet& nodes, const RiskGrid& grid,
                           double threshold) {
  // Spatial hash over the grid samples; the lookup radius (resolution/2) is
  // at most one cell, so a 3x3 neighborhood always contains the nearest
  // in-radius sample. Bucket key collisions only add candidates, never hide
  // one.
  const double cell = grid.resolution > 0.0 ? grid.resolution : 1.0;
  const double radius = grid.resolution / 2.0;
  std::unordered_map<long long, std::vector<std::size_t>> buckets;
  auto bucket_key = [](long long ix, long long iy) {
    return ix * 73856093LL + iy * 19349663LL;
  };
  buckets.reserve(grid.samples.size());
  for (std::size_t i = 0; i < grid.samples.size(); ++i) {
    const Point2& p = grid.samples[i].position;
    buckets[bucket_key(static_cast<long long>(std::floor(p.x / cell)),
                       static_cast<long long>(std::floor(p.y / cell)))]
        .push_back(i);
  }
  auto nearest_in_radius = [&](const Point2& p) -> int {
    const auto ix = static_cast<long long>(std::floor(p.x / cell));
    const auto iy = static_cast<long long>(std::floor(p.y / cell));
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        const auto it = buckets.find(bucket_key(ix + dx, iy + dy));
        if (it == buckets.end()) continue;
        for (std::size_t i : it->second) {
          const double d = dist_point_point(grid.samples[i].position, p);
          if (d < best_dist) {
            best_dist = d;
            best = static_cast<int>(i);
          }
        }
      }
    }
    return best_dist <= radius ? best : -1;
  };

  FreeNodeSet out;
  out.maneuver = nodes.maneuver;
  out.dest = nodes.dest;
  out.rows.resize(nodes.rows.size());
  out.row_refs.resize(nodes.rows.size());
  for (std::size_t r = 0; r < nodes.rows.size(); ++r) {
    Point2 centroid{};
    for (const ManeuverNode& n : nodes.rows[r]) {
      const int idx = nearest_in_radius(n.position);
      if (idx < 0) {
        throw ValidationError("collision_free: node row " + std::to_string(r) +
                              " col " + std::to_string(n.col) +
                              " has no grid sample within resolution/2");
      }
      const double risk = grid.risks[static_cast<std::size_t>(idx)];
      if (risk < threshold) {
        out.rows[r].push_back({n.col, n.position, risk});
      }
      centroid = centroid + n.position;
    }
    if (!nodes.rows[r].empty()) {
      centroid = centroid * (1.0 / static_cast<double>(nodes.rows[r].size()));
    }
    out.row_refs[r] = centroid;
  }
  return out;
}

std::array<int, 3> allowed_dcol(Maneuver m) {
  switch (m) {
    case Maneuver::left: return {0, 1, 2};
    case Maneuver::right: return {0, -1, -2};
    case Maneuver::straight: return {-1, 0, 1};
  }
  return {0, 0, 0};
}

std::vector<std::size_t> successors(const FreeNodeSet& free_set,
                                    std::size_t row, int col) {
  std::vector<std::size_t> out;
  if (row + 1 >= free_set.rows.size()) return out;
  const auto allowed = allowed_dcol(free_set.maneuver);
  const auto& next = free_set.rows[row + 1];
  for (std::size_t i = 0; i < next.size(); ++i) {
    const int dcol = next[i].col - col;
    if (std::find(allowed.begin(), allowed.end(), dcol) != allowed.end()) {
      out.push_back(i);
    }
  }
  return out;
}

double score(const Point2& sample, double risk, const Point2& icv,
             const Point2& dest, const PlannerConfig& cfg) {
  const double base = dist_point_point(icv, dest);
  if (base == 0.0) {
    throw ValidationError("score: icv coincides with dest (degenerate request)");
  }
  return cfg.w_risk * risk + cfg.w_dis * dist_point_point(sample, dest) / base;
}

namespace {

std::size_t pick_start_row(const FreeNodeSet& free_set, const Point2& icv) {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < free_set.row_refs.size(); ++r) {
    const double d = dist_point_point(icv, free_set.row_refs[r]);
    if (d < best_dist) {
      best_dist = d;
      best = r;
    }
  }
  return best;
}

std::size_t pick_start_node(const std::vector<FreeNode>& row, const Point2& icv) {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < row.size(); ++i) {
    const double d = dist_point_point(icv, row[i].position);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

RawPathNode to_raw(std::size_t row, const FreeNode& n) {
  return {static_cast<int>(row), n.col, n.position, n.risk};
}

void finish(PlannedPath& path, const PlannerConfig& cfg) {
  path.smoothed = smooth(path.raw_nodes, cfg);
}

}  // namespace

PlannedPath plan_local(const FreeNodeSet& free_set, const Point2& icv,
                       const Point2& dest, const PlannerConfig& cfg) {
  if (free_set.rows.empty()) {
    throw PlanError("START_UNREACHABLE", "free node set has no rows");
  }
  const std::size_t start_row = pick_start_row(free_set, icv);
  if (free_set.rows[start_row].empty()) {
    throw PlanError("START_UNREACHABLE",
                    "no node below the risk threshold near the ICV start row");
  }

  PlannedPath path;
  std::size_t row = start_row;
  FreeNode cur = free_set.rows[row][pick_start_node(free_set.rows[row], icv)];
  path.raw_nodes.push_back(to_raw(row, cur));
  path.total_cost = score(cur.position, cur.risk, icv, dest, cfg);

  const std::size_t last_row = free_set.rows.size() - 1;
  while (row < last_row) {
    const auto succ = successors(free_set, row, cur.col);
    if (succ.empty()) {
      path.status = PathStatus::exhausted;
      finish(path, cfg);
      return path;
    }
    // min score; ties resolve to smaller |dcol|, then smaller col
    std::size_t best = succ[0];
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t i : succ) {
      const FreeNode& cand = free_set.rows[row + 1][i];
      const double sc = score(cand.position, cand.risk, icv, dest, cfg);
      const FreeNode& cur_best = free_set.rows[row + 1][best];
      const auto key = std::tuple{sc, std::abs(cand.col - cur.col), cand.col};
      const auto best_key =
          std::tuple{best_score, std::abs(cur_best.col - cur.col), cur_best.col};
      if (key < best_key) {
        best = i;
        best_score = sc;
      }
    }
    cur = free_set.rows[row + 1][best];
    ++row;
    path.raw_nodes.push_back(to_raw(row, cur));
    path.total_cost += best_score;
  }
  path.status = PathStatus::reached;
  finish(path, cfg);
  return path;
}

PlannedPath plan_global(const FreeNodeSet& free_set, const Point2& icv,
                        const Point2& dest, const PlannerConfig& cfg) {
  if (free_set.rows.empty()) {
    throw PlanError("START_UNREACHABLE", "free node set has no rows");
  }
  const std::size_t start_row = pick_start_row(free_set, icv);
  if (free_set.rows[start_row].empty()) {
    throw PlanError("START_UNREACHABLE",
                    "no node below the risk threshold near the ICV start row");
  }
  const std::size_t start_node = pick_start_node(free_set.rows[start_row], icv);
  const std::size_t last_row = free_set.rows.size() - 1;

  // Dynamic program over the row-layered DAG. Ties in total cost resolve by
  // the lexicographically smallest (|dcol|, col) hop sequence, matching the
  // local planner's per-step rule.
  struct State {
    double cost = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, int>> key;  // (|dcol|, col) per hop
    std::size_t prev = 0;
    bool reachable = false;
  };
  std::vector<std::vector<State>> dp(free_set.rows.size());
  for (std::size_t r = 0; r < free_set.rows.size(); ++r) {
    dp[r].resize(free_set.rows[r].size());
  }
  {
    const FreeNode& s = free_set.rows[start_row][start_node];
    dp[start_row][start_node].cost = score(s.position, s.risk, icv, dest, cfg);
    dp[start_row][start_node].reachable = true;
  }

  std::size_t deepest = start_row;
  for (std::size_t r = start_row; r < last_row; ++r) {
    for (std::size_t i = 0; i < free_set.rows[r].size(); ++i) {
      if (!dp[r][i].reachable) continue;
      const FreeNode& from = free_set.rows[r][i];
      for (std::size_t j : successors(free_set, r, from.col)) {
        const FreeNode& to = free_set.rows[r + 1][j];
        const double cost =
            dp[r][i].cost + score(to.position, to.risk, icv, dest, cfg);
        auto key = dp[r][i].key;
        key.emplace_back(std::abs(to.col - from.col), to.col);
        State& st = dp[r + 1][j];
        if (!st.reachable || cost < st.cost ||
            (cost == st.cost && key < st.key)) {
          st.cost = cost;
          st.key = std::move(key);
          st.prev = i;
          st.reachable = true;
          deepest = std::max(deepest, r + 1);
        }
      }
    }
  }

  // target: best node of the deepest reachable row (final row when a full
  // path exists)
  const std::size_t end_row = deepest;
  std::size_t end_node = 0;
  bool found = false;
  for (std::size_t j = 0; j < dp[end_row].size(); ++j) {
    const State& st = dp[end_row][j];
    if (!st.reachable) continue;
    if (!found || st.cost < dp[end_row][end_node].cost ||
        (st.cost == dp[end_row][end_node].cost && st.key < dp[end_row][end_node].key)) {
      end_node = j;
      found = true;
    }
  }

  PlannedPath path;
  path.status = end_row == last_row ? PathStatus::reached : PathStatus::exhausted;
  path.total_cost = dp[end_row][end_node].cost;
  std::vector<std::pair<std::size_t, std::size_t>> chain;
  for (std::size_t r = end_row, j = end_node;; j = dp[r][j].prev, --r) {
    chain.emplace_back(r, j);
    if (r == start_row) break;
  }
  std::reverse(chain.begin(), chain.end());
  for (const auto& [r, j] : chain) {
    path.raw_nodes.push_back(to_raw(r, free_set.rows[r][j]));
  }
  finish(path, cfg);
  return path;
}

PlannedPath plan(const FreeNodeSet& free_set, const Point2& icv,
                 const Point2& dest, const PlannerConfig& cfg) {
  return cfg.strategy == SearchStrategy::global
             ? plan_global(free_set, icv, dest, cfg)
             : plan_local(free_set, icv, dest, cfg);
}

std::vector<Point2> gaussian_smooth(const std::vector<Point2>& pts,
                                    int kernel_size, double sigma) {
  if (pts.size() <= 2) return pts;
  const int h = kernel_size / 2;
  std::vector<double> w(static_cast<std::size_t>(kernel_size));
  for (int j = -h; j <= h; ++j) {
    w[static_cast<std::size_t>(j + h)] = std::exp(-0.5 * j * j / (sigma * sigma));
  }
  std::vector<Point2> out = pts;
  const int n = static_cast<int>(pts.size());
  for (int i = 1; i + 1 < n; ++i) {
    Point2 acc{};
    double total = 0.0;
    for (int j = -h; j <= h; ++j) {
      const int k = i + j;
      if (k < 0 || k >= n) continue;  // truncate at the boundary
      const double wj = w[static_cast<std::size_t>(j + h)];
      acc = acc + pts[static_cast<std::size_t>(k)] * wj;
      total += wj;
    }
    out[static_cast<std::size_t>(i)] = acc * (1.0 / total);
  }
  return out;
}

namespace {

Point2 catmull_rom(const Point2& p0, const Point2& p1, const Point2& p2,
                   const Point2& p3, double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (p1 * 2.0 + (p2 - p0) * t +
          (p0 * 2.0 - p1 * 5.0 + p2 * 4.0 - p3) * t2 +
          (p1 * 3.0 - p0 - p2 * 3.0 + p3) * t3) *
         0.5;
}

}  // namespace

std::vector<Point2> resample_path(const std::vector<Point2>& pts, double step) {
  if (pts.size() < 2) return pts;

  // densify: straight chords for 2 points, Catmull-Rom otherwise
  std::vector<Point2> dense;
  if (pts.size() == 2) {
    dense = pts;
  } else {
    constexpr int kSubdiv = 32;
    dense.push_back(pts.front());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Point2& p0 = pts[i == 0 ? 0 : i - 1];
      const Point2& p1 = pts[i];
      const Point2& p2 = pts[i + 1];
      const Point2& p3 = pts[std::min(i + 2, pts.size() - 1)];
      for (int k = 1; k <= kSubdiv; ++k) {
        dense.push_back(catmull_rom(p0, p1, p2, p3, static_cast<double>(k) / kSubdiv));
      }
    }
    dense.back() = pts.back();
  }

  std::vector<double> arc(dense.size(), 0.0);
  for (std::size_t i = 1; i < dense.size(); ++i) {
    arc[i] = arc[i - 1] + dist_point_point(dense[i - 1], dense[i]);
  }
  const double total = arc.back();

  std::vector<Point2> out;
  out.push_back(pts.front());
  std::size_t seg = 0;
  for (double s = step; s < total - 1e-9; s += step) {
    while (seg + 1 < arc.size() && arc[seg + 1] < s) ++seg;
    const double span = arc[seg + 1] - arc[seg];
    const double t = span > 0.0 ? (s - arc[seg]) / span : 0.0;
    out.push_back(dense[seg] + (dense[seg + 1] - dense[seg]) * t);
  }
  out.push_back(pts.back());
  return out;
}

std::vector<Point2> smooth(const std::vector<RawPathNode>& raw,
                           const PlannerConfig& cfg) {
  std::vector<Point2> pts;
  pts.reserve(raw.size());
  for (const RawPathNode& n : raw) pts.push_back(n.position);
  if (pts.size() < 2) return pts;
  return resample_path(gaussian_smooth(pts, cfg.kernel_size, cfg.sigma),
                       cfg.resample_step);
}

}  // namespace riskocc
