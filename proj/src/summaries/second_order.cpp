#include "detail.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spgof {

double iso_weight(const Point& center, double distance, const Window& window) {
  if (!(distance > 0.0)) throw std::invalid_argument("iso_weight: distance must be positive");
  if (window.distance_to_boundary(center) >= distance) return 1.0;

  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto wrap = [](double a) { return a < 0.0 ? a + two_pi : a; };

  // Angles where the circle crosses one of the four window sides.
  double angles[10];
  int count = 0;
  for (double offset : {window.x0 - center.x(), window.x1 - center.x()}) {
    if (std::abs(offset) >= distance) continue;
    const double a = std::acos(offset / distance);
    angles[count++] = a;
    angles[count++] = two_pi - a;
  }
  for (double offset : {window.y0 - center.y(), window.y1 - center.y()}) {
    if (std::abs(offset) >= distance) continue;
    const double a = std::asin(offset / distance);
    angles[count++] = wrap(a);
    angles[count++] = std::numbers::pi - a;
  }
  std::sort(angles, angles + count);

  double inside = 0.0;
  auto on_arc = [&](double from, double to) {
    const double mid = 0.5 * (from + to);
    const Point p(center.x() + distance * std::cos(mid), center.y() + distance * std::sin(mid));
    if (window.contains(p)) inside += to - from;
  };
  if (count == 0) {
    on_arc(0.0, two_pi);
  } else {
    for (int k = 0; k + 1 < count; ++k) on_arc(angles[k], angles[k + 1]);
    // The arc wrapping through angle 0.
    const double from = angles[count - 1], to = angles[0] + two_pi;
    const double mid = 0.5 * (from + to);
    const Point p(center.x() + distance * std::cos(mid), center.y() + distance * std::sin(mid));
    if (window.contains(p)) inside += to - from;
  }
  if (!(inside > 0.0)) throw std::domain_error("iso_weight: circle lies outside the window");
  return two_pi / inside;
}

double stoyan_bandwidth(double intensity) {
  if (!(intensity > 0.0)) throw std::invalid_argument("bandwidth requires positive intensity");
  return std::sqrt(5.0) * 0.15 / std::sqrt(intensity);
}

std::vector<PointPair> close_pairs(const PointPattern& pattern, double cutoff) {
  std::vector<PointPair> out;
  const Index n = pattern.size();
  if (n < 2 || !(cutoff > 0.0)) return out;
  const Window& w = pattern.window();
  const auto& xy = pattern.coordinates();

  const Index max_cells = 1024;
  const Index nx = std::clamp<Index>(static_cast<Index>(w.width() / cutoff), 1, max_cells);
  const Index ny = std::clamp<Index>(static_cast<Index>(w.height() / cutoff), 1, max_cells);
  auto cell_of = [&](Index i) {
    const Index cx = std::min<Index>(static_cast<Index>((xy(i, 0) - w.x0) / w.width() * nx), nx - 1);
    const Index cy = std::min<Index>(static_cast<Index>((xy(i, 1) - w.y0) / w.height() * ny), ny - 1);
    return std::pair{cx, cy};
  };

  // Counting sort of the points into cells.
  std::vector<Index> start(static_cast<std::size_t>(nx * ny + 1), 0), members(static_cast<std::size_t>(n));
  std::vector<Index> cell(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const auto [cx, cy] = cell_of(i);
    cell[static_cast<std::size_t>(i)] = cy * nx + cx;
    ++start[static_cast<std::size_t>(cy * nx + cx + 1)];
  }
  for (std::size_t c = 1; c < start.size(); ++c) start[c] += start[c - 1];
  std::vector<Index> fill(start.begin(), start.end() - 1);
  for (Index i = 0; i < n; ++i) members[static_cast<std::size_t>(fill[static_cast<std::size_t>(cell[static_cast<std::size_t>(i)])]++)] = i;

  const double cutoff2 = cutoff * cutoff;
  for (Index i = 0; i < n; ++i) {
    const Index c = cell[static_cast<std::size_t>(i)];
    const Index cx = c % nx, cy = c / nx;
    for (Index gy = std::max<Index>(cy - 1, 0); gy <= std::min(cy + 1, ny - 1); ++gy)
      for (Index gx = std::max<Index>(cx - 1, 0); gx <= std::min(cx + 1, nx - 1); ++gx) {
        const auto g = static_cast<std::size_t>(gy * nx + gx);
        for (Index k = start[g]; k < start[g + 1]; ++k) {
          const Index j = members[static_cast<std::size_t>(k)];
          if (j <= i) continue;
          const double dx = xy(i, 0) - xy(j, 0), dy = xy(i, 1) - xy(j, 1);
          const double d2 = dx * dx + dy * dy;
          if (d2 <= cutoff2) out.push_back({i, j, std::sqrt(d2)});
        }
      }
  }
  std::sort(out.begin(), out.end(), [](const PointPair& a, const PointPair& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  return out;
}

namespace {

void require_second_order(const PointPattern& pattern, const EvalGrid& grid) {
  if (pattern.size() < 2) throw std::invalid_argument("second-order summaries need at least 2 points");
  if (grid.r_max() > 0.25 * pattern.window().shorter_side() * (1.0 + 1e-12))
    throw std::invalid_argument("evaluation range exceeds a quarter of the shorter window side");
}

SummaryCurve k_from_pairs(const PointPattern& pattern, const EvalGrid& grid, const std::vector<PointPair>& pairs) {
  const Eigen::Index count = grid.count();
  CurveValues<> mass = CurveValues<>::Zero(count);
  for (const auto& p : pairs) {
    if (p.distance > grid.r_max()) continue;
    const Eigen::Index k = grid.first_at_or_above(p.distance);
    mass[k] += iso_weight(pattern.point(p.i), p.distance, pattern.window()) +
               iso_weight(pattern.point(p.j), p.distance, pattern.window());
  }
  const double n = static_cast<double>(pattern.size());
  const double scale = pattern.window().area() / (n * (n - 1.0));
  CurveValues<> values(count);
  double running = 0.0;
  for (Eigen::Index k = 0; k < count; ++k) values[k] = scale * (running += mass[k]);
  return {SummaryKind::K, grid, values};
}

SummaryCurve pcf_from_pairs(const PointPattern& pattern, const EvalGrid& grid, const std::vector<PointPair>& pairs) {
  const double b = stoyan_bandwidth(pattern.intensity());
  const Eigen::Index count = grid.count();
  CurveValues<> sum = CurveValues<>::Zero(count);
  for (const auto& p : pairs) {
    if (p.distance > grid.r_max() + b) continue;
    const double w = iso_weight(pattern.point(p.i), p.distance, pattern.window()) +
                     iso_weight(pattern.point(p.j), p.distance, pattern.window());
    for (Eigen::Index k = grid.first_at_or_above(p.distance - b); k < count; ++k) {
      const double t = (grid[k] - p.distance) / b;
      if (t >= 1.0) break;
      if (t <= -1.0) continue;
      sum[k] += 0.75 / b * (1.0 - t * t) * w;
    }
  }
  const double n = static_cast<double>(pattern.size());
  const double scale = pattern.window().area() / (2.0 * std::numbers::pi * n * (n - 1.0));
  CurveValues<> values = scale * sum / grid.values();
  return {SummaryKind::PCF, grid, values};
}

}  // namespace

SummaryCurve k_est(const PointPattern& pattern, const EvalGrid& grid) {
  require_second_order(pattern, grid);
  return k_from_pairs(pattern, grid, close_pairs(pattern, grid.r_max()));
}

SummaryCurve l_est(const PointPattern& pattern, const EvalGrid& grid) {
  SummaryCurve curve = k_est(pattern, grid);
  curve.kind = SummaryKind::L;
  curve.values = (curve.values / std::numbers::pi).sqrt();
  return curve;
}

SummaryCurve pcf_est(const PointPattern& pattern, const EvalGrid& grid) {
  if (pattern.size() < 2) throw std::invalid_argument("pair correlation needs at least 2 points");
  if (!(grid.r_min() > 0.0)) throw std::invalid_argument("pair correlation grid must start above 0");
  const double b = stoyan_bandwidth(pattern.intensity());
  return pcf_from_pairs(pattern, grid, close_pairs(pattern, grid.r_max() + b));
}

namespace detail {

SummaryCurve k_from_pairs_checked(const PointPattern& pattern, const EvalGrid& grid,
                                  const std::vector<PointPair>& pairs) {
  require_second_order(pattern, grid);
  return k_from_pairs(pattern, grid, pairs);
}

SummaryCurve pcf_from_pairs_checked(const PointPattern& pattern, const EvalGrid& grid,
                                    const std::vector<PointPair>& pairs) {
  if (pattern.size() < 2) throw std::invalid_argument("pair correlation needs at least 2 points");
  if (!(grid.r_min() > 0.0)) throw std::invalid_argument("pair correlation grid must start above 0");
  return pcf_from_pairs(pattern, grid, pairs);
}

}  // namespace detail
}  // namespace spgof
