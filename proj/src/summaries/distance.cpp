// Kaplan-Meier estimators of the empty space function F and the nearest
// neighbour distance distribution G, and the J-function built from both.

#include "detail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spgof {
namespace {

struct Observation {
  double t;    // observed failure distance min(d_nn, d(., boundary))
  bool event;  // d_nn <= t
};

// 1 - prod_{s <= r} (1 - events(s) / at_risk(s)). Only observations with
// t <= grid.r_max() need to be listed; `total` counts all of them.
CurveValues<> product_limit(std::vector<Observation> obs, std::size_t total, const EvalGrid& grid) {
  std::sort(obs.begin(), obs.end(), [](const Observation& a, const Observation& b) { return a.t < b.t; });
  CurveValues<> values(grid.count());
  double survival = 1.0;
  std::size_t removed = 0, next = 0;
  for (Eigen::Index k = 0; k < grid.count(); ++k) {
    while (next < obs.size() && obs[next].t <= grid[k]) {
      const double s = obs[next].t;
      std::size_t events = 0, group = 0;
      for (; next < obs.size() && obs[next].t == s; ++next, ++group) events += obs[next].event;
      const auto at_risk = static_cast<double>(total - removed);
      if (events > 0) survival *= 1.0 - static_cast<double>(events) / at_risk;
      removed += group;
    }
    values[k] = 1.0 - survival;
  }
  return values;
}

}  // namespace

SummaryCurve f_est(const PointPattern& pattern, const EvalGrid& grid, Index lattice) {
  if (pattern.empty()) throw std::invalid_argument("F estimate of an empty pattern");
  if (lattice < 1) throw std::invalid_argument("F lattice must have at least one location per side");
  const Window& w = pattern.window();
  const double cap = grid.r_max();
  const double cap2 = cap * cap;
  const double dx = w.width() / static_cast<double>(lattice);
  const double dy = w.height() / static_cast<double>(lattice);

  // Squared nearest-point distance of each lattice location, exact up to cap.
  Eigen::ArrayXXd near = Eigen::ArrayXXd::Constant(lattice, lattice, std::numeric_limits<double>::infinity());
  auto range = [lattice](double lo, double hi, double step) {
    const auto a = static_cast<Index>(std::floor(lo / step - 0.5));
    const auto b = static_cast<Index>(std::ceil(hi / step - 0.5));
    return std::pair{std::max<Index>(a, 0), std::min<Index>(b, lattice - 1)};
  };
  for (Index p = 0; p < pattern.size(); ++p) {
    const double px = pattern.coordinates()(p, 0), py = pattern.coordinates()(p, 1);
    const auto [i0, i1] = range(px - cap - w.x0, px + cap - w.x0, dx);
    const auto [j0, j1] = range(py - cap - w.y0, py + cap - w.y0, dy);
    for (Index j = j0; j <= j1; ++j) {
      const double ddy = w.y0 + (static_cast<double>(j) + 0.5) * dy - py;
      for (Index i = i0; i <= i1; ++i) {
        const double ddx = w.x0 + (static_cast<double>(i) + 0.5) * dx - px;
        near(i, j) = std::min(near(i, j), ddx * ddx + ddy * ddy);
      }
    }
  }

  std::vector<Observation> obs;
  for (Index j = 0; j < lattice; ++j)
    for (Index i = 0; i < lattice; ++i) {
      const Point u(w.x0 + (static_cast<double>(i) + 0.5) * dx, w.y0 + (static_cast<double>(j) + 0.5) * dy);
      const double boundary = w.distance_to_boundary(u);
      const double d = near(i, j) <= cap2 ? std::sqrt(near(i, j)) : std::numeric_limits<double>::infinity();
      const double t = std::min(d, boundary);
      if (t <= cap) obs.push_back({t, d <= t});
    }
  return {SummaryKind::F, grid, product_limit(std::move(obs), static_cast<std::size_t>(lattice * lattice), grid)};
}

namespace detail {

SummaryCurve g_from_pairs(const PointPattern& pattern, const EvalGrid& grid, const std::vector<PointPair>& pairs) {
  if (pattern.size() < 2) throw std::invalid_argument("G estimate needs at least 2 points");
  const double cap = grid.r_max();
  std::vector<double> nearest(static_cast<std::size_t>(pattern.size()), std::numeric_limits<double>::infinity());
  for (const auto& p : pairs) {
    if (p.distance > cap) continue;
    auto& a = nearest[static_cast<std::size_t>(p.i)];
    auto& b = nearest[static_cast<std::size_t>(p.j)];
    a = std::min(a, p.distance);
    b = std::min(b, p.distance);
  }
  std::vector<Observation> obs;
  for (Index i = 0; i < pattern.size(); ++i) {
    const double d = nearest[static_cast<std::size_t>(i)];
    const double t = std::min(d, pattern.window().distance_to_boundary(pattern.point(i)));
    if (t <= cap) obs.push_back({t, d <= t});
  }
  return {SummaryKind::G, grid, product_limit(std::move(obs), static_cast<std::size_t>(pattern.size()), grid)};
}

SummaryCurve j_from(const SummaryCurve& f, const SummaryCurve& g) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("J needs F and G on the same grid");
  CurveValues<> values(f.values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k)
    values[k] = f.values[k] >= 1.0 ? std::numeric_limits<double>::quiet_NaN()
                                   : (1.0 - g.values[k]) / (1.0 - f.values[k]);
  return {SummaryKind::J, f.grid, values};
}

}  // namespace detail

SummaryCurve g_est(const PointPattern& pattern, const EvalGrid& grid) {
  return detail::g_from_pairs(pattern, grid, close_pairs(pattern, grid.r_max()));
}

SummaryCurve j_est(const PointPattern& pattern, const EvalGrid& grid, Index lattice) {
  const SummaryCurve g = g_est(pattern, grid);
  return detail::j_from(f_est(pattern, grid, lattice), g);
}

}  // namespace spgof
