#include "spgof/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace spgof {

PointPattern sample_binomial(Index n, const Window& window, RngStream& rng) {
  if (n < 0) throw std::invalid_argument("binomial process needs n >= 0");
  PointPattern::Coordinates xy(n, 2);
  for (Index i = 0; i < n; ++i) {
    xy(i, 0) = rng.uniform(window.x0, window.x1);
    xy(i, 1) = rng.uniform(window.y0, window.y1);
  }
  return PointPattern(window, std::move(xy));
}

PointPattern sample_poisson(double lambda, const Window& window, RngStream& rng) {
  if (!(lambda > 0.0)) throw std::invalid_argument("Poisson process needs lambda > 0");
  const auto n = static_cast<Index>(rng.poisson(lambda * window.area()));
  return sample_binomial(n, window, rng);
}

PointPattern sample_matern_cluster(double kappa, double mu, double radius, const Window& window, RngStream& rng) {
  if (!(kappa > 0.0 && mu > 0.0 && radius > 0.0)) throw std::invalid_argument("Matern cluster parameters must be positive");
  // Parents on the window dilated by the cluster radius.
  const Window parents_window(window.x0 - radius, window.x1 + radius, window.y0 - radius, window.y1 + radius);
  const auto parents = rng.poisson(kappa * parents_window.area());
  std::vector<Point> children;
  for (std::uint64_t p = 0; p < parents; ++p) {
    const Point parent(rng.uniform(parents_window.x0, parents_window.x1), rng.uniform(parents_window.y0, parents_window.y1));
    const auto count = rng.poisson(mu);
    for (std::uint64_t c = 0; c < count; ++c) {
      const double r = radius * std::sqrt(rng.uniform());
      const double theta = 2.0 * std::numbers::pi * rng.uniform();
      const Point child = parent + r * Point(std::cos(theta), std::sin(theta));
      if (window.contains(child)) children.push_back(child);
    }
  }
  return PointPattern(window, children);
}

Index cell_grid_size(double lambda, const Window& window) {
  const double expected = lambda * window.area();
  if (!(expected >= 1.0)) throw std::invalid_argument("cell process needs lambda*|W| >= 1");
  return std::max<Index>(1, static_cast<Index>(std::llround(std::sqrt(expected))));
}

PointPattern sample_cell(double lambda, const Window& window, RngStream& rng) {
  const Index k = cell_grid_size(lambda, window);
  const double cw = window.width() / static_cast<double>(k), ch = window.height() / static_cast<double>(k);
  std::vector<Point> pts;
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < k; ++i) {
      // P(0) = 1/10, P(1) = 8/9, P(10) = 1/90.
      const double u = rng.uniform();
      const int count = u < 0.1 ? 0 : (u < 0.1 + 8.0 / 9.0 ? 1 : 10);
      const double x0 = window.x0 + static_cast<double>(i) * cw, y0 = window.y0 + static_cast<double>(j) * ch;
      for (int c = 0; c < count; ++c)
        pts.emplace_back(std::min(x0 + cw * rng.uniform(), window.x1), std::min(y0 + ch * rng.uniform(), window.y1));
    }
  return PointPattern(window, pts);
}

}  // namespace spgof
