// Birth-death Metropolis-Hastings for Strauss and hard core processes.

#include "spgof/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace spgof {
namespace {

// Points bucketed into square cells of side >= the interaction range, with
// O(1) insertion and removal.
class CellGrid {
 public:
  CellGrid(const Window& window, double range) : window_(window), range2_(range * range) {
    nx_ = std::clamp<Index>(static_cast<Index>(window.width() / range), 1, 512);
    ny_ = std::clamp<Index>(static_cast<Index>(window.height() / range), 1, 512);
    cells_.resize(static_cast<std::size_t>(nx_ * ny_));
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }

  void add(const Point& p) {
    const Index c = cell_of(p);
    points_.push_back(p);
    cell_.push_back(c);
    slot_.push_back(cells_[static_cast<std::size_t>(c)].size());
    cells_[static_cast<std::size_t>(c)].push_back(points_.size() - 1);
  }

  void remove(std::size_t i) {
    auto& bucket = cells_[static_cast<std::size_t>(cell_[i])];
    const std::size_t moved_in_bucket = bucket.back();
    bucket[slot_[i]] = moved_in_bucket;
    slot_[moved_in_bucket] = slot_[i];
    bucket.pop_back();

    const std::size_t last = points_.size() - 1;
    if (i != last) {
      points_[i] = points_[last];
      cell_[i] = cell_[last];
      slot_[i] = slot_[last];
      cells_[static_cast<std::size_t>(cell_[i])][slot_[i]] = i;
    }
    points_.pop_back();
    cell_.pop_back();
    slot_.pop_back();
  }

  // Number of points within the interaction range of u, skipping index `skip`.
  int neighbours(const Point& u, std::size_t skip = static_cast<std::size_t>(-1)) const {
    const Index c = cell_of(u);
    const Index cx = c % nx_, cy = c / nx_;
    int count = 0;
    for (Index gy = std::max<Index>(cy - 1, 0); gy <= std::min(cy + 1, ny_ - 1); ++gy)
      for (Index gx = std::max<Index>(cx - 1, 0); gx <= std::min(cx + 1, nx_ - 1); ++gx)
        for (std::size_t j : cells_[static_cast<std::size_t>(gy * nx_ + gx)])
          if (j != skip && (points_[j] - u).squaredNorm() <= range2_) ++count;
    return count;
  }

 private:
  Index cell_of(const Point& p) const {
    const Index cx = std::min<Index>(static_cast<Index>((p.x() - window_.x0) / window_.width() * nx_), nx_ - 1);
    const Index cy = std::min<Index>(static_cast<Index>((p.y() - window_.y0) / window_.height() * ny_), ny_ - 1);
    return cy * nx_ + cx;
  }

  Window window_;
  double range2_;
  Index nx_, ny_;
  std::vector<std::vector<std::size_t>> cells_;
  std::vector<Point> points_;
  std::vector<Index> cell_;
  std::vector<std::size_t> slot_;
};

}  // namespace

PointPattern sample_strauss(double beta, double gamma, double radius, const Window& window, RngStream& rng,
                            std::uint64_t burnin) {
  if (!(beta > 0.0 && radius > 0.0)) throw std::invalid_argument("Strauss parameters must be positive");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("Strauss gamma must lie in [0, 1]");
  const double mass = beta * window.area();
  CellGrid state(window, radius);
  auto random_point = [&] { return Point(rng.uniform(window.x0, window.x1), rng.uniform(window.y0, window.y1)); };

  if (gamma == 0.0) {
    // Dart throwing gives a valid hard core start.
    const auto darts = rng.poisson(mass);
    for (std::uint64_t d = 0; d < darts; ++d) {
      const Point u = random_point();
      if (state.neighbours(u) == 0) state.add(u);
    }
  }

  for (std::uint64_t step = 0; step < burnin; ++step) {
    const bool birth = rng.uniform() < 0.5;
    if (birth) {
      const Point u = random_point();
      const double accept_u = rng.uniform();
      const int t = state.neighbours(u);
      const double ratio = mass * std::pow(gamma, t) / static_cast<double>(state.size() + 1);
      if (accept_u < ratio) state.add(u);
    } else {
      if (state.size() == 0) continue;
      const auto i = static_cast<std::size_t>(rng.below(state.size()));
      const double accept_u = rng.uniform();
      const int t = state.neighbours(state.points()[i], i);
      // gamma^t > 0 for every reachable state, so the ratio is finite.
      const double ratio = static_cast<double>(state.size()) / (mass * std::pow(gamma, t));
      if (accept_u < ratio) state.remove(i);
    }
  }
  return PointPattern(window, state.points());
}

PointPattern sample_hardcore(double beta, double radius, const Window& window, RngStream& rng, std::uint64_t burnin) {
  return sample_strauss(beta, 0.0, radius, window, rng, burnin);
}

}  // namespace spgof
