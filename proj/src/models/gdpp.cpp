// Gaussian determinantal point process via the spectral method on the
// periodic window: draw the kept Fourier modes, then sample the resulting
// projection process point by point.

#include "spgof/models.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace spgof {

PointPattern sample_gdpp(double lambda, double alpha, const Window& window, RngStream& rng) {
  if (!(lambda > 0.0 && alpha > 0.0)) throw std::invalid_argument("GDPP parameters must be positive");
  if (!(alpha < 1.0 / std::sqrt(lambda * std::numbers::pi)))
    throw std::invalid_argument("GDPP: alpha must be below (lambda*pi)^(-1/2)");

  constexpr double pi = std::numbers::pi;
  constexpr double cutoff = 1e-10;
  const double lx = window.width(), ly = window.height();
  const double lead = lambda * pi * alpha * alpha;

  // Modes with eigenvalue above the cutoff satisfy |k_i| < L_i * kmax.
  const double kmax = std::sqrt(std::log(lead / cutoff)) / (pi * alpha);
  const auto k1max = static_cast<long>(std::ceil(lx * kmax));
  const auto k2max = static_cast<long>(std::ceil(ly * kmax));

  std::vector<std::array<long, 2>> modes;
  for (long k1 = -k1max; k1 <= k1max; ++k1)
    for (long k2 = -k2max; k2 <= k2max; ++k2) {
      const double f1 = static_cast<double>(k1) / lx, f2 = static_cast<double>(k2) / ly;
      const double eigenvalue = lead * std::exp(-pi * pi * alpha * alpha * (f1 * f1 + f2 * f2));
      if (eigenvalue < cutoff) continue;
      if (rng.uniform() < eigenvalue) modes.push_back({k1, k2});
    }

  const auto n = static_cast<Index>(modes.size());
  std::vector<Point> points;
  if (n == 0) return PointPattern(window, points);

  // v(x)_j = exp(2 pi i (k1 x / lx + k2 y / ly)), so |v(x)|^2 = n everywhere.
  auto features = [&](const Point& p) {
    Eigen::VectorXcd v(n);
    const double u = (p.x() - window.x0) / lx, w = (p.y() - window.y0) / ly;
    for (Index j = 0; j < n; ++j) {
      const double phase =
          2.0 * pi * (static_cast<double>(modes[static_cast<std::size_t>(j)][0]) * u +
                      static_cast<double>(modes[static_cast<std::size_t>(j)][1]) * w);
      v[j] = std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return v;
  };

  // Orthonormal basis of the span of the features of the points placed so far.
  Eigen::MatrixXcd basis(n, n);
  const double dn = static_cast<double>(n);
  for (Index placed = 0; placed < n; ++placed) {
    for (;;) {
      const Point candidate(rng.uniform(window.x0, window.x1), rng.uniform(window.y0, window.y1));
      Eigen::VectorXcd v = features(candidate);
      const Eigen::VectorXcd coeffs = basis.leftCols(placed).adjoint() * v;
      const double density = 1.0 - coeffs.squaredNorm() / dn;
      if (rng.uniform() >= density) continue;
      v -= basis.leftCols(placed) * coeffs;
      // Second pass keeps the basis orthonormal to working precision.
      v -= basis.leftCols(placed) * (basis.leftCols(placed).adjoint() * v);
      basis.col(placed) = v / v.norm();
      points.push_back(candidate);
      break;
    }
  }
  return PointPattern(window, points);
}

}  // namespace spgof
