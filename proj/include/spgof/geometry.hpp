#ifndef SPGOF_GEOMETRY_HPP
#define SPGOF_GEOMETRY_HPP

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace spgof {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;
using Point = Point2<double>;

using Index = Eigen::Index;

/// Axis-aligned observation window [x0,x1] x [y0,y1].
struct Window {
  double x0 = 0.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;

  Window() = default;
  Window(double x0_, double x1_, double y0_, double y1_);

  /// The square [0, sqrt(A)]^2.
  static Window square(double area);

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  double shorter_side() const { return width() < height() ? width() : height(); }

  bool contains(const Point& p) const {
    return p.x() >= x0 && p.x() <= x1 && p.y() >= y0 && p.y() <= y1;
  }

  double distance_to_boundary(const Point& p) const;

  bool operator==(const Window&) const = default;
};

/// A finite simple point pattern observed in a rectangular window.
///
/// Construction validates the invariants: every point lies in the (closed)
/// window and no two points coincide. Violations throw std::invalid_argument.
class PointPattern {
 public:
  using Coordinates = Eigen::Matrix<double, Eigen::Dynamic, 2>;

  explicit PointPattern(const Window& window);
  PointPattern(const Window& window, Coordinates coordinates);
  PointPattern(const Window& window, const std::vector<Point>& points);

  Index size() const { return coords_.rows(); }
  bool empty() const { return coords_.rows() == 0; }
  const Window& window() const { return window_; }
  const Coordinates& coordinates() const { return coords_; }
  Point point(Index i) const { return coords_.row(i).transpose(); }

  /// n / |W|
  double intensity() const { return static_cast<double>(size()) / window_.area(); }

  /// Same points and window shifted by (dx, dy).
  PointPattern translated(double dx, double dy) const;

 private:
  Window window_;
  Coordinates coords_;
};

/// Reads the plain-text pattern format: a header `window x0 x1 y0 y1`
/// followed by one `x y` pair per line.
PointPattern read_pattern(std::istream& in);
PointPattern read_pattern_file(const std::string& path);
void write_pattern(std::ostream& out, const PointPattern& pattern);
void write_pattern_file(const std::string& path, const PointPattern& pattern);

// ---------------------------------------------------------------------------
// Robust predicates

/// Sign of the orientation determinant of (a, b, c): +1 counterclockwise,
/// -1 clockwise, 0 collinear. Exact for all finite double inputs.
int orient2d(const Point& a, const Point& b, const Point& c);

/// Sign of the in-circle determinant: for counterclockwise (a, b, c) the
/// result is +1 when d is strictly inside their circumcircle, -1 when
/// strictly outside, 0 when cocircular. Exact.
int incircle(const Point& a, const Point& b, const Point& c, const Point& d);

/// In-circle test under symbolic perturbation of the lifted coordinate.
///
/// Each point p_i is lifted to |p_i|^2 + eps_i with eps_0 >> eps_1 >> ... > 0
/// (indices are the pattern indices). A cocircular quadruple is therefore
/// resolved by treating the lowest-index point as lying marginally outside
/// the circle through the remaining three. The result is never 0 unless all
/// four points are collinear.
int incircle_perturbed(const Point& a, const Point& b, const Point& c, const Point& d,
                       const std::array<int, 4>& indices);

// ---------------------------------------------------------------------------
// Delaunay triangulation and alpha filtration

struct Simplex {
  int dim = 0;
  std::array<int, 3> vertices{-1, -1, -1};  ///< sorted; unused slots are -1

  static Simplex vertex(int a) { return {0, {a, -1, -1}}; }
  static Simplex edge(int a, int b);
  static Simplex triangle(int a, int b, int c);

  bool operator==(const Simplex&) const = default;
};

struct Triangulation {
  PointPattern::Coordinates points;
  std::vector<std::array<int, 2>> edges;      ///< u < v, lexicographically sorted
  std::vector<std::array<int, 3>> triangles;  ///< sorted vertices, lexicographically sorted

  Index vertex_count() const { return points.rows(); }
};

/// Delaunay triangulation of the pattern (degeneracies resolved by
/// incircle_perturbed). Collinear input yields edges only.
/// Throws std::invalid_argument for an empty pattern.
Triangulation delaunay(const PointPattern& pattern);

/// Circumradius of the triangle (a, b, c), computed from edge vectors only.
double circumradius(const Point& a, const Point& b, const Point& c);

struct FiltrationEntry {
  Simplex simplex;
  double radius = 0.0;
};

/// Alpha-complex filtration parameterised by the ball radius r.
/// Entries are sorted by (radius, dim, vertices).
class AlphaFiltration {
 public:
  AlphaFiltration() = default;
  AlphaFiltration(Index vertex_count, std::vector<FiltrationEntry> entries);

  const std::vector<FiltrationEntry>& entries() const { return entries_; }
  Index vertex_count() const { return vertex_count_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double max_radius() const;

  /// Number of simplices of the given dimension with radius <= r.
  std::size_t count(int dim, double r) const;

 private:
  Index vertex_count_ = 0;
  std::vector<FiltrationEntry> entries_;
};

AlphaFiltration alpha_filtration(const Triangulation& triangulation);
AlphaFiltration alpha_filtration(const PointPattern& pattern);

/// CSV export with columns dim, v1, v2, v3, radius (unused vertices empty).
void write_filtration_csv(std::ostream& out, const AlphaFiltration& filtration);

}  // namespace spgof

#endif  // SPGOF_GEOMETRY_HPP
