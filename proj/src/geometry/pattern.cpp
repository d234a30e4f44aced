#include "spgof/format.hpp"
#include "spgof/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spgof {

Window::Window(double x0_, double x1_, double y0_, double y1_) : x0(x0_), x1(x1_), y0(y0_), y1(y1_) {
  if (!(std::isfinite(x0) && std::isfinite(x1) && std::isfinite(y0) && std::isfinite(y1)) ||
      !(x1 > x0) || !(y1 > y0))
    throw std::invalid_argument("window must have positive finite extent");
}

Window Window::square(double area) {
  if (!(area > 0.0) || !std::isfinite(area)) throw std::invalid_argument("window area must be positive");
  const double side = std::sqrt(area);
  return Window(0.0, side, 0.0, side);
}

double Window::distance_to_boundary(const Point& p) const {
  return std::min(std::min(p.x() - x0, x1 - p.x()), std::min(p.y() - y0, y1 - p.y()));
}

PointPattern::PointPattern(const Window& window) : window_(window), coords_(0, 2) {}

PointPattern::PointPattern(const Window& window, Coordinates coordinates)
    : window_(window), coords_(std::move(coordinates)) {
  const Index n = coords_.rows();
  for (Index i = 0; i < n; ++i) {
    const Point p = coords_.row(i).transpose();
    if (!p.allFinite() || !window_.contains(p))
      throw std::invalid_argument("point " + std::to_string(i) + " lies outside the window");
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (coords_(a, 0) != coords_(b, 0)) return coords_(a, 0) < coords_(b, 0);
    return coords_(a, 1) < coords_(b, 1);
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Index a = order[k - 1], b = order[k];
    if (coords_(a, 0) == coords_(b, 0) && coords_(a, 1) == coords_(b, 1))
      throw std::invalid_argument("duplicate points " + std::to_string(a) + " and " + std::to_string(b));
  }
}

namespace {
PointPattern::Coordinates to_matrix(const std::vector<Point>& points) {
  PointPattern::Coordinates m(static_cast<Index>(points.size()), 2);
  for (std::size_t i = 0; i < points.size(); ++i) m.row(static_cast<Index>(i)) = points[i].transpose();
  return m;
}
}  // namespace

PointPattern::PointPattern(const Window& window, const std::vector<Point>& points)
    : PointPattern(window, to_matrix(points)) {}

PointPattern PointPattern::translated(double dx, double dy) const {
  Coordinates shifted = coords_;
  shifted.col(0).array() += dx;
  shifted.col(1).array() += dy;
  return PointPattern(Window(window_.x0 + dx, window_.x1 + dx, window_.y0 + dy, window_.y1 + dy),
                      std::move(shifted));
}

PointPattern read_pattern(std::istream& in) {
  std::string line;
  std::string keyword;
  double x0, x1, y0, y1;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream header(line);
    if (!(header >> keyword >> x0 >> x1 >> y0 >> y1) || keyword != "window")
      throw std::runtime_error("pattern file: expected header 'window x0 x1 y0 y1'");
    break;
  }
  if (keyword != "window") throw std::runtime_error("pattern file: missing window header");
  const Window window(x0, x1, y0, y1);

  std::vector<Point> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    double x, y;
    if (!(row >> x >> y)) throw std::runtime_error("pattern file: malformed line " + std::to_string(line_no));
    points.emplace_back(x, y);
  }
  return PointPattern(window, points);
}

PointPattern read_pattern_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pattern file " + path);
  return read_pattern(in);
}

void write_pattern(std::ostream& out, const PointPattern& pattern) {
  const Window& w = pattern.window();
  out << "window " << format_fixed(w.x0) << ' ' << format_fixed(w.x1) << ' ' << format_fixed(w.y0) << ' '
      << format_fixed(w.y1) << '\n';
  for (Index i = 0; i < pattern.size(); ++i)
    out << format_fixed(pattern.coordinates()(i, 0)) << ' ' << format_fixed(pattern.coordinates()(i, 1)) << '\n';
}

void write_pattern_file(const std::string& path, const PointPattern& pattern) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write pattern file " + path);
  write_pattern(out, pattern);
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

}  // namespace spgof
