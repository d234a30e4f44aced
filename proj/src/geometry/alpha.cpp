#include "spgof/format.hpp"
#include "spgof/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_map>

namespace spgof {

double circumradius(const Point& a, const Point& b, const Point& c) {
  const Point ab = b - a, ac = c - a, bc = c - b;
  const double cross = ab.x() * ac.y() - ab.y() * ac.x();
  if (cross == 0.0) return std::numeric_limits<double>::infinity();
  return ab.norm() * ac.norm() * bc.norm() / (2.0 * std::abs(cross));
}

namespace {

bool entry_less(const FiltrationEntry& a, const FiltrationEntry& b) {
  if (a.radius != b.radius) return a.radius < b.radius;
  if (a.simplex.dim != b.simplex.dim) return a.simplex.dim < b.simplex.dim;
  return a.simplex.vertices < b.simplex.vertices;
}

}  // namespace

AlphaFiltration::AlphaFiltration(Index vertex_count, std::vector<FiltrationEntry> entries)
    : vertex_count_(vertex_count), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), entry_less);
}

double AlphaFiltration::max_radius() const { return entries_.empty() ? 0.0 : entries_.back().radius; }

std::size_t AlphaFiltration::count(int dim, double r) const {
  std::size_t c = 0;
  for (const auto& e : entries_) {
    if (e.radius > r) break;
    if (e.simplex.dim == dim) ++c;
  }
  return c;
}

AlphaFiltration alpha_filtration(const Triangulation& tri) {
  const auto& pts = tri.points;
  const Index n = tri.vertex_count();
  auto point = [&](int v) -> Point { return pts.row(v).transpose(); };

  std::unordered_map<std::int64_t, std::size_t> edge_index;
  edge_index.reserve(tri.edges.size() * 2);
  auto key = [n](int a, int b) { return static_cast<std::int64_t>(a) * n + b; };
  for (std::size_t i = 0; i < tri.edges.size(); ++i) edge_index.emplace(key(tri.edges[i][0], tri.edges[i][1]), i);

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> min_coface(tri.edges.size(), inf);
  std::vector<char> gabriel(tri.edges.size(), 1);

  std::vector<FiltrationEntry> entries;
  entries.reserve(static_cast<std::size_t>(n) + tri.edges.size() + tri.triangles.size());
  for (Index v = 0; v < n; ++v) entries.push_back({Simplex::vertex(static_cast<int>(v)), 0.0});

  for (const auto& t : tri.triangles) {
    const double radius = circumradius(point(t[0]), point(t[1]), point(t[2]));
    entries.push_back({Simplex::triangle(t[0], t[1], t[2]), radius});
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3], opposite = t[(k + 2) % 3];
      const std::size_t e = edge_index.at(key(std::min(a, b), std::max(a, b)));
      min_coface[e] = std::min(min_coface[e], radius);
      // Opposite vertex strictly inside the diametral disc <=> obtuse angle there.
      const Point pa = point(a) - point(opposite), pb = point(b) - point(opposite);
      if (pa.dot(pb) < 0.0) gabriel[e] = 0;
    }
  }

  for (std::size_t i = 0; i < tri.edges.size(); ++i) {
    const auto& e = tri.edges[i];
    const double half = 0.5 * (point(e[1]) - point(e[0])).norm();
    const double radius = gabriel[i] ? std::min(half, min_coface[i]) : min_coface[i];
    entries.push_back({Simplex::edge(e[0], e[1]), radius});
  }
  return AlphaFiltration(n, std::move(entries));
}

AlphaFiltration alpha_filtration(const PointPattern& pattern) { return alpha_filtration(delaunay(pattern)); }

void write_filtration_csv(std::ostream& out, const AlphaFiltration& filtration) {
  out << "dim,v1,v2,v3,radius\n";
  for (const auto& e : filtration.entries()) {
    out << e.simplex.dim;
    for (int v : e.simplex.vertices) {
      out << ',';
      if (v >= 0) out << v;
    }
    out << ',' << format_number(e.radius) << '\n';
  }
}

}  // namespace spgof
