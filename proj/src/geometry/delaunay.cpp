// Guibas-Stolfi divide-and-conquer Delaunay triangulation on a quad-edge mesh.

#include "spgof/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace spgof {
namespace {

class QuadEdgeMesh {
 public:
  explicit QuadEdgeMesh(std::size_t expected_edges) {
    next_.reserve(4 * expected_edges);
    origin_.reserve(4 * expected_edges);
    alive_.reserve(expected_edges);
  }

  static int rot(int e) { return (e & ~3) | ((e + 1) & 3); }
  static int sym(int e) { return (e & ~3) | ((e + 2) & 3); }
  static int rot_inv(int e) { return (e & ~3) | ((e + 3) & 3); }

  int onext(int e) const { return next_[e]; }
  int oprev(int e) const { return rot(onext(rot(e))); }
  int lnext(int e) const { return rot(onext(rot_inv(e))); }
  int rprev(int e) const { return onext(sym(e)); }
  int org(int e) const { return origin_[e]; }
  int dest(int e) const { return origin_[sym(e)]; }

  int make_edge(int a, int b) {
    const int q = static_cast<int>(next_.size());
    next_.insert(next_.end(), {q, q + 3, q + 2, q + 1});
    origin_.insert(origin_.end(), {a, -1, b, -1});
    alive_.push_back(1);
    return q;
  }

  void splice(int a, int b) {
    const int alpha = rot(onext(a));
    const int beta = rot(onext(b));
    std::swap(next_[a], next_[b]);
    std::swap(next_[alpha], next_[beta]);
  }

  int connect(int a, int b) {
    const int e = make_edge(dest(a), org(b));
    splice(e, lnext(a));
    splice(sym(e), b);
    return e;
  }

  void remove(int e) {
    splice(e, oprev(e));
    splice(sym(e), oprev(sym(e)));
    alive_[e >> 2] = 0;
  }

  std::size_t quad_count() const { return alive_.size(); }
  bool alive_quad(std::size_t q) const { return alive_[q] != 0; }

 private:
  std::vector<int> next_;
  std::vector<int> origin_;
  std::vector<char> alive_;
};

class Triangulator {
 public:
  Triangulator(const PointPattern::Coordinates& pts, std::vector<int> sorted)
      : pts_(pts), order_(std::move(sorted)), mesh_(3 * order_.size() + 3) {}

  QuadEdgeMesh& run() {
    if (order_.size() >= 2) build(0, order_.size());
    return mesh_;
  }

 private:
  Point p(int v) const { return pts_.row(v).transpose(); }

  bool ccw(int a, int b, int c) const { return orient2d(p(a), p(b), p(c)) > 0; }
  bool right_of(int v, int e) const { return ccw(v, mesh_.dest(e), mesh_.org(e)); }
  bool left_of(int v, int e) const { return ccw(v, mesh_.org(e), mesh_.dest(e)); }

  // A repeated vertex means the candidate ring has wrapped around; never inside.
  bool in_circle(int a, int b, int c, int d) const {
    if (d == a || d == b || d == c) return false;
    return incircle_perturbed(p(a), p(b), p(c), p(d), {a, b, c, d}) > 0;
  }

  // Returns (leftmost edge ccw around hull, rightmost edge cw around hull).
  std::pair<int, int> build(std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    if (n == 2) {
      const int a = mesh_.make_edge(order_[lo], order_[lo + 1]);
      return {a, QuadEdgeMesh::sym(a)};
    }
    if (n == 3) {
      const int s0 = order_[lo], s1 = order_[lo + 1], s2 = order_[lo + 2];
      const int a = mesh_.make_edge(s0, s1);
      const int b = mesh_.make_edge(s1, s2);
      mesh_.splice(QuadEdgeMesh::sym(a), b);
      if (ccw(s0, s1, s2)) {
        mesh_.connect(b, a);
        return {a, QuadEdgeMesh::sym(b)};
      }
      if (ccw(s0, s2, s1)) {
        const int c = mesh_.connect(b, a);
        return {QuadEdgeMesh::sym(c), c};
      }
      return {a, QuadEdgeMesh::sym(b)};
    }

    const std::size_t mid = lo + n / 2;
    auto [ldo, ldi] = build(lo, mid);
    auto [rdi, rdo] = build(mid, hi);

    // Lower common tangent.
    for (;;) {
      if (left_of(mesh_.org(rdi), ldi)) {
        ldi = mesh_.lnext(ldi);
      } else if (right_of(mesh_.org(ldi), rdi)) {
        rdi = mesh_.rprev(rdi);
      } else {
        break;
      }
    }

    int basel = mesh_.connect(QuadEdgeMesh::sym(rdi), ldi);
    if (mesh_.org(ldi) == mesh_.org(ldo)) ldo = QuadEdgeMesh::sym(basel);
    if (mesh_.org(rdi) == mesh_.org(rdo)) rdo = basel;

    auto valid = [&](int e) { return right_of(mesh_.dest(e), basel); };

    for (;;) {
      int lcand = mesh_.onext(QuadEdgeMesh::sym(basel));
      if (valid(lcand)) {
        while (in_circle(mesh_.dest(basel), mesh_.org(basel), mesh_.dest(lcand),
                         mesh_.dest(mesh_.onext(lcand)))) {
          const int t = mesh_.onext(lcand);
          mesh_.remove(lcand);
          lcand = t;
        }
      }
      int rcand = mesh_.oprev(basel);
      if (valid(rcand)) {
        while (in_circle(mesh_.dest(basel), mesh_.org(basel), mesh_.dest(rcand),
                         mesh_.dest(mesh_.oprev(rcand)))) {
          const int t = mesh_.oprev(rcand);
          mesh_.remove(rcand);
          rcand = t;
        }
      }
      const bool lvalid = valid(lcand);
      const bool rvalid = valid(rcand);
      if (!lvalid && !rvalid) break;
      if (!lvalid || (rvalid && in_circle(mesh_.dest(lcand), mesh_.org(lcand), mesh_.org(rcand),
                                          mesh_.dest(rcand)))) {
        basel = mesh_.connect(rcand, QuadEdgeMesh::sym(basel));
      } else {
        basel = mesh_.connect(QuadEdgeMesh::sym(basel), QuadEdgeMesh::sym(lcand));
      }
    }
    return {ldo, rdo};
  }

  const PointPattern::Coordinates& pts_;
  std::vector<int> order_;
  QuadEdgeMesh mesh_;
};

}  // namespace

Simplex Simplex::edge(int a, int b) {
  if (a > b) std::swap(a, b);
  return {1, {a, b, -1}};
}

Simplex Simplex::triangle(int a, int b, int c) {
  std::array<int, 3> v{a, b, c};
  std::sort(v.begin(), v.end());
  return {2, v};
}

Triangulation delaunay(const PointPattern& pattern) {
  if (pattern.empty()) throw std::invalid_argument("delaunay: empty pattern");

  const auto& pts = pattern.coordinates();
  const int n = static_cast<int>(pattern.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pts(a, 0) != pts(b, 0)) return pts(a, 0) < pts(b, 0);
    return pts(a, 1) < pts(b, 1);
  });

  Triangulator triangulator(pts, std::move(order));
  const QuadEdgeMesh& mesh = triangulator.run();

  Triangulation out;
  out.points = pts;
  for (std::size_t q = 0; q < mesh.quad_count(); ++q) {
    if (!mesh.alive_quad(q)) continue;
    const int e = static_cast<int>(q << 2);
    int a = mesh.org(e), b = mesh.dest(e);
    if (a > b) std::swap(a, b);
    out.edges.push_back({a, b});

    for (int dir : {e, QuadEdgeMesh::sym(e)}) {
      const int e1 = mesh.lnext(dir);
      const int e2 = mesh.lnext(e1);
      if (mesh.lnext(e2) != dir) continue;
      const int u = mesh.org(dir), v = mesh.dest(dir), w = mesh.dest(e1);
      const Point pu = pts.row(u).transpose(), pv = pts.row(v).transpose(), pw = pts.row(w).transpose();
      if (orient2d(pu, pv, pw) <= 0) continue;
      std::array<int, 3> tri{u, v, w};
      std::sort(tri.begin(), tri.end());
      out.triangles.push_back(tri);
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  std::sort(out.triangles.begin(), out.triangles.end());
  out.triangles.erase(std::unique(out.triangles.begin(), out.triangles.end()), out.triangles.end());
  return out;
}

}  // namespace spgof
