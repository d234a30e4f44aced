// Adaptive orientation and in-circle predicates.
//
// A floating-point evaluation is accepted when it clears the forward error
// bound; otherwise the determinant is recomputed exactly with floating-point
// expansions (nonoverlapping sums of doubles).

#include "spgof/geometry.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace spgof {
namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon() / 2.0;  // 2^-53
constexpr double kOrientBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kInCircleBound = (10.0 + 96.0 * kEpsilon) * kEpsilon;

inline void two_sum(double a, double b, double& sum, double& err) {
  sum = a + b;
  const double b_virtual = sum - a;
  const double a_virtual = sum - b_virtual;
  err = (a - a_virtual) + (b - b_virtual);
}

inline void two_product(double a, double b, double& prod, double& err) {
  prod = a * b;
  err = std::fma(a, b, -prod);
}

// Nonoverlapping expansion, components in increasing magnitude, zeros removed.
class Expansion {
 public:
  Expansion() = default;
  explicit Expansion(double v) {
    if (v != 0.0) terms_.push_back(v);
  }

  static Expansion difference(double a, double b) {
    double s, e;
    two_sum(a, -b, s, e);
    Expansion out;
    if (e != 0.0) out.terms_.push_back(e);
    if (s != 0.0) out.terms_.push_back(s);
    return out;
  }

  // Grow-Expansion: adds one double, preserving the nonoverlapping property.
  Expansion& add(double b) {
    std::vector<double> out;
    out.reserve(terms_.size() + 1);
    double q = b;
    for (double t : terms_) {
      double sum, err;
      two_sum(q, t, sum, err);
      if (err != 0.0) out.push_back(err);
      q = sum;
    }
    if (q != 0.0) out.push_back(q);
    terms_.swap(out);
    return *this;
  }

  friend Expansion operator+(Expansion lhs, const Expansion& rhs) {
    for (double t : rhs.terms_) lhs.add(t);
    return lhs;
  }

  Expansion operator-() const {
    Expansion out = *this;
    for (double& t : out.terms_) t = -t;
    return out;
  }

  friend Expansion operator-(const Expansion& lhs, const Expansion& rhs) { return lhs + (-rhs); }

  friend Expansion operator*(const Expansion& lhs, const Expansion& rhs) {
    Expansion out;
    for (double a : lhs.terms_) {
      for (double b : rhs.terms_) {
        double p, e;
        two_product(a, b, p, e);
        out.add(e);
        out.add(p);
      }
    }
    return out;
  }

  int sign() const {
    if (terms_.empty()) return 0;
    return terms_.back() > 0.0 ? 1 : -1;
  }

 private:
  std::vector<double> terms_;
};

int orient_exact(const Point& a, const Point& b, const Point& c) {
  const Expansion acx = Expansion::difference(a.x(), c.x());
  const Expansion acy = Expansion::difference(a.y(), c.y());
  const Expansion bcx = Expansion::difference(b.x(), c.x());
  const Expansion bcy = Expansion::difference(b.y(), c.y());
  return (acx * bcy - acy * bcx).sign();
}

int incircle_exact(const Point& a, const Point& b, const Point& c, const Point& d) {
  const Expansion adx = Expansion::difference(a.x(), d.x());
  const Expansion ady = Expansion::difference(a.y(), d.y());
  const Expansion bdx = Expansion::difference(b.x(), d.x());
  const Expansion bdy = Expansion::difference(b.y(), d.y());
  const Expansion cdx = Expansion::difference(c.x(), d.x());
  const Expansion cdy = Expansion::difference(c.y(), d.y());

  const Expansion alift = adx * adx + ady * ady;
  const Expansion blift = bdx * bdx + bdy * bdy;
  const Expansion clift = cdx * cdx + cdy * cdy;

  const Expansion bc = bdx * cdy - cdx * bdy;
  const Expansion ca = cdx * ady - adx * cdy;
  const Expansion ab = adx * bdy - bdx * ady;

  return (alift * bc + blift * ca + clift * ab).sign();
}

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

int orient2d(const Point& a, const Point& b, const Point& c) {
  const double left = (a.x() - c.x()) * (b.y() - c.y());
  const double right = (a.y() - c.y()) * (b.x() - c.x());
  const double det = left - right;
  const double bound = kOrientBound * (std::abs(left) + std::abs(right));
  if (det > bound || -det > bound) return sign_of(det);
  return orient_exact(a, b, c);
}

int incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double adx = a.x() - d.x(), ady = a.y() - d.y();
  const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
  const double cdx = c.x() - d.x(), cdy = c.y() - d.y();

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double alift = adx * adx + ady * ady;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double blift = bdx * bdx + bdy * bdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double clift = cdx * cdx + cdy * cdy;

  const double det =
      alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = kInCircleBound * permanent;
  if (det > bound || -det > bound) return sign_of(det);
  return incircle_exact(a, b, c, d);
}

int incircle_perturbed(const Point& a, const Point& b, const Point& c, const Point& d,
                       const std::array<int, 4>& indices) {
  const int exact = incircle(a, b, c, d);
  if (exact != 0) return exact;

  // d/d(lift_j) of the in-circle determinant is (-1)^j * orient(others),
  // so the dominant nonvanishing perturbation term decides the sign.
  const std::array<const Point*, 4> pts{&a, &b, &c, &d};
  std::array<int, 4> order{0, 1, 2, 3};
  for (int i = 1; i < 4; ++i)
    for (int j = i; j > 0 && indices[order[j]] < indices[order[j - 1]]; --j)
      std::swap(order[j], order[j - 1]);

  for (int j : order) {
    std::array<const Point*, 3> rest{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
      if (i != j) rest[k++] = pts[i];
    const int o = orient2d(*rest[0], *rest[1], *rest[2]);
    if (o != 0) return (j % 2 == 0) ? o : -o;
  }
  return 0;
}

}  // namespace spgof
