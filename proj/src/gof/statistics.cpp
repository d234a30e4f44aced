// Scalar test statistics: deviation-type (MAD, DCLF, ST, QDIR, CRPS) and the
// two-sided INT and POINT.

#include "spgof/format.hpp"
#include "spgof/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace spgof {
namespace {

using Matrix = CurveEnsemble::Matrix;

constexpr double kTinyDenominator = 1e-12;

void require_m(const CurveEnsemble& ens, Index minimum, const char* what) {
  if (ens.m() < minimum)
    throw std::invalid_argument(std::string(what) + " needs at least " + std::to_string(minimum) + " simulations");
}

// Each row minus the pointwise mean of the other m rows.
Matrix leave_one_out_residuals(const CurveEnsemble& ens, Index columns) {
  const auto& v = ens.values();
  const double m = static_cast<double>(ens.m());
  const Eigen::Array<double, 1, Eigen::Dynamic> total = v.leftCols(columns).colwise().sum();
  Matrix out(v.rows(), columns);
  for (Index i = 0; i < v.rows(); ++i) out.row(i) = v.row(i).head(columns) - (total - v.row(i).head(columns)) / m;
  return out;
}

// Type 7 sample quantile of already sorted values.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

void note_dropped(std::vector<std::string>* notes, Index dropped, const char* what) {
  if (notes && dropped > 0)
    notes->push_back(std::string(what) + ": " + std::to_string(dropped) +
                     " grid points with vanishing denominator left out of the supremum");
}

}  // namespace

CurveValues<> mad(const CurveEnsemble& ens, double r_upper, std::vector<std::string>* notes) {
  require_m(ens, 2, "MAD");
  const Index columns = ens.prefix(r_upper, notes);
  return leave_one_out_residuals(ens, columns).abs().rowwise().maxCoeff();
}

CurveValues<> dclf(const CurveEnsemble& ens, double r_upper, std::vector<std::string>* notes) {
  require_m(ens, 2, "DCLF");
  const Index columns = ens.prefix(r_upper, notes);
  return trapezoid(leave_one_out_residuals(ens, columns).square(), ens.grid(), columns);
}

CurveValues<> st(const CurveEnsemble& ens, double r_upper, std::vector<std::string>* notes) {
  require_m(ens, 20, "ST");
  const Index columns = ens.prefix(r_upper, notes);
  const auto& v = ens.values();
  const double n = static_cast<double>(v.rows());
  CurveValues<> out = CurveValues<>::Zero(v.rows());
  Index used = 0;
  for (Index k = 0; k < columns; ++k) {
    const auto col = v.col(k);
    const double mean = col.mean();
    const double sd = std::sqrt((col - mean).square().sum() / (n - 1.0));
    if (!(sd >= kTinyDenominator)) continue;
    ++used;
    out = out.max((col - mean).abs() / sd);
  }
  if (used == 0) throw std::domain_error("ST: the standard deviation vanishes at every grid point");
  note_dropped(notes, columns - used, "ST");
  return out;
}

CurveValues<> qdir(const CurveEnsemble& ens, double r_upper, std::vector<std::string>* notes) {
  require_m(ens, 20, "QDIR");
  const Index columns = ens.prefix(r_upper, notes);
  const auto& v = ens.values();
  CurveValues<> out = CurveValues<>::Zero(v.rows());
  std::vector<double> sorted(static_cast<std::size_t>(v.rows()));
  Index used = 0;
  for (Index k = 0; k < columns; ++k) {
    for (Index i = 0; i < v.rows(); ++i) sorted[static_cast<std::size_t>(i)] = v(i, k);
    std::sort(sorted.begin(), sorted.end());
    const double mean = v.col(k).mean();
    const double upper = std::abs(quantile_sorted(sorted, 0.975) - mean);
    const double lower = std::abs(quantile_sorted(sorted, 0.025) - mean);
    const bool upper_ok = upper >= kTinyDenominator, lower_ok = lower >= kTinyDenominator;
    if (!upper_ok && !lower_ok) continue;
    ++used;
    for (Index i = 0; i < v.rows(); ++i) {
      const double d = v(i, k) - mean;
      if (d >= 0.0) {
        if (upper_ok) out[i] = std::max(out[i], d / upper);
      } else if (lower_ok) {
        out[i] = std::max(out[i], -d / lower);
      }
    }
  }
  if (used == 0) throw std::domain_error("QDIR: the quantile spread vanishes at every grid point");
  note_dropped(notes, columns - used, "QDIR");
  return out;
}

std::vector<CurveValues<>> crps_sweep(const CurveEnsemble& ens, const std::vector<double>& r_uppers,
                                      std::vector<std::string>* notes) {
  require_m(ens, 2, "CRPS");
  std::vector<Index> prefixes;
  for (double r : r_uppers) prefixes.push_back(ens.prefix(r, notes));
  const Index widest = prefixes.empty() ? 0 : *std::max_element(prefixes.begin(), prefixes.end());

  const auto& v = ens.values();
  const Index n = v.rows();
  const auto& grid = ens.grid();
  // cumulative[k] = integral of |D_i - D_j| over the first k + 1 grid points.
  std::vector<Eigen::ArrayXXd> pairwise(prefixes.size(), Eigen::ArrayXXd::Zero(n, n));
  std::vector<double> cumulative(static_cast<std::size_t>(std::max<Index>(widest, 1)));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      double integral = 0.0;
      double prev = std::abs(v(i, 0) - v(j, 0));
      cumulative[0] = 0.0;
      for (Index k = 1; k < widest; ++k) {
        const double cur = std::abs(v(i, k) - v(j, k));
        integral += 0.5 * (grid[k] - grid[k - 1]) * (cur + prev);
        prev = cur;
        cumulative[static_cast<std::size_t>(k)] = integral;
      }
      for (std::size_t s = 0; s < prefixes.size(); ++s)
        pairwise[s](i, j) = pairwise[s](j, i) = cumulative[static_cast<std::size_t>(prefixes[s] - 1)];
    }

  const double m = static_cast<double>(n - 1);
  std::vector<CurveValues<>> out;
  for (const auto& a : pairwise) {
    const CurveValues<> rowsum = a.rowwise().sum();
    const double total = 0.5 * rowsum.sum();
    out.push_back(rowsum / m - (total - rowsum) / (m * (m - 1.0)));
  }
  return out;
}

CurveValues<> crps(const CurveEnsemble& ens, double r_upper, std::vector<std::string>* notes) {
  return crps_sweep(ens, {r_upper}, notes).front();
}

CurveValues<> int_stat(const CurveEnsemble& ens, double r_upper, std::vector<std::string>* notes) {
  const Index columns = ens.prefix(r_upper, notes);
  return trapezoid(ens.values(), ens.grid(), columns);
}

CurveValues<> point_stat(const CurveEnsemble& ens, double r_star, std::vector<std::string>* notes) {
  const Index k = ens.grid().nearest_index(r_star);
  if (notes && ens.grid()[k] != r_star)
    notes->push_back("POINT: r* = " + format_number(r_star) + " evaluated at grid point " + format_number(ens.grid()[k]));
  const auto col = ens.values().col(k);
  if (!col.isFinite().all()) throw std::domain_error("POINT: non-finite values at r*");
  return col;
}

}  // namespace spgof
