// Functional orderings: extreme rank length, continuous rank and area.

#include "spgof/gof.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace spgof {
namespace {

using Matrix = CurveEnsemble::Matrix;

std::vector<double> sorted_column(const Matrix& rows, Index k) {
  std::vector<double> col(static_cast<std::size_t>(rows.rows()));
  for (Index i = 0; i < rows.rows(); ++i) col[static_cast<std::size_t>(i)] = rows(i, k);
  std::sort(col.begin(), col.end());
  return col;
}

}  // namespace

Eigen::ArrayXXi pointwise_ranks(const Matrix& rows, bool two_sided) {
  Eigen::ArrayXXi ranks(rows.rows(), rows.cols());
  for (Index k = 0; k < rows.cols(); ++k) {
    const std::vector<double> col = sorted_column(rows, k);
    for (Index i = 0; i < rows.rows(); ++i) {
      const auto le = std::upper_bound(col.begin(), col.end(), rows(i, k)) - col.begin();
      if (!two_sided) {
        ranks(i, k) = static_cast<int>(le);
        continue;
      }
      const auto ge = col.end() - std::lower_bound(col.begin(), col.end(), rows(i, k));
      ranks(i, k) = static_cast<int>(std::min(le, ge));
    }
  }
  return ranks;
}

CurveValues<> erl_measure(const Matrix& rows, bool two_sided) {
  const Index n = rows.rows();
  const Eigen::ArrayXXi ranks = pointwise_ranks(rows, two_sided);
  std::vector<std::vector<int>> sorted(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    auto& s = sorted[static_cast<std::size_t>(i)];
    s.assign(ranks.row(i).begin(), ranks.row(i).end());
    std::sort(s.begin(), s.end());
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return sorted[static_cast<std::size_t>(a)] < sorted[static_cast<std::size_t>(b)];
  });
  // E_i = #{j : S_j <=lex S_i} / (m + 1); equal vectors share the count.
  CurveValues<> measure(n);
  std::size_t pos = 0;
  while (pos < order.size()) {
    std::size_t end = pos + 1;
    while (end < order.size() &&
           sorted[static_cast<std::size_t>(order[end])] == sorted[static_cast<std::size_t>(order[pos])])
      ++end;
    for (std::size_t q = pos; q < end; ++q)
      measure[order[q]] = static_cast<double>(end) / static_cast<double>(n);
    pos = end;
  }
  return measure;
}

CurveValues<> cont_measure(const Matrix& rows) {
  const Index n = rows.rows();
  const Index m = n - 1;
  if (m < 2) throw std::invalid_argument("continuous rank needs m >= 2");
  CurveValues<> measure = CurveValues<>::Constant(n, std::numeric_limits<double>::infinity());
  std::vector<Index> order(static_cast<std::size_t>(n));
  const double top = static_cast<double>(m + 1);
  for (Index k = 0; k < rows.cols(); ++k) {
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return rows(a, k) < rows(b, k); });
    auto d = [&](Index pos) { return rows(order[static_cast<std::size_t>(pos)], k); };
    Index pos = 0;
    while (pos < n) {
      Index last = pos;
      while (last + 1 < n && d(last + 1) == d(pos)) ++last;
      for (Index i = pos; i <= last; ++i) {
        double c;
        if (last > pos) {
          c = static_cast<double>(pos + last + 1) / 2.0;
        } else if (i == 0) {
          c = d(1) < d(m) ? std::exp(-(d(1) - d(0)) / (d(m) - d(1))) : 0.0;
        } else if (i == m) {
          c = d(0) < d(m - 1) ? top - std::exp(-(d(m) - d(m - 1)) / (d(m - 1) - d(0))) : top;
        } else {
          c = static_cast<double>(i) + (d(i) - d(i - 1)) / (d(i + 1) - d(i - 1));
        }
        const Index curve = order[static_cast<std::size_t>(i)];
        measure[curve] = std::min(measure[curve], std::min(c, top - c));
      }
      pos = last + 1;
    }
  }
  return measure;
}

CurveValues<> extreme_rank(const Matrix& rows) {
  return pointwise_ranks(rows, true).rowwise().minCoeff().cast<double>();
}

CurveValues<> area_measure(const Matrix& rows) {
  const Index n = rows.rows();
  const Eigen::ArrayXXi ranks = pointwise_ranks(rows, true);
  const Eigen::ArrayXi k = ranks.rowwise().minCoeff();

  // Mass of each curve outside the envelope one level inside its own extreme
  // rank (the k-level envelope itself always contains the curve).
  std::vector<std::vector<double>> columns;
  for (Index c = 0; c < rows.cols(); ++c) columns.push_back(sorted_column(rows, c));
  CurveValues<> outside = CurveValues<>::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const Index level = std::min<Index>(k[i] + 1, n);
    for (Index c = 0; c < rows.cols(); ++c) {
      const auto& col = columns[static_cast<std::size_t>(c)];
      const double low = col[static_cast<std::size_t>(level - 1)];
      const double high = col[static_cast<std::size_t>(n - level)];
      outside[i] += std::max(0.0, low - rows(i, c)) + std::max(0.0, rows(i, c) - high);
    }
  }
  return k.cast<double>() - outside / (1.0 + outside.maxCoeff());
}

double envelope_threshold(const CurveValues<>& measure, double alpha) {
  std::vector<double> sorted(measure.begin(), measure.end());
  std::sort(sorted.begin(), sorted.end());
  const double allowed = alpha * static_cast<double>(sorted.size()) + 1e-9;
  double threshold = sorted.front();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) continue;
    if (static_cast<double>(i) <= allowed) threshold = sorted[i];
  }
  return threshold;
}

}  // namespace spgof
