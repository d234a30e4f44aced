#include "spgof/curve.hpp"
#include "spgof/format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace spgof {

std::string_view to_string(SummaryKind kind) {
  switch (kind) {
    case SummaryKind::K: return "K";
    case SummaryKind::L: return "L";
    case SummaryKind::PCF: return "pcf";
    case SummaryKind::F: return "F";
    case SummaryKind::G: return "G";
    case SummaryKind::J: return "J";
    case SummaryKind::Beta0: return "beta0";
    case SummaryKind::Beta1: return "beta1";
    case SummaryKind::APF0: return "APF0";
    case SummaryKind::APF1: return "APF1";
    case SummaryKind::Euler: return "chi";
  }
  return "?";
}

SummaryKind parse_summary(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "euler") return SummaryKind::Euler;
  for (SummaryKind kind : kAllSummaries) {
    std::string canonical(to_string(kind));
    std::transform(canonical.begin(), canonical.end(), canonical.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (canonical == lower) return kind;
  }
  throw std::invalid_argument("unknown summary statistic '" + std::string(name) + "'");
}

bool is_topological(SummaryKind kind) {
  switch (kind) {
    case SummaryKind::Beta0:
    case SummaryKind::Beta1:
    case SummaryKind::APF0:
    case SummaryKind::APF1:
    case SummaryKind::Euler: return true;
    default: return false;
  }
}

bool is_distance_based(SummaryKind kind) {
  return kind == SummaryKind::F || kind == SummaryKind::G || kind == SummaryKind::J;
}

double max_upper_bound(SummaryKind kind) { return is_distance_based(kind) ? 0.1 : 0.25; }

EvalGrid::EvalGrid(double r_min, double r_max, Eigen::Index count) : r_min_(r_min), r_max_(r_max) {
  if (!(r_min >= 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
    throw std::invalid_argument("evaluation grid requires 0 <= rMin < rMax");
  if (count < 2) throw std::invalid_argument("evaluation grid requires at least 2 points");
  values_.resize(count);
  const double h = (r_max - r_min) / static_cast<double>(count - 1);
  for (Eigen::Index k = 0; k < count; ++k) values_[k] = r_min + static_cast<double>(k) * h;
  values_[count - 1] = r_max;
}

EvalGrid EvalGrid::standard(SummaryKind kind, Eigen::Index count) {
  if (kind == SummaryKind::PCF) return EvalGrid(0.005, 0.25, count);
  return EvalGrid(0.0, max_upper_bound(kind), count);
}

Eigen::Index EvalGrid::prefix_for(double r_upper) const {
  const double limit = r_upper + 1e-9 * std::max(1.0, std::abs(r_upper));
  const auto* begin = values_.data();
  return static_cast<Eigen::Index>(std::upper_bound(begin, begin + count(), limit) - begin);
}

Eigen::Index EvalGrid::nearest_index(double r) const {
  const double pos = (r - r_min_) / step();
  const auto k = static_cast<Eigen::Index>(std::llround(pos));
  return std::clamp<Eigen::Index>(k, 0, count() - 1);
}

Eigen::Index EvalGrid::first_at_or_above(double value) const {
  const auto* begin = values_.data();
  return static_cast<Eigen::Index>(std::lower_bound(begin, begin + count(), value) - begin);
}

bool EvalGrid::operator==(const EvalGrid& other) const {
  return r_min_ == other.r_min_ && r_max_ == other.r_max_ && count() == other.count();
}

Eigen::Index SummaryCurve::valid_prefix() const {
  Eigen::Index k = 0;
  while (k < values.size() && std::isfinite(values[k])) ++k;
  return k;
}

void write_curve_csv_header(std::ostream& out) { out << "r,value,statistic,patternId\n"; }

void write_curve_csv_rows(std::ostream& out, const SummaryCurve& curve, std::string_view pattern_id) {
  for (Eigen::Index k = 0; k < curve.values.size(); ++k)
    out << format_number(curve.grid[k]) << ',' << format_number(curve.values[k]) << ',' << to_string(curve.kind)
        << ',' << pattern_id << '\n';
}

}  // namespace spgof
