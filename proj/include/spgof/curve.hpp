#ifndef SPGOF_CURVE_HPP
#define SPGOF_CURVE_HPP

#include <Eigen/Core>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spgof {

template <typename Scalar = double>
using CurveValues = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

/// The eleven functional summary statistics.
enum class SummaryKind { K, L, PCF, F, G, J, Beta0, Beta1, APF0, APF1, Euler };

inline constexpr SummaryKind kAllSummaries[] = {
    SummaryKind::K,     SummaryKind::L,     SummaryKind::PCF,  SummaryKind::F,
    SummaryKind::G,     SummaryKind::J,     SummaryKind::Beta0, SummaryKind::Beta1,
    SummaryKind::APF0,  SummaryKind::APF1,  SummaryKind::Euler};

std::string_view to_string(SummaryKind kind);
/// Accepts the canonical names (K, L, pcf, F, G, J, beta0, beta1, APF0, APF1,
/// chi), case-insensitively, plus `euler`. Throws std::invalid_argument.
SummaryKind parse_summary(std::string_view name);

bool is_topological(SummaryKind kind);
bool is_distance_based(SummaryKind kind);  ///< F, G, J

/// Largest admissible upper bound of the evaluation range for the family.
double max_upper_bound(SummaryKind kind);

/// Equidistant evaluation grid including both endpoints.
class EvalGrid {
 public:
  EvalGrid(double r_min, double r_max, Eigen::Index count = 513);

  /// The grid shared by a statistic family: [0, 0.25] for second-order and
  /// topological summaries, [0, 0.1] for F, G, J, [0.005, 0.25] for pcf.
  static EvalGrid standard(SummaryKind kind, Eigen::Index count = 513);

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  Eigen::Index count() const { return values_.size(); }
  double step() const { return (r_max_ - r_min_) / static_cast<double>(count() - 1); }
  const CurveValues<>& values() const { return values_; }
  double operator[](Eigen::Index k) const { return values_[k]; }

  /// Number of leading grid points with r <= r_upper (relative slack 1e-9).
  Eigen::Index prefix_for(double r_upper) const;
  /// Index of the grid point nearest to r.
  Eigen::Index nearest_index(double r) const;
  /// Index of the first grid point >= value (count() if none).
  Eigen::Index first_at_or_above(double value) const;

  bool operator==(const EvalGrid& other) const;

 private:
  double r_min_;
  double r_max_;
  CurveValues<> values_;
};

/// A summary statistic evaluated on a grid. Values may be NaN where the
/// estimator is undefined (J beyond F = 1).
struct SummaryCurve {
  SummaryKind kind;
  EvalGrid grid;
  CurveValues<> values;

  /// Number of leading finite values.
  Eigen::Index valid_prefix() const;
};

/// CSV export with columns r, value, statistic, patternId.
void write_curve_csv_header(std::ostream& out);
void write_curve_csv_rows(std::ostream& out, const SummaryCurve& curve, std::string_view pattern_id);

}  // namespace spgof

#endif  // SPGOF_CURVE_HPP
