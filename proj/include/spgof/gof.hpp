#ifndef SPGOF_GOF_HPP
#define SPGOF_GOF_HPP

#include "spgof/curve.hpp"
#include "spgof/geometry.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spgof {

enum class TestStatistic { MAD, DCLF, ST, QDIR, CRPS, INT, POINT, FUN };
enum class Ordering { Larger, TwoSided, Erl, Area, Cont };

std::string_view to_string(TestStatistic statistic);
std::string_view to_string(Ordering ordering);
TestStatistic parse_statistic(std::string_view name);
Ordering parse_ordering(std::string_view name);

/// The ordering a scalar statistic comes with (FUN defaults to erl).
Ordering default_ordering(TestStatistic statistic);
/// True for erl, area and cont.
bool is_functional(Ordering ordering);

/// The observed curve (row 0) and m simulated curves (rows 1..m) of one
/// summary statistic on a common grid.
class CurveEnsemble {
 public:
  using Matrix = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  CurveEnsemble(SummaryKind kind, EvalGrid grid, Matrix values);
  static CurveEnsemble from_curves(const std::vector<SummaryCurve>& curves);

  SummaryKind kind() const { return kind_; }
  const EvalGrid& grid() const { return grid_; }
  const Matrix& values() const { return values_; }
  Index m() const { return values_.rows() - 1; }

  /// Number of leading columns to use for the upper bound r_upper: the grid
  /// prefix, shortened to the first column holding a non-finite value. A
  /// note is appended when truncation happens. Throws if nothing is left.
  Index prefix(double r_upper, std::vector<std::string>* notes = nullptr) const;

 private:
  SummaryKind kind_;
  EvalGrid grid_;
  Matrix values_;
};

struct Envelope {
  CurveValues<> r;
  CurveValues<> low;
  CurveValues<> high;
  CurveValues<> observed;
};

struct TestOutcome {
  TestStatistic statistic = TestStatistic::FUN;
  Ordering ordering = Ordering::Erl;
  std::string summary;           ///< summary name, or names joined by '+' for a combination
  std::vector<double> r_upper;   ///< one bound, or one per combined component
  Index m = 0;
  CurveValues<> values;          ///< per-pattern statistic or measure values, index 0 observed
  double p_value = 1.0;
  std::optional<Envelope> envelope;
  std::vector<std::string> notes;
};

/// (1 + #{i >= 1 : D_i at least as extreme as D_0}) / (m + 1). For "larger"
/// large values are extreme, for "two-sided" the symmetric ranks are used,
/// for the functional orderings small measure values are extreme.
double mc_pvalue(const CurveValues<>& values, Ordering ordering);

/// t_i = min(#{j : D_j <= D_i}, #{j : D_j >= D_i}); small is extreme.
CurveValues<> two_sided_ranks(const CurveValues<>& values);

/// Trapezoid integrals over the first `columns` grid points of every row.
CurveValues<> trapezoid(const CurveEnsemble::Matrix& rows, const EvalGrid& grid, Index columns);

// Scalar statistics (larger is extreme unless noted).
CurveValues<> mad(const CurveEnsemble& ens, double r_upper, std::vector<std::string>* notes = nullptr);
CurveValues<> dclf(const CurveEnsemble& ens, double r_upper, std::vector<std::string>* notes = nullptr);
CurveValues<> st(const CurveEnsemble& ens, double r_upper, std::vector<std::string>* notes = nullptr);
CurveValues<> qdir(const CurveEnsemble& ens, double r_upper, std::vector<std::string>* notes = nullptr);
CurveValues<> crps(const CurveEnsemble& ens, double r_upper, std::vector<std::string>* notes = nullptr);
/// CRPS for several upper bounds, sharing the pairwise integrals.
std::vector<CurveValues<>> crps_sweep(const CurveEnsemble& ens, const std::vector<double>& r_uppers,
                                      std::vector<std::string>* notes = nullptr);
/// Two-sided statistics: raw values, ordered by two_sided_ranks.
CurveValues<> int_stat(const CurveEnsemble& ens, double r_upper, std::vector<std::string>* notes = nullptr);
CurveValues<> point_stat(const CurveEnsemble& ens, double r_star, std::vector<std::string>* notes = nullptr);

// Functional measures on the rows of a matrix (small is extreme).
/// Pointwise ranks: two-sided min(#>=, #<=) or one-sided #<=.
Eigen::ArrayXXi pointwise_ranks(const CurveEnsemble::Matrix& rows, bool two_sided);
CurveValues<> erl_measure(const CurveEnsemble::Matrix& rows, bool two_sided = true);
CurveValues<> cont_measure(const CurveEnsemble::Matrix& rows);
CurveValues<> area_measure(const CurveEnsemble::Matrix& rows);
/// Extreme rank k_i = min over points of the two-sided pointwise ranks.
CurveValues<> extreme_rank(const CurveEnsemble::Matrix& rows);

/// Largest measure value nu with #{i : E_i < nu} <= alpha (m + 1).
double envelope_threshold(const CurveValues<>& measure, double alpha);

/// Global envelope test on the grid prefix for r_upper.
TestOutcome fun_test(const CurveEnsemble& ens, double r_upper, Ordering ordering, double alpha = 0.05);

/// Any supported (statistic, ordering) pair. For POINT, r_upper is r*.
TestOutcome run_test(const CurveEnsemble& ens, TestStatistic statistic, Ordering ordering, double r_upper,
                     double alpha = 0.05);

/// Reduces each component to small-is-extreme scalars per pattern and tests
/// their vector with the one-sided extreme rank length ordering.
TestOutcome two_step_combine(const std::vector<TestOutcome>& components);

/// Scalars of a component outcome oriented so that small is extreme.
CurveValues<> small_is_extreme(const TestOutcome& outcome);

void write_outcome_csv_header(std::ostream& out);
void write_outcome_csv_row(std::ostream& out, const TestOutcome& outcome);
void write_envelope_csv(std::ostream& out, const Envelope& envelope);

}  // namespace spgof

#endif  // SPGOF_GOF_HPP
