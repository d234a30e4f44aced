#ifndef SPGOF_STUDY_HPP
#define SPGOF_STUDY_HPP

#include "spgof/gof.hpp"
#include "spgof/models.hpp"
#include "spgof/summaries.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace spgof {

/// One test construction evaluated at several upper bounds of the range.
struct TestSpec {
  SummaryKind summary = SummaryKind::L;
  TestStatistic statistic = TestStatistic::FUN;
  Ordering ordering = Ordering::Erl;
  std::vector<double> r_uppers;
};

/// One component of a combined test; a single upper bound.
struct ComponentSpec {
  SummaryKind summary = SummaryKind::L;
  TestStatistic statistic = TestStatistic::FUN;
  Ordering ordering = Ordering::Erl;
  double r_upper = 0.25;
};

struct CombinationSpec {
  std::vector<ComponentSpec> components;
};

struct StudyConfig {
  std::uint64_t seed = 1;
  Index replications = 200;
  std::vector<Index> m{299};
  double alpha = 0.05;
  unsigned threads = 1;
  SummaryOptions summary;
  SimulationOptions simulation;
  std::vector<ModelSpec> models;
  std::vector<double> windows{1.0, 2.0, 6.0, 20.0};
  std::vector<TestSpec> tests;
  std::vector<CombinationSpec> combinations;
};

inline constexpr Index kAllowedSimulationCounts[] = {99, 299, 499, 999};

/// Throws std::invalid_argument for an infeasible configuration: unknown
/// simulation count, upper bound beyond the family maximum, empty model or
/// window list, or a test without bounds.
void validate(const StudyConfig& config);

/// Reads a YAML study configuration (format described in the README).
StudyConfig parse_study_config(std::istream& in);
StudyConfig load_study_config(const std::string& path);

struct PowerRow {
  std::string model;
  double window = 0.0;
  std::string summary;
  TestStatistic statistic = TestStatistic::FUN;
  Ordering ordering = Ordering::Erl;
  std::vector<double> r_upper;
  Index m = 0;
  Index rejections = 0;
  Index replications = 0;
  Index degenerate = 0;  ///< replications where the statistic was undefined (counted as not rejected)

  double rate() const;
  double stderr_rate() const;
};

struct PowerTable {
  std::vector<PowerRow> rows;  ///< sorted by model, window, summary, statistic, ordering, rUpper, m
};

/// The observed pattern and its null simulations for one replication:
/// row 0 is drawn from the model with rng.substream(0), row j >= 1 is a
/// binomial pattern with the observed count drawn with rng.substream(j).
std::vector<PointPattern> replication_patterns(const ModelSpec& model, const Window& window, Index m,
                                               const RngStream& rng, const SimulationOptions& options = {});

/// Binomial null simulations conditioned on the observed count.
std::vector<PointPattern> binomial_nulls(const PointPattern& observed, Index m, const RngStream& rng);

/// Curves of each requested summary for every pattern, on the standard grids.
std::map<SummaryKind, CurveEnsemble> summary_ensembles(const std::vector<PointPattern>& patterns,
                                                       const std::vector<SummaryKind>& kinds,
                                                       const SummaryOptions& options = {});

/// Random stream of replication `rep` in the (model, window) cell.
RngStream replication_stream(std::uint64_t seed, std::size_t model, std::size_t window, Index rep);

PowerTable run_power_study(const StudyConfig& config);

/// Orders rows by model, window, summary, statistic, ordering, rUpper, m.
void sort_rows(PowerTable& table);

/// Rows are written in sorted order.
void write_power_csv(std::ostream& out, const PowerTable& table);
/// Rejection rate against rUpper, one line per test construction (and window, m).
void write_power_svg(std::ostream& out, const PowerTable& table, const std::string& model,
                     const std::string& summary);
/// power_table.csv plus one SVG per (model, summary). Throws std::runtime_error
/// when the directory cannot be created or written.
void emit_report(const PowerTable& table, const std::string& out_dir);

}  // namespace spgof

#endif  // SPGOF_STUDY_HPP
