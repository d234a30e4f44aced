#ifndef SPGOF_SUMMARIES_HPP
#define SPGOF_SUMMARIES_HPP

#include "spgof/curve.hpp"
#include "spgof/geometry.hpp"
#include "spgof/homology.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace spgof {

/// Ripley's isotropic edge-correction weight 1/p_W, where p_W is the
/// fraction of the circle of the given radius around `center` inside the
/// window. Throws std::domain_error when no part of the circle is inside.
double iso_weight(const Point& center, double distance, const Window& window);

/// Bandwidth (half-width) of the Epanechnikov kernel with standard
/// deviation 0.15 / sqrt(intensity).
double stoyan_bandwidth(double intensity);

/// Unordered pairs {i, j} (i < j) at distance <= cutoff.
struct PointPair {
  Index i;
  Index j;
  double distance;
};
std::vector<PointPair> close_pairs(const PointPattern& pattern, double cutoff);

SummaryCurve k_est(const PointPattern& pattern, const EvalGrid& grid);
SummaryCurve l_est(const PointPattern& pattern, const EvalGrid& grid);
SummaryCurve pcf_est(const PointPattern& pattern, const EvalGrid& grid);

/// Kaplan-Meier estimators. `lattice` is the number of test locations per
/// side of the cell-centred grid used for F.
SummaryCurve f_est(const PointPattern& pattern, const EvalGrid& grid, Index lattice = 128);
SummaryCurve g_est(const PointPattern& pattern, const EvalGrid& grid);
SummaryCurve j_est(const PointPattern& pattern, const EvalGrid& grid, Index lattice = 128);

struct SummaryOptions {
  Index lattice = 128;
  Index grid_points = 513;
};

/// Evaluates any of the eleven summaries for one pattern, reusing pair lists,
/// nearest-neighbour data and the persistence diagram across requests.
class SummaryEvaluator {
 public:
  explicit SummaryEvaluator(const PointPattern& pattern, SummaryOptions options = {});

  SummaryCurve evaluate(SummaryKind kind);
  SummaryCurve evaluate(SummaryKind kind, const EvalGrid& grid);

  const PointPattern& pattern() const { return pattern_; }
  const SummaryOptions& options() const { return options_; }

 private:
  const std::vector<PointPair>& pairs(double cutoff);
  const PersistenceDiagram& diagram();
  const AlphaFiltration& filtration();

  PointPattern pattern_;
  SummaryOptions options_;
  double pair_cutoff_ = -1.0;
  std::vector<PointPair> pairs_;
  std::optional<AlphaFiltration> filtration_;
  std::optional<PersistenceDiagram> diagram_;
  std::vector<SummaryCurve> cache_;
};

}  // namespace spgof

#endif  // SPGOF_SUMMARIES_HPP
