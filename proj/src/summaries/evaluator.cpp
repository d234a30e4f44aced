#include "detail.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spgof {

SummaryEvaluator::SummaryEvaluator(const PointPattern& pattern, SummaryOptions options)
    : pattern_(pattern), options_(options) {}

const std::vector<PointPair>& SummaryEvaluator::pairs(double cutoff) {
  if (cutoff > pair_cutoff_) {
    pairs_ = close_pairs(pattern_, cutoff);
    pair_cutoff_ = cutoff;
  }
  return pairs_;
}

const AlphaFiltration& SummaryEvaluator::filtration() {
  if (!filtration_) filtration_ = alpha_filtration(pattern_);
  return *filtration_;
}

const PersistenceDiagram& SummaryEvaluator::diagram() {
  if (!diagram_) diagram_ = persistence(filtration());
  return *diagram_;
}

SummaryCurve SummaryEvaluator::evaluate(SummaryKind kind) {
  return evaluate(kind, EvalGrid::standard(kind, options_.grid_points));
}

SummaryCurve SummaryEvaluator::evaluate(SummaryKind kind, const EvalGrid& grid) {
  for (const auto& c : cache_)
    if (c.kind == kind && c.grid == grid) return c;

  auto compute = [&]() -> SummaryCurve {
    switch (kind) {
      case SummaryKind::K: return detail::k_from_pairs_checked(pattern_, grid, pairs(grid.r_max()));
      case SummaryKind::L: {
        SummaryCurve k = evaluate(SummaryKind::K, grid);
        k.kind = SummaryKind::L;
        k.values = (k.values / std::numbers::pi).sqrt();
        return k;
      }
      case SummaryKind::PCF: {
        if (pattern_.size() < 2) return detail::pcf_from_pairs_checked(pattern_, grid, {});
        const double b = stoyan_bandwidth(pattern_.intensity());
        return detail::pcf_from_pairs_checked(pattern_, grid, pairs(grid.r_max() + b));
      }
      case SummaryKind::F: return f_est(pattern_, grid, options_.lattice);
      case SummaryKind::G: return detail::g_from_pairs(pattern_, grid, pairs(grid.r_max()));
      case SummaryKind::J: {
        const SummaryCurve g = evaluate(SummaryKind::G, grid);
        return detail::j_from(evaluate(SummaryKind::F, grid), g);
      }
      case SummaryKind::Beta0: return betti_curve(diagram(), 0, grid);
      case SummaryKind::Beta1: return betti_curve(diagram(), 1, grid);
      case SummaryKind::APF0: return apf(diagram(), 0, grid);
      case SummaryKind::APF1: return apf(diagram(), 1, grid);
      case SummaryKind::Euler: return euler_curve(filtration(), grid);
    }
    throw std::logic_error("unhandled summary kind");
  };
  cache_.push_back(compute());
  return cache_.back();
}

}  // namespace spgof
