#ifndef SPGOF_SUMMARIES_DETAIL_HPP
#define SPGOF_SUMMARIES_DETAIL_HPP

#include "spgof/summaries.hpp"

namespace spgof::detail {

SummaryCurve k_from_pairs_checked(const PointPattern& pattern, const EvalGrid& grid,
                                  const std::vector<PointPair>& pairs);
SummaryCurve pcf_from_pairs_checked(const PointPattern& pattern, const EvalGrid& grid,
                                    const std::vector<PointPair>& pairs);
SummaryCurve g_from_pairs(const PointPattern& pattern, const EvalGrid& grid, const std::vector<PointPair>& pairs);
SummaryCurve j_from(const SummaryCurve& f, const SummaryCurve& g);

}  // namespace spgof::detail

#endif
