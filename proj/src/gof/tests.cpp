#include "spgof/format.hpp"
#include "spgof/gof.hpp"

#include <limits>
#include <stdexcept>

namespace spgof {
namespace {

using Matrix = CurveEnsemble::Matrix;

bool compatible(TestStatistic statistic, Ordering ordering) {
  switch (statistic) {
    case TestStatistic::FUN: return is_functional(ordering);
    case TestStatistic::INT:
    case TestStatistic::POINT: return ordering == Ordering::TwoSided;
    default: return ordering == Ordering::Larger;
  }
}

CurveValues<> functional_measure(const Matrix& rows, Ordering ordering) {
  switch (ordering) {
    case Ordering::Erl: return erl_measure(rows, true);
    case Ordering::Cont: return cont_measure(rows);
    case Ordering::Area: return area_measure(rows);
    default: throw std::invalid_argument("not a functional ordering");
  }
}

}  // namespace

TestOutcome fun_test(const CurveEnsemble& ens, double r_upper, Ordering ordering, double alpha) {
  if (!is_functional(ordering)) throw std::invalid_argument("FUN requires the erl, area or cont ordering");
  if (ens.m() < 2) throw std::invalid_argument("FUN needs at least 2 simulations");
  TestOutcome outcome;
  outcome.statistic = TestStatistic::FUN;
  outcome.ordering = ordering;
  outcome.summary = std::string(to_string(ens.kind()));
  outcome.r_upper = {r_upper};
  outcome.m = ens.m();
  const Index columns = ens.prefix(r_upper, &outcome.notes);
  const Matrix rows = ens.values().leftCols(columns);
  outcome.values = functional_measure(rows, ordering);
  outcome.p_value = mc_pvalue(outcome.values, ordering);

  // Pointwise hull of all curves that are not among the alpha most extreme.
  const double nu = envelope_threshold(outcome.values, alpha);
  Envelope env;
  env.r = ens.grid().values().head(columns);
  env.low = CurveValues<>::Constant(columns, std::numeric_limits<double>::infinity());
  env.high = CurveValues<>::Constant(columns, -std::numeric_limits<double>::infinity());
  for (Index i = 0; i < rows.rows(); ++i) {
    if (outcome.values[i] < nu) continue;
    env.low = env.low.min(rows.row(i).transpose());
    env.high = env.high.max(rows.row(i).transpose());
  }
  env.observed = rows.row(0).transpose();
  outcome.envelope = std::move(env);
  return outcome;
}

TestOutcome run_test(const CurveEnsemble& ens, TestStatistic statistic, Ordering ordering, double r_upper,
                     double alpha) {
  if (!compatible(statistic, ordering))
    throw std::invalid_argument("ordering '" + std::string(to_string(ordering)) + "' does not apply to " +
                                std::string(to_string(statistic)));
  if (statistic == TestStatistic::FUN) return fun_test(ens, r_upper, ordering, alpha);

  TestOutcome outcome;
  outcome.statistic = statistic;
  outcome.ordering = ordering;
  outcome.summary = std::string(to_string(ens.kind()));
  outcome.r_upper = {r_upper};
  outcome.m = ens.m();
  auto* notes = &outcome.notes;
  switch (statistic) {
    case TestStatistic::MAD: outcome.values = mad(ens, r_upper, notes); break;
    case TestStatistic::DCLF: outcome.values = dclf(ens, r_upper, notes); break;
    case TestStatistic::ST: outcome.values = st(ens, r_upper, notes); break;
    case TestStatistic::QDIR: outcome.values = qdir(ens, r_upper, notes); break;
    case TestStatistic::CRPS: outcome.values = crps(ens, r_upper, notes); break;
    case TestStatistic::INT: outcome.values = int_stat(ens, r_upper, notes); break;
    case TestStatistic::POINT: outcome.values = point_stat(ens, r_upper, notes); break;
    case TestStatistic::FUN: break;
  }
  outcome.p_value = mc_pvalue(outcome.values, ordering);
  return outcome;
}

CurveValues<> small_is_extreme(const TestOutcome& outcome) {
  switch (outcome.ordering) {
    case Ordering::Larger: return -outcome.values;
    case Ordering::TwoSided: return two_sided_ranks(outcome.values);
    default: return outcome.values;
  }
}

TestOutcome two_step_combine(const std::vector<TestOutcome>& components) {
  if (components.empty()) throw std::invalid_argument("combination needs at least one component");
  const Index m = components.front().m;
  Matrix scalars(m + 1, static_cast<Index>(components.size()));
  TestOutcome outcome;
  outcome.statistic = TestStatistic::FUN;
  outcome.ordering = Ordering::Erl;
  outcome.m = m;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const TestOutcome& part = components[c];
    if (part.m != m || part.values.size() != m + 1)
      throw std::invalid_argument("combined components must share the number of simulations");
    scalars.col(static_cast<Index>(c)) = small_is_extreme(part);
    outcome.summary += (c ? "+" : "") + part.summary;
    outcome.r_upper.insert(outcome.r_upper.end(), part.r_upper.begin(), part.r_upper.end());
    for (const auto& note : part.notes) outcome.notes.push_back(part.summary + ": " + note);
  }
  outcome.values = erl_measure(scalars, false);
  outcome.p_value = mc_pvalue(outcome.values, Ordering::Erl);
  return outcome;
}

}  // namespace spgof
