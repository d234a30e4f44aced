#include "spgof/format.hpp"
#include "spgof/gof.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace spgof {

std::string_view to_string(TestStatistic statistic) {
  switch (statistic) {
    case TestStatistic::MAD: return "MAD";
    case TestStatistic::DCLF: return "DCLF";
    case TestStatistic::ST: return "ST";
    case TestStatistic::QDIR: return "QDIR";
    case TestStatistic::CRPS: return "CRPS";
    case TestStatistic::INT: return "INT";
    case TestStatistic::POINT: return "POINT";
    case TestStatistic::FUN: return "FUN";
  }
  return "?";
}

std::string_view to_string(Ordering ordering) {
  switch (ordering) {
    case Ordering::Larger: return "larger";
    case Ordering::TwoSided: return "two-sided";
    case Ordering::Erl: return "erl";
    case Ordering::Area: return "area";
    case Ordering::Cont: return "cont";
  }
  return "?";
}

namespace {
std::string lowered(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}
}  // namespace

TestStatistic parse_statistic(std::string_view name) {
  const std::string s = lowered(name);
  for (TestStatistic t : {TestStatistic::MAD, TestStatistic::DCLF, TestStatistic::ST, TestStatistic::QDIR,
                          TestStatistic::CRPS, TestStatistic::INT, TestStatistic::POINT, TestStatistic::FUN})
    if (lowered(to_string(t)) == s) return t;
  throw std::invalid_argument("unknown test statistic '" + std::string(name) + "'");
}

Ordering parse_ordering(std::string_view name) {
  const std::string s = lowered(name);
  if (s == "two_sided" || s == "twosided") return Ordering::TwoSided;
  for (Ordering o : {Ordering::Larger, Ordering::TwoSided, Ordering::Erl, Ordering::Area, Ordering::Cont})
    if (to_string(o) == s) return o;
  throw std::invalid_argument("unknown ordering '" + std::string(name) + "'");
}

Ordering default_ordering(TestStatistic statistic) {
  switch (statistic) {
    case TestStatistic::INT:
    case TestStatistic::POINT: return Ordering::TwoSided;
    case TestStatistic::FUN: return Ordering::Erl;
    default: return Ordering::Larger;
  }
}

bool is_functional(Ordering ordering) {
  return ordering == Ordering::Erl || ordering == Ordering::Area || ordering == Ordering::Cont;
}

CurveEnsemble::CurveEnsemble(SummaryKind kind, EvalGrid grid, Matrix values)
    : kind_(kind), grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.rows() < 2) throw std::invalid_argument("ensemble needs the observed curve and at least one simulation");
  if (values_.cols() != grid_.count()) throw std::invalid_argument("ensemble width does not match its grid");
}

CurveEnsemble CurveEnsemble::from_curves(const std::vector<SummaryCurve>& curves) {
  if (curves.size() < 2) throw std::invalid_argument("ensemble needs the observed curve and at least one simulation");
  const SummaryCurve& first = curves.front();
  Matrix values(static_cast<Index>(curves.size()), first.grid.count());
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (curves[i].kind != first.kind || !(curves[i].grid == first.grid))
      throw std::invalid_argument("ensemble curves must share statistic and grid");
    values.row(static_cast<Index>(i)) = curves[i].values.transpose();
  }
  return CurveEnsemble(first.kind, first.grid, std::move(values));
}

Index CurveEnsemble::prefix(double r_upper, std::vector<std::string>* notes) const {
  const Index wanted = grid_.prefix_for(r_upper);
  Index usable = 0;
  while (usable < wanted && values_.col(usable).isFinite().all()) ++usable;
  if (usable < wanted && notes)
    notes->push_back("non-finite values from r = " + format_number(grid_[usable]) + "; range truncated");
  if (usable == 0) throw std::domain_error("no usable grid points below r = " + format_number(r_upper));
  return usable;
}

double mc_pvalue(const CurveValues<>& values, Ordering ordering) {
  const Index n = values.size();
  if (n < 2) throw std::invalid_argument("Monte Carlo p-value needs m >= 1");
  Index count = 0;
  if (ordering == Ordering::Larger) {
    for (Index i = 1; i < n; ++i) count += values[i] >= values[0];
  } else if (ordering == Ordering::TwoSided) {
    const CurveValues<> t = two_sided_ranks(values);
    for (Index i = 1; i < n; ++i) count += t[i] <= t[0];
  } else {
    for (Index i = 1; i < n; ++i) count += values[i] <= values[0];
  }
  return static_cast<double>(1 + count) / static_cast<double>(n);
}

CurveValues<> two_sided_ranks(const CurveValues<>& values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  CurveValues<> t(values.size());
  for (Index i = 0; i < values.size(); ++i) {
    const auto below = std::upper_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin();
    const auto above = sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), values[i]);
    t[i] = static_cast<double>(std::min(below, above));
  }
  return t;
}

CurveValues<> trapezoid(const CurveEnsemble::Matrix& rows, const EvalGrid& grid, Index columns) {
  CurveValues<> out = CurveValues<>::Zero(rows.rows());
  for (Index k = 1; k < columns; ++k)
    out += 0.5 * (grid[k] - grid[k - 1]) * (rows.col(k) + rows.col(k - 1));
  return out;
}

void write_outcome_csv_header(std::ostream& out) { out << "statistic,ordering,summary,rUpper,m,pValue\n"; }

void write_outcome_csv_row(std::ostream& out, const TestOutcome& outcome) {
  out << to_string(outcome.statistic) << ',' << to_string(outcome.ordering) << ',' << outcome.summary << ',';
  for (std::size_t k = 0; k < outcome.r_upper.size(); ++k) out << (k ? "+" : "") << format_number(outcome.r_upper[k]);
  out << ',' << outcome.m << ',' << format_number(outcome.p_value) << '\n';
}

void write_envelope_csv(std::ostream& out, const Envelope& envelope) {
  out << "r,low,high,observed\n";
  for (Index k = 0; k < envelope.r.size(); ++k)
    out << format_number(envelope.r[k]) << ',' << format_number(envelope.low[k]) << ','
        << format_number(envelope.high[k]) << ',' << format_number(envelope.observed[k]) << '\n';
}

}  // namespace spgof
