// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include "oracles.hpp"
#include "spgof/study.hpp"

#include <CLI11.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

using namespace spgof;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
  }
};

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

unsigned g_threads = 1;

// ---------------------------------------------------------------------------
// Power-study helpers

TestSpec test(SummaryKind s, TestStatistic t, Ordering o, std::vector<double> r) { return {s, t, o, std::move(r)}; }
TestSpec fun(SummaryKind s, Ordering o, std::vector<double> r) { return test(s, TestStatistic::FUN, o, std::move(r)); }

PowerTable power_cell(ModelFamily family, double area, Index reps, Index m, std::vector<TestSpec> tests,
                      std::vector<CombinationSpec> combos, std::uint64_t seed) {
  StudyConfig c;
  c.seed = seed;
  c.replications = reps;
  c.m = {m};
  c.threads = g_threads;
  c.models = {ModelSpec::preset(family)};
  c.windows = {area};
  c.tests = std::move(tests);
  c.combinations = std::move(combos);
  return run_power_study(c);
}

const PowerRow& row(const PowerTable& t, const std::string& summary, TestStatistic s, Ordering o,
                    std::vector<double> r) {
  for (const auto& x : t.rows)
    if (x.summary == summary && x.statistic == s && x.ordering == o && x.r_upper == r) return x;
  throw std::logic_error("missing power table row for " + summary);
}

std::string describe(const PowerRow& r) {
  std::string s = r.summary + "/" + std::string(to_string(r.statistic));
  if (r.statistic == TestStatistic::FUN) s += "-" + std::string(to_string(r.ordering));
  s += "@";
  for (std::size_t k = 0; k < r.r_upper.size(); ++k) s += (k ? "+" : "") + fmt(r.r_upper[k], 2);
  return s + "=" + fmt(r.rate());
}

// a is at least as powerful as b up to two standard errors of the difference.
bool not_worse(const PowerRow& a, const PowerRow& b) {
  const double se = std::sqrt(a.stderr_rate() * a.stderr_rate() + b.stderr_rate() * b.stderr_rate());
  return a.rate() >= b.rate() - 2.0 * se;
}

// ---------------------------------------------------------------------------

Verdict size_control() {
  Verdict v;
  for (double area : {1.0, 6.0}) {
    const PowerTable t = power_cell(ModelFamily::Poi, area, 400, 99,
                                    {test(SummaryKind::L, TestStatistic::DCLF, Ordering::Larger, {0.25}),
                                     test(SummaryKind::J, TestStatistic::MAD, Ordering::Larger, {0.1}),
                                     fun(SummaryKind::Beta0, Ordering::Erl, {0.1}),
                                     test(SummaryKind::K, TestStatistic::CRPS, Ordering::Larger, {0.25})},
                                    {}, 101);
    for (const auto& r : t.rows)
      v.require(r.rate() >= 0.028 && r.rate() <= 0.078, "W" + fmt(area, 0) + " " + describe(r));
  }
  return v;
}

Verdict qdir_conservative() {
  Verdict v;
  const PowerTable t = power_cell(ModelFamily::Poi, 6.0, 500, 299,
                                  {test(SummaryKind::Beta0, TestStatistic::QDIR, Ordering::Larger, {0.1}),
                                   test(SummaryKind::Beta1, TestStatistic::QDIR, Ordering::Larger, {0.1})},
                                  {}, 202);
  const PowerRow& b0 = row(t, "beta0", TestStatistic::QDIR, Ordering::Larger, {0.1});
  const PowerRow& b1 = row(t, "beta1", TestStatistic::QDIR, Ordering::Larger, {0.1});
  v.require(b1.rate() <= 0.06, describe(b1) + " <= 0.06");
  v.require(b1.rate() < b0.rate(), "below " + describe(b0));
  v.require(std::abs(b1.rate() - 0.038) <= 0.02, "beta1 within 0.02 of 0.038");
  v.require(std::abs(b0.rate() - 0.059) <= 0.02, "beta0 within 0.02 of 0.059");
  return v;
}

// Alternatives shared by the spot checks and the power orderings.
struct AlternativeRuns {
  PowerTable matclu6, hard2, badsil6, badsil2, str6, gdpp6;
};

const std::vector<double> kSweep{0.05, 0.1, 0.15, 0.2, 0.25};

const AlternativeRuns& alternatives() {
  static const AlternativeRuns runs = [] {
    const Index reps = 200, m = 299;
    const auto beta1 = [](TestSpec extra) -> std::vector<TestSpec> {
      return {fun(SummaryKind::Beta1, Ordering::Erl, {0.1, 0.25}), fun(SummaryKind::Beta1, Ordering::Cont, {0.1, 0.25}),
              std::move(extra)};
    };
    AlternativeRuns r;
    r.matclu6 = power_cell(ModelFamily::MatClu, 6.0, reps, m,
                           {fun(SummaryKind::L, Ordering::Erl, {0.25}),
                            test(SummaryKind::L, TestStatistic::DCLF, Ordering::Larger, kSweep),
                            test(SummaryKind::L, TestStatistic::MAD, Ordering::Larger, kSweep),
                            test(SummaryKind::K, TestStatistic::DCLF, Ordering::Larger, {0.25}),
                            test(SummaryKind::K, TestStatistic::CRPS, Ordering::Larger, {0.25}),
                            fun(SummaryKind::Beta1, Ordering::Erl, {0.1, 0.25}),
                            fun(SummaryKind::Beta1, Ordering::Cont, {0.1, 0.25})},
                           {}, 303);
    r.hard2 = power_cell(ModelFamily::Hard, 2.0, reps, m, beta1(fun(SummaryKind::J, Ordering::Erl, {0.1})), {}, 304);
    r.badsil6 = power_cell(ModelFamily::BadSil, 6.0, reps, m,
                           {fun(SummaryKind::L, Ordering::Erl, {0.25}), fun(SummaryKind::Euler, Ordering::Erl, {0.25}),
                            fun(SummaryKind::Beta1, Ordering::Erl, {0.1, 0.25}),
                            fun(SummaryKind::Beta1, Ordering::Cont, {0.1, 0.25})},
                           {}, 305);
    CombinationSpec combo{{{SummaryKind::Beta0, TestStatistic::FUN, Ordering::Erl, 0.1},
                           {SummaryKind::J, TestStatistic::FUN, Ordering::Erl, 0.1},
                           {SummaryKind::L, TestStatistic::FUN, Ordering::Erl, 0.25}}};
    r.badsil2 = power_cell(ModelFamily::BadSil, 2.0, reps, m, {}, {combo}, 306);
    r.str6 = power_cell(ModelFamily::Str, 6.0, reps, m,
                        {fun(SummaryKind::Beta1, Ordering::Erl, {0.1, 0.25}),
                         fun(SummaryKind::Beta1, Ordering::Cont, {0.1, 0.25})},
                        {}, 307);
    r.gdpp6 = power_cell(ModelFamily::GDPP, 6.0, reps, m,
                         {fun(SummaryKind::Beta1, Ordering::Erl, {0.1, 0.25}),
                          fun(SummaryKind::Beta1, Ordering::Cont, {0.1, 0.25})},
                         {}, 308);
    return r;
  }();
  return runs;
}

Verdict power_spot_checks() {
  Verdict v;
  const auto& a = alternatives();
  const auto F = TestStatistic::FUN;
  const auto E = Ordering::Erl;
  const PowerRow& l_matclu = row(a.matclu6, "L", F, E, {0.25});
  const PowerRow& j_hard = row(a.hard2, "J", F, E, {0.1});
  const PowerRow& l_badsil = row(a.badsil6, "L", F, E, {0.25});
  const PowerRow& chi_badsil = row(a.badsil6, "chi", F, E, {0.25});
  const PowerRow& combo = row(a.badsil2, "beta0+J+L", F, E, {0.1, 0.1, 0.25});
  v.require(std::abs(l_matclu.rate() - 0.951) <= 0.05, "MatClu W6 " + describe(l_matclu) + " ~ 0.951");
  v.require(j_hard.rate() >= 1.0 - 0.03, "Hard W2 " + describe(j_hard) + " ~ 1.000");
  v.require(std::abs(l_badsil.rate() - 0.530) <= 0.05, "BadSil W6 " + describe(l_badsil) + " ~ 0.530");
  v.require(chi_badsil.rate() >= 1.0 - 0.03, "BadSil W6 " + describe(chi_badsil) + " ~ 1.000");
  v.require(l_badsil.rate() < chi_badsil.rate(), "L below chi on BadSil");
  v.require(combo.rate() >= 0.986 - 0.03, "BadSil W2 " + describe(combo) + " ~ 0.986");
  return v;
}

Verdict power_orderings() {
  Verdict v;
  const auto& a = alternatives();
  for (double r : kSweep) {
    const PowerRow& dclf = row(a.matclu6, "L", TestStatistic::DCLF, Ordering::Larger, {r});
    const PowerRow& mad = row(a.matclu6, "L", TestStatistic::MAD, Ordering::Larger, {r});
    v.require(not_worse(dclf, mad), describe(dclf) + " vs " + describe(mad));
  }
  const PowerRow& crps = row(a.matclu6, "K", TestStatistic::CRPS, Ordering::Larger, {0.25});
  const PowerRow& dclf = row(a.matclu6, "K", TestStatistic::DCLF, Ordering::Larger, {0.25});
  v.require(not_worse(crps, dclf), describe(crps) + " vs " + describe(dclf));
  const std::pair<const char*, const PowerTable*> alts[] = {
      {"MatClu W6", &a.matclu6}, {"BadSil W6", &a.badsil6}, {"Hard W2", &a.hard2},
      {"Str W6", &a.str6},       {"GDPP W6", &a.gdpp6}};
  for (const auto& [name, table] : alts)
    for (double r : {0.1, 0.25}) {
      const PowerRow& erl = row(*table, "beta1", TestStatistic::FUN, Ordering::Erl, {r});
      const PowerRow& cont = row(*table, "beta1", TestStatistic::FUN, Ordering::Cont, {r});
      v.require(not_worse(erl, cont), std::string(name) + " " + describe(erl) + " vs cont " + fmt(cont.rate()));
    }
  return v;
}

Verdict continuous_rank_example() {
  Verdict v;
  // Twenty curves on seven points: the observed one is 5 at the first two
  // points where nine simulations are 1 and ten are 0; five simulations
  // carry a single isolated 1 where everything else is 0.
  CurveEnsemble::Matrix d = CurveEnsemble::Matrix::Zero(20, 7);
  d(0, 0) = d(0, 1) = 5.0;
  for (Index j = 11; j <= 19; ++j) d(j, 0) = d(j, 1) = 1.0;
  const Index isolated[] = {6, 8, 12, 15, 18};
  for (Index s = 0; s < 5; ++s) d(isolated[s], 2 + s) = 1.0;
  const CurveEnsemble ens(SummaryKind::Beta1, EvalGrid(0.0, 0.25, 7), d);
  const TestOutcome erl = fun_test(ens, 0.25, Ordering::Erl);
  const TestOutcome cont = fun_test(ens, 0.25, Ordering::Cont);
  v.require(erl.p_value == 0.05, "erl p = " + fmt(erl.p_value));
  v.require(cont.p_value == 0.3, "cont p = " + fmt(cont.p_value));
  int zeros = 0;
  for (Index i = 1; i < 20; ++i) zeros += cont.values[i] == 0.0;
  v.require(zeros == 5, std::to_string(zeros) + " curves with rank 0");
  const auto outside = [](const Envelope& e) {
    return ((e.observed < e.low) || (e.observed > e.high)).any();
  };
  v.require(outside(*erl.envelope) && !outside(*cont.envelope), "erl envelope excludes, cont includes");

  // Hand-computed raw ranks c on five-curve fixtures, C = min(c, 5 - c).
  struct Fixture {
    std::array<double, 5> values;
    std::array<double, 5> raw;
  };
  const Fixture fixtures[] = {
      {{0, 1, 3, 6, 10}, {std::exp(-1.0 / 9.0), 1.0 + 1.0 / 3.0, 2.4, 3.0 + 3.0 / 7.0, 5.0 - std::exp(-2.0 / 3.0)}},
      {{2, 2, 5, 5, 5}, {1.0, 1.0, 3.5, 3.5, 3.5}},
      {{1, 4, 4, 4, 4}, {0.0, 3.0, 3.0, 3.0, 3.0}},
      {{0, 0, 0, 0, 7}, {2.0, 2.0, 2.0, 2.0, 5.0}},
      {{10, 6, 0, 3, 1}, {5.0 - std::exp(-2.0 / 3.0), 3.0 + 3.0 / 7.0, std::exp(-1.0 / 9.0), 2.4, 1.0 + 1.0 / 3.0}},
  };
  int matched = 0;
  for (const auto& f : fixtures) {
    CurveEnsemble::Matrix col(5, 1);
    for (int i = 0; i < 5; ++i) col(i, 0) = f.values[static_cast<std::size_t>(i)];
    const CurveValues<> c = cont_measure(col);
    bool ok = true;
    for (int i = 0; i < 5; ++i) {
      const double raw = f.raw[static_cast<std::size_t>(i)];
      ok = ok && std::abs(c[i] - std::min(raw, 5.0 - raw)) < 1e-12;
    }
    matched += ok;
  }
  v.require(matched == 5, std::to_string(matched) + "/5 tie fixtures");
  return v;
}

Verdict topology_oracles() {
  Verdict v;
  std::mt19937_64 gen(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int agree = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 8);
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < n) {
      // Every fourth pattern on a coarse lattice to force degeneracies.
      const Point p = trial % 4 == 0 ? Point(static_cast<double>(gen() % 5) / 4.0, static_cast<double>(gen() % 5) / 4.0)
                                     : Point(u(gen), u(gen));
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    const AlphaFiltration f = alpha_filtration(PointPattern(Window(0, 1, 0, 1), pts));
    std::vector<oracle::Pair> ours;
    for (const auto& feat : persistence(f).features)
      if (feat.birth < feat.death) ours.emplace_back(feat.dim, feat.birth, feat.death);
    std::sort(ours.begin(), ours.end());
    agree += ours == oracle::persistence_pairs(f);
  }
  v.require(agree == 500, std::to_string(agree) + "/500 diagrams equal the rank oracle");

  int exact = 0;
  RngStream rng(607, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const PointPattern p = sample_binomial(300, Window::square(6.0), rng);
    SummaryEvaluator ev(p);
    const auto b0 = ev.evaluate(SummaryKind::Beta0), b1 = ev.evaluate(SummaryKind::Beta1);
    const auto chi = ev.evaluate(SummaryKind::Euler);
    exact += (chi.values == b0.values - b1.values).all();
  }
  v.require(exact == 100, std::to_string(exact) + "/100 patterns with chi = beta0 - beta1");
  return v;
}

// Expected value of the kernel pcf estimator for a stationary process with
// pair correlation g: (1/r) * integral of k_b(r - s) g(s) s ds.
double smoothed_pcf(const std::function<double(double)>& g, double r, double b) {
  const int steps = 2000;
  const double lo = std::max(0.0, r - b), hi = r + b, h = (hi - lo) / steps;
  double sum = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double s = lo + (i + 0.5) * h, t = (r - s) / b;
    sum += 0.75 / b * (1.0 - t * t) * g(s) * s * h;
  }
  return sum / r;
}

Verdict analytic_csr() {
  Verdict v;
  const int reps = 100;
  const Window w = Window::square(6.0);
  const EvalGrid kgrid = EvalGrid::standard(SummaryKind::K), fgrid = EvalGrid::standard(SummaryKind::F);
  const EvalGrid pgrid = EvalGrid::standard(SummaryKind::PCF);
  CurveValues<> k = CurveValues<>::Zero(kgrid.count()), f = CurveValues<>::Zero(fgrid.count()),
                g = CurveValues<>::Zero(pgrid.count());
  for (int rep = 0; rep < reps; ++rep) {
    RngStream rng(708, static_cast<std::uint64_t>(rep));
    SummaryEvaluator ev(sample_poisson(50.0, w, rng));
    k += ev.evaluate(SummaryKind::K).values / reps;
    f += ev.evaluate(SummaryKind::F).values / reps;
    g += ev.evaluate(SummaryKind::PCF).values / reps;
  }
  const Index at = kgrid.nearest_index(0.1);
  const double k_theory = std::numbers::pi * 0.01;
  v.require(std::abs(k[at] / k_theory - 1.0) <= 0.05, "K(0.1)/pi r^2 = " + fmt(k[at] / k_theory));
  double f_err = 0.0;
  for (Index i = 0; i < fgrid.count(); ++i)
    f_err = std::max(f_err, std::abs(f[i] - (1.0 - std::exp(-50.0 * std::numbers::pi * fgrid[i] * fgrid[i]))));
  v.require(f_err <= 0.02, "max |F - F_theory| = " + fmt(f_err, 4));
  double g_err = 0.0;
  Index worst = 0;
  for (Index i = 0; i < pgrid.count(); ++i)
    if (pgrid[i] >= 0.02 - 1e-12 && std::abs(g[i] - 1.0) > g_err) {
      g_err = std::abs(g[i] - 1.0);
      worst = i;
    }
  // The estimator's own expectation near r = 0 is above 1 (the kernel is cut
  // at zero distance); report it alongside the deviation.
  const double expected = smoothed_pcf([](double) { return 1.0; }, pgrid[worst], stoyan_bandwidth(50.0));
  v.require(g_err <= 0.10, "max |pcf - 1| on [0.02, 0.25] = " + fmt(g_err, 4) + " at r = " + fmt(pgrid[worst], 4) +
                               " (estimator expectation there " + fmt(expected, 4) + ")");
  return v;
}

Verdict sampler_validity() {
  Verdict v;
  const int draws = 500;
  const Window unit = Window::square(1.0);

  double min_dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < draws; ++i) {
    RngStream rng(801, static_cast<std::uint64_t>(i));
    const PointPattern p = simulate(ModelSpec::preset(ModelFamily::Hard), unit, rng);
    for (Index a = 0; a < p.size(); ++a)
      for (Index b = a + 1; b < p.size(); ++b) min_dist = std::min(min_dist, (p.point(a) - p.point(b)).norm());
  }
  v.require(min_dist >= 0.05, "Hard min distance " + fmt(min_dist, 4));

  // Strauss with gamma = 1 is Poisson(beta |W|): chi-square on pooled counts.
  const double beta = 50.0;
  const ModelSpec str(ModelFamily::Str, {{"beta", beta}, {"gamma", 1.0}, {"R", 0.1}});
  std::map<Index, int> counts;
  for (int i = 0; i < draws; ++i) {
    RngStream rng(802, static_cast<std::uint64_t>(i));
    ++counts[simulate(str, unit, rng).size()];
  }
  auto pmf = [&](Index n) { return std::exp(n * std::log(beta) - beta - std::lgamma(n + 1.0)); };
  // Cells [0, lo), lo, ..., hi - 1, [hi, inf) with expected counts of at least 5.
  Index lo = 0, hi = 200;
  auto cdf = [&](Index n) {
    double s = 0.0;
    for (Index j = 0; j < n; ++j) s += pmf(j);
    return s;
  };
  while (draws * cdf(lo + 1) < 5.0) ++lo;
  while (draws * (1.0 - cdf(hi - 1)) < 5.0) --hi;
  double chi2 = 0.0;
  int cells = 0;
  auto add_cell = [&](double observed, double expected) {
    chi2 += (observed - expected) * (observed - expected) / expected;
    ++cells;
  };
  double below = 0.0, above = 0.0;
  for (const auto& [n, c] : counts) {
    if (n <= lo) below += c;
    if (n >= hi) above += c;
  }
  add_cell(below, draws * cdf(lo + 1));
  for (Index n = lo + 1; n < hi; ++n) add_cell(counts.count(n) ? counts[n] : 0, draws * pmf(n));
  add_cell(above, draws * (1.0 - cdf(hi)));
  const double p = boost::math::cdf(boost::math::complement(boost::math::chi_squared(cells - 1), chi2));
  v.require(p > 0.01, "Strauss(gamma=1) counts vs Poisson: chi2 = " + fmt(chi2, 2) + " on " +
                          std::to_string(cells - 1) + " df, p = " + fmt(p));

  // GDPP pair correlation 1 - exp(-2 r^2 / alpha^2), averaged over draws and
  // compared with its kernel-smoothed version.
  const double alpha = 0.05;
  const EvalGrid grid = EvalGrid::standard(SummaryKind::PCF);
  CurveValues<> mean = CurveValues<>::Zero(grid.count());
  double mean_n = 0.0;
  for (int i = 0; i < draws; ++i) {
    RngStream rng(803, static_cast<std::uint64_t>(i));
    const PointPattern p = simulate(ModelSpec::preset(ModelFamily::GDPP), unit, rng);
    mean += pcf_est(p, grid).values / draws;
    mean_n += static_cast<double>(p.size()) / draws;
  }
  const double b = stoyan_bandwidth(mean_n);
  const auto theory = [&](double s) { return 1.0 - std::exp(-2.0 * s * s / (alpha * alpha)); };
  double err = 0.0;
  for (Index i = 0; i < grid.count(); ++i)
    if (grid[i] >= 0.01 - 1e-12) err = std::max(err, std::abs(mean[i] - smoothed_pcf(theory, grid[i], b)));
  v.require(err <= 0.05, "GDPP max |pcf - smoothed theory| on [0.01, 0.25] = " + fmt(err, 4));
  return v;
}

Verdict sub_uniformity() {
  Verdict v;
  const int reps = 2000;
  const Index m = 99;
  const double alphas[] = {0.01, 0.05, 0.1};
  struct Pair {
    const char* summary;
    TestStatistic statistic;
    Ordering ordering;
    double r;
  };
  const Pair pairs[] = {
      {"L", TestStatistic::MAD, Ordering::Larger, 0.25},   {"L", TestStatistic::DCLF, Ordering::Larger, 0.25},
      {"L", TestStatistic::ST, Ordering::Larger, 0.25},    {"L", TestStatistic::QDIR, Ordering::Larger, 0.25},
      {"L", TestStatistic::CRPS, Ordering::Larger, 0.25},  {"L", TestStatistic::INT, Ordering::TwoSided, 0.25},
      {"L", TestStatistic::POINT, Ordering::TwoSided, 0.1}, {"L", TestStatistic::FUN, Ordering::Erl, 0.25},
      {"L", TestStatistic::FUN, Ordering::Area, 0.25},     {"L", TestStatistic::FUN, Ordering::Cont, 0.25},
      {"beta1", TestStatistic::FUN, Ordering::Erl, 0.25},  {"beta1", TestStatistic::FUN, Ordering::Area, 0.25},
      {"beta1", TestStatistic::FUN, Ordering::Cont, 0.25},
  };
  constexpr std::size_t n_pairs = std::size(pairs);
  std::vector<std::array<std::array<int, 3>, n_pairs>> hits(static_cast<std::size_t>(reps));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int rep; (rep = next++) < reps;) {
      // m + 1 iid binomial patterns: the observed one is exchangeable with the rest.
      const RngStream rng(909, static_cast<std::uint64_t>(rep));
      std::vector<PointPattern> patterns;
      for (Index j = 0; j <= m; ++j) {
        RngStream sub = rng.substream(static_cast<std::uint64_t>(j));
        patterns.push_back(sample_binomial(50, Window::square(1.0), sub));
      }
      const auto ens = summary_ensembles(patterns, {SummaryKind::L, SummaryKind::Beta1});
      auto& h = hits[static_cast<std::size_t>(rep)];
      for (std::size_t k = 0; k < n_pairs; ++k) {
        const Pair& pr = pairs[k];
        const double p =
            run_test(ens.at(parse_summary(pr.summary)), pr.statistic, pr.ordering, pr.r).p_value;
        for (int a = 0; a < 3; ++a) h[k][static_cast<std::size_t>(a)] = p <= alphas[a] + 1e-12;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < g_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t k = 0; k < n_pairs; ++k) {
    std::string line = std::string(pairs[k].summary) + "/" + std::string(to_string(pairs[k].statistic)) + "-" +
                       std::string(to_string(pairs[k].ordering)) + ":";
    bool ok = true;
    for (int a = 0; a < 3; ++a) {
      int count = 0;
      for (const auto& h : hits) count += h[k][static_cast<std::size_t>(a)];
      const double rate = static_cast<double>(count) / reps;
      const double bound = alphas[a] + 2.0 * std::sqrt(alphas[a] * (1.0 - alphas[a]) / reps);
      ok = ok && rate <= bound;
      line += " " + fmt(rate, 4) + (rate <= bound ? "" : "!");
    }
    v.require(ok, line);
  }
  return v;
}

Verdict determinism() {
  Verdict v;
  namespace fs = std::filesystem;
  StudyConfig c;
  c.seed = 1010;
  c.replications = 10;
  c.m = {99};
  c.models = {ModelSpec::preset(ModelFamily::Poi), ModelSpec::preset(ModelFamily::MatClu),
              ModelSpec::preset(ModelFamily::Hard)};
  c.windows = {1.0};
  c.tests = {test(SummaryKind::L, TestStatistic::DCLF, Ordering::Larger, {0.1, 0.25}),
             test(SummaryKind::K, TestStatistic::CRPS, Ordering::Larger, {0.1, 0.25}),
             test(SummaryKind::J, TestStatistic::QDIR, Ordering::Larger, {0.05, 0.1}),
             fun(SummaryKind::Beta1, Ordering::Cont, {0.25}), fun(SummaryKind::APF0, Ordering::Area, {0.25})};
  c.combinations = {{{{SummaryKind::Euler, TestStatistic::FUN, Ordering::Erl, 0.25},
                      {SummaryKind::L, TestStatistic::FUN, Ordering::Erl, 0.25}}}};

  const fs::path root = fs::temp_directory_path() / "spgof_determinism";
  fs::remove_all(root);
  std::vector<fs::path> dirs;
  for (unsigned threads : {2u, 8u, 2u}) {
    c.threads = threads;
    dirs.push_back(root / ("run" + std::to_string(dirs.size()) + "_t" + std::to_string(threads)));
    emit_report(run_power_study(c), dirs.back().string());
  }
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  int files = 0, identical = 0;
  for (const auto& entry : fs::directory_iterator(dirs[0])) {
    ++files;
    const std::string a = slurp(entry.path());
    identical += a == slurp(dirs[1] / entry.path().filename()) && a == slurp(dirs[2] / entry.path().filename());
  }
  v.require(files > 1 && identical == files,
            std::to_string(identical) + "/" + std::to_string(files) + " files byte-identical across 2/8/2 threads");
  fs::remove_all(root);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<std::string> only;
  g_threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--only", only, "run only the named checks");
  app.add_option("--threads", g_threads, "worker threads for the power studies");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> checks = {
      {"size-control", size_control},
      {"qdir-conservative-betti1", qdir_conservative},
      {"power-spot-checks", power_spot_checks},
      {"power-orderings", power_orderings},
      {"continuous-rank-example", continuous_rank_example},
      {"topology-oracles", topology_oracles},
      {"analytic-csr-curves", analytic_csr},
      {"sampler-validity", sampler_validity},
      {"sub-uniformity", sub_uniformity},
      {"determinism", determinism},
  };

  int failures = 0;
  for (const auto& [name, check] : checks) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict verdict;
    try {
      verdict = check();
    } catch (const std::exception& e) {
      verdict.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !verdict.pass;
    std::cout << (verdict.pass ? "PASS " : "FAIL ") << name << " (" << fmt(secs, 1) << " s): "
              << verdict.detail.str() << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " check(s) failed" : std::string("all checks passed"))
            << std::endl;
  return failures ? 1 : 0;
}
