#include "spgof/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace spgof {
namespace {

// One line of the table, independent of the (model, window) cell.
struct Cell {
  std::string summary;
  TestStatistic statistic;
  Ordering ordering;
  std::vector<double> r_upper;
  Index m;
};

enum Flag : char { kAccept = 0, kReject = 1, kDegenerate = 2 };

std::vector<Index> simulation_counts(const StudyConfig& config) {
  std::vector<Index> ms = config.m;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  return ms;
}

std::vector<SummaryKind> needed_summaries(const StudyConfig& config) {
  std::vector<SummaryKind> kinds;
  auto add = [&](SummaryKind k) {
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
  };
  for (const auto& t : config.tests) add(t.summary);
  for (const auto& c : config.combinations)
    for (const auto& part : c.components) add(part.summary);
  return kinds;
}

// Same order as the flags produced by run_replication.
std::vector<Cell> table_layout(const StudyConfig& config) {
  std::vector<Cell> cells;
  for (Index m : simulation_counts(config)) {
    for (const auto& t : config.tests)
      for (double r : t.r_uppers)
        cells.push_back({std::string(to_string(t.summary)), t.statistic, t.ordering, {r}, m});
    for (const auto& c : config.combinations) {
      Cell cell{"", TestStatistic::FUN, Ordering::Erl, {}, m};
      for (std::size_t k = 0; k < c.components.size(); ++k) {
        cell.summary += (k ? "+" : "") + std::string(to_string(c.components[k].summary));
        cell.r_upper.push_back(c.components[k].r_upper);
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

CurveEnsemble leading(const CurveEnsemble& ens, Index m) {
  if (ens.m() == m) return ens;
  return CurveEnsemble(ens.kind(), ens.grid(), ens.values().topRows(m + 1));
}

char decide(double p, double alpha) { return p <= alpha ? kReject : kAccept; }

std::vector<char> run_replication(const StudyConfig& config, std::size_t model, std::size_t window, Index rep) {
  const std::vector<Index> ms = simulation_counts(config);
  const RngStream rng = replication_stream(config.seed, model, window, rep);
  const auto patterns =
      replication_patterns(config.models[model], Window::square(config.windows[window]), ms.back(), rng,
                           config.simulation);
  const auto full = summary_ensembles(patterns, needed_summaries(config), config.summary);

  std::vector<char> flags;
  for (Index m : ms) {
    std::map<SummaryKind, CurveEnsemble> ens;
    for (const auto& [kind, e] : full) ens.emplace(kind, leading(e, m));

    for (const auto& t : config.tests) {
      const CurveEnsemble& e = ens.at(t.summary);
      if (t.statistic == TestStatistic::CRPS) {
        // All bounds share the pairwise integrals.
        try {
          for (const auto& values : crps_sweep(e, t.r_uppers))
            flags.push_back(decide(mc_pvalue(values, t.ordering), config.alpha));
        } catch (const std::domain_error&) {
          flags.insert(flags.end(), t.r_uppers.size(), kDegenerate);
        }
        continue;
      }
      for (double r : t.r_uppers) {
        try {
          flags.push_back(decide(run_test(e, t.statistic, t.ordering, r, config.alpha).p_value, config.alpha));
        } catch (const std::domain_error&) {
          flags.push_back(kDegenerate);
        }
      }
    }
    for (const auto& c : config.combinations) {
      try {
        std::vector<TestOutcome> parts;
        for (const auto& part : c.components)
          parts.push_back(run_test(ens.at(part.summary), part.statistic, part.ordering, part.r_upper, config.alpha));
        flags.push_back(decide(two_step_combine(parts).p_value, config.alpha));
      } catch (const std::domain_error&) {
        flags.push_back(kDegenerate);
      }
    }
  }
  return flags;
}

}  // namespace

double PowerRow::rate() const {
  return replications > 0 ? static_cast<double>(rejections) / static_cast<double>(replications) : 0.0;
}

double PowerRow::stderr_rate() const {
  if (replications == 0) return 0.0;
  const double p = rate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(replications));
}

std::vector<PointPattern> binomial_nulls(const PointPattern& observed, Index m, const RngStream& rng) {
  std::vector<PointPattern> out;
  out.reserve(static_cast<std::size_t>(m));
  for (Index j = 1; j <= m; ++j) {
    RngStream sub = rng.substream(static_cast<std::uint64_t>(j));
    out.push_back(sample_binomial(observed.size(), observed.window(), sub));
  }
  return out;
}

std::vector<PointPattern> replication_patterns(const ModelSpec& model, const Window& window, Index m,
                                               const RngStream& rng, const SimulationOptions& options) {
  RngStream observed_rng = rng.substream(0);
  PointPattern observed = simulate(model, window, observed_rng, options);
  if (observed.size() < 3)
    throw std::runtime_error(model.name() + " produced " + std::to_string(observed.size()) +
                             " points; at least 3 are needed");
  std::vector<PointPattern> out{observed};
  auto nulls = binomial_nulls(observed, m, rng);
  std::move(nulls.begin(), nulls.end(), std::back_inserter(out));
  return out;
}

std::map<SummaryKind, CurveEnsemble> summary_ensembles(const std::vector<PointPattern>& patterns,
                                                       const std::vector<SummaryKind>& kinds,
                                                       const SummaryOptions& options) {
  std::map<SummaryKind, CurveEnsemble::Matrix> values;
  std::map<SummaryKind, EvalGrid> grids;
  for (SummaryKind k : kinds) {
    grids.emplace(k, EvalGrid::standard(k, options.grid_points));
    values[k].resize(static_cast<Index>(patterns.size()), options.grid_points);
  }
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    SummaryEvaluator evaluator(patterns[i], options);
    for (SummaryKind k : kinds) values[k].row(static_cast<Index>(i)) = evaluator.evaluate(k).values.transpose();
  }
  std::map<SummaryKind, CurveEnsemble> out;
  for (SummaryKind k : kinds) out.emplace(k, CurveEnsemble(k, grids.at(k), std::move(values[k])));
  return out;
}

RngStream replication_stream(std::uint64_t seed, std::size_t model, std::size_t window, Index rep) {
  const std::uint64_t stream = (static_cast<std::uint64_t>(model) << 48) | (static_cast<std::uint64_t>(window) << 32) |
                               static_cast<std::uint64_t>(rep);
  return RngStream(seed, stream);
}

PowerTable run_power_study(const StudyConfig& config) {
  validate(config);
  const std::size_t n_windows = config.windows.size();
  const std::size_t n_units = config.models.size() * n_windows * static_cast<std::size_t>(config.replications);
  std::vector<std::vector<char>> flags(n_units);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t unit; !failed && (unit = next++) < n_units;) {
      const std::size_t rep = unit % static_cast<std::size_t>(config.replications);
      const std::size_t cell = unit / static_cast<std::size_t>(config.replications);
      try {
        flags[unit] = run_replication(config, cell / n_windows, cell % n_windows, static_cast<Index>(rep));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(n_units)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  const std::vector<Cell> layout = table_layout(config);
  PowerTable table;
  for (std::size_t mi = 0; mi < config.models.size(); ++mi)
    for (std::size_t wi = 0; wi < n_windows; ++wi)
      for (std::size_t c = 0; c < layout.size(); ++c) {
        const Cell& cell = layout[c];
        PowerRow row{config.models[mi].name(), config.windows[wi], cell.summary, cell.statistic, cell.ordering,
                     cell.r_upper, cell.m, 0, config.replications, 0};
        for (Index rep = 0; rep < config.replications; ++rep) {
          const char f = flags[(mi * n_windows + wi) * static_cast<std::size_t>(config.replications) +
                               static_cast<std::size_t>(rep)][c];
          row.rejections += f == kReject;
          row.degenerate += f == kDegenerate;
        }
        table.rows.push_back(std::move(row));
      }

  sort_rows(table);
  return table;
}

}  // namespace spgof
