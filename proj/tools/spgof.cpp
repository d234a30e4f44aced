#include "spgof/format.hpp"
#include "spgof/study.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <stdexcept>

using namespace spgof;

namespace {

// Writes to the named file, or to stdout for "-".
template <typename F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(out);
  if (!out) throw std::runtime_error("error writing '" + path + "'");
}

ModelSpec model_from_args(const std::string& name, const std::vector<std::string>& overrides) {
  ModelSpec spec = ModelSpec::preset(name);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected NAME=VALUE, got '" + kv + "'");
    spec.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  validate(spec);
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo goodness-of-fit tests for planar point patterns"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Draw one pattern from a model");
  std::string model_name, sim_out;
  std::vector<std::string> params;
  double area = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t burnin = SimulationOptions{}.burnin;
  sim->add_option("model", model_name, "Poi, Binomial, MatClu, BadSil, Hard, Str or GDPP")->required();
  sim->add_option("--window", area, "window area A (square [0, sqrt A]^2)")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "random seed");
  sim->add_option("--param", params, "override a model parameter, NAME=VALUE");
  sim->add_option("--burnin", burnin, "Metropolis-Hastings proposals for Hard and Str");
  sim->add_option("--out", sim_out, "pattern file (default stdout)");

  // summarize
  auto* sum = app.add_subcommand("summarize", "Evaluate a functional summary statistic");
  std::string pattern_file, stat_name, sum_out, filtration_out, diagram_out;
  SummaryOptions summary_options;
  sum->add_option("patternfile", pattern_file)->required()->check(CLI::ExistingFile);
  sum->add_option("--stat", stat_name, "K, L, pcf, F, G, J, beta0, beta1, APF0, APF1, chi")->required();
  sum->add_option("--out", sum_out, "curve CSV (default stdout)");
  sum->add_option("--lattice", summary_options.lattice, "test locations per side for F and J");
  sum->add_option("--grid-points", summary_options.grid_points, "evaluation grid size");
  sum->add_option("--filtration", filtration_out, "also write the alpha filtration CSV");
  sum->add_option("--diagram", diagram_out, "also write the persistence diagram CSV");

  // test
  auto* tst = app.add_subcommand("test", "Monte Carlo test against the binomial null");
  std::string null_name = "binomial", teststat_name = "FUN", ordering_name, test_out, envelope_out;
  Index m = 299;
  double r_upper = 0.25, alpha = 0.05;
  tst->add_option("patternfile", pattern_file)->required()->check(CLI::ExistingFile);
  tst->add_option("--null", null_name, "null model (binomial: CSR given the observed count)");
  tst->add_option("--stat", stat_name, "summary statistic")->required();
  tst->add_option("--teststat", teststat_name, "MAD, DCLF, ST, QDIR, CRPS, INT, POINT or FUN");
  tst->add_option("--ordering", ordering_name, "larger, two-sided, erl, area or cont (default by statistic)");
  tst->add_option("--m", m, "number of simulations")->check(CLI::PositiveNumber);
  tst->add_option("--rmax", r_upper, "upper bound of the range (r* for POINT)");
  tst->add_option("--alpha", alpha, "level of the global envelope");
  tst->add_option("--seed", seed, "random seed");
  tst->add_option("--lattice", summary_options.lattice, "test locations per side for F and J");
  tst->add_option("--grid-points", summary_options.grid_points, "evaluation grid size");
  tst->add_option("--out", test_out, "outcome CSV (default stdout)");
  tst->add_option("--envelope", envelope_out, "global envelope CSV (FUN only)");

  // power
  auto* pow = app.add_subcommand("power", "Run a power study");
  std::string config_file, out_dir;
  unsigned threads = 0;
  pow->add_option("--config", config_file, "study configuration (YAML)")->required()->check(CLI::ExistingFile);
  pow->add_option("--out", out_dir, "output directory")->required();
  pow->add_option("--threads", threads, "worker threads (overrides the config)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      const ModelSpec spec = model_from_args(model_name, params);
      RngStream rng(seed, 0);
      const PointPattern pattern = simulate(spec, Window::square(area), rng, {burnin});
      with_output(sim_out, [&](std::ostream& out) { write_pattern(out, pattern); });
    } else if (*sum) {
      const PointPattern pattern = read_pattern_file(pattern_file);
      SummaryEvaluator evaluator(pattern, summary_options);
      const SummaryCurve curve = evaluator.evaluate(parse_summary(stat_name));
      with_output(sum_out, [&](std::ostream& out) {
        write_curve_csv_header(out);
        write_curve_csv_rows(out, curve, pattern_file);
      });
      if (!filtration_out.empty() || !diagram_out.empty()) {
        const AlphaFiltration filtration = alpha_filtration(pattern);
        if (!filtration_out.empty())
          with_output(filtration_out, [&](std::ostream& out) { write_filtration_csv(out, filtration); });
        if (!diagram_out.empty())
          with_output(diagram_out, [&](std::ostream& out) { write_diagram_csv(out, persistence(filtration)); });
      }
    } else if (*tst) {
      if (null_name != "binomial") throw std::invalid_argument("only the binomial null is supported");
      const PointPattern observed = read_pattern_file(pattern_file);
      const SummaryKind kind = parse_summary(stat_name);
      const TestStatistic statistic = parse_statistic(teststat_name);
      const Ordering ordering = ordering_name.empty() ? default_ordering(statistic) : parse_ordering(ordering_name);

      std::vector<PointPattern> patterns{observed};
      auto nulls = binomial_nulls(observed, m, RngStream(seed, 0));
      std::move(nulls.begin(), nulls.end(), std::back_inserter(patterns));
      const CurveEnsemble ens = summary_ensembles(patterns, {kind}, summary_options).at(kind);
      const TestOutcome outcome = run_test(ens, statistic, ordering, r_upper, alpha);

      with_output(test_out, [&](std::ostream& out) {
        write_outcome_csv_header(out);
        write_outcome_csv_row(out, outcome);
      });
      for (const auto& note : outcome.notes) std::cerr << "note: " << note << '\n';
      if (!envelope_out.empty()) {
        if (!outcome.envelope) throw std::invalid_argument("an envelope exists only for FUN tests");
        with_output(envelope_out, [&](std::ostream& out) { write_envelope_csv(out, *outcome.envelope); });
      }
    } else if (*pow) {
      StudyConfig config = load_study_config(config_file);
      if (threads > 0) config.threads = threads;
      const PowerTable table = run_power_study(config);
      emit_report(table, out_dir);
      Index degenerate = 0;
      for (const auto& row : table.rows) degenerate += row.degenerate;
      if (degenerate > 0)
        std::cerr << "note: " << degenerate
                  << " test evaluations had an undefined statistic and were counted as not rejected\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
