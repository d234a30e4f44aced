#include "spgof/study.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

namespace spgof {
namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& message) {
  const auto mark = node.Mark();
  std::string where = mark.is_null() ? "" : " (line " + std::to_string(mark.line + 1) + ")";
  throw std::invalid_argument("config: " + message + where);
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(node, "bad value for '" + key + "'");
  }
}

// A scalar or a sequence of scalars.
template <typename T>
std::vector<T> scalar_list(const YAML::Node& node, const std::string& key) {
  std::vector<T> out;
  if (node.IsSequence()) {
    for (const auto& item : node) out.push_back(scalar<T>(item, key));
  } else {
    out.push_back(scalar<T>(node, key));
  }
  return out;
}

void check_keys(const YAML::Node& map, const std::set<std::string>& known, const std::string& section) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!known.count(key)) fail(kv.first, "unknown key '" + key + "' in " + section);
  }
}

ModelSpec parse_model(const YAML::Node& node) {
  if (node.IsScalar()) return ModelSpec::preset(node.as<std::string>());
  if (!node.IsMap() || !node["family"]) fail(node, "a model needs a 'family'");
  ModelSpec spec = ModelSpec::preset(node["family"].as<std::string>());
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (key == "family") continue;
    if (key == "label") spec.label = kv.second.as<std::string>();
    else spec.params[key] = scalar<double>(kv.second, key);
  }
  return spec;
}

template <typename Spec>
void parse_construction(const YAML::Node& node, Spec& spec, const std::string& section) {
  if (!node["summary"] || !node["statistic"]) fail(node, section + " entries need 'summary' and 'statistic'");
  try {
    spec.summary = parse_summary(node["summary"].as<std::string>());
    spec.statistic = parse_statistic(node["statistic"].as<std::string>());
    spec.ordering = node["ordering"] ? parse_ordering(node["ordering"].as<std::string>())
                                     : default_ordering(spec.statistic);
  } catch (const std::invalid_argument& e) {
    fail(node, e.what());
  }
}

}  // namespace

void validate(const StudyConfig& config) {
  auto bad = [](const std::string& message) { throw std::invalid_argument("config: " + message); };
  if (config.replications < 1) bad("replications must be positive");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) bad("alpha must lie in (0, 1)");
  if (config.threads < 1) bad("threads must be positive");
  if (config.m.empty()) bad("no simulation count given");
  for (Index m : config.m)
    if (std::find(std::begin(kAllowedSimulationCounts), std::end(kAllowedSimulationCounts), m) ==
        std::end(kAllowedSimulationCounts))
      bad("m = " + std::to_string(m) + " is not one of 99, 299, 499, 999");
  if (config.models.empty()) bad("no models");
  if (config.windows.empty()) bad("no windows");
  for (double a : config.windows)
    if (!(a > 0.0)) bad("window areas must be positive");
  for (const auto& model : config.models) validate(model);
  if (config.tests.empty() && config.combinations.empty()) bad("no tests");

  auto check_bound = [&](SummaryKind kind, TestStatistic statistic, Ordering ordering, double r) {
    const std::string what = std::string(to_string(kind)) + "/" + std::string(to_string(statistic));
    const EvalGrid grid = EvalGrid::standard(kind, config.summary.grid_points);
    if (!(r <= max_upper_bound(kind) + 1e-12)) bad(what + ": upper bound exceeds " + std::to_string(max_upper_bound(kind)));
    if (!(r > grid.r_min())) bad(what + ": upper bound must exceed the grid start");
    if (statistic == TestStatistic::FUN ? !is_functional(ordering) : is_functional(ordering))
      bad(what + ": ordering '" + std::string(to_string(ordering)) + "' does not apply");
  };
  for (const auto& t : config.tests) {
    if (t.r_uppers.empty()) bad("test without upper bounds");
    for (double r : t.r_uppers) check_bound(t.summary, t.statistic, t.ordering, r);
  }
  for (const auto& c : config.combinations) {
    if (c.components.empty()) bad("combination without components");
    for (const auto& part : c.components) check_bound(part.summary, part.statistic, part.ordering, part.r_upper);
  }
  if (config.summary.grid_points < 2 || config.summary.lattice < 1) bad("grid and lattice sizes must be positive");
}

StudyConfig parse_study_config(std::istream& in) {
  YAML::Node root;
  try {
    root = YAML::Load(in);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!root.IsMap()) throw std::invalid_argument("config: expected a mapping at the top level");
  check_keys(root,
             {"seed", "replications", "m", "alpha", "threads", "burnin", "lattice", "grid_points", "models",
              "windows", "tests", "combinations"},
             "the top level");

  StudyConfig config;
  if (root["seed"]) config.seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (root["replications"]) config.replications = scalar<Index>(root["replications"], "replications");
  if (root["m"]) config.m = scalar_list<Index>(root["m"], "m");
  if (root["alpha"]) config.alpha = scalar<double>(root["alpha"], "alpha");
  if (root["threads"]) config.threads = scalar<unsigned>(root["threads"], "threads");
  if (root["burnin"]) config.simulation.burnin = scalar<std::uint64_t>(root["burnin"], "burnin");
  if (root["lattice"]) config.summary.lattice = scalar<Index>(root["lattice"], "lattice");
  if (root["grid_points"]) config.summary.grid_points = scalar<Index>(root["grid_points"], "grid_points");
  if (root["windows"]) config.windows = scalar_list<double>(root["windows"], "windows");

  if (root["models"]) {
    for (const auto& node : root["models"]) {
      try {
        config.models.push_back(parse_model(node));
      } catch (const std::invalid_argument& e) {
        fail(node, e.what());
      }
    }
  }
  if (root["tests"]) {
    for (const auto& node : root["tests"]) {
      check_keys(node, {"summary", "statistic", "ordering", "rmax"}, "a test");
      TestSpec t;
      parse_construction(node, t, "test");
      if (!node["rmax"]) fail(node, "a test needs 'rmax'");
      t.r_uppers = scalar_list<double>(node["rmax"], "rmax");
      config.tests.push_back(std::move(t));
    }
  }
  if (root["combinations"]) {
    for (const auto& node : root["combinations"]) {
      check_keys(node, {"components"}, "a combination");
      CombinationSpec c;
      for (const auto& part : node["components"]) {
        check_keys(part, {"summary", "statistic", "ordering", "rmax"}, "a combination component");
        ComponentSpec s;
        parse_construction(part, s, "component");
        s.r_upper = part["rmax"] ? scalar<double>(part["rmax"], "rmax") : max_upper_bound(s.summary);
        c.components.push_back(s);
      }
      config.combinations.push_back(std::move(c));
    }
  }
  validate(config);
  return config;
}

StudyConfig load_study_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_study_config(in);
}

}  // namespace spgof
