#include "spgof/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spgof {

std::string_view to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::Poi: return "Poi";
    case ModelFamily::Binomial: return "Binomial";
    case ModelFamily::MatClu: return "MatClu";
    case ModelFamily::BadSil: return "BadSil";
    case ModelFamily::Hard: return "Hard";
    case ModelFamily::Str: return "Str";
    case ModelFamily::GDPP: return "GDPP";
  }
  return "?";
}

ModelFamily parse_family(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "poi" || s == "poisson" || s == "csr") return ModelFamily::Poi;
  if (s == "binomial") return ModelFamily::Binomial;
  if (s == "matclu" || s == "matern" || s == "materncluster") return ModelFamily::MatClu;
  if (s == "badsil" || s == "cell") return ModelFamily::BadSil;
  if (s == "hard" || s == "hardcore") return ModelFamily::Hard;
  if (s == "str" || s == "strauss") return ModelFamily::Str;
  if (s == "gdpp" || s == "dpp") return ModelFamily::GDPP;
  throw std::invalid_argument("unknown model family '" + std::string(name) + "'");
}

ModelSpec::ModelSpec(ModelFamily family_, std::map<std::string, double> params_, std::string label_)
    : family(family_), params(std::move(params_)), label(label_.empty() ? std::string(to_string(family_)) : label_) {}

double ModelSpec::param(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end())
    throw std::invalid_argument(std::string(to_string(family)) + " model needs parameter '" + key + "'");
  return it->second;
}

ModelSpec ModelSpec::preset(ModelFamily family) {
  switch (family) {
    case ModelFamily::Poi: return {family, {{"lambda", 50.0}}};
    case ModelFamily::Binomial: return {family, {{"n", 50.0}}};
    case ModelFamily::MatClu: return {family, {{"kappa", 25.0}, {"mu", 2.0}, {"R", 0.2}}};
    case ModelFamily::BadSil: return {family, {{"lambda", 50.0}}};
    case ModelFamily::Hard: return {family, {{"beta", 80.0}, {"R", 0.05}}};
    // An interaction range of 1 would leave about nine points on the unit
    // square; 0.1 gives the intended intensity of roughly 50.
    case ModelFamily::Str: return {family, {{"beta", 95.0}, {"gamma", 0.6}, {"R", 0.1}}};
    case ModelFamily::GDPP: return {family, {{"lambda", 50.0}, {"alpha", 0.05}}};
  }
  throw std::logic_error("unhandled model family");
}

ModelSpec ModelSpec::preset(std::string_view family_name) { return preset(parse_family(family_name)); }

void validate(const ModelSpec& spec) {
  auto positive = [&](const char* key) {
    const double v = spec.param(key);
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(to_string(spec.family)) + ": parameter " + key + " must be positive");
    return v;
  };
  switch (spec.family) {
    case ModelFamily::Poi:
    case ModelFamily::BadSil: positive("lambda"); break;
    case ModelFamily::Binomial: {
      const double n = spec.param("n");
      if (!(n >= 0.0) || n != std::floor(n)) throw std::invalid_argument("Binomial: n must be a non-negative integer");
      break;
    }
    case ModelFamily::MatClu:
      positive("kappa");
      positive("mu");
      positive("R");
      break;
    case ModelFamily::Hard:
      positive("beta");
      positive("R");
      break;
    case ModelFamily::Str: {
      positive("beta");
      positive("R");
      const double g = spec.param("gamma");
      if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("Str: gamma must lie in [0, 1]");
      break;
    }
    case ModelFamily::GDPP: {
      const double lambda = positive("lambda");
      const double alpha = positive("alpha");
      if (!(alpha < 1.0 / std::sqrt(lambda * std::numbers::pi)))
        throw std::invalid_argument("GDPP: alpha must be below (lambda*pi)^(-1/2)");
      break;
    }
  }
}

PointPattern simulate(const ModelSpec& spec, const Window& window, RngStream& rng, const SimulationOptions& options) {
  validate(spec);
  switch (spec.family) {
    case ModelFamily::Poi: return sample_poisson(spec.param("lambda"), window, rng);
    case ModelFamily::Binomial: return sample_binomial(static_cast<Index>(spec.param("n")), window, rng);
    case ModelFamily::MatClu:
      return sample_matern_cluster(spec.param("kappa"), spec.param("mu"), spec.param("R"), window, rng);
    case ModelFamily::BadSil: return sample_cell(spec.param("lambda"), window, rng);
    case ModelFamily::Hard: return sample_hardcore(spec.param("beta"), spec.param("R"), window, rng, options.burnin);
    case ModelFamily::Str:
      return sample_strauss(spec.param("beta"), spec.param("gamma"), spec.param("R"), window, rng, options.burnin);
    case ModelFamily::GDPP: return sample_gdpp(spec.param("lambda"), spec.param("alpha"), window, rng);
  }
  throw std::logic_error("unhandled model family");
}

}  // namespace spgof
