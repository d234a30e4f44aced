#ifndef SPGOF_MODELS_HPP
#define SPGOF_MODELS_HPP

#include "spgof/geometry.hpp"
#include "spgof/rng.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace spgof {

enum class ModelFamily { Poi, Binomial, MatClu, BadSil, Hard, Str, GDPP };

std::string_view to_string(ModelFamily family);
/// Case-insensitive; also accepts the long names (poisson, matern, ...).
ModelFamily parse_family(std::string_view name);

/// A point process model: its family and named parameters.
///
/// Parameter names: Poi lambda; Binomial n; MatClu kappa, mu, R; BadSil
/// lambda; Hard beta, R; Str beta, gamma, R; GDPP lambda, alpha.
/// The observation window is supplied separately when sampling.
struct ModelSpec {
  ModelFamily family = ModelFamily::Poi;
  std::map<std::string, double> params;
  std::string label;  ///< display name, defaults to the family name

  ModelSpec() = default;
  ModelSpec(ModelFamily family, std::map<std::string, double> params, std::string label = {});

  double param(const std::string& name) const;
  const std::string& name() const { return label; }

  /// The parameter values used throughout the study (λ = 50 scale).
  static ModelSpec preset(ModelFamily family);
  static ModelSpec preset(std::string_view family_name);
};

/// Throws std::invalid_argument when parameters are missing, non-positive,
/// gamma is outside [0,1] or the Gaussian DPP existence bound fails.
void validate(const ModelSpec& spec);

struct SimulationOptions {
  std::uint64_t burnin = 100000;  ///< Metropolis-Hastings proposals for Hard and Str
};

PointPattern sample_binomial(Index n, const Window& window, RngStream& rng);
PointPattern sample_poisson(double lambda, const Window& window, RngStream& rng);
PointPattern sample_matern_cluster(double kappa, double mu, double radius, const Window& window, RngStream& rng);
/// Baddeley-Silverman cell process on a k x k grid, k = round(sqrt(λ|W|)).
PointPattern sample_cell(double lambda, const Window& window, RngStream& rng);
Index cell_grid_size(double lambda, const Window& window);
/// Birth-death Metropolis-Hastings for the Strauss family; gamma = 0 is the
/// hard core process.
PointPattern sample_strauss(double beta, double gamma, double radius, const Window& window, RngStream& rng,
                            std::uint64_t burnin = 100000);
PointPattern sample_hardcore(double beta, double radius, const Window& window, RngStream& rng,
                             std::uint64_t burnin = 100000);
/// Gaussian determinantal point process, periodic spectral approximation.
PointPattern sample_gdpp(double lambda, double alpha, const Window& window, RngStream& rng);

PointPattern simulate(const ModelSpec& spec, const Window& window, RngStream& rng,
                      const SimulationOptions& options = {});

}  // namespace spgof

#endif  // SPGOF_MODELS_HPP
