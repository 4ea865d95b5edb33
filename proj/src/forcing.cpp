#include "nsda/forcing.hpp"

#include "nsda/operators.hpp"
#include "nsda/random_fields.hpp"

#include <cmath>

namespace nsda {

SpectralVelocity build_forcing(const ForcingSpec& spec, const GridPtr& grid, double nu) {
  if (!(nu > 0.0)) throw ConfigError("forcing needs nu > 0");
  if (!(spec.shell_lo >= 1.0)) throw ConfigError("forcing.shell_lo must be >= 1");
  if (spec.shell_hi > grid->dealias_radius()) {
    throw ConfigError("forcing.shell_hi exceeds the dealias radius " +
                      std::to_string(grid->dealias_radius()));
  }
  if (!(spec.target_grashof >= 0.0)) throw ConfigError("forcing.G must be nonnegative");

  RandomFieldShape shape;
  shape.min_norm_sq = static_cast<int>(std::ceil(spec.shell_lo * spec.shell_lo - 1e-9));
  shape.max_norm_sq = static_cast<int>(std::floor(spec.shell_hi * spec.shell_hi + 1e-9));
  const double exponent = spec.exponent;
  shape.amplitude = [exponent](int n2) { return std::pow(double(n2), -0.5 * exponent); };

  Rng rng(spec.seed);
  SpectralVelocity g = leray_project(random_field<double>(grid, rng, shape));
  const double norm = sobolev_norm(g, 0.0);
  if (!(norm > 0.0)) throw ConfigError("forcing band holds no resolved mode");
  if (spec.target_grashof == 0.0) return SpectralVelocity(grid);
  g *= spec.target_grashof * nu * nu * grid->lambda1() / norm;
  return g;
}

}  // namespace nsda
