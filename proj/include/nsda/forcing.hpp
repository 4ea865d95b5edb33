#pragma once

#include "nsda/spectral_field.hpp"

#include <cstdint>

namespace nsda {

// Time-independent body force: random phases on the shells
// shell_lo <= |k| <= shell_hi with amplitude ∝ |k|^{-exponent}, rescaled to a
// target Grashof number.
struct ForcingSpec {
  double shell_lo = 1.0;
  double shell_hi = 4.0;
  double target_grashof = 0.0;
  std::uint64_t seed = 0;
  double exponent = 1.0;
};

// Divergence-free, zero-mean g with grashof(g, nu, lambda1) = target. Throws
// ConfigError for an empty or unresolved band or nu <= 0.
SpectralVelocity build_forcing(const ForcingSpec& spec, const GridPtr& grid, double nu);

}  // namespace nsda
