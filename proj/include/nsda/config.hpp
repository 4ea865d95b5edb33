#pragma once

// Flat key = value experiment files. One entry per line, '#' starts a
// comment, blank lines are ignored, unknown keys are errors. See
// configs/README.md for the schema.

#include "nsda/conditions.hpp"
#include "nsda/nudged_solver.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nsda {

struct ExperimentConfig {
  NudgeConfig run;
  bool beta_auto = false;
  AssumedConstants constants;
  std::optional<double> lambda_m;
  double spinup = 0.0;  // free evolution of the truth before t = 0
  std::uint64_t u0_seed = 0;
  std::optional<std::pair<double, double>> window;
  std::vector<double> sweep_kappas;
  std::string truth_dir;
};

// Throws ConfigError naming the line for malformed input and for values the
// run would reject.
ExperimentConfig parse_config(std::istream& is, std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override = std::nullopt);

// Truth at t = 0: a seeded random solenoidal field at the Stokes amplitude
// |g| / (ν λ1), evolved freely for `spinup`.
SpectralVelocity make_truth(const ExperimentConfig& config);

}  // namespace nsda
