#include "nsda/wave_grid.hpp"

#include "nsda/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nsda {

WaveGrid::WaveGrid(double length, int points)
    : length_(length),
      points_(points),
      base_(2.0 * std::numbers::pi / length),
      lambda1_(base_ * base_),
      norm_sq_(points, points),
      lambda_(points, points) {
  for (int j = 0; j < points; ++j) {
    for (int i = 0; i < points; ++i) {
      const int k1 = wavenumber(i);
      const int k2 = wavenumber(j);
      norm_sq_(i, j) = k1 * k1 + k2 * k2;
    }
  }
  lambda_ = lambda1_ * norm_sq_.cast<double>();
}

WaveGrid make_grid(double length, int points) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ConfigError("grid length L must be positive, got " + std::to_string(length));
  }
  if (points % 2 != 0) {
    throw ConfigError("grid size M must be even, got " + std::to_string(points));
  }
  if (points < 8) {
    throw ConfigError("grid size M must be at least 8, got " + std::to_string(points));
  }
  return WaveGrid(length, points);
}

namespace {

bool is_sum_of_two_squares(std::int64_t n) {
  for (std::int64_t a = 0; a * a <= n; ++a) {
    const std::int64_t rest = n - a * a;
    const auto b = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
    if (b * b == rest) return true;
  }
  return false;
}

}  // namespace

std::int64_t next_lattice_norm(std::int64_t n) {
  std::int64_t m = std::max<std::int64_t>(n + 1, 1);
  while (!is_sum_of_two_squares(m)) ++m;
  return m;
}

std::int64_t top_lattice_norm(std::int64_t n) {
  std::int64_t m = n;
  while (m > 0 && !is_sum_of_two_squares(m)) --m;
  return m;
}

ShellCutoff make_cutoff(double kappa, double lambda1) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw ConfigError("shell radius must be a nonnegative number, got " + std::to_string(kappa));
  }
  ShellCutoff cut;
  cut.kappa = kappa;
  // Tolerate kappa given as a rounded square root, e.g. sqrt(13).
  cut.max_norm_sq = static_cast<std::int64_t>(std::floor(kappa * kappa + 1e-9));
  cut.lambda_top = lambda1 * static_cast<double>(top_lattice_norm(cut.max_norm_sq));
  cut.lambda_next = lambda1 * static_cast<double>(next_lattice_norm(cut.max_norm_sq));
  return cut;
}

double log_factor(const ShellCutoff& cut, double lambda1) {
  if (cut.max_norm_sq < 1 || !(cut.lambda_top >= lambda1)) {
    throw ConfigError("log factor needs a shell containing at least one nonzero mode (kappa=" +
                      std::to_string(cut.kappa) + ")");
  }
  return std::sqrt(1.0 + std::log(cut.lambda_top / lambda1));
}

}  // namespace nsda
