#pragma once

// Observation operators I_h: the low Fourier modes projector and local
// averages over finite-volume cells, plus sampling estimators for the
// constants in
//   (P1) |φ - I_h φ|        <= c0   h ||φ||
//   (P2) ||φ - I_h φ||_{-1} <= c_-1 h |φ|
//   (P3) |I_h q|            <= c~0 |Ω|^{3/4} h^{-2} λ_{N+1}^{-1/4} |q|,  q ∈ Q_N H.

#include "nsda/random_fields.hpp"
#include "nsda/spectral_field.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace nsda {

struct FourierShell {
  double kappa_K = 0.0;
};

struct FiniteVolume {
  int cells_per_axis = 1;
};

using InterpolantSpec = std::variant<FourierShell, FiniteVolume>;

std::string describe(const InterpolantSpec& spec);

// Throws ConfigError when the cells do not tile the M x M grid or the shell
// reaches past the dealias radius.
void validate(const InterpolantSpec& spec, const WaveGrid& grid);

// Resolution of the observations. Finite volumes: L / cells. Fourier shell:
// λ_{K+1}^{-1/2}.
double resolution(const InterpolantSpec& spec, const WaveGrid& grid);

// Replaces each of the cells x cells blocks of samples by its average. A block
// that is already constant is returned bit-for-bit.
PhysicalVelocity cell_average(const PhysicalVelocity& f, int cells_per_axis);

// I_h(f). The Fourier case is P_K f. The finite-volume case averages the grid
// samples over each cell and transforms back; the result keeps the mean but is
// generally not divergence-free.
SpectralVelocity apply_interpolant(const InterpolantSpec& spec, const SpectralVelocity& f);

struct PropertyEstimate {
  std::string constant_name;  // c0, c_minus1 or c0_tilde
  std::string variant;
  double param = 0.0;  // h for P1/P2, λ_{N+1} for a single P3 shell
  double estimate = 0.0;
  int sample_count = 0;
  std::uint64_t seed = 0;
  std::vector<double> varied;  // h or λ_{N+1} values that entered the max
};

PropertyEstimate estimate_p1(const InterpolantSpec& spec, const GridPtr& grid, int n_samples,
                             std::uint64_t seed);
PropertyEstimate estimate_p2(const InterpolantSpec& spec, const GridPtr& grid, int n_samples,
                             std::uint64_t seed);

// One estimate per shell, each the max over n_samples fields q supported
// strictly above the shell (and inside the dealias box).
std::vector<PropertyEstimate> estimate_p3(const InterpolantSpec& spec, const GridPtr& grid,
                                          const std::vector<ShellCutoff>& shells, int n_samples,
                                          std::uint64_t seed);

// CSV with header constant,variant,param,estimate,samples,seed.
void write_estimates_csv(std::ostream& os, const std::vector<PropertyEstimate>& rows);

}  // namespace nsda
