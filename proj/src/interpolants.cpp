#include "nsda/interpolants.hpp"

#include "nsda/operators.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace nsda {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

SpectralVelocity nonzero_sample(const GridPtr& grid, Rng& rng, const RandomFieldShape& shape) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    SpectralVelocity f = random_field<double>(grid, rng, shape);
    if (sobolev_norm(f, 1.0) > 0.0) return f;
  }
  throw ConfigError("random field band holds no resolved mode");
}

}  // namespace

std::string describe(const InterpolantSpec& spec) {
  return std::visit(overloaded{[](const FourierShell& s) {
                                 std::ostringstream os;
                                 os << "fourier(kappa_K=" << s.kappa_K << ")";
                                 return os.str();
                               },
                               [](const FiniteVolume& s) {
                                 return "fv(cells=" + std::to_string(s.cells_per_axis) + ")";
                               }},
                    spec);
}

void validate(const InterpolantSpec& spec, const WaveGrid& grid) {
  std::visit(overloaded{[&](const FourierShell& s) {
                          if (!(s.kappa_K >= 0.0) || s.kappa_K > grid.dealias_radius()) {
                            throw ConfigError("Fourier interpolant radius " + std::to_string(s.kappa_K) +
                                              " outside [0, dealias radius " +
                                              std::to_string(grid.dealias_radius()) + "]");
                          }
                        },
                        [&](const FiniteVolume& s) {
                          if (s.cells_per_axis < 1 || grid.points() % s.cells_per_axis != 0) {
                            throw ConfigError("finite-volume cells (" + std::to_string(s.cells_per_axis) +
                                              " per axis) do not tile the " +
                                              std::to_string(grid.points()) + "-point grid");
                          }
                        }},
             spec);
}

double resolution(const InterpolantSpec& spec, const WaveGrid& grid) {
  return std::visit(overloaded{[&](const FourierShell& s) {
                                 return 1.0 / std::sqrt(make_cutoff(grid, s.kappa_K).lambda_next);
                               },
                               [&](const FiniteVolume& s) {
                                 return grid.length() / s.cells_per_axis;
                               }},
                    spec);
}

PhysicalVelocity cell_average(const PhysicalVelocity& f, int cells_per_axis) {
  validate(FiniteVolume{cells_per_axis}, f.grid());
  const int m = f.points();
  const int n = m / cells_per_axis;
  const double count = double(n) * double(n);
  PhysicalVelocity out(f.grid_ptr());
  for (int c = 0; c < 2; ++c) {
    for (int bj = 0; bj < cells_per_axis; ++bj) {
      for (int bi = 0; bi < cells_per_axis; ++bi) {
        const auto block = f[c].block(bi * n, bj * n, n, n);
        const double pivot = block(0, 0);
        const double mean = pivot + (block - pivot).sum() / count;
        out[c].block(bi * n, bj * n, n, n).setConstant(mean);
      }
    }
  }
  return out;
}

SpectralVelocity apply_interpolant(const InterpolantSpec& spec, const SpectralVelocity& f) {
  validate(spec, f.grid());
  return std::visit(overloaded{[&](const FourierShell& s) {
                                 return project_low(f, make_cutoff(f.grid(), s.kappa_K));
                               },
                               [&](const FiniteVolume& s) {
                                 return to_spectral(cell_average(to_physical(f), s.cells_per_axis));
                               }},
                    spec);
}

namespace {

PropertyEstimate estimate_ratio(const char* name, const InterpolantSpec& spec, const GridPtr& grid,
                                int n_samples, std::uint64_t seed, bool dual) {
  if (n_samples < 1) throw ConfigError("estimator needs at least one sample");
  validate(spec, *grid);
  const double h = resolution(spec, *grid);
  Rng rng(seed);
  RandomFieldShape shape;
  shape.solenoidal = false;
  PropertyEstimate est{name, describe(spec), h, 0.0, n_samples, seed, {h}};
  for (int s = 0; s < n_samples; ++s) {
    const SpectralVelocity phi = nonzero_sample(grid, rng, shape);
    const SpectralVelocity defect = phi - apply_interpolant(spec, phi);
    const double ratio = dual ? sobolev_norm(defect, -1.0) / (h * sobolev_norm(phi, 0.0))
                              : sobolev_norm(defect, 0.0) / (h * sobolev_norm(phi, 1.0));
    est.estimate = std::max(est.estimate, ratio);
  }
  return est;
}

}  // namespace

PropertyEstimate estimate_p1(const InterpolantSpec& spec, const GridPtr& grid, int n_samples,
                             std::uint64_t seed) {
  return estimate_ratio("c0", spec, grid, n_samples, seed, false);
}

PropertyEstimate estimate_p2(const InterpolantSpec& spec, const GridPtr& grid, int n_samples,
                             std::uint64_t seed) {
  return estimate_ratio("c_minus1", spec, grid, n_samples, seed, true);
}

std::vector<PropertyEstimate> estimate_p3(const InterpolantSpec& spec, const GridPtr& grid,
                                          const std::vector<ShellCutoff>& shells, int n_samples,
                                          std::uint64_t seed) {
  if (n_samples < 1) throw ConfigError("estimator needs at least one sample");
  validate(spec, *grid);
  const double h = resolution(spec, *grid);
  const double length = grid->length();
  std::vector<PropertyEstimate> out;
  Rng rng(seed);
  for (const ShellCutoff& shell : shells) {
    if (shell.kappa >= grid->dealias_radius()) {
      throw ConfigError("P3 shell radius " + std::to_string(shell.kappa) +
                        " is at or beyond the dealias radius");
    }
    RandomFieldShape shape;
    shape.min_norm_sq = static_cast<int>(shell.max_norm_sq) + 1;
    PropertyEstimate est{"c0_tilde", describe(spec), shell.lambda_next, 0.0, n_samples, seed,
                         {shell.lambda_next}};
    for (int s = 0; s < n_samples; ++s) {
      const SpectralVelocity q = nonzero_sample(grid, rng, shape);
      const double ratio = sobolev_norm(apply_interpolant(spec, q), 0.0) * h * h *
                           std::pow(shell.lambda_next, 0.25) /
                           (std::pow(length, 1.5) * sobolev_norm(q, 0.0));
      est.estimate = std::max(est.estimate, ratio);
    }
    out.push_back(est);
  }
  return out;
}

void write_estimates_csv(std::ostream& os, const std::vector<PropertyEstimate>& rows) {
  os << "constant,variant,param,estimate,samples,seed\n";
  os.precision(17);
  for (const auto& r : rows) {
    os << r.constant_name << ',' << r.variant << ',' << r.param << ',' << r.estimate
       << ',' << r.sample_count << ',' << r.seed << '\n';
  }
}

}  // namespace nsda
