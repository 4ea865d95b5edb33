#include "nsda/postprocess.hpp"

#include "nsda/operators.hpp"
#include "nsda/random_fields.hpp"

#include <ostream>

namespace nsda {

SpectralVelocity phi1(const SpectralVelocity& vN, const SpectralVelocity& forcing, double nu,
                      const ShellCutoff& cutoff) {
  vN.check_same_grid(forcing);
  if (!(nu > 0.0)) throw ConfigError("phi1 needs nu > 0");
  if (cutoff.kappa >= vN.grid().dealias_radius()) {
    throw ConfigError("cutoff kappa_N=" + std::to_string(cutoff.kappa) +
                      " leaves no resolved modes above it (dealias radius " +
                      std::to_string(vN.grid().dealias_radius()) + ")");
  }
  SpectralVelocity high = project_high(forcing - bilinear_B(vN, vN), cutoff);
  high = stokes_apply(high, -1.0);
  high *= 1.0 / nu;
  return high;
}

PostprocessedState postprocess(const SpectralVelocity& vN, const SpectralVelocity& forcing, double nu,
                               const ShellCutoff& cutoff) {
  PostprocessedState s{vN, phi1(vN, forcing, nu, cutoff), SpectralVelocity()};
  s.combined = s.low + s.high;
  return s;
}

namespace {

SpectralVelocity sample_in_ball(const GridPtr& grid, Rng& rng, const ShellCutoff& cutoff, double radius) {
  RandomFieldShape shape;
  shape.max_norm_sq = static_cast<int>(cutoff.max_norm_sq);
  std::uniform_real_distribution<double> scale(0.0, 1.0);
  SpectralVelocity p = random_field<double>(grid, rng, shape);
  const double norm = sobolev_norm(p, 1.0);
  if (norm > 0.0) p *= radius * scale(rng) / norm;
  return p;
}

}  // namespace

LipschitzEstimate lipschitz_probe(const SpectralVelocity& forcing, double nu, const ShellCutoff& cutoff,
                                  double radius, int n_pairs, std::uint64_t seed) {
  if (n_pairs < 1) throw ConfigError("lipschitz probe needs at least one pair");
  if (!(radius > 0.0)) throw ConfigError("lipschitz probe needs a positive radius");
  const GridPtr& grid = forcing.grid_ptr();
  Rng rng(seed);
  LipschitzEstimate est{cutoff.kappa, cutoff.lambda_next, 0.0, 0.0, n_pairs, seed};
  for (int n = 0; n < n_pairs;) {
    const SpectralVelocity p1 = sample_in_ball(grid, rng, cutoff, radius);
    const SpectralVelocity p2 = sample_in_ball(grid, rng, cutoff, radius);
    const SpectralVelocity dp = p1 - p2;
    const double dl2 = sobolev_norm(dp, 0.0);
    if (!(dl2 > 0.0)) continue;  // degenerate pair, draw again
    const SpectralVelocity dphi = phi1(p1, forcing, nu, cutoff) - phi1(p2, forcing, nu, cutoff);
    est.ratio_L2 = std::max(est.ratio_L2, sobolev_norm(dphi, 0.0) / dl2);
    est.ratio_H1 = std::max(est.ratio_H1, sobolev_norm(dphi, 1.0) / sobolev_norm(dp, 1.0));
    ++n;
  }
  return est;
}

std::vector<LipschitzEstimate> lipschitz_scan(const SpectralVelocity& forcing, double nu,
                                              const std::vector<ShellCutoff>& cutoffs, double radius,
                                              int n_pairs, std::uint64_t seed) {
  std::vector<LipschitzEstimate> out;
  out.reserve(cutoffs.size());
  for (const auto& cut : cutoffs) out.push_back(lipschitz_probe(forcing, nu, cut, radius, n_pairs, seed));
  return out;
}

void write_lipschitz_csv(std::ostream& os, const std::vector<LipschitzEstimate>& rows) {
  os << "kappa_N,ratio_L2,ratio_H1,pairs,seed\n";
  os.precision(17);
  for (const auto& r : rows) {
    os << r.kappa_N << ',' << r.ratio_L2 << ',' << r.ratio_H1 << ',' << r.pairs << ',' << r.seed << '\n';
  }
}

}  // namespace nsda
