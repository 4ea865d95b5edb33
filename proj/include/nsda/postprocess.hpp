#pragma once

// Postprocessing step of the Galerkin approximation: the high modes are
// recovered once, at output time, from the approximate inertial manifold
//   Φ1(p) = (νA)^{-1} Q_N [g - B(p, p)].

#include "nsda/spectral_field.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace nsda {

struct PostprocessedState {
  SpectralVelocity low;       // v_N, in P_N H
  SpectralVelocity high;      // Φ1(v_N), in Q_N H
  SpectralVelocity combined;  // low + high
};

// Φ1 evaluated on the grid of vN, so Q_N only reaches up to the dealias box.
// Throws ConfigError when kappa_N is at or beyond the dealias radius.
SpectralVelocity phi1(const SpectralVelocity& vN, const SpectralVelocity& forcing, double nu,
                      const ShellCutoff& cutoff);

PostprocessedState postprocess(const SpectralVelocity& vN, const SpectralVelocity& forcing, double nu,
                               const ShellCutoff& cutoff);

struct LipschitzEstimate {
  double kappa_N = 0.0;
  double lambda_next = 0.0;
  double ratio_L2 = 0.0;  // max |Φ1(p1) - Φ1(p2)| / |p1 - p2|
  double ratio_H1 = 0.0;  // same in ||.||
  int pairs = 0;
  std::uint64_t seed = 0;
};

// Samples n_pairs pairs in P_N H with ||p_i|| <= radius (random direction,
// radius scaled by a uniform draw) and reports the largest difference ratios.
LipschitzEstimate lipschitz_probe(const SpectralVelocity& forcing, double nu, const ShellCutoff& cutoff,
                                  double radius, int n_pairs, std::uint64_t seed);

// The probe at several cutoffs with the same seed, in order.
std::vector<LipschitzEstimate> lipschitz_scan(const SpectralVelocity& forcing, double nu,
                                              const std::vector<ShellCutoff>& cutoffs, double radius,
                                              int n_pairs, std::uint64_t seed);

// CSV with header kappa_N,ratio_L2,ratio_H1,pairs,seed.
void write_lipschitz_csv(std::ostream& os, const std::vector<LipschitzEstimate>& rows);

}  // namespace nsda
