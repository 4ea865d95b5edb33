#pragma once

// Time integration of the reference Navier-Stokes system
//   du/dt + νAu + B(u,u) = g
// and of its nudged Galerkin approximation in P_N H
//   dv/dt + νAv + P_N B(v,v) = P_N g - β P_N P_σ (I_h(v) - I_h(u)).
//
// Both use CNAB2: Crank-Nicolson on the mode-diagonal linear part, second
// order Adams-Bashforth on the rest (forward Euler on the first step). For a
// Fourier-shell interpolant the feedback is mode-diagonal and joins the
// Crank-Nicolson part; a finite-volume feedback is explicit, which needs
// dt ≲ 1/β.

#include "nsda/forcing.hpp"
#include "nsda/interpolants.hpp"
#include "nsda/snapshot.hpp"
#include "nsda/spectral_field.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace nsda {

// A field plus the explicit right-hand side of the previous step.
struct ImexState {
  SpectralVelocity field;
  std::optional<SpectralVelocity> prev_explicit;
};

inline ImexState start(SpectralVelocity field) { return ImexState{std::move(field), std::nullopt}; }

// One CNAB2 step of the reference system. Throws NumericalError on non-finite
// coefficients.
ImexState step_truth(const ImexState& state, const SpectralVelocity& forcing, double nu, double dt);

struct NudgeParams {
  double nu = 1.0;
  double beta = 0.0;
  ShellCutoff cutoff;
  InterpolantSpec interp = FourierShell{};
  // Diagnostic switch: drop P_N B(v, v).
  bool nonlinear = true;
};

// One step of the nudged Galerkin system. `measurement` and `measurement_next`
// are I_h(u) at the start and end of the step, already interpolated. A
// Fourier-shell feedback -β P_K (v - u) goes into the Crank-Nicolson part as a
// whole, so it vanishes exactly when v = u and the difference v - u decays by
// the exact CN factor of νλ + β. A finite-volume feedback only uses
// `measurement`. The result stays in P_N H.
ImexState step_nudged(const ImexState& state, const SpectralVelocity& measurement,
                      const SpectralVelocity& measurement_next, const SpectralVelocity& forcing,
                      const NudgeParams& params, double dt);

// Same with the measurement held over the step.
inline ImexState step_nudged(const ImexState& state, const SpectralVelocity& measurement,
                             const SpectralVelocity& forcing, const NudgeParams& params, double dt) {
  return step_nudged(state, measurement, measurement, forcing, params, dt);
}

enum class InitialGuess { zero, seeded };

struct NudgeConfig {
  double nu = 1.0;
  double beta = 0.0;
  ForcingSpec forcing;
  GridPtr grid;
  double kappa_N = 0.0;
  InterpolantSpec interp = FourierShell{};
  double dt = 1e-3;
  double t_end = 0.0;
  int sample_every = 1;
  InitialGuess v0 = InitialGuess::zero;
  std::uint64_t v0_seed = 0;
  bool keep_snapshots = false;

  ShellCutoff cutoff() const { return make_cutoff(*grid, kappa_N); }
  NudgeParams params() const { return {nu, beta, cutoff(), interp, true}; }
};

// Throws ConfigError for dt <= 0, nu <= 0, beta < 0, a cutoff outside the
// dealias radius or an interpolant that does not fit the grid.
void validate(const NudgeConfig& config);

struct DiagnosticRow {
  double t;
  double energy_truth;
  double enstrophy_truth;
  double energy_vN;
};

struct Sample {
  double t;
  SpectralVelocity truth;
  SpectralVelocity nudged;
};

struct RunOutput {
  std::vector<Sample> snapshots;  // only with keep_snapshots
  std::vector<DiagnosticRow> diagnostics;
};

using SampleObserver = std::function<void(double t, const SpectralVelocity& truth,
                                          const SpectralVelocity& nudged)>;

// Initial nudged state P_N v0 for the configured policy. Seeded guesses are
// random solenoidal fields scaled to the L^2 norm of the truth.
SpectralVelocity initial_guess(const NudgeConfig& config, const SpectralVelocity& u0_truth);

// Advances truth and nudged system in lockstep from t = 0 with a shared dt,
// measuring I_h(u) afresh at every step. Samples (step 0, every
// sample_every steps and the last step) go to the observer and into the
// diagnostics. Step failures are rethrown with the failing time.
RunOutput run_coupled(const NudgeConfig& config, const SpectralVelocity& u0_truth,
                      const SampleObserver& observer = {});

// Experimental offline mode: the truth is only known at the stored snapshot
// times and I_h(u) is held constant between them. Samples are emitted at the
// snapshot times (the nudged state at the first step reaching each time).
RunOutput run_offline(const NudgeConfig& config, const std::vector<Snapshot>& truth,
                      const SampleObserver& observer = {});

// Free evolution of the reference system, used to put the truth on its
// attractor before an experiment.
SpectralVelocity spin_up(const SpectralVelocity& u0, const SpectralVelocity& forcing, double nu,
                         double dt, double duration);


}  // namespace nsda
