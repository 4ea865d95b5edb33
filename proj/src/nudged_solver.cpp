#include "nsda/nudged_solver.hpp"

#include "nsda/operators.hpp"
#include "nsda/random_fields.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nsda {

namespace {

// u_next = [(1 - dt c/2) u + dt E] / (1 + dt c/2), per mode, with c the
// implicit rate.
SpectralVelocity crank_nicolson(const SpectralVelocity& u, const SpectralVelocity& rhs,
                                const RealArray<double>& rate, double dt) {
  const RealArray<double> half = 0.5 * dt * rate;
  const RealArray<double> keep = (1.0 - half) / (1.0 + half);
  const RealArray<double> gain = dt / (1.0 + half);
  SpectralVelocity out(u.grid_ptr());
  for (int c = 0; c < 2; ++c) {
    out[c] = keep.cast<std::complex<double>>() * u[c] + gain.cast<std::complex<double>>() * rhs[c];
  }
  return out;
}

SpectralVelocity adams_bashforth(const SpectralVelocity& now, const std::optional<SpectralVelocity>& prev) {
  if (!prev) return now;
  return 1.5 * now - 0.5 * *prev;
}

void check_finite(const SpectralVelocity& f, const char* what) {
  if (!f.all_finite()) {
    throw NumericalError(std::string(what) + ": non-finite coefficients (blow-up)",
                         std::numeric_limits<double>::quiet_NaN());
  }
}

}  // namespace

ImexState step_truth(const ImexState& state, const SpectralVelocity& forcing, double nu, double dt) {
  const SpectralVelocity& u = state.field;
  u.check_same_grid(forcing);
  SpectralVelocity explicit_now = forcing - bilinear_B(u, u);
  const SpectralVelocity rhs = adams_bashforth(explicit_now, state.prev_explicit);
  ImexState next{crank_nicolson(u, rhs, nu * u.grid().lambda_table(), dt), std::move(explicit_now)};
  check_finite(next.field, "truth step");
  return next;
}

ImexState step_nudged(const ImexState& state, const SpectralVelocity& measurement,
                      const SpectralVelocity& measurement_next, const SpectralVelocity& forcing,
                      const NudgeParams& params, double dt) {
  const SpectralVelocity& v = state.field;
  v.check_same_grid(measurement);
  v.check_same_grid(measurement_next);
  v.check_same_grid(forcing);
  const WaveGrid& g = v.grid();

  RealArray<double> rate = params.nu * g.lambda_table();
  SpectralVelocity explicit_now = forcing;
  if (params.nonlinear) explicit_now -= bilinear_B(v, v);

  std::optional<SpectralVelocity> trapezoid;
  if (params.beta != 0.0) {
    if (const auto* shell = std::get_if<FourierShell>(&params.interp)) {
      // -β P_K v on the diagonal, +β P_K u at the step midpoint.
      const ShellCutoff k_cut = make_cutoff(g, shell->kappa_K);
      for (int j = 0; j < g.points(); ++j) {
        for (int i = 0; i < g.points(); ++i) {
          if (k_cut.contains(g.norm_sq(i, j))) rate(i, j) += params.beta;
        }
      }
      trapezoid = project_low(0.5 * params.beta * (measurement + measurement_next), params.cutoff);
    } else {
      explicit_now -= params.beta * leray_project(apply_interpolant(params.interp, v) - measurement);
    }
  }
  explicit_now = project_low(explicit_now, params.cutoff);

  SpectralVelocity rhs = adams_bashforth(explicit_now, state.prev_explicit);
  if (trapezoid) rhs += *trapezoid;
  ImexState next{project_low(crank_nicolson(v, rhs, rate, dt), params.cutoff), std::move(explicit_now)};
  check_finite(next.field, "nudged step");
  return next;
}

void validate(const NudgeConfig& c) {
  if (!c.grid) throw ConfigError("config has no grid");
  if (!(c.nu > 0.0)) throw ConfigError("nu must be positive");
  if (!(c.beta >= 0.0)) throw ConfigError("beta must be nonnegative");
  if (!(c.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(c.t_end >= 0.0)) throw ConfigError("t_end must be nonnegative");
  if (c.sample_every < 1) throw ConfigError("sample_every must be >= 1");
  if (!(c.kappa_N >= 0.0) || c.kappa_N > c.grid->dealias_radius()) {
    throw ConfigError("kappa_N=" + std::to_string(c.kappa_N) + " outside the dealias radius " +
                      std::to_string(c.grid->dealias_radius()));
  }
  validate(c.interp, *c.grid);
}

SpectralVelocity initial_guess(const NudgeConfig& config, const SpectralVelocity& u0_truth) {
  if (config.v0 == InitialGuess::zero) return SpectralVelocity(config.grid);
  Rng rng(config.v0_seed);
  SpectralVelocity v0 = random_field<double>(config.grid, rng, RandomFieldShape{});
  const double norm = sobolev_norm(v0, 0.0);
  const double target = sobolev_norm(u0_truth, 0.0);
  if (norm > 0.0) v0 *= target / norm;
  return project_low(v0, config.cutoff());
}

namespace {

std::int64_t step_count(const NudgeConfig& c) {
  return static_cast<std::int64_t>(std::llround(c.t_end / c.dt));
}

void record(RunOutput& out, const NudgeConfig& config, const SampleObserver& observer, double t,
            const SpectralVelocity& truth, const SpectralVelocity& nudged) {
  out.diagnostics.push_back({t, energy(truth), enstrophy(truth), energy(nudged)});
  if (config.keep_snapshots) out.snapshots.push_back({t, truth, nudged});
  if (observer) observer(t, truth, nudged);
}

[[noreturn]] void rethrow_at(const NumericalError& e, double t) {
  std::ostringstream os;
  os << e.what() << " at t=" << t;
  throw NumericalError(os.str(), t);
}

}  // namespace

RunOutput run_coupled(const NudgeConfig& config, const SpectralVelocity& u0_truth,
                      const SampleObserver& observer) {
  validate(config);
  if (!(u0_truth.grid() == *config.grid)) throw ConfigError("initial truth is not on the config grid");
  const SpectralVelocity forcing = build_forcing(config.forcing, config.grid, config.nu);
  const NudgeParams params = config.params();

  ImexState truth = start(u0_truth);
  ImexState nudged = start(initial_guess(config, u0_truth));
  RunOutput out;
  record(out, config, observer, 0.0, truth.field, nudged.field);

  const std::int64_t steps = step_count(config);
  SpectralVelocity measurement = apply_interpolant(config.interp, truth.field);
  for (std::int64_t n = 0; n < steps; ++n) {
    const double t = double(n) * config.dt;
    try {
      truth = step_truth(truth, forcing, config.nu, config.dt);
      SpectralVelocity measurement_next = apply_interpolant(config.interp, truth.field);
      nudged = step_nudged(nudged, measurement, measurement_next, forcing, params, config.dt);
      measurement = std::move(measurement_next);
    } catch (const NumericalError& e) {
      rethrow_at(e, t);
    }
    if ((n + 1) % config.sample_every == 0 || n + 1 == steps) {
      record(out, config, observer, double(n + 1) * config.dt, truth.field, nudged.field);
    }
  }
  return out;
}

RunOutput run_offline(const NudgeConfig& config, const std::vector<Snapshot>& truth,
                      const SampleObserver& observer) {
  validate(config);
  if (truth.empty()) throw ConfigError("offline mode needs at least one truth snapshot");
  for (std::size_t s = 0; s < truth.size(); ++s) {
    if (!(truth[s].field.grid() == *config.grid)) throw ConfigError("truth snapshot grid mismatch");
    if (s > 0 && !(truth[s].time > truth[s - 1].time)) {
      throw ConfigError("truth snapshot times must be strictly increasing");
    }
  }
  const SpectralVelocity forcing = build_forcing(config.forcing, config.grid, config.nu);
  const NudgeParams params = config.params();
  const double t0 = truth.front().time;

  ImexState nudged = start(initial_guess(config, truth.front().field));
  RunOutput out;
  std::size_t current = 0;
  SpectralVelocity measurement = apply_interpolant(config.interp, truth.front().field);
  record(out, config, observer, t0, truth.front().field, nudged.field);

  const std::int64_t steps = step_count(config);
  for (std::int64_t n = 0; n < steps && current + 1 < truth.size(); ++n) {
    const double t = t0 + double(n + 1) * config.dt;
    try {
      nudged = step_nudged(nudged, measurement, forcing, params, config.dt);
    } catch (const NumericalError& e) {
      rethrow_at(e, t - config.dt);
    }
    // Half-step slack absorbs accumulated rounding in t.
    if (t + 0.5 * config.dt >= truth[current + 1].time) {
      ++current;
      record(out, config, observer, truth[current].time, truth[current].field, nudged.field);
      measurement = apply_interpolant(config.interp, truth[current].field);
    }
  }
  return out;
}

SpectralVelocity spin_up(const SpectralVelocity& u0, const SpectralVelocity& forcing, double nu,
                         double dt, double duration) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  ImexState state = start(u0);
  const auto steps = static_cast<std::int64_t>(std::llround(duration / dt));
  for (std::int64_t n = 0; n < steps; ++n) {
    try {
      state = step_truth(state, forcing, nu, dt);
    } catch (const NumericalError& e) {
      rethrow_at(e, double(n) * dt);
    }
  }
  return state.field;
}

}  // namespace nsda
