// Command-line front end for the nudged Galerkin experiments.
//
//   nsda_cli <subcommand> --config FILE [--out DIR] [--seed N]
//
// Exit status: 0 success, 1 usage or configuration error, 2 numerical failure.

#include "nsda/conditions.hpp"
#include "nsda/config.hpp"
#include "nsda/errors.hpp"
#include "nsda/harness.hpp"
#include "nsda/interpolants.hpp"
#include "nsda/operators.hpp"
#include "nsda/postprocess.hpp"
#include "nsda/snapshot.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace nsda;

namespace {

struct Common {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "experiment file")->required();
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
  cmd->add_option("--seed", c.seed, "base seed, overrides every seed in the file");
}

fs::path prepare(const Common& c) {
  fs::path out(c.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ConfigError("cannot create output directory " + out.string() + ": " + ec.message());
  return out;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path.string());
  return os;
}

std::string snapshot_name(std::int64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06lld.nsf2", static_cast<long long>(index));
  return buf;
}

SpectralVelocity load_truth(const ExperimentConfig& cfg) {
  if (cfg.truth_dir.empty()) return make_truth(cfg);
  Snapshot snap = read_snapshot(fs::path(cfg.truth_dir) / "u0.nsf2");
  if (!(snap.field.grid() == *cfg.run.grid)) {
    throw ConfigError("truth in " + cfg.truth_dir + " is on a different grid than M_truth/L");
  }
  return snap.field;
}

int cmd_reference(const Common& c) {
  const ExperimentConfig cfg = load_config(c.config, c.seed);
  const fs::path out = prepare(c);
  const fs::path dir = out / "truth";
  fs::create_directories(dir);
  const NudgeConfig& run = cfg.run;
  const SpectralVelocity g = build_forcing(run.forcing, run.grid, run.nu);
  std::cerr << "spinning up the truth for t = " << cfg.spinup << '\n';
  ImexState state = start(make_truth(cfg));
  write_snapshot(dir / "u0.nsf2", state.field, 0.0);

  auto energies = open_out(out / "truth_energy.csv");
  energies << "t,energy_truth,enstrophy_truth\n";
  energies.precision(17);
  const auto steps = static_cast<std::int64_t>(std::llround(run.t_end / run.dt));
  for (std::int64_t n = 0; n <= steps; ++n) {
    const double t = double(n) * run.dt;
    if (n % run.sample_every == 0 || n == steps) {
      write_snapshot(dir / snapshot_name(n), state.field, t);
      energies << t << ',' << energy(state.field) << ',' << enstrophy(state.field) << '\n';
    }
    if (n < steps) {
      try {
        state = step_truth(state, g, run.nu, run.dt);
      } catch (const NumericalError& e) {
        throw NumericalError(e.what(), t);
      }
    }
  }
  std::cout << "truth written to " << dir.string() << " (" << steps << " steps, G = "
            << grashof(g, run.nu, run.grid->lambda1()) << ")\n";
  return 0;
}

int cmd_assimilate(const Common& c) {
  const ExperimentConfig cfg = load_config(c.config, c.seed);
  const fs::path out = prepare(c);
  const NudgeConfig& run = cfg.run;
  print_report(std::cerr, check_conditions(run, cfg.constants, cfg.lambda_m));

  const SpectralVelocity g = build_forcing(run.forcing, run.grid, run.nu);
  const ShellCutoff cutoff = run.cutoff();
  const SpectralVelocity u0 = load_truth(cfg);
  ErrorSeries series;
  SpectralVelocity last_truth = u0, last_nudged = u0;
  double last_t = 0.0;
  const RunOutput result =
      run_coupled(run, u0, [&](double t, const SpectralVelocity& truth, const SpectralVelocity& nudged) {
        series.push_back(error_row(t, truth, nudged, g, run.nu, cutoff));
        last_truth = truth;
        last_nudged = nudged;
        last_t = t;
      });

  auto errors = open_out(out / "errors.csv");
  write_error_csv(errors, series);
  auto diagnostics = open_out(out / "diagnostics.csv");
  write_diagnostics_csv(diagnostics, result.diagnostics);
  write_snapshot(out / "truth_final.nsf2", last_truth, last_t);
  write_snapshot(out / "nudged_final.nsf2", last_nudged, last_t);

  auto summary = open_out(out / "summary.txt");
  const ConvergenceShape shape = analyze_lowmode_decay(series);
  summary << "low-mode error: initial " << shape.initial << ", plateau " << shape.plateau << " ("
          << shape.orders << " orders), transient ends at t = " << shape.transient_end
          << (shape.monotone ? ", monotone" : ", not monotone") << '\n';
  const double split = run.t_end > 0.0 ? std::min(1.0, shape.transient_end / run.t_end) : 0.0;
  if (split < 1.0) {
    const UniformCheck uniform = uniform_time_check(series, split);
    summary << "uniform in time: ratio " << uniform.ratio << (uniform.pass ? " pass" : " fail") << '\n';
  }
  std::cout << "wrote " << series.size() << " error rows to " << (out / "errors.csv").string() << '\n';
  return 0;
}

int cmd_sweep(const Common& c) {
  const ExperimentConfig cfg = load_config(c.config, c.seed);
  if (cfg.sweep_kappas.empty()) throw ConfigError(c.config + ": sweep.kappas is required for a sweep");
  const fs::path out = prepare(c);
  print_report(std::cerr, check_conditions(cfg.run, cfg.constants, cfg.lambda_m));
  const SpectralVelocity u0 = load_truth(cfg);
  const ConvergenceReport report = convergence_sweep(cfg.run, u0, cfg.sweep_kappas, cfg.window);
  auto csv = open_out(out / "report.csv");
  write_report_csv(csv, report);
  auto summary = open_out(out / "summary.txt");
  write_report_summary(summary, report);
  auto plot = open_out(out / "report.gp");
  write_report_gnuplot(plot, "report.csv");
  write_report_summary(std::cout, report);
  return 0;
}

int cmd_verify_interp(const Common& c, int samples) {
  const ExperimentConfig cfg = load_config(c.config, c.seed);
  const fs::path out = prepare(c);
  const NudgeConfig& run = cfg.run;
  const std::uint64_t seed = c.seed.value_or(run.v0_seed);
  std::vector<PropertyEstimate> rows{estimate_p1(run.interp, run.grid, samples, seed),
                                     estimate_p2(run.interp, run.grid, samples, seed)};
  std::vector<ShellCutoff> shells;
  const std::vector<double> kappas =
      cfg.sweep_kappas.empty() ? std::vector<double>{run.kappa_N} : cfg.sweep_kappas;
  for (double k : kappas) shells.push_back(make_cutoff(*run.grid, k));
  for (auto& r : estimate_p3(run.interp, run.grid, shells, samples, seed)) rows.push_back(std::move(r));
  auto csv = open_out(out / "interp_constants.csv");
  write_estimates_csv(csv, rows);
  write_estimates_csv(std::cout, rows);
  return 0;
}

int cmd_check(const Common& c) {
  const ExperimentConfig cfg = load_config(c.config, c.seed);
  const ConditionReport report = check_conditions(cfg.run, cfg.constants, cfg.lambda_m);
  print_report(std::cout, report);
  if (cfg.beta_auto) std::cout << "beta = " << cfg.run.beta << " (auto)\n";
  return 0;
}

int cmd_postprocess(const Common& c, const std::string& snapshot) {
  const ExperimentConfig cfg = load_config(c.config, c.seed);
  const fs::path out = prepare(c);
  const NudgeConfig& run = cfg.run;
  const Snapshot snap = read_snapshot(fs::path(snapshot));
  if (!(snap.field.grid() == *run.grid)) {
    throw ConfigError(snapshot + " is on a different grid than M_truth/L in " + c.config);
  }
  const SpectralVelocity g = build_forcing(run.forcing, run.grid, run.nu);
  const SpectralVelocity& vN = snap.field;
  const ShellCutoff cutoff = run.cutoff();
  const PostprocessedState state = postprocess(project_low(vN, cutoff), g, run.nu, cutoff);
  write_snapshot(out / "postprocessed.nsf2", state.combined, snap.time);
  std::cout << "t = " << snap.time << ": |v_N| = " << sobolev_norm(state.low, 0.0)
            << ", |Phi1(v_N)| = " << sobolev_norm(state.high, 0.0)
            << ", ||Phi1(v_N)|| = " << sobolev_norm(state.high, 1.0) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nudged Galerkin data assimilation with postprocessing for 2D Navier-Stokes"};
  app.require_subcommand(1);

  Common common;
  int samples = 20;
  std::string snapshot;
  auto* reference = app.add_subcommand("reference", "generate and store a truth trajectory");
  auto* assimilate = app.add_subcommand("assimilate", "one coupled run with its error series");
  auto* sweep = app.add_subcommand("sweep", "convergence sweep over Galerkin cutoffs");
  auto* verify = app.add_subcommand("verify-interp", "estimate the interpolant constants");
  auto* check = app.add_subcommand("check", "evaluate the parameter conditions");
  auto* post = app.add_subcommand("postprocess", "add the high-mode correction to a stored field");
  for (auto* cmd : {reference, assimilate, sweep, verify, check, post}) add_common(cmd, common);
  verify->add_option("--samples", samples, "random fields per estimate")->capture_default_str();
  post->add_option("--snapshot", snapshot, "NSF2 file holding v_N")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*reference) return cmd_reference(common);
    if (*assimilate) return cmd_assimilate(common);
    if (*sweep) return cmd_sweep(common);
    if (*verify) return cmd_verify_interp(common, samples);
    if (*check) return cmd_check(common);
    if (*post) return cmd_postprocess(common, snapshot);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure at t = " << e.time() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
