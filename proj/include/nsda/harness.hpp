#pragma once

// Error bookkeeping and convergence studies for the nudged Galerkin runs.

#include "nsda/nudged_solver.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nsda {

// Errors against the truth u at one time:
//   sgm      = v_N - u
//   ppgm     = v_N + Φ1(v_N) - u
//   lowmodes = v_N - P_N u
// plus |Q_N u| for the triangle-inequality check.
struct ErrorRow {
  double t;
  double err_sgm_L2;
  double err_sgm_H1;
  double err_ppgm_L2;
  double err_ppgm_H1;
  double err_lowmodes_L2;
  double highmodes_L2;
};

using ErrorSeries = std::vector<ErrorRow>;

struct TimedField {
  double t;
  SpectralVelocity field;
};

ErrorRow error_row(double t, const SpectralVelocity& truth, const SpectralVelocity& nudged,
                   const SpectralVelocity& forcing, double nu, const ShellCutoff& cutoff);

// Throws ConfigError unless both streams have the same length and times.
ErrorSeries error_series(const std::vector<TimedField>& truth, const std::vector<TimedField>& nudged,
                         const SpectralVelocity& forcing, double nu, const ShellCutoff& cutoff);

// CSV header t,err_sgm_L2,err_sgm_H1,err_ppgm_L2,err_ppgm_H1,err_lowmodes_L2.
void write_error_csv(std::ostream& os, const ErrorSeries& series);
void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticRow>& rows);

struct SlopeFit {
  double slope;
  double intercept;
  double residual;  // root-mean-square misfit in log(err)
};

// Least squares of log(err) against log(lambda). Needs at least 3 points,
// all positive.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points);

struct UniformCheck {
  double ratio;
  bool pass;
};

// The window [t_first + split (t_last - t_first), t_last] is halved; ratio is
// sup err_ppgm_L2 over the second half divided by that over the first.
// Passes when ratio ∈ [0.5, 2].
UniformCheck uniform_time_check(const ErrorSeries& series, double split);

// Shape of a low-mode error history: how far it fell and when it flattened.
struct ConvergenceShape {
  double initial;
  double plateau;         // median over the last fifth of the series
  double orders;          // log10(initial / plateau)
  double transient_end;   // first time within a factor 2 of the plateau
  bool monotone;          // no rise above 1.05 x the running minimum before transient_end
};

ConvergenceShape analyze_lowmode_decay(const ErrorSeries& series);

struct ConvergenceRow {
  double kappa_N;
  double lambda_next;
  double L_N;
  double sup_sgm_L2;
  double sup_ppgm_L2;
  double sup_sgm_H1;
  double sup_ppgm_H1;
  bool fitted;  // false when excluded as too close to the floor
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::optional<SlopeFit> sgm_L2, ppgm_L2, sgm_H1, ppgm_H1;
  double window_start = 0.0;
  double window_end = 0.0;
  double floor_L2 = 0.0;
  bool ppgm_below_sgm_everywhere = false;
};

// Runs run_coupled once per cutoff (same truth, same seeds), takes sup of each
// error over [window.first, window.second], measures the floor with a
// nudging-free Galerkin run at the dealias radius started from P_N u0, and
// fits slopes against λ_{N+1} over cutoffs whose SGM error exceeds 10x the
// floor. Fewer than 3 usable cutoffs leaves the slopes empty.
ConvergenceReport convergence_sweep(const NudgeConfig& base, const SpectralVelocity& u0_truth,
                                    const std::vector<double>& kappas,
                                    std::optional<std::pair<double, double>> window = std::nullopt);

// Sup-over-window summary of a series.
ConvergenceRow summarize(const ErrorSeries& series, const ShellCutoff& cutoff, double lambda1,
                         double t_a, double t_b);

// CSV header kappa_N,lambda_next,L_N,sup_sgm_L2,sup_ppgm_L2,sup_sgm_H1,sup_ppgm_H1.
void write_report_csv(std::ostream& os, const ConvergenceReport& report);
void write_report_summary(std::ostream& os, const ConvergenceReport& report);
// gnuplot script plotting the report CSV named csv_name on log-log axes.
void write_report_gnuplot(std::ostream& os, const std::string& csv_name);

}  // namespace nsda
