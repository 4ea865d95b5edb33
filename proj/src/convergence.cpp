#include "nsda/harness.hpp"

#include "nsda/operators.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>

namespace nsda {

ConvergenceRow summarize(const ErrorSeries& series, const ShellCutoff& cutoff, double lambda1, double t_a,
                         double t_b) {
  ConvergenceRow row{cutoff.kappa, cutoff.lambda_next, log_factor(cutoff, lambda1), 0, 0, 0, 0, true};
  bool any = false;
  for (const auto& r : series) {
    if (r.t < t_a || r.t > t_b) continue;
    any = true;
    row.sup_sgm_L2 = std::max(row.sup_sgm_L2, r.err_sgm_L2);
    row.sup_ppgm_L2 = std::max(row.sup_ppgm_L2, r.err_ppgm_L2);
    row.sup_sgm_H1 = std::max(row.sup_sgm_H1, r.err_sgm_H1);
    row.sup_ppgm_H1 = std::max(row.sup_ppgm_H1, r.err_ppgm_H1);
  }
  if (!any) throw ConfigError("no samples inside the sup window");
  return row;
}

namespace {

ErrorSeries windowed_run(const NudgeConfig& config, const SpectralVelocity& u0, double t_a, double t_b) {
  const SpectralVelocity forcing = build_forcing(config.forcing, config.grid, config.nu);
  const ShellCutoff cutoff = config.cutoff();
  ErrorSeries series;
  run_coupled(config, u0, [&](double t, const SpectralVelocity& truth, const SpectralVelocity& nudged) {
    if (t >= t_a && t <= t_b) series.push_back(error_row(t, truth, nudged, forcing, config.nu, cutoff));
  });
  return series;
}

// Sup over the window of |v - u| for the un-nudged Galerkin system on the
// largest admissible shell, started from the projected truth: the floor set by
// truth truncation and time stepping.
double measure_floor(const NudgeConfig& config, const SpectralVelocity& u0, double t_a, double t_b) {
  const SpectralVelocity forcing = build_forcing(config.forcing, config.grid, config.nu);
  const double r = config.grid->dealias_radius();
  NudgeParams params{config.nu, 0.0, make_cutoff(*config.grid, r), config.interp, true};
  ImexState truth = start(u0);
  ImexState copy = start(project_low(u0, params.cutoff));
  const auto steps = static_cast<std::int64_t>(std::llround(config.t_end / config.dt));
  double floor = 0.0;
  for (std::int64_t n = 0; n < steps; ++n) {
    copy = step_nudged(copy, truth.field, forcing, params, config.dt);
    truth = step_truth(truth, forcing, config.nu, config.dt);
    const double t = double(n + 1) * config.dt;
    if (t >= t_a && t <= t_b && ((n + 1) % config.sample_every == 0 || n + 1 == steps)) {
      floor = std::max(floor, sobolev_norm(copy.field - truth.field, 0.0));
    }
  }
  return floor;
}

}  // namespace

ConvergenceReport convergence_sweep(const NudgeConfig& base, const SpectralVelocity& u0_truth,
                                    const std::vector<double>& kappas,
                                    std::optional<std::pair<double, double>> window) {
  validate(base);
  if (kappas.empty()) throw ConfigError("sweep needs at least one cutoff");
  for (std::size_t n = 0; n < kappas.size(); ++n) {
    if (n > 0 && !(kappas[n] > kappas[n - 1])) throw ConfigError("sweep cutoffs must be strictly increasing");
    if (!(kappas[n] < base.grid->dealias_radius())) {
      throw ConfigError("sweep cutoff " + std::to_string(kappas[n]) + " not below the dealias radius");
    }
  }
  const auto [t_a, t_b] = window.value_or(std::pair{0.5 * base.t_end, base.t_end});
  if (!(t_a > 0.0 && t_a < t_b && t_b <= base.t_end)) {
    throw ConfigError("sup window must lie inside (0, t_end]");
  }

  std::vector<std::future<ErrorSeries>> runs;
  for (double kappa : kappas) {
    NudgeConfig config = base;
    config.kappa_N = kappa;
    runs.push_back(std::async(std::launch::async, [config, &u0_truth, t_a = t_a, t_b = t_b] {
      return windowed_run(config, u0_truth, t_a, t_b);
    }));
  }

  ConvergenceReport report;
  report.window_start = t_a;
  report.window_end = t_b;
  for (std::size_t n = 0; n < kappas.size(); ++n) {
    ErrorSeries series;
    try {
      series = runs[n].get();
    } catch (const NumericalError& e) {
      throw NumericalError("sweep run kappa_N=" + std::to_string(kappas[n]) + " failed: " + e.what(),
                           e.time());
    }
    NudgeConfig config = base;
    config.kappa_N = kappas[n];
    report.rows.push_back(summarize(series, config.cutoff(), base.grid->lambda1(), t_a, t_b));
  }

  report.floor_L2 = measure_floor(base, u0_truth, t_a, t_b);
  report.ppgm_below_sgm_everywhere = true;
  std::vector<std::pair<double, double>> sgm_l2, ppgm_l2, sgm_h1, ppgm_h1;
  for (auto& row : report.rows) {
    report.ppgm_below_sgm_everywhere =
        report.ppgm_below_sgm_everywhere && row.sup_ppgm_L2 < row.sup_sgm_L2;
    row.fitted = row.sup_sgm_L2 > 10.0 * report.floor_L2 && row.sup_ppgm_L2 > 0.0;
    if (!row.fitted) continue;
    sgm_l2.emplace_back(row.lambda_next, row.sup_sgm_L2);
    ppgm_l2.emplace_back(row.lambda_next, row.sup_ppgm_L2);
    sgm_h1.emplace_back(row.lambda_next, row.sup_sgm_H1);
    ppgm_h1.emplace_back(row.lambda_next, row.sup_ppgm_H1);
  }
  if (sgm_l2.size() >= 3) {
    report.sgm_L2 = fit_slope(sgm_l2);
    report.ppgm_L2 = fit_slope(ppgm_l2);
    report.sgm_H1 = fit_slope(sgm_h1);
    report.ppgm_H1 = fit_slope(ppgm_h1);
  }
  return report;
}

void write_report_csv(std::ostream& os, const ConvergenceReport& report) {
  os << "kappa_N,lambda_next,L_N,sup_sgm_L2,sup_ppgm_L2,sup_sgm_H1,sup_ppgm_H1\n";
  os.precision(17);
  for (const auto& r : report.rows) {
    os << r.kappa_N << ',' << r.lambda_next << ',' << r.L_N << ',' << r.sup_sgm_L2 << ',' << r.sup_ppgm_L2
       << ',' << r.sup_sgm_H1 << ',' << r.sup_ppgm_H1 << '\n';
  }
}

void write_report_summary(std::ostream& os, const ConvergenceReport& report) {
  os.precision(6);
  os << "sup window: [" << report.window_start << ", " << report.window_end << "]\n";
  os << "floor (L2): " << report.floor_L2 << '\n';
  for (const auto& r : report.rows) {
    os << "kappa_N=" << r.kappa_N << " lambda_next=" << r.lambda_next << " sgm_L2=" << r.sup_sgm_L2
       << " ppgm_L2=" << r.sup_ppgm_L2 << " sgm_H1=" << r.sup_sgm_H1 << " ppgm_H1=" << r.sup_ppgm_H1
       << (r.fitted ? "" : " (excluded: near floor)") << '\n';
  }
  os << "PPGM below SGM at every cutoff: " << (report.ppgm_below_sgm_everywhere ? "yes" : "no") << '\n';
  if (!report.sgm_L2) {
    os << "slopes: insufficient points (need 3 cutoffs above the floor)\n";
    return;
  }
  os << "slope sgm_L2=" << report.sgm_L2->slope << " ppgm_L2=" << report.ppgm_L2->slope
     << " sgm_H1=" << report.sgm_H1->slope << " ppgm_H1=" << report.ppgm_H1->slope << '\n';
}

void write_report_gnuplot(std::ostream& os, const std::string& csv_name) {
  os << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set xlabel 'lambda_{N+1}'\n"
     << "set ylabel 'sup error'\n"
     << "set key top right\n"
     << "plot '" << csv_name << "' every ::1 using 2:4 with linespoints title 'SGM L2', \\\n"
     << "     '' every ::1 using 2:5 with linespoints title 'PPGM L2', \\\n"
     << "     '' every ::1 using 2:6 with linespoints title 'SGM H1', \\\n"
     << "     '' every ::1 using 2:7 with linespoints title 'PPGM H1'\n";
}

}  // namespace nsda
