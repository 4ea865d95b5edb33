#include "nsda/harness.hpp"

#include "nsda/operators.hpp"
#include "nsda/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace nsda {

ErrorRow error_row(double t, const SpectralVelocity& truth, const SpectralVelocity& nudged,
                   const SpectralVelocity& forcing, double nu, const ShellCutoff& cutoff) {
  const SpectralVelocity sgm = nudged - truth;
  const SpectralVelocity ppgm = postprocess(nudged, forcing, nu, cutoff).combined - truth;
  const SpectralVelocity low = nudged - project_low(truth, cutoff);
  return {t,
          sobolev_norm(sgm, 0.0),
          sobolev_norm(sgm, 1.0),
          sobolev_norm(ppgm, 0.0),
          sobolev_norm(ppgm, 1.0),
          sobolev_norm(low, 0.0),
          sobolev_norm(project_high(truth, cutoff), 0.0)};
}

ErrorSeries error_series(const std::vector<TimedField>& truth, const std::vector<TimedField>& nudged,
                         const SpectralVelocity& forcing, double nu, const ShellCutoff& cutoff) {
  if (truth.size() != nudged.size()) throw ConfigError("truth and nudged streams differ in length");
  ErrorSeries out;
  out.reserve(truth.size());
  for (std::size_t n = 0; n < truth.size(); ++n) {
    if (truth[n].t != nudged[n].t) {
      throw ConfigError("streams misaligned at sample " + std::to_string(n) + ": t=" +
                        std::to_string(truth[n].t) + " vs " + std::to_string(nudged[n].t));
    }
    out.push_back(error_row(truth[n].t, truth[n].field, nudged[n].field, forcing, nu, cutoff));
  }
  return out;
}

void write_error_csv(std::ostream& os, const ErrorSeries& series) {
  os << "t,err_sgm_L2,err_sgm_H1,err_ppgm_L2,err_ppgm_H1,err_lowmodes_L2\n";
  os.precision(17);
  for (const auto& r : series) {
    os << r.t << ',' << r.err_sgm_L2 << ',' << r.err_sgm_H1 << ',' << r.err_ppgm_L2 << ','
       << r.err_ppgm_H1 << ',' << r.err_lowmodes_L2 << '\n';
  }
}

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticRow>& rows) {
  os << "t,energy_truth,enstrophy_truth,energy_vN\n";
  os.precision(17);
  for (const auto& r : rows) {
    os << r.t << ',' << r.energy_truth << ',' << r.enstrophy_truth << ',' << r.energy_vN << '\n';
  }
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw ConfigError("slope fit needs at least 3 points");
  const double n = double(points.size());
  double sx = 0, sy = 0;
  for (const auto& [lambda, err] : points) {
    if (!(lambda > 0.0) || !(err > 0.0)) throw ConfigError("slope fit needs positive values");
    sx += std::log(lambda);
    sy += std::log(err);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [lambda, err] : points) {
    const double dx = std::log(lambda) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(err) - my);
  }
  if (!(sxx > 0.0)) throw ConfigError("slope fit needs at least two distinct lambda values");
  SlopeFit fit{sxy / sxx, 0.0, 0.0};
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (const auto& [lambda, err] : points) {
    const double r = std::log(err) - (fit.intercept + fit.slope * std::log(lambda));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

UniformCheck uniform_time_check(const ErrorSeries& series, double split) {
  if (series.empty()) throw ConfigError("uniform-in-time check on an empty series");
  if (!(split >= 0.0 && split < 1.0)) throw ConfigError("split must lie in [0, 1)");
  const double t0 = series.front().t, t1 = series.back().t;
  const double start = t0 + split * (t1 - t0);
  const double mid = 0.5 * (start + t1);
  double first = 0.0, second = 0.0;
  int n_first = 0, n_second = 0;
  for (const auto& r : series) {
    if (r.t < start) continue;
    if (r.t <= mid) {
      first = std::max(first, r.err_ppgm_L2);
      ++n_first;
    } else {
      second = std::max(second, r.err_ppgm_L2);
      ++n_second;
    }
  }
  if (n_first == 0 || n_second == 0) throw ConfigError("post-transient window holds too few samples");
  const double ratio = first > 0.0 ? second / first : (second > 0.0 ? INFINITY : 1.0);
  return {ratio, ratio >= 0.5 && ratio <= 2.0};
}

ConvergenceShape analyze_lowmode_decay(const ErrorSeries& series) {
  if (series.size() < 5) throw ConfigError("decay analysis needs at least 5 samples");
  std::vector<double> tail;
  for (std::size_t n = series.size() - series.size() / 5; n < series.size(); ++n) {
    tail.push_back(series[n].err_lowmodes_L2);
  }
  std::nth_element(tail.begin(), tail.begin() + tail.size() / 2, tail.end());
  ConvergenceShape shape{};
  shape.initial = series.front().err_lowmodes_L2;
  shape.plateau = tail[tail.size() / 2];
  shape.orders = std::log10(shape.initial / shape.plateau);
  shape.transient_end = series.back().t;
  for (const auto& r : series) {
    if (r.err_lowmodes_L2 <= 2.0 * shape.plateau) {
      shape.transient_end = r.t;
      break;
    }
  }
  shape.monotone = true;
  double running_min = shape.initial;
  for (const auto& r : series) {
    if (r.t > shape.transient_end) break;
    if (r.err_lowmodes_L2 > 1.05 * running_min) shape.monotone = false;
    running_min = std::min(running_min, r.err_lowmodes_L2);
  }
  return shape;
}

}  // namespace nsda
