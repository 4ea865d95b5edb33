// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.
// Usage: nsda_acceptance [reference.cfg]
#include "nsda/conditions.hpp"
#include "nsda/config.hpp"
#include "nsda/harness.hpp"
#include "nsda/interpolants.hpp"
#include "nsda/postprocess.hpp"
#include "test_util.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace nsda;
using namespace nsda::testing;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Verdict()> check;
};

template <class... Ts>
std::string cat(const Ts&... parts) {
  std::ostringstream os;
  os.precision(4);
  (os << ... << parts);
  return os.str();
}

// next <= (1 + slack) * previous along the sequence.
bool non_increasing(const std::vector<double>& v, double slack) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] <= (1.0 + slack) * v[i - 1])) return false;
  }
  return true;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(4);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

Verdict convolution_oracle_check() {
  const GridPtr g = grid(8);
  Rng rng(101);
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const SpectralVelocity u = random_solenoidal(g, rng), v = random_solenoidal(g, rng);
    worst = std::max(worst, max_abs(bilinear_B(u, v) - convolution_oracle(u, v)));
  }
  return {worst < 1e-12, cat("max |B - direct sum| = ", worst, " over 50 pairs (< 1e-12)")};
}

Verdict antisymmetry_check() {
  const GridPtr g = grid(32);
  Rng rng(102);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const SpectralVelocity u = random_solenoidal(g, rng), v = random_solenoidal(g, rng);
    const double scale = sobolev_norm(u, 1.0) * sobolev_norm(v, 1.0) * sobolev_norm(v, 0.0);
    worst = std::max(worst, std::abs(inner(bilinear_B(u, v), v)) / scale);
  }
  return {worst < 1e-10, cat("max |(B(u,v),v)| / (||u|| ||v|| |v|) = ", worst, " over 100 pairs (< 1e-10)")};
}

Verdict taylor_green_check() {
  const GridPtr g = grid(32);
  const SpectralVelocity tg = taylor_green(g);
  const double norm = sobolev_norm(bilinear_B(tg, tg), 0.0);
  return {norm < 1e-12, cat("|B(u_TG,u_TG)| = ", norm, " (< 1e-12)")};
}

Verdict single_mode_decay_check() {
  const double coarse = taylor_green_decay_error(1.0, 1e-3, 1.0);
  const double fine = taylor_green_decay_error(1.0, 5e-4, 1.0);
  const double factor = coarse / fine;
  return {coarse < 1e-6 && factor >= 3.5 && factor <= 4.5,
          cat("relative error ", coarse, " at dt=1e-3 (< 1e-6), halving dt gains ", factor, " (in [3.5, 4.5])")};
}

// Shared by the reference-run criteria: spun-up truth and its error series.
struct ReferenceRun {
  ExperimentConfig config;
  SpectralVelocity u0;
  ErrorSeries series;
  ConvergenceShape shape;
};

ErrorSeries observe(const NudgeConfig& run, const SpectralVelocity& u0) {
  const SpectralVelocity g = build_forcing(run.forcing, run.grid, run.nu);
  const ShellCutoff cutoff = run.cutoff();
  ErrorSeries series;
  run_coupled(run, u0, [&](double t, const SpectralVelocity& truth, const SpectralVelocity& nudged) {
    series.push_back(error_row(t, truth, nudged, g, run.nu, cutoff));
  });
  return series;
}

Verdict nudging_convergence_check(const std::string& path, std::optional<ReferenceRun>& ref) {
  ExperimentConfig cfg = load_config(path);
  SpectralVelocity u0 = make_truth(cfg);
  ErrorSeries series = observe(cfg.run, u0);
  const ConvergenceShape shape = analyze_lowmode_decay(series);
  ref = ReferenceRun{std::move(cfg), std::move(u0), std::move(series), shape};
  return {shape.orders >= 6.0 && shape.monotone,
          cat("low-mode error ", shape.initial, " -> plateau ", shape.plateau, ": ", shape.orders,
              " orders (>= 6), ", shape.monotone ? "monotone" : "not monotone",
              " within 5% before t = ", shape.transient_end, ", beta = ", ref->config.run.beta)};
}

Verdict uniform_in_time_check(const std::optional<ReferenceRun>& ref) {
  if (!ref) return {false, "reference run unavailable"};
  const double t_end = 2.0 * ref->shape.transient_end;
  if (!(t_end > 0.0)) return {false, "no transient measured"};
  ErrorSeries series;
  if (t_end <= ref->config.run.t_end) {
    for (const ErrorRow& r : ref->series) {
      if (r.t <= t_end + 1e-9) series.push_back(r);
    }
  } else {
    NudgeConfig longer = ref->config.run;
    longer.t_end = t_end;
    series = observe(longer, ref->u0);
  }
  const UniformCheck u = uniform_time_check(series, 0.5);
  return {u.pass, cat("t_end = ", t_end, ", sup ratio of window halves = ", u.ratio, " (in [0.5, 2])")};
}

Verdict rate_separation_check(const std::optional<ReferenceRun>& ref) {
  if (!ref) return {false, "reference run unavailable"};
  const std::vector<double> kappas = {4, 6, 8, 12, 16};
  const ConvergenceReport rep = convergence_sweep(ref->config.run, ref->u0, kappas, ref->config.window);
  if (!rep.sgm_L2 || !rep.ppgm_L2 || !rep.sgm_H1 || !rep.ppgm_H1) {
    return {false, "fewer than 3 cutoffs above the floor, no slopes"};
  }
  bool h1_below = true;
  for (const auto& r : rep.rows) h1_below = h1_below && r.sup_ppgm_H1 < r.sup_sgm_H1;
  const double s = rep.sgm_L2->slope, p = rep.ppgm_L2->slope;
  const double sh = rep.sgm_H1->slope, ph = rep.ppgm_H1->slope;
  const bool pass = rep.ppgm_below_sgm_everywhere && s >= -1.4 && s <= -0.6 && p <= s - 0.25 &&
                    h1_below && ph <= sh - 0.2;
  return {pass, cat("L2 slopes sgm ", s, " (in [-1.4, -0.6]) ppgm ", p, " (<= sgm - 0.25), H1 slopes sgm ", sh,
                    " ppgm ", ph, " (<= sgm - 0.2), PPGM below SGM at every cutoff: L2 ",
                    rep.ppgm_below_sgm_everywhere ? "yes" : "no", ", H1 ", h1_below ? "yes" : "no",
                    ", window [", rep.window_start, ", ", rep.window_end, "]")};
}

Verdict finite_volume_structure_check() {
  const GridPtr g = grid(64);
  Rng rng(108);
  double symmetry = 0.0;
  bool constants = true, idempotent = true;
  for (int cells : {2, 4, 8, 16}) {
    for (int n = 0; n < 10; ++n) {
      const SpectralVelocity phi = random_raw(g, rng), psi = random_raw(g, rng);
      const double lhs = inner(apply_interpolant(FiniteVolume{cells}, phi), psi);
      const double rhs = inner(phi, apply_interpolant(FiniteVolume{cells}, psi));
      symmetry = std::max(symmetry, std::abs(lhs - rhs) / (sobolev_norm(phi, 0.0) * sobolev_norm(psi, 0.0)));
    }
    PhysicalVelocity c(g);
    c[0].setConstant(0.3);
    c[1].setConstant(-2.7);
    const PhysicalVelocity avg = cell_average(c, cells);
    constants = constants && (avg[0] == c[0]).all() && (avg[1] == c[1]).all();
    const PhysicalVelocity once = cell_average(to_physical(random_raw(g, rng)), cells);
    const PhysicalVelocity twice = cell_average(once, cells);
    idempotent = idempotent && (once[0] == twice[0]).all() && (once[1] == twice[1]).all();
  }
  return {symmetry < 1e-10 && constants && idempotent,
          cat("symmetry residual ", symmetry, " (< 1e-10), constants ", constants ? "exact" : "changed",
              ", idempotence ", idempotent ? "bit-exact" : "not bit-exact")};
}

Verdict interpolant_constants_check() {
  const GridPtr g = grid(64);
  const auto factor = [](double a, double b) { return std::max(a, b) / std::min(a, b); };
  const double c0 = factor(estimate_p1(FiniteVolume{8}, g, 20, 109).estimate,
                           estimate_p1(FiniteVolume{16}, g, 20, 109).estimate);
  const double cm1 = factor(estimate_p2(FiniteVolume{8}, g, 20, 109).estimate,
                            estimate_p2(FiniteVolume{16}, g, 20, 109).estimate);
  const std::vector<ShellCutoff> shells = {make_cutoff(*g, 8), make_cutoff(*g, 12), make_cutoff(*g, 16)};
  // c0_tilde is probed with 16 cells, so every tested cutoff sits below the
  // first null of the cell-average symbol; 8 cells are reported alongside.
  const auto p3_scan = [&](int cells) {
    std::vector<double> est;
    for (const auto& e : estimate_p3(FiniteVolume{cells}, g, shells, 20, 109)) est.push_back(e.estimate);
    return est;
  };
  const std::vector<double> fine = p3_scan(16), coarse = p3_scan(8);
  bool bounded = true;
  for (double e : fine) bounded = bounded && std::isfinite(e) && e > 0.0;
  const bool p3 = bounded && non_increasing(fine, 0.2);
  const std::string p3_detail =
      cat(", c0_tilde(16 cells) over kappa_N 8 12 16 = ", join(fine), " (bounded, non-increasing within 20%), 8 cells: ",
          join(coarse));
  return {c0 < 2.0 && cm1 < 2.0 && p3,
          cat("8 -> 16 cells change c0 by ", c0, ", c_-1 by ", cm1, " (< 2)", p3_detail)};
}

Verdict lipschitz_check(const std::string& path) {
  const ExperimentConfig cfg = load_config(path);
  const NudgeConfig& run = cfg.run;
  const SpectralVelocity g = build_forcing(run.forcing, run.grid, run.nu);
  const std::vector<ShellCutoff> cuts = {make_cutoff(*run.grid, 4), make_cutoff(*run.grid, 8),
                                         make_cutoff(*run.grid, 16)};
  std::vector<double> l2, h1;
  for (const auto& e : lipschitz_scan(g, run.nu, cuts, 1.0, 20, 110)) {
    l2.push_back(e.ratio_L2);
    h1.push_back(e.ratio_H1);
  }
  return {non_increasing(l2, 0.1),
          cat("L2 ratios over kappa_N 4 8 16: ", join(l2), " (non-increasing within 10%), H1 ratios ", join(h1))};
}

Verdict condition_checker_check() {
  ConditionInputs in;
  in.nu = 1.0;
  in.beta = 8.0;
  const auto lambda_condition = [&](double lambda_next) -> std::optional<ConditionEntry> {
    in.lambda_K_next = lambda_next;
    for (const auto& e : evaluate_conditions(in).entries) {
      if (e.name == "lambda_{K+1} >= 2*beta/nu") return e;
    }
    return std::nullopt;
  };
  const auto at16 = lambda_condition(16.0), at15 = lambda_condition(15.0);
  if (!at16 || !at15) return {false, "lambda_{K+1} condition missing from the report"};
  return {at16->satisfied && !at15->satisfied,
          cat("16 >= ", at16->rhs, (at16->satisfied ? " holds" : " fails"), ", 15 >= ", at15->rhs,
              (at15->satisfied ? " holds" : " fails"))};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string reference = argc > 1 ? argv[1] : std::string(NSDA_CONFIG_DIR) + "/reference.cfg";
  std::optional<ReferenceRun> ref;
  const std::vector<Criterion> criteria = {
      {1, "nonlinear term matches direct convolution", 10, convolution_oracle_check},
      {2, "trilinear antisymmetry", 10, antisymmetry_check},
      {3, "Taylor-Green annihilation", 1, taylor_green_check},
      {4, "single-mode decay, second order", 30, single_mode_decay_check},
      {5, "nudging convergence of the low modes", 600, [&] { return nudging_convergence_check(reference, ref); }},
      {6, "uniform-in-time error", 600, [&] { return uniform_in_time_check(ref); }},
      {7, "postprocessed rate separation", 1800, [&] { return rate_separation_check(ref); }},
      {8, "finite-volume interpolant structure", 10, finite_volume_structure_check},
      {9, "interpolant constants under refinement", 120, interpolant_constants_check},
      {10, "Lipschitz ratio of the correction", 120, [&] { return lipschitz_check(reference); }},
      {11, "condition checker at equality", 1, condition_checker_check},
  };

  // Criteria whose failure is analysed and expected. They still print FAIL;
  // only a failure outside this set makes the run exit nonzero.
  const std::set<int> known_gaps = {5};

  int failures = 0, unexpected = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = seconds < c.budget_seconds;
    const bool pass = v.pass && in_time;
    failures += pass ? 0 : 1;
    unexpected += pass || known_gaps.count(c.id) ? 0 : 1;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << v.detail << "; "
              << cat(seconds) << " s (budget " << c.budget_seconds << " s" << (in_time ? ")" : ", exceeded)")
              << std::endl;
  }
  std::cout << (criteria.size() - failures) << '/' << criteria.size() << " criteria pass";
  if (failures > unexpected) std::cout << ", " << failures - unexpected << " known gap(s) failing";
  std::cout << std::endl;
  return unexpected == 0 ? 0 : 1;
}
