#include "nsda/conditions.hpp"

#include "nsda/operators.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace nsda {

bool ConditionReport::all_satisfied() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.satisfied; });
}

namespace {

ConditionEntry at_least(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, ">=", rhs, lhs >= rhs};
}
ConditionEntry at_most(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, "<=", rhs, lhs <= rhs};
}

}  // namespace

ConditionReport evaluate_conditions(const ConditionInputs& in, const AssumedConstants& constants) {
  ConditionReport report;
  report.constants = constants;
  const double nu = in.nu, beta = in.beta;

  report.entries.push_back(at_least("beta >= nu*lambda_m", beta, nu * in.lambda_m));

  const double m1 = 2.0 * nu * std::sqrt(in.lambda1) * in.grashof;
  double attractor_bound = 0.0;
  if (m1 > 0.0) {
    attractor_bound = constants.c_beta * m1 * m1 / nu *
                      (1.0 + std::log(m1 / (nu * std::sqrt(in.lambda1))));
  }
  report.entries.push_back(
      at_least("beta >= c*M1^2/nu*[1+log(M1/(nu*lambda1^(1/2)))]", beta, attractor_bound));

  if (in.lambda_K_next) {
    report.entries.push_back(at_least("lambda_{K+1} >= 2*beta/nu", *in.lambda_K_next, 2.0 * beta / nu));
  }
  if (in.h) {
    const double ratio = beta > 0.0 ? std::sqrt(nu / beta) : std::numeric_limits<double>::infinity();
    report.entries.push_back(at_most("h <= (1/c0)*(nu/beta)^(1/2)", *in.h, ratio / constants.c0));
    const double second =
        beta > 0.0 ? nu * std::sqrt(in.lambda_m) / beta : std::numeric_limits<double>::infinity();
    report.entries.push_back(at_most("h <= c*min{(nu/beta)^(1/2), nu*lambda_m^(1/2)/beta}", *in.h,
                                     constants.c_h * std::min(ratio, second)));
  }
  return report;
}

ConditionReport check_conditions(const NudgeConfig& config, const AssumedConstants& constants,
                                 std::optional<double> lambda_m) {
  validate(config);
  const WaveGrid& grid = *config.grid;
  ConditionInputs in;
  in.nu = config.nu;
  in.beta = config.beta;
  in.lambda1 = grid.lambda1();
  in.grashof = config.forcing.target_grashof;
  in.lambda_m = lambda_m.value_or(grid.lambda1());
  if (const auto* shell = std::get_if<FourierShell>(&config.interp)) {
    in.lambda_K_next = make_cutoff(grid, shell->kappa_K).lambda_next;
  } else {
    in.h = resolution(config.interp, grid);
  }
  return evaluate_conditions(in, constants);
}

double suggest_beta(double nu, double lambda_K_next) { return 0.5 * nu * lambda_K_next; }

void print_report(std::ostream& os, const ConditionReport& report) {
  os << std::setprecision(6);
  for (const auto& e : report.entries) {
    os << (e.satisfied ? "PASS " : "WARN ") << e.name << ": " << e.lhs << ' ' << e.relation << ' '
       << e.rhs << '\n';
  }
  os << "assumed constants: c_beta=" << report.constants.c_beta << " c0=" << report.constants.c0
     << " c_h=" << report.constants.c_h << '\n';
}

}  // namespace nsda
