#pragma once

#include "nsda/nudged_solver.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nsda {

// Stand-ins for the unknown absolute constants of the parameter conditions.
struct AssumedConstants {
  double c_beta = 1.0;  // β >= c M1^2/ν [1 + log(M1/(ν λ1^{1/2}))]
  double c0 = 1.0;      // P1 constant in h <= (1/c0)(ν/β)^{1/2}
  double c_h = 1.0;     // h <= c min{(ν/β)^{1/2}, ν λ_m^{1/2}/β}
};

struct ConditionInputs {
  double nu = 1.0;
  double beta = 0.0;
  double lambda1 = 1.0;
  double grashof = 0.0;
  double lambda_m = 1.0;                    // auxiliary eigenvalue, user supplied
  std::optional<double> lambda_K_next;      // Fourier interpolant: λ_{K+1}
  std::optional<double> h;                  // general interpolant: resolution
};

struct ConditionEntry {
  std::string name;
  double lhs;
  std::string relation;  // ">=" or "<="
  double rhs;
  bool satisfied;
};

struct ConditionReport {
  std::vector<ConditionEntry> entries;
  AssumedConstants constants;

  bool all_satisfied() const;
};

// Evaluates the relevant conditions: β >= νλ_m and the attractor-based β
// bound (M1 = 2νλ1^{1/2}G) always; λ_{K+1} >= 2β/ν when lambda_K_next is
// set; the two h bounds when h is set. Warn-only: nothing here throws.
ConditionReport evaluate_conditions(const ConditionInputs& in, const AssumedConstants& constants = {});

// Builds the inputs from a run configuration (λ_{K+1} for a Fourier shell,
// h for finite volumes) and evaluates them.
ConditionReport check_conditions(const NudgeConfig& config, const AssumedConstants& constants = {},
                                 std::optional<double> lambda_m = std::nullopt);

// Largest β allowed by λ_{K+1} >= 2β/ν.
double suggest_beta(double nu, double lambda_K_next);

void print_report(std::ostream& os, const ConditionReport& report);

}  // namespace nsda
