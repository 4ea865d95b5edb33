#pragma once

#include <stdexcept>
#include <string>

namespace nsda {

// Invalid parameters, mismatched grids, malformed config or files.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Blow-up or other failure of the numerics. `time` is the simulation time at
// which it was detected (NaN when not applicable).
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}

  double time() const noexcept { return time_; }

private:
  double time_;
};

}  // namespace nsda
