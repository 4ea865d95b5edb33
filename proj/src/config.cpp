#include "nsda/config.hpp"

#include "nsda/errors.hpp"
#include "nsda/operators.hpp"
#include "nsda/random_fields.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace nsda {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Entry {
  std::string value;
  int line;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::string text(const std::string& key, const std::string& fallback) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    used_.push_back(key);
    return it->second.value;
  }

  double real(const std::string& key, double fallback) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    used_.push_back(key);
    return to_real(it->second);
  }

  std::optional<double> maybe_real(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return real(key, 0.0);
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    used_.push_back(key);
    std::int64_t out = 0;
    const auto& v = it->second.value;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) fail(it->second, key, "expected an integer");
    return out;
  }

  std::vector<double> reals(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return {};
    used_.push_back(key);
    std::vector<double> out;
    std::stringstream ss(it->second.value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_real({trim(item), it->second.line}, key));
    return out;
  }

  void reject_unused() const {
    for (const auto& [key, e] : entries_) {
      if (std::find(used_.begin(), used_.end(), key) == used_.end()) fail(e, key, "unknown key");
    }
  }

  [[noreturn]] static void fail(const Entry& e, const std::string& key, const std::string& what) {
    throw ConfigError("line " + std::to_string(e.line) + ": " + key + ": " + what);
  }

 private:
  double to_real(const Entry& e, const std::string& key = "") const {
    double out = 0.0;
    const auto& v = e.value;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) fail(e, key, "expected a number, got '" + v + "'");
    return out;
  }

  std::map<std::string, Entry> entries_;
  std::vector<std::string> used_;
};

std::map<std::string, Entry> tokenize(std::istream& is) {
  std::map<std::string, Entry> entries;
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line) + ": empty key or value");
    }
    if (!entries.emplace(key, Entry{value, line}).second) {
      throw ConfigError("line " + std::to_string(line) + ": duplicate key " + key);
    }
  }
  return entries;
}

std::uint64_t as_seed(std::int64_t v, const char* key) {
  if (v < 0) throw ConfigError(std::string(key) + ": seeds are nonnegative");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

ExperimentConfig parse_config(std::istream& is, std::optional<std::uint64_t> seed_override) {
  Reader in(tokenize(is));
  ExperimentConfig cfg;
  NudgeConfig& run = cfg.run;

  const double length = in.real("L", 2.0 * 3.14159265358979323846);
  const auto points = in.integer("M_truth", 64);
  if (points > 4096) throw ConfigError("M_truth: too large");
  run.grid = share(make_grid(length, static_cast<int>(points)));

  run.nu = in.real("nu", 1.0);
  run.kappa_N = in.real("kappa_N", 0.0);
  run.dt = in.real("dt", 1e-3);
  run.t_end = in.real("t_end", 1.0);
  run.sample_every = static_cast<int>(in.integer("sample_every", 1));

  const std::string type = in.text("interp.type", "fourier");
  if (type == "fourier") {
    run.interp = FourierShell{in.real("interp.kappa_K", 0.0)};
  } else if (type == "fv" || type == "finite_volume") {
    run.interp = FiniteVolume{static_cast<int>(in.integer("interp.cells", 1))};
  } else {
    throw ConfigError("interp.type: expected fourier or fv, got '" + type + "'");
  }

  const std::uint64_t base = seed_override.value_or(as_seed(in.integer("seed", 0), "seed"));
  const auto derived = [&](const char* key, std::uint64_t offset) {
    const std::int64_t v = in.integer(key, -1);
    if (seed_override || v < 0) return base + offset;
    return static_cast<std::uint64_t>(v);
  };
  run.forcing.seed = derived("forcing.seed", 0);
  cfg.u0_seed = derived("u0.seed", 1);
  run.v0_seed = derived("v0_seed", 2);

  run.forcing.shell_lo = in.real("forcing.shell_lo", 1.0);
  run.forcing.shell_hi = in.real("forcing.shell_hi", 4.0);
  run.forcing.target_grashof = in.real("forcing.G", 0.0);
  run.forcing.exponent = in.real("forcing.exponent", 1.0);

  const std::string policy = in.text("v0_policy", "zero");
  if (policy == "zero") {
    run.v0 = InitialGuess::zero;
  } else if (policy == "seeded") {
    run.v0 = InitialGuess::seeded;
  } else {
    throw ConfigError("v0_policy: expected zero or seeded, got '" + policy + "'");
  }

  cfg.constants.c_beta = in.real("constants.c_beta", 1.0);
  cfg.constants.c0 = in.real("constants.c0", 1.0);
  cfg.constants.c_h = in.real("constants.c_h", 1.0);
  cfg.lambda_m = in.maybe_real("lambda_m");

  const std::string beta = in.text("beta", "auto");
  if (beta == "auto") {
    const auto* shell = std::get_if<FourierShell>(&run.interp);
    if (!shell) throw ConfigError("beta = auto needs a fourier interpolant");
    cfg.beta_auto = true;
    run.beta = suggest_beta(run.nu, make_cutoff(*run.grid, shell->kappa_K).lambda_next);
  } else {
    const auto [p, ec] = std::from_chars(beta.data(), beta.data() + beta.size(), run.beta);
    if (ec != std::errc{} || p != beta.data() + beta.size()) {
      throw ConfigError("beta: expected a number or auto, got '" + beta + "'");
    }
  }

  cfg.spinup = in.real("spinup", 0.0);
  if (cfg.spinup < 0.0) throw ConfigError("spinup must be nonnegative");
  const auto window = in.reals("window");
  if (!window.empty()) {
    if (window.size() != 2) throw ConfigError("window: expected t_a, t_b");
    cfg.window = std::pair{window[0], window[1]};
  }
  cfg.sweep_kappas = in.reals("sweep.kappas");
  cfg.truth_dir = in.text("truth.dir", "");

  in.reject_unused();
  validate(run);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path.string());
  try {
    return parse_config(is, seed_override);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

SpectralVelocity make_truth(const ExperimentConfig& config) {
  const NudgeConfig& run = config.run;
  const SpectralVelocity g = build_forcing(run.forcing, run.grid, run.nu);
  Rng rng(config.u0_seed);
  SpectralVelocity u0 = random_field<double>(run.grid, rng, RandomFieldShape{});
  const double target = sobolev_norm(g, 0.0) / (run.nu * run.grid->lambda1());
  const double norm = sobolev_norm(u0, 0.0);
  if (target > 0.0 && norm > 0.0) u0 *= target / norm;
  if (config.spinup > 0.0) u0 = spin_up(u0, g, run.nu, run.dt, config.spinup);
  return u0;
}

}  // namespace nsda
