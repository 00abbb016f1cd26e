#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lct/lct.hpp"

namespace lct::cli {

// Stable exit codes for scripting.
enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kConfigError = 2,
  kSingular = 3,
  kResolution = 4,
};

struct InitialState {
  std::string type = "gaussian";  // gaussian | file
  double sigma0 = 1.0;
  double center = 0.0;
  double momentum = 0.0;
  std::string path;
};

struct Tolerances {
  double det_tol = kDetTol;
  std::optional<double> hj_tol;  // module default when unset
  double compare_l2 = 1e-4;
  double grid_tol = 1e-6;
  double samples_per_period = 8.0;
};

// Everything one command needs. Sources, lowest precedence first: built-in
// defaults, the --config JSON file, command-line flags.
struct RunConfig {
  std::string system = "free";  // free | harmonic | custom
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  std::array<std::string, 4> custom = {"1", "-t/m", "0", "1"};  // a, b, c, d
  std::optional<QuadraticPotential> potential;
  double t = 1.0;
  Grid grid = Grid::centered(4096, 0.01);
  InitialState initial;
  std::string method = "fast";
  std::string representation = "qQ";
  std::string oracle_system;  // compare: defaults to `system`
  long cn_steps = 0;          // 0: smallest count meeting the accuracy guard
  int sweep_samples = 64;
  int kernel_samples = 64;
  std::vector<long> bench_sizes = {256, 512, 1024, 2048, 4096, 8192, 16384};
  Tolerances tolerances;
  std::string out;

  nlohmann::json to_json() const;
  // Keys present in j override those of base.
  static RunConfig from_json(const nlohmann::json& j, RunConfig base);

  PhysicalConstants constants() const { return {hbar, mass}; }
};

// Family for `system` (free, harmonic or custom). Custom coefficients must
// satisfy ad - bc = 1 at 32 times in (0, t] or ConfigError is thrown.
TransformFamily make_family(const RunConfig& config, const std::string& system);

// The potential whose dynamics `system` generates.
QuadraticPotential make_potential(const RunConfig& config, const std::string& system);

// Entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lct::cli
