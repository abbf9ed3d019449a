#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "reulab/solver.hpp"

namespace reulab {

enum class ScenarioKind { single_run, delta_study, rotation_sweep, strichartz, verify_lemmas };

std::string kind_name(ScenarioKind kind);

// Initial-data descriptor: generator id plus its parameters and seed.
struct DataSpec {
  std::string generator = "taylor-green";  // taylor-green | beltrami | random | coherent-shell
  double amplitude = 1.0;
  std::uint64_t seed = 1;
  double k0 = 4.0;                 // random: spectrum peak
  std::array<int, 3> kvec{1, 1, 1};  // beltrami: wavevector
  int helicity = 1;                // beltrami: +1 or -1
  int shell = 3;                   // coherent-shell: dyadic shell index
};

struct ScenarioSpec {
  std::string name;
  ScenarioKind kind = ScenarioKind::single_run;
  std::string outputs;
  SolverConfig solver;
  DataSpec data;

  // delta-study
  std::vector<double> deltas;
  // rotation-sweep
  std::vector<double> sweep_omegas;
  double u_threshold = 5.0;
  // strichartz
  std::vector<double> strichartz_omegas;
  double strichartz_r = 4.0;
  int strichartz_shell = 2;
  double strichartz_horizon = 2.0;
  // verify-lemmas
  int ensemble = 100;
};

// Raised on any config defect; the message carries line numbers.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Strict parser for the line-oriented `key = value` format with [section]
// headers and '#' comments. Unknown keys, duplicate keys, type mismatches and
// missing required keys are errors with line numbers.
ScenarioSpec parse_config(const std::string& text);
ScenarioSpec parse_config_file(const std::string& path);

// Normalized echo of a spec with every default applied; parseable by
// parse_config and byte-stable.
std::string render_config(const ScenarioSpec& spec);

}  // namespace reulab
