#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "reulab/config_parse.hpp"
#include "reulab/verifiers.hpp"

namespace reulab {

struct ExecuteOptions {
  bool force = false;                        // allow reuse of an existing run directory
  std::optional<std::uint64_t> seed = {};    // overrides data.seed
  int threads = 1;
};

struct ExecuteResult {
  int status = 0;  // 0 ok, 2 validation, 3 runtime abort
  std::string output_dir;
  std::string summary;
};

// Runs the scenario pipeline: writes config.copy, CSV artifacts, snapshots/
// and report.txt under spec.outputs. Deterministic under a fixed seed.
ExecuteResult execute(const ScenarioSpec& spec, const ExecuteOptions& options = {});

// Builds the initial condition described by the data spec on the solver grid.
SpectralVectorField make_initial_data(const SolverConfig& solver, const DataSpec& data);

// Built-in lemma verifier suite at the given ensemble size.
std::vector<EmpiricalConstantReport> run_lemma_suite(int n, double box_size, int ensemble,
                                                     std::uint64_t seed);

struct ReportResult {
  bool ok = false;
  std::string text;
};

// Re-reads a finished run directory and prints the headline table; ok is true
// iff the embedded pass/fail checks hold.
ReportResult report(const std::string& run_dir);

}  // namespace reulab
