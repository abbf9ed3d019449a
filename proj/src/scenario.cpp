#include "reulab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "reulab/csv.hpp"
#include "reulab/diagnostics.hpp"
#include "reulab/initial_data.hpp"
#include "reulab/rotation.hpp"
#include "reulab/snapshot_io.hpp"
#include "reulab/spectral_ops.hpp"
#include "reulab/studies.hpp"

namespace fs = std::filesystem;

namespace reulab {

SpectralVectorField make_initial_data(const SolverConfig& solver, const DataSpec& data) {
  const Grid grid = solver.make_grid();
  if (data.generator == "taylor-green") {
    return taylor_green(grid, data.amplitude);
  }
  if (data.generator == "beltrami") {
    return beltrami_mode(grid, data.kvec, data.amplitude, data.helicity);
  }
  if (data.generator == "random") {
    return random_solenoidal(grid, data.k0, data.amplitude, data.seed);
  }
  if (data.generator == "coherent-shell") {
    const DyadicPartition part = DyadicPartition::build(grid);
    return coherent_shell_field(grid, part, data.shell, data.amplitude);
  }
  throw std::invalid_argument("make_initial_data: unknown generator '" + data.generator + "'");
}

std::vector<EmpiricalConstantReport> run_lemma_suite(int n, double box_size, int ensemble,
                                                    std::uint64_t seed) {
  const Grid grid(n, box_size);
  const DyadicPartition part = DyadicPartition::build(grid);

  std::vector<EmpiricalConstantReport> reports;
  reports.push_back(verify_bernstein(part, ensemble, 1, Lp::two, seed));
  reports.push_back(verify_bernstein(part, ensemble, 2, Lp::two, seed + 1));
  reports.push_back(verify_product_estimate(part, ensemble, 2.5, ProductSplit{}, seed + 2));
  reports.push_back(
      verify_commutator(part, ensemble, 2.5, Lp::two, Lp::one, seed + 3,
                        CommutatorVariant::transport));
  reports.push_back(
      verify_commutator(part, ensemble, 2.5, Lp::two, Lp::one, seed + 4,
                        CommutatorVariant::low_high));
  reports.push_back(
      verify_heat_smoothing(part, 1.0, ensemble, 1.5, 2.5, {0.01, 0.1, 1.0}, seed + 5));

  // Helical projection identities (residuals relative to the field size).
  {
    std::vector<double> residuals;
    for (int i = 0; i < std::max(1, ensemble); ++i) {
      SpectralVectorField v = random_solenoidal_band(grid, 1, n / 3, seed + 100 + i);
      const double scale = l2_norm(v);
      const WaveSplit split = wave_split(v);
      double worst = l2_norm(split.plus + split.minus - leray_project(v));
      worst = std::max(worst, l2_norm(wave_split(split.plus).minus));
      worst = std::max(worst, l2_norm(wave_split(split.minus).plus));
      worst = std::max(
          worst, l2_norm(coriolis_rotation_term(v) - coriolis_rotation_term_via_split(v)));
      residuals.push_back(worst / scale);
    }
    std::vector<double> sorted = residuals;
    std::sort(sorted.begin(), sorted.end());
    EmpiricalConstantReport rep;
    rep.lemma_id = "projection-identities";
    rep.samples = static_cast<int>(residuals.size());
    rep.min_ratio = sorted.front();
    rep.max_ratio = sorted.back();
    rep.median = sorted[sorted.size() / 2];
    rep.seed = seed + 100;
    reports.push_back(rep);
  }
  return reports;
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string lemma_table(const std::vector<EmpiricalConstantReport>& reports) {
  std::ostringstream os;
  os << "lemma verifier constants (ratio lhs/rhs over the ensemble):\n";
  for (const auto& r : reports) {
    os << "  " << r.lemma_id << ": samples=" << r.samples
       << " min=" << csv::format_double(r.min_ratio) << " max=" << csv::format_double(r.max_ratio)
       << " median=" << csv::format_double(r.median) << " seed=" << r.seed << "\n";
  }
  return os.str();
}

int execute_single_run(const ScenarioSpec& spec, const fs::path& dir, const ExecuteOptions& opts,
                       std::ostringstream& summary) {
  SpectralVectorField u0 = make_initial_data(spec.solver, spec.data);

  if (spec.solver.scheme == Scheme::picard) {
    PicardResult pr = picard_solve(u0, spec.solver, 1e-10, 60);
    csv::Writer w((dir / "picard.csv").string());
    w.write_header({"iteration", "sup_diff", "contraction_factor"});
    for (std::size_t i = 0; i < pr.sup_diffs.size(); ++i) {
      w.write_row({std::to_string(i + 1), csv::format_double(pr.sup_diffs[i]),
                   i > 0 ? csv::format_double(pr.contraction_factors[i - 1]) : ""});
    }
    summary << "picard iterations: " << pr.iterations << (pr.converged ? " (converged)" : " (NOT converged)")
            << "\n";
    if (!pr.converged) summary << pr.message << "\n";
    // Diagnostics along the fixed point trajectory.
    const DyadicPartition part = DyadicPartition::build(u0.grid());
    DiagnosticsSeries series;
    for (std::size_t i = 0; i < pr.trajectory.times.size(); ++i) {
      bkm_update(series, pr.trajectory.times[i], pr.trajectory.states[i], part);
    }
    series.write_csv((dir / "diagnostics.csv").string());
    write_snapshot((dir / "snapshots" / "final.bin").string(), pr.trajectory.states.back(),
                   pr.trajectory.times.back());
    summary << "final energy: " << csv::format_double(l2_norm(pr.trajectory.states.back()))
            << "\n";
    return pr.converged ? 0 : 3;
  }

  RunResult rr = run(spec.solver, u0);
  rr.series.write_csv((dir / "diagnostics.csv").string());
  rr.series.write_besov_csv((dir / "besov.csv").string());
  for (std::size_t i = 0; i < rr.trajectory.times.size(); ++i) {
    std::ostringstream name;
    name << "snapshot_" << i << ".bin";
    write_snapshot((dir / "snapshots" / name.str()).string(), rr.trajectory.states[i],
                   rr.trajectory.times[i]);
  }
  write_snapshot((dir / "snapshots" / "final.bin").string(), rr.trajectory.states.back(),
                 rr.trajectory.times.back());

  const double e0 = rr.series.energy().front();
  const double eT = rr.series.final_energy();
  const double drift = e0 > 0.0 ? std::abs(eT - e0) / e0 : 0.0;
  const double div_defect = relative_divergence_defect(rr.trajectory.states.back());
  summary << "final time: " << csv::format_double(rr.series.times().back()) << "\n";
  summary << "energy drift (relative): " << csv::format_double(drift) << "\n";
  summary << "divergence defect (relative): " << csv::format_double(div_defect) << "\n";
  summary << "U(T): " << csv::format_double(rr.series.final_bkm()) << "\n";
  const GronwallFit fit = fit_gronwall(rr.series, rr.series.besov_series(0).front());
  summary << "gronwall fit: c3=" << csv::format_double(fit.c3)
          << " c4=" << csv::format_double(fit.c4) << (fit.satisfied ? " (satisfied)" : " (violated)")
          << "\n";
  for (const std::string& line : rr.log) summary << "log: " << line << "\n";
  if (rr.aborted) {
    summary << "ABORTED: " << rr.abort_reason << "\n";
    return 3;
  }
  (void)opts;
  return 0;
}

int execute_delta_study(const ScenarioSpec& spec, const fs::path& dir, const ExecuteOptions& opts,
                        std::ostringstream& summary) {
  SpectralVectorField u0 = make_initial_data(spec.solver, spec.data);
  DeltaStudyResult res = delta_convergence_study(u0, spec.deltas, spec.solver, opts.threads);
  csv::Writer w((dir / "delta_gaps.csv").string());
  w.write_header({"delta", "sup_gap"});
  for (const DeltaGapRow& row : res.rows) w.write_row_doubles({row.delta, row.sup_gap});
  summary << "delta-gap slope (log-log): " << csv::format_double(res.slope) << "\n";
  for (const DeltaGapRow& row : res.rows) {
    summary << "  delta=" << csv::format_double(row.delta)
            << " sup_gap=" << csv::format_double(row.sup_gap) << "\n";
  }
  return 0;
}

int execute_rotation_sweep(const ScenarioSpec& spec, const fs::path& dir,
                           const ExecuteOptions& opts, std::ostringstream& summary) {
  SpectralVectorField u0 = make_initial_data(spec.solver, spec.data);
  std::vector<SweepRow> rows =
      rotation_sweep(u0, spec.sweep_omegas, spec.solver, spec.u_threshold, opts.threads);

  csv::Writer w((dir / "sweep.csv").string());
  w.write_header({"omega", "t_hit", "hit", "u_end", "aborted"});
  bool any_abort = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& row = rows[i];
    std::ostringstream sub;
    sub << "omega_" << i;
    fs::create_directories(dir / sub.str());
    if (!row.series.empty()) row.series.write_csv((dir / sub.str() / "diagnostics.csv").string());
    w.write_row({csv::format_double(row.omega), csv::format_double(row.t_hit),
                 row.hit ? "1" : "0", csv::format_double(row.u_end), row.aborted ? "1" : "0"});
    summary << "  omega=" << csv::format_double(row.omega)
            << " U(T)=" << csv::format_double(row.u_end)
            << (row.hit ? " threshold hit at t=" + csv::format_double(row.t_hit) : "")
            << (row.aborted ? " [aborted: " + row.note + "]" : "") << "\n";
    any_abort = any_abort || row.aborted;
  }
  return any_abort ? 3 : 0;
}

int execute_strichartz(const ScenarioSpec& spec, const fs::path& dir, const ExecuteOptions&,
                       std::ostringstream& summary) {
  const Grid grid = spec.solver.make_grid();
  const DyadicPartition part = DyadicPartition::build(grid);
  SpectralVectorField f = make_initial_data(spec.solver, spec.data);
  StrichartzReport rep = strichartz_decay(f, spec.strichartz_omegas, spec.strichartz_r,
                                          spec.strichartz_shell, spec.strichartz_horizon, part);
  write_strichartz_csv((dir / "strichartz.csv").string(), rep);
  summary << "strichartz fitted slope: " << csv::format_double(rep.slope)
          << " (prediction -1/r = " << csv::format_double(-1.0 / rep.r) << ")\n";
  summary << "tail sensitivity: " << csv::format_double(rep.tail_change) << "\n";
  return 0;
}

int execute_verify(const ScenarioSpec& spec, const fs::path& dir, const ExecuteOptions& opts,
                   std::ostringstream& summary) {
  const std::uint64_t seed = opts.seed.value_or(spec.data.seed);
  const auto reports = run_lemma_suite(spec.solver.n, spec.solver.box_size, spec.ensemble, seed);
  write_reports_csv((dir / "lemmas.csv").string(), reports);
  summary << lemma_table(reports);
  return 0;
}

}  // namespace

ExecuteResult execute(const ScenarioSpec& spec, const ExecuteOptions& options) {
  ExecuteResult result;
  ScenarioSpec effective = spec;
  if (options.seed) effective.data.seed = *options.seed;

  const fs::path dir(effective.outputs);
  result.output_dir = dir.string();
  if (fs::exists(dir / "config.copy") && !options.force) {
    result.status = 2;
    result.summary = "refusing to overwrite existing run directory " + dir.string() +
                     " (use --force)";
    return result;
  }
  fs::create_directories(dir);
  fs::create_directories(dir / "snapshots");
  write_text((dir / "config.copy").string(), render_config(effective));

  std::ostringstream summary;
  summary << "scenario: " << effective.name << " (" << kind_name(effective.kind) << ")\n";
  int status = 0;
  try {
    switch (effective.kind) {
      case ScenarioKind::single_run:
        status = execute_single_run(effective, dir, options, summary);
        break;
      case ScenarioKind::delta_study:
        status = execute_delta_study(effective, dir, options, summary);
        break;
      case ScenarioKind::rotation_sweep:
        status = execute_rotation_sweep(effective, dir, options, summary);
        break;
      case ScenarioKind::strichartz:
        status = execute_strichartz(effective, dir, options, summary);
        break;
      case ScenarioKind::verify_lemmas:
        status = execute_verify(effective, dir, options, summary);
        break;
    }
  } catch (const std::exception& e) {
    summary << "ABORTED: " << e.what() << "\n";
    status = 3;
  }
  result.status = status;
  result.summary = summary.str();
  write_text((dir / "report.txt").string(), result.summary);
  return result;
}

ReportResult report(const std::string& run_dir) {
  const fs::path dir(run_dir);
  ReportResult out;
  std::ostringstream os;

  const fs::path cfg_path = dir / "config.copy";
  std::optional<ScenarioSpec> spec;
  if (fs::exists(cfg_path)) spec = parse_config_file(cfg_path.string());

  const fs::path diag_path = dir / "diagnostics.csv";
  if (!fs::exists(diag_path)) {
    throw std::runtime_error("report: " + diag_path.string() + " not found");
  }
  DiagnosticsSeries series = DiagnosticsSeries::read_csv(diag_path.string());
  if (series.empty()) throw std::runtime_error("report: no samples in diagnostics.csv");

  const double e0 = series.energy().front();
  const double eT = series.final_energy();
  const double drift = e0 > 0.0 ? std::abs(eT - e0) / e0 : 0.0;
  os << "samples: " << series.size() << "\n";
  os << "t in [" << csv::format_double(series.times().front()) << ", "
     << csv::format_double(series.times().back()) << "]\n";
  os << "energy: " << csv::format_double(e0) << " -> " << csv::format_double(eT) << "\n";
  os << "U(T): " << csv::format_double(series.final_bkm()) << "\n";

  bool ok = true;
  const bool inviscid = !spec || spec->solver.delta == 0.0;
  if (inviscid) {
    const bool pass = drift <= 1e-8;
    os << "energy drift <= 1e-8: " << (pass ? "PASS" : "FAIL") << " ("
       << csv::format_double(drift) << ")\n";
    ok = ok && pass;
  } else {
    bool monotone = true;
    for (std::size_t i = 1; i < series.energy().size(); ++i) {
      if (series.energy()[i] > series.energy()[i - 1] * (1.0 + 1e-12)) monotone = false;
    }
    os << "energy nonincreasing (delta > 0): " << (monotone ? "PASS" : "FAIL") << "\n";
    ok = ok && monotone;
  }

  const fs::path snap_path = dir / "snapshots" / "final.bin";
  if (fs::exists(snap_path)) {
    const Snapshot snap = read_snapshot(snap_path.string());
    const double defect = relative_divergence_defect(snap.field);
    const bool pass = defect <= 1e-8;
    os << "divergence defect <= 1e-8: " << (pass ? "PASS" : "FAIL") << " ("
       << csv::format_double(defect) << ")\n";
    ok = ok && pass;
  }

  out.ok = ok;
  out.text = os.str();
  return out;
}

}  // namespace reulab
