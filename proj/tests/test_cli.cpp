#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "reulab/config_parse.hpp"
#include "reulab/csv.hpp"
#include "reulab/initial_data.hpp"
#include "reulab/scenario.hpp"
#include "reulab/snapshot_io.hpp"
#include "reulab/spectral_ops.hpp"

using namespace reulab;
namespace fs = std::filesystem;

namespace {

const char* kMinimalConfig = R"(
[scenario]
name = smoke
kind = single-run

[solver]
n = 16
omega = 0
delta = 0
dt = 1e-3
t_end = 0.05

[data]
generator = taylor-green
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("minimal config parses with defaults applied") {
  ScenarioSpec spec = parse_config(kMinimalConfig);
  CHECK(spec.name == "smoke");
  CHECK(spec.kind == ScenarioKind::single_run);
  CHECK(spec.solver.n == 16);
  CHECK(spec.solver.dt == 1e-3);
  CHECK(spec.solver.dealias);           // default on
  CHECK(spec.solver.cfl_max == 0.5);    // default
  CHECK(spec.outputs == "out/smoke");   // derived default
  CHECK(spec.data.generator == "taylor-green");
}

TEST_CASE("config errors carry line numbers") {
  // Type error names the offending line.
  const char* bad_type = "[scenario]\nname = x\nkind = single-run\n\n[solver]\nomega = fast\n";
  CHECK_THROWS_WITH_AS(parse_config(bad_type), doctest::Contains("line 6"), ConfigError);

  // Duplicate keys name both lines.
  const char* dup = "[scenario]\nname = x\nkind = single-run\nname = y\n";
  CHECK_THROWS_WITH_AS(parse_config(dup), doctest::Contains("lines 2 and 4"), ConfigError);

  // Unknown keys are fatal (strict mode).
  const char* unknown = "[scenario]\nname = x\nkind = single-run\n\n[solver]\nomge = 3\n";
  CHECK_THROWS_WITH_AS(parse_config(unknown), doctest::Contains("unknown key"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(unknown), doctest::Contains("line 6"), ConfigError);

  // Missing required keys.
  CHECK_THROWS_WITH_AS(parse_config("[scenario]\nkind = single-run\n"),
                       doctest::Contains("scenario.name"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[scenario]\nname = x\nkind = delta-study\n"),
                       doctest::Contains("delta-study.deltas"), ConfigError);

  // Unsafe names and bad kinds.
  CHECK_THROWS_AS(parse_config("[scenario]\nname = a/b\nkind = single-run\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scenario]\nname = x\nkind = warp\n"), ConfigError);

  // Keys outside a section, bad lines.
  CHECK_THROWS_WITH_AS(parse_config("name = x\n"), doctest::Contains("outside any"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scenario]\nnonsense line\n"), ConfigError);
}

TEST_CASE("render_config echoes defaults and round-trips") {
  ScenarioSpec spec = parse_config(kMinimalConfig);
  const std::string rendered = render_config(spec);
  CHECK(rendered.find("cfl_max = 0.5") != std::string::npos);
  CHECK(rendered.find("scheme = ifrk4") != std::string::npos);
  ScenarioSpec back = parse_config(rendered);
  CHECK(back.name == spec.name);
  CHECK(back.solver.dt == spec.solver.dt);
  CHECK(back.solver.cfl_max == spec.solver.cfl_max);
  CHECK(render_config(back) == rendered);
}

TEST_CASE("snapshot format: header layout and round trip") {
  TempDir tmp("reulab_snap_test");
  fs::create_directories(tmp.path);
  const fs::path file = tmp.path / "u.bin";

  Grid g(16, 2.0 * M_PI);
  SpectralVectorField u = random_solenoidal(g, 3.0, 1.0, 77);
  write_snapshot(file.string(), u, 0.625);

  // magic | u32 n | f64 L | f64 time | u8 ncomp | body
  std::ifstream in(file, std::ios::binary);
  char magic[8];
  in.read(magic, 8);
  CHECK(std::string(magic, 8) == "REULAB01");
  std::uint32_t n = 0;
  in.read(reinterpret_cast<char*>(&n), 4);
  CHECK(n == 16);
  double box = 0.0, time = 0.0;
  in.read(reinterpret_cast<char*>(&box), 8);
  in.read(reinterpret_cast<char*>(&time), 8);
  CHECK(box == doctest::Approx(2.0 * M_PI));
  CHECK(time == 0.625);
  std::uint8_t ncomp = 0;
  in.read(reinterpret_cast<char*>(&ncomp), 1);
  CHECK(ncomp == 3);
  CHECK(fs::file_size(file) == 8 + 4 + 8 + 8 + 1 + 3 * g.size() * 16);

  Snapshot snap = read_snapshot(file.string());
  CHECK(snap.time == 0.625);
  CHECK(l2_norm(snap.field - u) == 0.0);

  // Corrupt magic is rejected.
  std::ofstream out(file, std::ios::binary | std::ios::in);
  out.seekp(0);
  out.write("XXXXXXXX", 8);
  out.close();
  CHECK_THROWS_AS(read_snapshot(file.string()), std::runtime_error);
}

TEST_CASE("execute single-run: artifacts, determinism, force semantics") {
  TempDir tmp("reulab_exec_test");
  ScenarioSpec spec = parse_config(kMinimalConfig);
  spec.outputs = (tmp.path / "run1").string();

  ExecuteResult r1 = execute(spec);
  CHECK(r1.status == 0);
  CHECK(fs::exists(tmp.path / "run1" / "config.copy"));
  CHECK(fs::exists(tmp.path / "run1" / "diagnostics.csv"));
  CHECK(fs::exists(tmp.path / "run1" / "report.txt"));
  CHECK(fs::exists(tmp.path / "run1" / "snapshots" / "final.bin"));

  // Long-format Besov export, one row per (time, tracked index).
  csv::Table besov = csv::read((tmp.path / "run1" / "besov.csv").string());
  CHECK(besov.header ==
        std::vector<std::string>{"time", "s", "p", "q", "homogeneous", "value"});
  csv::Table diag = csv::read((tmp.path / "run1" / "diagnostics.csv").string());
  CHECK(besov.rows.size() == 4 * diag.rows.size());

  // Rerunning without --force is refused; with force it runs and the CSV is
  // byte-identical (fixed seed determinism).
  const std::string csv_before = slurp(tmp.path / "run1" / "diagnostics.csv");
  ExecuteResult refused = execute(spec);
  CHECK(refused.status == 2);
  ExecuteOptions force;
  force.force = true;
  ExecuteResult r2 = execute(spec, force);
  CHECK(r2.status == 0);
  CHECK(slurp(tmp.path / "run1" / "diagnostics.csv") == csv_before);

  // The persisted config alone reproduces the run.
  ScenarioSpec replica = parse_config_file((tmp.path / "run1" / "config.copy").string());
  replica.outputs = (tmp.path / "run2").string();
  ExecuteResult r3 = execute(replica);
  CHECK(r3.status == 0);
  CHECK(slurp(tmp.path / "run2" / "diagnostics.csv") == csv_before);

  // report: fresh run passes its embedded checks.
  ReportResult rep = report((tmp.path / "run1").string());
  CHECK(rep.ok);
  CHECK(rep.text.find("PASS") != std::string::npos);
}

TEST_CASE("report rejects corrupt and empty diagnostics") {
  TempDir tmp("reulab_report_test");
  fs::create_directories(tmp.path / "run");

  CHECK_THROWS_AS(report((tmp.path / "run").string()), std::runtime_error);  // missing file

  {
    std::ofstream csv(tmp.path / "run" / "diagnostics.csv");
    csv << "t,energy,grad_sup,U,besov_5_2,besov_7_2,hom_besov_5_2,besov_inf_1\n";
  }
  CHECK_THROWS_WITH_AS(report((tmp.path / "run").string()), doctest::Contains("no samples"),
                       std::runtime_error);

  {
    std::ofstream csv(tmp.path / "run" / "diagnostics.csv");
    csv << "t,energy,grad_sup,U,besov_5_2,besov_7_2,hom_besov_5_2,besov_inf_1\n";
    csv << "0,1,1,0,1,1,1,1\n";
    csv << "0.1,1,oops,0.1,1,1,1,1\n";  // tampered cell
  }
  CHECK_THROWS_WITH_AS(report((tmp.path / "run").string()), doctest::Contains("row"),
                       std::runtime_error);
}

TEST_CASE("execute verify-lemmas writes one row per lemma with finite stats") {
  TempDir tmp("reulab_verify_test");
  ScenarioSpec spec;
  spec.name = "verify";
  spec.kind = ScenarioKind::verify_lemmas;
  spec.outputs = (tmp.path / "v").string();
  spec.solver.n = 16;
  spec.ensemble = 5;

  ExecuteResult r = execute(spec);
  CHECK(r.status == 0);
  csv::Table table = csv::read((tmp.path / "v" / "lemmas.csv").string());
  CHECK(table.rows.size() >= 6);  // bernstein x2, product, commutator x2, heat, identities
  const std::size_t cmax = table.column("max-ratio");
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double v = csv::parse_double(table, i, cmax);
    CHECK(std::isfinite(v));
  }
  CHECK(r.summary.find("bernstein") != std::string::npos);
  CHECK(r.summary.find("projection-identities") != std::string::npos);
}

TEST_CASE("execute rotation-sweep writes per-omega diagnostics plus summary") {
  TempDir tmp("reulab_sweep_test");
  ScenarioSpec spec;
  spec.name = "sweep";
  spec.kind = ScenarioKind::rotation_sweep;
  spec.outputs = (tmp.path / "s").string();
  spec.solver.n = 16;
  spec.solver.dt = 5e-3;
  spec.solver.t_end = 0.05;
  spec.sweep_omegas = {0.0, 50.0, 100.0};
  spec.u_threshold = 1e9;

  ExecuteResult r = execute(spec, ExecuteOptions{.force = false, .seed = {}, .threads = 2});
  CHECK(r.status == 0);
  CHECK(fs::exists(tmp.path / "s" / "sweep.csv"));
  for (int i = 0; i < 3; ++i) {
    CHECK(fs::exists(tmp.path / "s" / ("omega_" + std::to_string(i)) / "diagnostics.csv"));
  }
  csv::Table table = csv::read((tmp.path / "s" / "sweep.csv").string());
  CHECK(table.rows.size() == 3);
}
