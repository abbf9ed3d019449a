// Python bindings for the main operations: fields and transforms, the
// operator zoo, Besov norms, the solver, and the experiment harnesses.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "reulab/diagnostics.hpp"
#include "reulab/fft.hpp"
#include "reulab/initial_data.hpp"
#include "reulab/littlewood_paley.hpp"
#include "reulab/rotation.hpp"
#include "reulab/scenario.hpp"
#include "reulab/snapshot_io.hpp"
#include "reulab/solver.hpp"
#include "reulab/spectral_ops.hpp"
#include "reulab/studies.hpp"
#include "reulab/verifiers.hpp"

namespace py = pybind11;
using namespace reulab;

namespace {

Lp lp_from_string(const std::string& p) {
  if (p == "1") return Lp::one;
  if (p == "2") return Lp::two;
  if (p == "inf") return Lp::inf;
  throw std::invalid_argument("p must be '1', '2' or 'inf'");
}

py::array_t<double> physical_array(const SpectralVectorField& u) {
  const int n = u.grid().n();
  auto vals = to_physical(u);
  py::array_t<double> out({3, n, n, n});
  auto buf = out.mutable_unchecked<4>();
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          buf(c, i, j, k) = vals[static_cast<std::size_t>(c)][u.grid().index(i, j, k)];
        }
      }
    }
  }
  return out;
}

SpectralVectorField field_from_physical(const Grid& grid, const py::array_t<double>& array) {
  const int n = grid.n();
  auto buf = array.unchecked<4>();
  if (buf.shape(0) != 3 || buf.shape(1) != n || buf.shape(2) != n || buf.shape(3) != n) {
    throw std::invalid_argument("expected array of shape (3, n, n, n)");
  }
  std::array<std::vector<double>, 3> vals;
  for (int c = 0; c < 3; ++c) {
    vals[static_cast<std::size_t>(c)].resize(grid.size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          vals[static_cast<std::size_t>(c)][grid.index(i, j, k)] = buf(c, i, j, k);
        }
      }
    }
  }
  return to_spectral(grid, vals);
}

const DyadicPartition& partition_for(const Grid& grid) {
  // Tiny cache: smoke tests reuse a couple of grid sizes.
  static std::vector<std::pair<Grid, std::unique_ptr<DyadicPartition>>> cache;
  for (auto& [g, part] : cache) {
    if (g == grid) return *part;
  }
  cache.emplace_back(grid, std::make_unique<DyadicPartition>(DyadicPartition::build(grid)));
  return *cache.back().second;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudo-spectral laboratory for the rotating incompressible Euler equations";

  py::class_<Grid>(m, "Grid")
      .def(py::init<int, double>(), py::arg("n"), py::arg("box_size") = 2.0 * M_PI)
      .def_property_readonly("n", &Grid::n)
      .def_property_readonly("box_size", &Grid::box_size)
      .def("__eq__", [](const Grid& a, const Grid& b) { return a == b; })
      .def("__repr__", [](const Grid& g) {
        return "Grid(n=" + std::to_string(g.n()) + ", box_size=" + std::to_string(g.box_size()) +
               ")";
      });

  py::class_<SpectralVectorField>(m, "VectorField")
      .def_property_readonly("grid", &SpectralVectorField::grid)
      .def("to_physical", &physical_array)
      .def("l2_norm", [](const SpectralVectorField& u) { return l2_norm(u); })
      .def(
          "lp_norm",
          [](const SpectralVectorField& u, const std::string& p) {
            return lp_norm(u, lp_from_string(p));
          },
          py::arg("p"))
      .def("divergence_defect",
           [](const SpectralVectorField& u) { return relative_divergence_defect(u); })
      .def(
          "besov_norm",
          [](const SpectralVectorField& u, double s, const std::string& p, const std::string& q,
             bool homogeneous) {
            return besov_norm(u, partition_for(u.grid()),
                              BesovIndex{s, lp_from_string(p), lp_from_string(q), homogeneous});
          },
          py::arg("s"), py::arg("p") = "2", py::arg("q") = "1", py::arg("homogeneous") = false)
      .def("__add__",
           [](const SpectralVectorField& a, const SpectralVectorField& b) { return a + b; })
      .def("__sub__",
           [](const SpectralVectorField& a, const SpectralVectorField& b) { return a - b; })
      .def("__rmul__", [](const SpectralVectorField& a, double s) { return s * a; });

  m.def("field_from_physical", &field_from_physical, py::arg("grid"), py::arg("values"),
        "Transform (3, n, n, n) collocation values to a spectral field");

  m.def("taylor_green", &taylor_green, py::arg("grid"), py::arg("amplitude") = 1.0);
  m.def("beltrami_mode", &beltrami_mode, py::arg("grid"), py::arg("kvec"),
        py::arg("amplitude") = 1.0, py::arg("sign") = 1);
  m.def("random_solenoidal", &random_solenoidal, py::arg("grid"), py::arg("k0"),
        py::arg("amplitude"), py::arg("seed"));
  m.def(
      "coherent_shell_field",
      [](const Grid& grid, int shell, double amplitude) {
        return coherent_shell_field(grid, partition_for(grid), shell, amplitude);
      },
      py::arg("grid"), py::arg("shell"), py::arg("amplitude") = 1.0);

  m.def("leray_project", &leray_project);
  m.def("wave_split", [](const SpectralVectorField& v) {
    WaveSplit s = wave_split(v);
    return py::make_tuple(std::move(s.plus), std::move(s.minus));
  });
  m.def("coriolis_rotation_term",
        [](const SpectralVectorField& v) { return coriolis_rotation_term(v); });
  m.def("coriolis_propagator", &coriolis_propagator, py::arg("v"), py::arg("omega"),
        py::arg("t"));
  m.def(
      "heat_propagator",
      [](const SpectralVectorField& v, double nu, double t) { return heat_propagator(v, nu, t); },
      py::arg("v"), py::arg("nu"), py::arg("t"));
  m.def("nonlinear_term", [](const SpectralVectorField& u) { return nonlinear_term(u); });

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("omega", &SolverConfig::omega)
      .def_readwrite("delta", &SolverConfig::delta)
      .def_readwrite("n", &SolverConfig::n)
      .def_readwrite("box_size", &SolverConfig::box_size)
      .def_readwrite("dt", &SolverConfig::dt)
      .def_readwrite("t_end", &SolverConfig::t_end)
      .def_readwrite("dealias", &SolverConfig::dealias)
      .def_readwrite("cfl_max", &SolverConfig::cfl_max)
      .def_readwrite("enable_nonlinear", &SolverConfig::enable_nonlinear)
      .def_readwrite("snapshot_stride", &SolverConfig::snapshot_stride)
      .def_readwrite("bkm_increment_ceiling", &SolverConfig::bkm_increment_ceiling)
      .def("validate", &SolverConfig::validate)
      .def("make_grid", &SolverConfig::make_grid);

  m.def("step_ifrk4", &step_ifrk4, py::arg("u"), py::arg("config"));

  py::class_<DiagnosticsSeries>(m, "DiagnosticsSeries")
      .def_property_readonly(
          "times", [](const DiagnosticsSeries& s) { return py::array(py::cast(s.times())); })
      .def_property_readonly(
          "energy", [](const DiagnosticsSeries& s) { return py::array(py::cast(s.energy())); })
      .def_property_readonly(
          "grad_sup",
          [](const DiagnosticsSeries& s) { return py::array(py::cast(s.grad_sup())); })
      .def_property_readonly(
          "bkm", [](const DiagnosticsSeries& s) { return py::array(py::cast(s.bkm_integral())); })
      .def("write_csv", &DiagnosticsSeries::write_csv);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("series", &RunResult::series)
      .def_readonly("aborted", &RunResult::aborted)
      .def_readonly("abort_reason", &RunResult::abort_reason)
      .def_property_readonly("final_state",
                             [](const RunResult& r) { return r.trajectory.states.back(); })
      .def_property_readonly("final_time",
                             [](const RunResult& r) { return r.trajectory.times.back(); });

  m.def("run", &run, py::arg("config"), py::arg("u0"));

  py::class_<PicardResult>(m, "PicardResult")
      .def_readonly("converged", &PicardResult::converged)
      .def_readonly("iterations", &PicardResult::iterations)
      .def_readonly("sup_diffs", &PicardResult::sup_diffs)
      .def_readonly("contraction_factors", &PicardResult::contraction_factors);

  m.def(
      "picard_solve",
      [](const SpectralVectorField& u0, const SolverConfig& cfg, double tol, int max_iter) {
        return picard_solve(u0, cfg, tol, max_iter);
      },
      py::arg("u0"), py::arg("config"), py::arg("tol") = 1e-10, py::arg("max_iter") = 50);

  py::class_<StrichartzReport>(m, "StrichartzReport")
      .def_readonly("omegas", &StrichartzReport::omegas)
      .def_readonly("decay_norms", &StrichartzReport::decay_norms)
      .def_readonly("slope", &StrichartzReport::slope)
      .def_readonly("tail_change", &StrichartzReport::tail_change);

  m.def(
      "strichartz_decay",
      [](const SpectralVectorField& f, const std::vector<double>& omegas, double r, int shell,
         double t_end) {
        return strichartz_decay(f, omegas, r, shell, t_end, partition_for(f.grid()));
      },
      py::arg("f"), py::arg("omegas"), py::arg("r"), py::arg("shell"), py::arg("t_end"));

  py::class_<EmpiricalConstantReport>(m, "EmpiricalConstantReport")
      .def_readonly("lemma_id", &EmpiricalConstantReport::lemma_id)
      .def_readonly("samples", &EmpiricalConstantReport::samples)
      .def_readonly("min_ratio", &EmpiricalConstantReport::min_ratio)
      .def_readonly("max_ratio", &EmpiricalConstantReport::max_ratio)
      .def_readonly("median", &EmpiricalConstantReport::median)
      .def_readonly("seed", &EmpiricalConstantReport::seed);

  m.def("run_lemma_suite", &run_lemma_suite, py::arg("n") = 16, py::arg("box_size") = 2.0 * M_PI,
        py::arg("ensemble") = 20, py::arg("seed") = 1);

  m.def("write_snapshot", &write_snapshot, py::arg("path"), py::arg("field"), py::arg("time"));
  m.def("read_snapshot", [](const std::string& path) {
    Snapshot s = read_snapshot(path);
    return py::make_tuple(std::move(s.field), s.time);
  });
}
