#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "reulab/diagnostics_series.hpp"
#include "reulab/field.hpp"

namespace reulab {

enum class Scheme { ifrk4, picard };

struct SolverConfig {
  double omega = 0.0;        // Coriolis parameter (may be 0 or negative)
  double delta = 0.0;        // regularization viscosity, in [0,1)
  int n = 32;                // grid points per axis
  double box_size = 2.0 * M_PI;
  double dt = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::ifrk4;
  bool dealias = true;
  double cfl_max = 0.5;
  bool enable_nonlinear = true;    // off: pure linear (propagator) flow
  int snapshot_stride = 0;         // steps between stored states; 0 keeps endpoints only
  double bkm_increment_ceiling = 10.0;  // per-step Delta U abort threshold

  void validate() const;  // throws std::invalid_argument
  Grid make_grid() const { return Grid(n, box_size); }

  // T + sqrt(T)/sqrt(delta): the weight attached to the smoothing-norm part
  // of the fixed-point space; infinite for delta = 0.
  double duhamel_weight() const;
};

// Exact flow of the linear part du/dt - delta Lap u + Omega P e3 x u = 0.
SpectralVectorField linear_flow(const SpectralVectorField& v, const SolverConfig& cfg, double t);

// Per-step sizes covering [0, t_end]: full dt steps plus a shortened final
// step when t_end is not a multiple of dt.
std::vector<double> step_schedule(double t_end, double dt);

// -P[(u . grad) u], computed pseudo-spectrally (physical products, dealias,
// Leray). Rejects inputs that are not divergence-free.
SpectralVectorField nonlinear_term(const SpectralVectorField& u, bool apply_dealias = true);

struct FieldSups {
  double u_max = 0.0;     // sup of |u| (Euclidean) on the grid
  double grad_max = 0.0;  // max over grid and all nine components of |d_k u_j|
};
FieldSups measure_sups(const SpectralVectorField& u);

struct StepResult {
  SpectralVectorField u_next;
  FieldSups sups_at_start;  // measured from the first stage, i.e. at time t_n
};

// One integrating-factor RK4 step; the linear flow is applied exactly and
// only the nonlinear term is integrated numerically. Throws on CFL violation
// with the measured ratio.
StepResult step_ifrk4_detailed(const SpectralVectorField& u, const SolverConfig& cfg);
SpectralVectorField step_ifrk4(const SpectralVectorField& u, const SolverConfig& cfg);

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralVectorField> states;
  SolverConfig config;
};

struct RunResult {
  Trajectory trajectory;
  DiagnosticsSeries series;
  bool aborted = false;
  std::string abort_reason;
  std::vector<std::string> log;
};

// Steps to t_end or until the BKM guard trips; diagnostics sampled every
// step, snapshots at the configured stride. A NaN/Inf state aborts with the
// last good state retained.
RunResult run(const SolverConfig& cfg, const SpectralVectorField& u0);

enum class PicardGuess { heat_flow, frozen_data };

struct PicardResult {
  Trajectory trajectory;
  std::vector<double> sup_diffs;            // sup_t L2 change per iteration
  std::vector<double> contraction_factors;  // successive-difference ratios
  bool converged = false;
  int iterations = 0;
  std::string message;
};

// Literal Picard iteration on the mild (Duhamel) formulation of the
// delta-regularized system, with composite-trapezoid quadrature on the step
// grid. Requires delta > 0.
PicardResult picard_solve(const SpectralVectorField& u0, const SolverConfig& cfg, double tol,
                          int max_iter, PicardGuess guess = PicardGuess::heat_flow);

}  // namespace reulab
