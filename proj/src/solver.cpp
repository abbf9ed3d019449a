#include "reulab/solver.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "reulab/fft.hpp"
#include "reulab/rotation.hpp"
#include "reulab/spectral_ops.hpp"

namespace reulab {

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be positive");
  if (delta < 0.0 || delta >= 1.0) {
    throw std::invalid_argument("SolverConfig: delta must lie in [0,1)");
  }
  if (!(cfl_max > 0.0)) throw std::invalid_argument("SolverConfig: cfl_max must be positive");
  if (snapshot_stride < 0) throw std::invalid_argument("SolverConfig: snapshot_stride < 0");
  Grid probe(n, box_size);  // validates n and box_size
  (void)probe;
}

double SolverConfig::duhamel_weight() const {
  if (delta <= 0.0) return std::numeric_limits<double>::infinity();
  return t_end + std::sqrt(t_end / delta);
}

SpectralVectorField linear_flow(const SpectralVectorField& v, const SolverConfig& cfg, double t) {
  SpectralVectorField out = coriolis_propagator(v, cfg.omega, t);
  if (cfg.delta > 0.0) out = heat_propagator(out, cfg.delta, t);
  return out;
}

std::vector<double> step_schedule(double t_end, double dt) {
  std::vector<double> steps;
  const double ratio = t_end / dt;
  const double whole = std::floor(ratio + 1e-9);
  steps.assign(static_cast<std::size_t>(whole), dt);
  const double remainder = t_end - whole * dt;
  if (remainder > 1e-9 * dt) steps.push_back(remainder);
  return steps;
}

namespace {

struct NonlinearEval {
  SpectralVectorField term;
  FieldSups sups;
};

// Advective-form pseudo-spectral nonlinear term: transform u and all nine
// d_k u_j to the grid, form w_j = u_k d_k u_j, transform back, dealias,
// Leray-project, negate. The grid sups fall out for free.
NonlinearEval nonlinear_eval(const SpectralVectorField& u, bool apply_dealias) {
  const Grid& g = u.grid();
  const std::size_t sz = g.size();

  std::array<std::vector<double>, 3> uphys = to_physical(u);
  std::array<std::array<std::vector<double>, 3>, 3> du;  // du[j][k] = d_k u_j
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) du[j][k] = to_physical(partial(u[j], k));
  }

  FieldSups sups;
  for (std::size_t m = 0; m < sz; ++m) {
    const double mag2 = uphys[0][m] * uphys[0][m] + uphys[1][m] * uphys[1][m] +
                        uphys[2][m] * uphys[2][m];
    sups.u_max = std::max(sups.u_max, mag2);
  }
  sups.u_max = std::sqrt(sups.u_max);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      for (std::size_t m = 0; m < sz; ++m) {
        sups.grad_max = std::max(sups.grad_max, std::abs(du[j][k][m]));
      }
    }
  }

  std::array<std::vector<double>, 3> adv;
  for (int j = 0; j < 3; ++j) {
    adv[j].assign(sz, 0.0);
    for (std::size_t m = 0; m < sz; ++m) {
      adv[j][m] =
          uphys[0][m] * du[j][0][m] + uphys[1][m] * du[j][1][m] + uphys[2][m] * du[j][2][m];
    }
  }

  SpectralVectorField w = to_spectral(g, adv);
  if (apply_dealias) w = dealias(w);
  w = leray_project(w);
  w *= -1.0;
  return {std::move(w), sups};
}

void check_divergence_free(const SpectralVectorField& u, const char* who) {
  const double defect = relative_divergence_defect(u);
  if (defect > 1e-8) {
    throw std::invalid_argument(std::string(who) + ": input not divergence-free (defect " +
                                std::to_string(defect) + ")");
  }
}

bool has_nonfinite(const SpectralVectorField& u) {
  for (int c = 0; c < 3; ++c) {
    for (const Complex& x : u[c].coeffs()) {
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return true;
    }
  }
  return false;
}

}  // namespace

SpectralVectorField nonlinear_term(const SpectralVectorField& u, bool apply_dealias) {
  check_divergence_free(u, "nonlinear_term");
  return nonlinear_eval(u, apply_dealias).term;
}

FieldSups measure_sups(const SpectralVectorField& u) {
  // Same measurement the stepper makes at stage one.
  return nonlinear_eval(u, true).sups;
}

StepResult step_ifrk4_detailed(const SpectralVectorField& u, const SolverConfig& cfg) {
  const double dt = cfg.dt;
  if (!cfg.enable_nonlinear) {
    return {linear_flow(u, cfg, dt), measure_sups(u)};
  }

  NonlinearEval stage1 = nonlinear_eval(u, cfg.dealias);
  const double cfl = stage1.sups.u_max * dt / u.grid().dx();
  if (cfl > cfg.cfl_max) {
    throw std::runtime_error("step_ifrk4: CFL violation, measured ratio " + std::to_string(cfl) +
                             " > cfl_max " + std::to_string(cfg.cfl_max));
  }

  const auto E_half = [&](const SpectralVectorField& v) { return linear_flow(v, cfg, dt / 2); };
  const auto E_full = [&](const SpectralVectorField& v) { return linear_flow(v, cfg, dt); };

  const SpectralVectorField& k1 = stage1.term;
  SpectralVectorField u_half = E_half(u);
  SpectralVectorField u_full = E_full(u);

  SpectralVectorField k2 = nonlinear_eval(u_half + (dt / 2) * E_half(k1), cfg.dealias).term;
  SpectralVectorField k3 = nonlinear_eval(u_half + (dt / 2) * k2, cfg.dealias).term;
  SpectralVectorField k4 = nonlinear_eval(u_full + dt * E_half(k3), cfg.dealias).term;

  SpectralVectorField u_next =
      u_full + (dt / 6.0) * (E_full(k1) + 2.0 * E_half(k2 + k3) + k4);
  return {std::move(u_next), stage1.sups};
}

SpectralVectorField step_ifrk4(const SpectralVectorField& u, const SolverConfig& cfg) {
  return step_ifrk4_detailed(u, cfg).u_next;
}

RunResult run(const SolverConfig& cfg, const SpectralVectorField& u0) {
  cfg.validate();
  const Grid grid = cfg.make_grid();
  if (u0.grid() != grid) throw std::invalid_argument("run: initial data grid mismatch");

  RunResult result;
  result.trajectory.config = cfg;

  SpectralVectorField u = u0;
  zero_mean(u);
  const double defect = relative_divergence_defect(u);
  if (defect > 1e-10) {
    u = leray_project(u);
    result.log.push_back("initial data projected to divergence-free (defect " +
                         std::to_string(defect) + ")");
  }
  if (cfg.dealias) u = dealias(u);

  const DyadicPartition part = DyadicPartition::build(grid);
  result.series = DiagnosticsSeries(default_tracked_indices());

  const auto besov_values = [&](const SpectralVectorField& v) {
    std::vector<double> out;
    out.reserve(result.series.tracked_indices().size());
    for (const BesovIndex& idx : result.series.tracked_indices()) {
      out.push_back(besov_norm(v, part, idx));
    }
    return out;
  };

  const std::vector<double> schedule = step_schedule(cfg.t_end, cfg.dt);
  const std::size_t n_steps = schedule.size();
  const auto store_state = [&](double t, const SpectralVectorField& v) {
    result.trajectory.times.push_back(t);
    result.trajectory.states.push_back(v);
  };

  store_state(0.0, u);

  double prev_grad = 0.0;
  double t = 0.0;
  double last_time = 0.0;

  for (std::size_t step = 0; step < n_steps; ++step) {
    SolverConfig step_cfg = cfg;
    step_cfg.dt = schedule[step];
    std::optional<StepResult> sr;
    try {
      sr = step_ifrk4_detailed(u, step_cfg);
    } catch (const std::runtime_error& e) {
      result.aborted = true;
      result.abort_reason = e.what();
      break;
    }

    // The stage-one evaluation measures grad_sup at the pre-step time t.
    result.series.append_sample(t, l2_norm(u), sr->sups_at_start.grad_max, besov_values(u));

    if (has_nonfinite(sr->u_next)) {
      result.aborted = true;
      result.abort_reason = "non-finite state at t=" + std::to_string(t + schedule[step]) +
                            "; last good state retained";
      break;
    }

    const double du_bkm = 0.5 * schedule[step] * (prev_grad + sr->sups_at_start.grad_max);
    if (step > 0 && du_bkm > cfg.bkm_increment_ceiling) {
      result.aborted = true;
      result.abort_reason = "BKM guard tripped: per-step U increment " + std::to_string(du_bkm) +
                            " exceeds ceiling " + std::to_string(cfg.bkm_increment_ceiling);
      break;
    }
    prev_grad = sr->sups_at_start.grad_max;

    u = std::move(sr->u_next);
    t += schedule[step];
    last_time = (step + 1 == n_steps) ? cfg.t_end : t;

    if (cfg.snapshot_stride > 0 && (step + 1) % static_cast<std::size_t>(cfg.snapshot_stride) == 0 &&
        step + 1 != n_steps) {
      store_state(last_time, u);
    }
  }

  // Sample the last reached state.
  const double t_fin = result.aborted ? last_time : cfg.t_end;
  if (result.series.empty() || t_fin > result.series.times().back()) {
    result.series.append_sample(t_fin, l2_norm(u), measure_sups(u).grad_max, besov_values(u));
  }
  if (result.trajectory.times.back() != t_fin) store_state(t_fin, u);
  return result;
}

PicardResult picard_solve(const SpectralVectorField& u0, const SolverConfig& cfg, double tol,
                          int max_iter, PicardGuess guess) {
  cfg.validate();
  if (!(cfg.delta > 0.0)) {
    throw std::invalid_argument("picard_solve: requires delta > 0");
  }
  if (!(tol > 0.0) || max_iter < 1) {
    throw std::invalid_argument("picard_solve: bad tol or max_iter");
  }
  const Grid grid = cfg.make_grid();
  if (u0.grid() != grid) throw std::invalid_argument("picard_solve: initial data grid mismatch");

  SpectralVectorField w0 = leray_project(u0);
  zero_mean(w0);
  if (cfg.dealias) w0 = dealias(w0);

  const double ratio = cfg.t_end / cfg.dt;
  const int steps = static_cast<int>(std::lround(ratio));
  if (std::abs(ratio - steps) > 1e-6) {
    throw std::invalid_argument(
        "picard_solve: the trapezoid grid needs t_end to be a multiple of dt");
  }
  const double dt = cfg.dt;

  // Fixed-point iterate sampled on the step grid.
  std::vector<SpectralVectorField> v;
  v.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    if (guess == PicardGuess::heat_flow) {
      v.push_back(heat_propagator(w0, cfg.delta, i * dt));
    } else {
      v.push_back(w0);
    }
  }

  PicardResult result;
  double prev_diff = -1.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    // G_l = Omega P(e3 x v_l) + P(v_l . grad) v_l (nonlinear_term returns the
    // negated advection term).
    std::vector<SpectralVectorField> G;
    G.reserve(steps + 1);
    for (int l = 0; l <= steps; ++l) {
      SpectralVectorField g = nonlinear_eval(v[static_cast<std::size_t>(l)], cfg.dealias).term;
      g *= -1.0;
      if (cfg.omega != 0.0) {
        g += cfg.omega * coriolis_rotation_term(v[static_cast<std::size_t>(l)]);
      }
      G.push_back(std::move(g));
    }

    // I_i = int_0^{t_i} e^{delta (t_i - tau) Lap} G(tau) dtau by composite
    // trapezoid, built recursively.
    double sup_diff = 0.0;
    SpectralVectorField integral(grid);
    for (int i = 0; i <= steps; ++i) {
      if (i > 0) {
        integral +=
            (dt / 2.0) * G[static_cast<std::size_t>(i - 1)];
        integral = heat_propagator(integral, cfg.delta, dt);
        integral += (dt / 2.0) * G[static_cast<std::size_t>(i)];
      }
      SpectralVectorField next = heat_propagator(w0, cfg.delta, i * dt);
      next -= integral;
      sup_diff = std::max(sup_diff, l2_norm(next - v[static_cast<std::size_t>(i)]));
      v[static_cast<std::size_t>(i)] = std::move(next);
    }

    result.sup_diffs.push_back(sup_diff);
    if (prev_diff > 0.0) result.contraction_factors.push_back(sup_diff / prev_diff);
    prev_diff = sup_diff;
    result.iterations = iter + 1;
    if (!std::isfinite(sup_diff)) break;
    if (sup_diff < tol) {
      result.converged = true;
      break;
    }
  }

  if (!result.converged) {
    result.message =
        "picard iteration did not contract within max_iter; the smallness condition on "
        "|Omega| T and ||u0|| (T + sqrt(T/delta)) likely fails - try a smaller horizon";
  }

  result.trajectory.config = cfg;
  for (int i = 0; i <= steps; ++i) {
    result.trajectory.times.push_back(i * dt);
    result.trajectory.states.push_back(v[static_cast<std::size_t>(i)]);
  }
  return result;
}

}  // namespace reulab
