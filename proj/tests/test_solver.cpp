#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "reulab/fft.hpp"
#include "reulab/initial_data.hpp"
#include "reulab/rotation.hpp"
#include "reulab/solver.hpp"
#include "reulab/spectral_ops.hpp"
#include "reulab/studies.hpp"

using namespace reulab;

namespace {
const Grid kGrid(16, 2.0 * M_PI);

double inner_l2(const SpectralVectorField& u, const SpectralVectorField& v) {
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    const auto& a = u[c].coeffs();
    const auto& b = v[c].coeffs();
    for (std::size_t m = 0; m < a.size(); ++m) {
      acc += (a[m] * std::conj(b[m])).real();
    }
  }
  return acc * std::pow(u.grid().box_size(), 3);
}

SolverConfig base_config() {
  SolverConfig cfg;
  cfg.n = 16;
  cfg.dt = 1e-3;
  cfg.t_end = 0.1;
  return cfg;
}
}  // namespace

TEST_CASE("config validation") {
  SolverConfig cfg = base_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.delta = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.t_end = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.n = 12;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = base_config();
  cfg.delta = 0.25;
  cfg.t_end = 2.0;
  CHECK(cfg.duhamel_weight() == doctest::Approx(2.0 + std::sqrt(2.0 / 0.25)));
  cfg.delta = 0.0;
  CHECK(std::isinf(cfg.duhamel_weight()));
}

TEST_CASE("nonlinear term: zero field, Beltrami mode, rejection") {
  SpectralVectorField zero(kGrid);
  CHECK(l2_norm(nonlinear_term(zero)) == 0.0);

  // Advection of a curl eigenfield is a pure gradient; Leray kills it.
  SpectralVectorField u = beltrami_mode(kGrid, {1, 1, 0}, 1.3, +1);
  CHECK(l2_norm(nonlinear_term(u)) <= 1e-10 * l2_norm(u));

  SpectralVectorField bad(random_scalar_band(kGrid, 1, 5, 1), random_scalar_band(kGrid, 1, 5, 2),
                          random_scalar_band(kGrid, 1, 5, 3));
  CHECK_THROWS_AS(nonlinear_term(bad), std::invalid_argument);
}

TEST_CASE("Beltrami advection is the gradient of |u|^2/2") {
  // The oracle behind the zero-nonlinearity claim, checked directly.
  SpectralVectorField u = beltrami_mode(kGrid, {1, 1, 0}, 1.0, +1);
  SpectralVectorField adv = advect(u, u, false);

  const auto up = to_physical(u);
  std::vector<double> half_speed(kGrid.size());
  for (std::size_t m = 0; m < half_speed.size(); ++m) {
    half_speed[m] =
        0.5 * (up[0][m] * up[0][m] + up[1][m] * up[1][m] + up[2][m] * up[2][m]);
  }
  SpectralVectorField grad_q = gradient(to_spectral(kGrid, half_speed));
  CHECK(l2_norm(adv - grad_q) <= 1e-12 * std::max(1.0, l2_norm(adv)));
}

TEST_CASE("nonlinear term is energy-neutral and divergence-free") {
  SpectralVectorField u = dealias(random_solenoidal(kGrid, 3.0, 1.0, 99));
  SpectralVectorField n = nonlinear_term(u);
  CHECK(relative_divergence_defect(n) <= 1e-10);
  const double e = l2_norm(u);
  CHECK(std::abs(inner_l2(n, u)) <= 1e-9 * e * e);
}

TEST_CASE("nonlinear term anticommutes with point reflection") {
  SpectralVectorField u = random_solenoidal(kGrid, 3.0, 1.0, 123);
  SpectralVectorField lhs = nonlinear_term(reflect(u));
  SpectralVectorField rhs = reflect(nonlinear_term(u));
  rhs *= -1.0;
  CHECK(l2_norm(lhs - rhs) <= 1e-11 * std::max(1.0, l2_norm(lhs)));
}

TEST_CASE("linear step is the exact propagator") {
  SolverConfig cfg = base_config();
  cfg.enable_nonlinear = false;
  cfg.omega = 17.0;
  cfg.delta = 0.2;
  cfg.dt = 0.01;

  SpectralVectorField u = random_solenoidal(kGrid, 3.0, 1.0, 7);
  SpectralVectorField stepped = step_ifrk4(u, cfg);
  SpectralVectorField exact = heat_propagator(coriolis_propagator(u, 17.0, 0.01), 0.2, 0.01);
  CHECK(l2_norm(stepped - exact) <= 1e-12 * l2_norm(u));
}

TEST_CASE("full nonlinear solver reproduces the inertial-wave oracle") {
  SolverConfig cfg = base_config();
  cfg.omega = 20.0;
  cfg.delta = 0.0;
  cfg.dt = 1e-3;
  cfg.t_end = 0.1;

  SpectralVectorField u0 = beltrami_mode(kGrid, {1, 1, 1}, 1.0, +1);
  SpectralVectorField u = u0;
  const long steps = std::lround(cfg.t_end / cfg.dt);
  for (long s = 0; s < steps; ++s) u = step_ifrk4(u, cfg);

  SpectralVectorField oracle = coriolis_propagator(u0, cfg.omega, cfg.t_end);
  CHECK(l2_norm(u - oracle) <= 1e-8 * cfg.t_end + 1e-12);

  // The rotation is an isometry; the collocation-sampled componentwise sup
  // wobbles only by the O(1/n^2) sampling error as the profile translates.
  const double g0 = measure_sups(u0).grad_max;
  const double gT = measure_sups(u).grad_max;
  CHECK(std::abs(gT - g0) <= 4.0 / (16.0 * 16.0) * g0);

  // A helical mode with xi3 = 0 has zero wave frequency: the full nonlinear
  // solver must keep it (and its grad_sup) frozen to rounding.
  SolverConfig cfg2 = cfg;
  cfg2.t_end = 0.05;
  SpectralVectorField w0 = beltrami_mode(kGrid, {1, 1, 0}, 1.0, +1);
  SpectralVectorField w = w0;
  for (long s = 0; s < 50; ++s) w = step_ifrk4(w, cfg2);
  CHECK(l2_norm(w - w0) <= 1e-10);
  CHECK(std::abs(measure_sups(w).grad_max - measure_sups(w0).grad_max) <=
        1e-8 * std::max(1.0, measure_sups(w0).grad_max));
}

TEST_CASE("IF-RK4 self-convergence order") {
  SolverConfig cfg = base_config();
  cfg.t_end = 0.25;
  cfg.omega = 5.0;

  SpectralVectorField u0 = taylor_green(kGrid, 3.0);
  const auto advance = [&](double dt) {
    SolverConfig c = cfg;
    c.dt = dt;
    SpectralVectorField u = leray_project(dealias(u0));
    zero_mean(u);
    const long steps = std::lround(cfg.t_end / dt);
    for (long s = 0; s < steps; ++s) u = step_ifrk4(u, c);
    return u;
  };

  SpectralVectorField ref = advance(3.125e-4);
  std::vector<double> errors;
  for (double dt : {1e-2, 5e-3, 2.5e-3}) errors.push_back(l2_norm(advance(dt) - ref));

  const double slope1 = std::log2(errors[0] / errors[1]);
  const double slope2 = std::log2(errors[1] / errors[2]);
  MESSAGE("order-study errors: ", errors[0], " ", errors[1], " ", errors[2]);
  CHECK(slope1 == doctest::Approx(4.0).epsilon(0.12));
  CHECK(slope2 == doctest::Approx(4.0).epsilon(0.12));
}

TEST_CASE("CFL violation is rejected with the measured ratio") {
  SolverConfig cfg = base_config();
  cfg.dt = 0.5;  // u_max ~ 1, dx ~ 0.39 -> ratio > 1
  SpectralVectorField u0 = taylor_green(kGrid, 1.0);
  CHECK_THROWS_WITH_AS(step_ifrk4(leray_project(u0), cfg),
                       doctest::Contains("CFL violation"), std::runtime_error);
}

TEST_CASE("run: dissipative energy decay for delta > 0") {
  SolverConfig cfg = base_config();
  cfg.delta = 0.05;
  cfg.dt = 2e-3;
  cfg.t_end = 0.2;
  RunResult rr = run(cfg, taylor_green(kGrid, 1.0));
  REQUIRE(!rr.aborted);
  const auto& e = rr.series.energy();
  for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] < e[i - 1]);
}

TEST_CASE("run: inviscid energy conservation and invariants") {
  SolverConfig cfg = base_config();
  cfg.delta = 0.0;
  cfg.dt = 1e-3;
  cfg.t_end = 0.2;
  cfg.snapshot_stride = 50;
  RunResult rr = run(cfg, taylor_green(kGrid, 1.0));
  REQUIRE(!rr.aborted);

  const double e0 = rr.series.energy().front();
  const double eT = rr.series.final_energy();
  CHECK(std::abs(eT - e0) / e0 <= 1e-8);

  for (const SpectralVectorField& s : rr.trajectory.states) {
    CHECK(relative_divergence_defect(s) <= 1e-8);
    // k = 0 row never written.
    for (int c = 0; c < 3; ++c) CHECK(std::abs(s[c].at(0, 0, 0)) == 0.0);
  }
  CHECK(rr.trajectory.times.size() == 5);  // 0, 0.05, 0.1, 0.15, 0.2
  // U is nondecreasing from 0.
  CHECK(rr.series.bkm_integral().front() == 0.0);
  for (std::size_t i = 1; i < rr.series.size(); ++i) {
    CHECK(rr.series.bkm_integral()[i] >= rr.series.bkm_integral()[i - 1]);
  }
}

TEST_CASE("run: identical config produces byte-identical diagnostics") {
  SolverConfig cfg = base_config();
  cfg.t_end = 0.05;
  RunResult a = run(cfg, random_solenoidal(kGrid, 3.0, 1.0, 2024));
  RunResult b = run(cfg, random_solenoidal(kGrid, 3.0, 1.0, 2024));
  a.series.write_csv("tmp_det_a.csv");
  b.series.write_csv("tmp_det_b.csv");
  std::ifstream fa("tmp_det_a.csv"), fb("tmp_det_b.csv");
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(!sa.str().empty());
  std::remove("tmp_det_a.csv");
  std::remove("tmp_det_b.csv");
}

TEST_CASE("run: BKM guard and non-finite guard abort with partial data") {
  SolverConfig cfg = base_config();
  cfg.bkm_increment_ceiling = 1e-12;
  cfg.t_end = 0.05;
  RunResult rr = run(cfg, taylor_green(kGrid, 1.0));
  CHECK(rr.aborted);
  CHECK(rr.abort_reason.find("BKM") != std::string::npos);
  CHECK(!rr.series.empty());

  SolverConfig wild = base_config();
  wild.dt = 0.3;
  wild.t_end = 3.0;
  wild.cfl_max = 1e300;  // disarm the CFL guard so the blow-up is reached
  wild.bkm_increment_ceiling = 1e300;
  RunResult boom = run(wild, taylor_green(kGrid, 5.0));
  CHECK(boom.aborted);
  CHECK(boom.abort_reason.find("non-finite") != std::string::npos);
}

TEST_CASE("run: auto-projection is logged for non-solenoidal input") {
  SolverConfig cfg = base_config();
  cfg.t_end = 0.01;
  SpectralVectorField raw(random_scalar_band(kGrid, 1, 4, 5), random_scalar_band(kGrid, 1, 4, 6),
                          random_scalar_band(kGrid, 1, 4, 7));
  RunResult rr = run(cfg, raw);
  REQUIRE(!rr.log.empty());
  CHECK(rr.log.front().find("projected") != std::string::npos);
  CHECK(relative_divergence_defect(rr.trajectory.states.back()) <= 1e-8);
}

TEST_CASE("picard: zero data is the fixed point immediately") {
  SolverConfig cfg = base_config();
  cfg.delta = 0.1;
  cfg.dt = 5e-3;
  cfg.t_end = 0.05;
  SpectralVectorField zero(kGrid);
  PicardResult pr = picard_solve(zero, cfg, 1e-12, 5);
  CHECK(pr.converged);
  CHECK(pr.iterations == 1);
  for (const auto& s : pr.trajectory.states) CHECK(l2_norm(s) == 0.0);
}

TEST_CASE("picard requires positive delta") {
  SolverConfig cfg = base_config();
  cfg.delta = 0.0;
  CHECK_THROWS_AS(picard_solve(SpectralVectorField(kGrid), cfg, 1e-8, 5),
                  std::invalid_argument);
}

TEST_CASE("picard: small-data contraction, uniqueness, agreement with IF-RK4") {
  SolverConfig cfg = base_config();
  cfg.delta = 0.1;
  cfg.omega = 1.0;
  cfg.dt = 2.5e-3;
  cfg.t_end = 0.05;

  SpectralVectorField u0 = taylor_green(kGrid, 1e-3);
  const double tol = 1e-11;
  PicardResult pr = picard_solve(u0, cfg, tol, 50);
  REQUIRE(pr.converged);

  // Successive-difference ratios sit deep in the contraction regime.
  for (std::size_t i = 0; i + 1 < pr.contraction_factors.size(); ++i) {
    CHECK(pr.contraction_factors[i] < 0.5);
  }

  PicardResult frozen = picard_solve(u0, cfg, tol, 50, PicardGuess::frozen_data);
  REQUIRE(frozen.converged);
  double worst = 0.0;
  for (std::size_t i = 0; i < pr.trajectory.states.size(); ++i) {
    worst = std::max(worst, l2_norm(pr.trajectory.states[i] - frozen.trajectory.states[i]));
  }
  CHECK(worst <= 10.0 * tol);

  // The fixed point tracks the time stepper on the same grid.
  SolverConfig ifcfg = cfg;
  SpectralVectorField u = leray_project(dealias(u0));
  zero_mean(u);
  const long steps = std::lround(cfg.t_end / cfg.dt);
  double gap = 0.0;
  for (long s = 0; s < steps; ++s) {
    u = step_ifrk4(u, ifcfg);
    gap = std::max(gap, l2_norm(u - pr.trajectory.states[static_cast<std::size_t>(s + 1)]));
  }
  MESSAGE("picard vs ifrk4 sup gap: ", gap);
  CHECK(gap <= 1e-9);
}

TEST_CASE("picard reports divergence for large data and horizon") {
  SolverConfig cfg = base_config();
  cfg.delta = 0.02;
  cfg.dt = 0.02;
  cfg.t_end = 0.4;
  cfg.cfl_max = 1e9;
  SpectralVectorField u0 = taylor_green(kGrid, 40.0);
  PicardResult pr = picard_solve(u0, cfg, 1e-12, 8);
  CHECK(!pr.converged);
  CHECK(pr.message.find("smaller horizon") != std::string::npos);
}

TEST_CASE("delta study: gaps shrink linearly in delta") {
  SolverConfig cfg = base_config();
  cfg.dt = 2e-3;
  cfg.t_end = 0.2;
  SpectralVectorField u0 = taylor_green(kGrid, 1.0);

  CHECK_THROWS_AS(delta_convergence_study(u0, {}, cfg), std::invalid_argument);
  CHECK_THROWS_AS(delta_convergence_study(u0, {1e-2, 1e-1}, cfg), std::invalid_argument);

  DeltaStudyResult res = delta_convergence_study(u0, {1e-1, 1e-2, 1e-3}, cfg, 2);
  REQUIRE(res.rows.size() == 3);
  CHECK(res.rows[0].sup_gap > res.rows[1].sup_gap);
  CHECK(res.rows[1].sup_gap > res.rows[2].sup_gap);
  MESSAGE("delta-study slope: ", res.slope);
  CHECK(res.slope == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("non-default box size: invariants carry over") {
  // L = 4 pi: frequencies are half-integers, the dyadic range shifts down.
  const double L = 4.0 * M_PI;
  Grid g(16, L);
  CHECK(g.xi(1) == doctest::Approx(0.5));

  SolverConfig cfg;
  cfg.n = 16;
  cfg.box_size = L;
  cfg.dt = 2e-3;
  cfg.t_end = 0.1;
  RunResult rr = run(cfg, taylor_green(g, 1.0));
  REQUIRE(!rr.aborted);
  const double e0 = rr.series.energy().front();
  CHECK(std::abs(rr.series.final_energy() - e0) / e0 <= 1e-8);
  CHECK(relative_divergence_defect(rr.trajectory.states.back()) <= 1e-8);

  // curl eigenvalue scales with the physical frequency: |xi| = sqrt(2)/2.
  SpectralVectorField h = beltrami_mode(g, {1, 1, 0}, 1.0, +1);
  SpectralVectorField resid = curl(h) - (std::sqrt(2.0) / 2.0) * h;
  CHECK(resid.max_abs_coeff() < 1e-12);

  // The propagator keeps the field real (Hermitian symmetry).
  SpectralVectorField moved = coriolis_propagator(taylor_green(g, 1.0), 25.0, 0.7);
  for (int c = 0; c < 3; ++c) CHECK(moved[c].hermitian_defect() < 1e-12);
}

TEST_CASE("uniqueness probe: zero, linearity, envelope") {
  SolverConfig cfg = base_config();
  cfg.dt = 2e-3;
  cfg.t_end = 0.1;
  SpectralVectorField u0 = taylor_green(kGrid, 1.0);

  UniquenessReport zero = uniqueness_probe(u0, cfg, 0.0, 9);
  for (double g : zero.growth) CHECK(g == 0.0);

  UniquenessReport a = uniqueness_probe(u0, cfg, 1e-8, 9);
  UniquenessReport b = uniqueness_probe(u0, cfg, 5e-9, 9);
  CHECK(a.initial_gap == doctest::Approx(1e-8).epsilon(1e-10));
  CHECK(std::isfinite(a.c_fit));
  CHECK(a.growth_factor > 0.0);
  // Same perturbation direction at half the size: the growth curves match in
  // the linear regime.
  for (std::size_t i = 0; i < a.growth.size(); ++i) {
    CHECK(a.growth[i] == doctest::Approx(b.growth[i]).epsilon(0.05));
  }
  // The fitted envelope dominates the measured growth by construction.
  for (std::size_t i = 0; i < a.growth.size(); ++i) {
    CHECK(a.growth[i] <= a.envelope[i] * (1.0 + 1e-12));
  }
}
