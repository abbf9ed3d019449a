"""Smoke tests for the python bindings against the build-tree module."""

import math

import numpy as np
import pytest

import reulab


@pytest.fixture(scope="module")
def grid():
    return reulab.Grid(16)


def test_grid_properties(grid):
    assert grid.n == 16
    assert grid.box_size == pytest.approx(2.0 * math.pi)
    with pytest.raises(ValueError):
        reulab.Grid(12)


def test_physical_round_trip(grid):
    u = reulab.random_solenoidal(grid, k0=3.0, amplitude=1.0, seed=5)
    vals = u.to_physical()
    assert vals.shape == (3, 16, 16, 16)
    back = reulab.field_from_physical(grid, vals)
    assert (back - u).l2_norm() <= 1e-12 * u.l2_norm()


def test_taylor_green_is_divergence_free(grid):
    u = reulab.taylor_green(grid, amplitude=1.0)
    assert u.divergence_defect() <= 1e-12
    assert u.l2_norm() > 0.0


def test_leray_and_wave_split(grid):
    u = reulab.random_solenoidal(grid, k0=3.0, amplitude=1.0, seed=9)
    plus, minus = reulab.wave_split(u)
    assert (plus + minus - u).l2_norm() <= 1e-10 * u.l2_norm()
    projected = reulab.leray_project(u)
    assert (projected - u).l2_norm() <= 1e-12 * u.l2_norm()


def test_propagators_are_isometries(grid):
    u = reulab.random_solenoidal(grid, k0=3.0, amplitude=1.0, seed=11)
    moved = reulab.coriolis_propagator(u, omega=37.0, t=0.8)
    assert moved.l2_norm() == pytest.approx(u.l2_norm(), rel=1e-12)
    cooled = reulab.heat_propagator(u, nu=0.1, t=1.0)
    assert cooled.l2_norm() < u.l2_norm()


def test_besov_norm_single_mode(grid):
    u = reulab.beltrami_mode(grid, (0, 0, 4), amplitude=1.0)
    # Single mode on shell j = 2: homogeneous B^s_{2,1} norm is 2^{2s} ||u||_2.
    s = 1.5
    expected = 2.0 ** (2.0 * s) * u.l2_norm()
    assert u.besov_norm(s, "2", "1", True) == pytest.approx(expected, rel=1e-10)


def test_energy_conservation_short_run(grid):
    cfg = reulab.SolverConfig()
    cfg.n = 16
    cfg.dt = 2e-3
    cfg.t_end = 0.1
    result = reulab.run(cfg, reulab.taylor_green(grid, 1.0))
    assert not result.aborted
    energy = result.series.energy
    assert abs(energy[-1] - energy[0]) / energy[0] <= 1e-8
    assert result.final_state.divergence_defect() <= 1e-8
    bkm = result.series.bkm
    assert bkm[0] == 0.0
    assert np.all(np.diff(bkm) >= 0.0)


def test_beltrami_wave_matches_oracle(grid):
    cfg = reulab.SolverConfig()
    cfg.n = 16
    cfg.dt = 1e-3
    cfg.t_end = 0.05
    cfg.omega = 30.0
    u0 = reulab.beltrami_mode(grid, (1, 1, 1), amplitude=1.0)
    result = reulab.run(cfg, u0)
    oracle = reulab.coriolis_propagator(u0, cfg.omega, result.final_time)
    assert (result.final_state - oracle).l2_norm() <= 1e-8


def test_picard_small_data(grid):
    cfg = reulab.SolverConfig()
    cfg.n = 16
    cfg.delta = 0.1
    cfg.dt = 5e-3
    cfg.t_end = 0.05
    res = reulab.picard_solve(reulab.taylor_green(grid, 1e-3), cfg, tol=1e-10, max_iter=30)
    assert res.converged
    assert all(f < 0.5 for f in res.contraction_factors[:-1])


def test_lemma_suite_reports():
    reports = reulab.run_lemma_suite(n=16, ensemble=5, seed=3)
    ids = {r.lemma_id for r in reports}
    assert "bernstein-k1-p2" in ids
    assert "projection-identities" in ids
    for r in reports:
        assert math.isfinite(r.max_ratio)
        assert r.samples > 0


def test_snapshot_round_trip(tmp_path, grid):
    u = reulab.random_solenoidal(grid, k0=3.0, amplitude=1.0, seed=21)
    path = str(tmp_path / "u.bin")
    reulab.write_snapshot(path, u, 1.25)
    back, time = reulab.read_snapshot(path)
    assert time == 1.25
    assert (back - u).l2_norm() == 0.0
