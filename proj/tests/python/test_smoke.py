"""Smoke tests for the pmelab python module.

These only check that the bindings expose the C++ core faithfully; the
numerics themselves are covered by the C++ unit and acceptance suites.
"""

import math

import numpy as np
import pytest

import pmelab


def test_version_and_exponents():
    assert isinstance(pmelab.__version__, str) and pmelab.__version__

    assert pmelab.sigma_of(2.0, 0.5) == pytest.approx(1.5)
    assert pmelab.sigma_of(1.0, 0.7) == pytest.approx(2.0)

    a, b = pmelab.barenblatt_exponents(2.0, 1)
    assert a == pytest.approx(1.0 / 3.0)
    assert b == pytest.approx(1.0 / 3.0)

    rep = pmelab.check_admissibility(3.0, 20.0, 1.5, 1)
    assert rep["admissible"]
    assert rep["p_min"] == pytest.approx(2.0)
    assert rep["q_min"] == pytest.approx(18.0)
    assert not pmelab.admissible(3.0, 17.9, 1.5, 1)

    uc = pmelab.universal_rho_delta(1.0, 0.5)
    assert uc["rho"] == pytest.approx(0.25)
    assert uc["delta"] == pytest.approx(0.25)
    # the defining identity: delta + C rho = rho^alpha
    assert uc["delta"] + 1.0 * uc["rho"] == pytest.approx(uc["rho"] ** 0.5)


def test_barenblatt_solution():
    sol = pmelab.BarenblattSolution(2.0, 1)
    assert sol.alpha == pytest.approx(1.0 / 3.0)
    assert sol.beta == pytest.approx(1.0 / 3.0)
    assert sol.k == pytest.approx(1.0 / 12.0)
    assert sol([0.0], 1.0) == pytest.approx(1.0)
    assert sol.support_radius(1.0) == pytest.approx(math.sqrt(12.0))
    assert sol([4.0], 1.0) == 0.0

    # support radius at t=2 is sqrt(12) * 2^(1/3) ~ 4.36, keep it inside the box
    g = pmelab.Grid(1, 1024, -5.0, 5.0, 1.0, 2.0, 3)
    f = sol.sample(g)
    assert f.slice_count == 3
    # discrete mass of the sampled profile matches the closed form
    assert f.slice_mass(0) == pytest.approx(sol.mass(), rel=1e-3)
    assert f.slice_mass(2) == pytest.approx(sol.mass(), rel=1e-3)


def test_grid_field_numpy_roundtrip():
    g = pmelab.Grid(1, 32, -1.0, 1.0, 0.0, 1.0, 3)
    assert g.h == pytest.approx(2.0 / 32.0)
    assert g.xlo[0] == pytest.approx(-1.0)

    f = pmelab.Field(g)
    assert f.slice_count == 3
    assert f.times == pytest.approx([0.0, 0.5, 1.0])

    a = f.slice(0)
    assert a.shape == (32,)
    assert np.all(a == 0.0)

    vals = np.linspace(0.0, 1.0, 32)
    f.set_slice(1, vals)
    np.testing.assert_array_equal(f.slice(1), vals)
    assert f.max_abs() == pytest.approx(1.0)

    g2 = pmelab.Grid(2, 8, -1.0, 1.0, 0.0, 1.0, 2)
    f2 = pmelab.Field(g2)
    m = np.arange(64, dtype=float).reshape(8, 8)
    f2.set_slice(0, m)
    np.testing.assert_array_equal(f2.slice(0), m)
    assert f2.interpolate([g2.xlo[0] + 0.5 * g2.h, g2.xlo[1] + 0.5 * g2.h], 0.0) == pytest.approx(
        0.0
    )


def test_solve_and_norms():
    g = pmelab.Grid(1, 64, -1.0, 1.0, 0.0, 0.05, 5)
    field, info = pmelab.solve(g, 2.0, lambda x: max(0.0, 1.0 - x[0] * x[0]))
    assert info["steps"] >= 1
    assert info["dt_min"] > 0.0
    assert field.min_value() >= -1e-15
    assert field.max_value() <= 1.0 + 1e-12  # comparison with the initial sup

    n22 = pmelab.lpq_norm(field, 2.0, 2.0)
    assert n22 > 0.0
    ninf = pmelab.lpq_norm(field, pmelab.inf, pmelab.inf)
    assert ninf <= 1.0 + 1e-12
    windowed = pmelab.lpq_norm(field, 2.0, 1.0, center=[0.0], radius=0.5, t_begin=0.01, t_end=0.04)
    assert 0.0 < windowed < n22  # a strict subcylinder with q = 1 over a short window


def test_snapshot_roundtrip(tmp_path):
    g = pmelab.Grid(1, 48, -2.0, 2.0, 0.5, 1.5, 4)
    f = pmelab.Field(g)
    for j in range(4):
        f.set_slice(j, np.sin(np.linspace(0.0, 3.0, 48)) + j)
    path = str(tmp_path / "field.pmes")
    pmelab.write_snapshot(f, 1.7, path)

    f2, m2 = pmelab.read_snapshot(path)
    assert m2 == pytest.approx(1.7)
    assert f2.grid.n == 48
    assert f2.times == pytest.approx(f.times)
    for j in range(4):
        np.testing.assert_array_equal(f2.slice(j), f.slice(j))


def test_estimate_exponent_and_cascade():
    n, slices = 2048, 65
    g = pmelab.Grid(1, n, -1.0, 1.0, 0.0, 1.0, slices)
    f = pmelab.Field(g)
    centers = g.xlo[0] + (np.arange(n) + 0.5) * g.h
    star = centers[n // 2]
    profile = np.abs(centers - star) ** 0.5
    for j in range(slices):
        f.set_slice(j, profile)

    radii = list(np.logspace(math.log10(0.012), math.log10(0.5), 8))
    rep = pmelab.estimate_exponent(f, [star], 0.5, radii, sigma=2.0)
    assert rep["sigma"] == pytest.approx(2.0)
    assert not rep["space"]["degenerate"]
    assert rep["alpha_hat_space"] == pytest.approx(0.5, abs=0.02)

    cas = pmelab.cascade_check(f, [star], 0.5, rho=0.25, alpha=0.4, sigma=2.0, n_levels=3)
    assert len(cas["levels"]) == 3
    assert cas["resolved"] >= 1
    assert cas["first_fail"] == -1
    assert cas["pass"]


def test_zero_set_detection():
    g = pmelab.Grid(1, 64, -1.0, 1.0, 0.0, 1.0, 3)
    f = pmelab.Field(g)
    x = g.xlo[0] + (np.arange(64) + 0.5) * g.h
    for j in range(3):
        f.set_slice(j, x)
    z = pmelab.detect_zero_set(f)
    assert z["tol"] > 0.0
    assert len(z["points"]) == 3  # one sign change per stored slice
    for p in z["points"]:
        assert p["x"][0] == pytest.approx(0.0, abs=1e-12)


def test_run_experiment_and_hash(tmp_path):
    cfg = {
        "m": 2.0,
        "d": 1,
        "grid": {"n": 256, "xlo": -5.0, "xhi": 5.0, "t0": 1.0, "T": 1.2, "slices": 5},
        "out": str(tmp_path / "run"),
    }
    rep = pmelab.run_experiment(cfg)
    assert rep["tool"]["name"] == "pmelab"
    assert rep["config_hash"] == pmelab.config_hash(cfg)
    assert rep["config_hash"].startswith("fnv1a:")
    assert not rep["gate"]["applicable"]
    assert rep["solve"]["steps"] >= 1
    assert rep["solve"]["mass_final"] == pytest.approx(rep["solve"]["mass_initial"], rel=1e-8)
    assert (tmp_path / "run_report.json").exists()
    assert (tmp_path / "run_solution.pmes").exists()


def test_rescale_and_transport():
    # closed form for the norm transport factor
    a, b, m, p, q, d = 0.5, 0.25, 2.0, 2.5, 3.0, 1
    fac = pmelab.norm_transport_factor(a, b, m, p, q, d)
    gamma = pmelab.gamma_of(a, b, m)
    assert gamma == pytest.approx((a * a / b) ** (1.0 / (m - 1.0)))
    expect = (b / gamma) * a ** (-d / p) * b ** (-1.0 / q)
    assert fac == pytest.approx(expect, rel=1e-12)

    g = pmelab.Grid(1, 128, -2.0, 2.0, 0.0, 1.0, 9)
    f = pmelab.Field(g)
    x = g.xlo[0] + (np.arange(128) + 0.5) * g.h
    for j in range(9):
        f.set_slice(j, 1.0 + 0.1 * j + x * 0.0)
    v = pmelab.rescale_field(f, [0.0], 1.0, 0.5, 0.5, 2.0)
    assert v.grid.d == 1
    assert v.times[-1] == pytest.approx(0.0)  # base time maps to the cylinder top


def test_error_translation(tmp_path):
    with pytest.raises(pmelab.IoError):
        pmelab.read_snapshot(str(tmp_path / "missing.pmes"))
    with pytest.raises(ValueError):
        pmelab.Grid(3, 8, -1.0, 1.0, 0.0, 1.0, 3)
    with pytest.raises(ValueError):
        pmelab.lpq_norm(pmelab.Field(pmelab.Grid(1, 8, 0.0, 1.0, 0.0, 1.0, 2)), 0.5, 2.0)
    assert issubclass(pmelab.NumericalError, ArithmeticError)
