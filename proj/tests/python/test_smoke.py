"""Smoke tests for the python bindings: a thin pass over each exposed surface."""

import math

import numpy as np
import pytest

import metivier as mv


def test_laguerre_values():
    assert mv.laguerre(0, 3.0, 7.2) == 1.0
    assert mv.laguerre(1, 0.0, 2.0) == pytest.approx(-1.0)
    assert mv.laguerre(2, 0.0, 2.0) == pytest.approx(-1.0)


def test_hermite_norm_scaling():
    base = mv.special_hermite_l2_norm(5, 1, 1.0)
    assert base == pytest.approx(math.sqrt(2.0 * math.pi), rel=1e-9)
    assert mv.special_hermite_l2_norm(5, 1, 4.0) == pytest.approx(base / 2.0, rel=1e-10)


def test_projection_identity():
    grid = mv.GridSpec(1, 8.0, 48)
    phi2 = mv.sample_special_hermite(grid, 2, 1.0)
    kept = mv.project(phi2, 2, 1.0)
    expected = mv.SampledField(grid, phi2.values() * 2.0 * np.pi)
    assert mv.l2_distance(kept, expected) <= 1e-3 * expected.l2_norm()
    killed = mv.project(phi2, 4, 1.0)
    assert killed.l2_norm() <= 1e-3 * phi2.l2_norm()


def test_dilation_identity():
    grid = mv.GridSpec(1, 8.0, 48)
    x = np.array([[grid.coord(i) for i in range(48)]]).repeat(48, axis=0)
    g = np.exp(-0.5 * (x.T**2 + x**2)).astype(complex)
    field = mv.SampledField(grid, g)
    assert mv.dilation_residual(field, 1, 4.0) <= 1e-6


def test_algebra_verdicts():
    ms = mv.muller_seeger_example()
    assert mv.is_metivier(ms, 2000).verdict
    assert not mv.is_htype(ms, 2000).verdict
    h = mv.heisenberg()
    assert mv.is_metivier(h, 16).verdict and mv.is_htype(h, 16).verdict
    z = (0.3, -1.2)
    det = np.linalg.det(mv.muller_seeger_j(*z))
    assert det == pytest.approx((z[0] ** 4 + z[1] ** 4) ** 2, rel=1e-10)


def test_symplectic_normalize():
    j0 = mv.standard_symplectic_form(2)
    rng = np.random.default_rng(7)
    a = rng.normal(size=(4, 4))
    j = a - a.T
    t = mv.symplectic_normalize(j)
    assert np.linalg.norm(t.T @ j @ t - j0) <= 1e-10


def test_roots_and_exponents():
    spec = mv.CalculusSpec(mv.Family.homogeneous, 1.0, 1.0, 1.0)
    pt = mv.solve_mu_k(spec, 6.0, 0, 1)
    assert pt.root == pytest.approx(2.0, rel=1e-12)
    assert pt.derivative == pytest.approx(0.2, rel=1e-10)

    params = mv.ExponentParams(1, 1, 1, p=1.0, q=math.inf, r=1.0, n=1, d=2)
    es = mv.exponents(params)
    assert (es.A, es.B, es.C, es.D) == pytest.approx((1.0, 2.0, 1.0, 2.0))
    case, nu = mv.nu_analysis(2.0, 2.0, 1.0, 1, 1)
    assert case == "d" and nu == pytest.approx(-1.0)

    value, tail, terms = mv.series_bound(spec, 2.0**20, params)
    letter, exponent, in_eps, _ = mv.predicted_exponent(spec, params, 2.0**20)
    assert letter == "A" and exponent == pytest.approx(1.0) and not in_eps
    assert tail < 1e-4 and value > 0 and terms > 0


def test_opnorm_matches_quadrature():
    grid = mv.GridSpec(1, 8.0, 32)
    est = mv.projector_opnorm_1_to_2(grid, 1, 1.0)
    assert est == pytest.approx(mv.special_hermite_l2_norm(1, 1, 1.0), rel=5e-3)


def test_field_io_roundtrip(tmp_path):
    grid = mv.GridSpec(1, 4.0, 16)
    rng = np.random.default_rng(3)
    vals = (rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16)))
    f = mv.SampledField(grid, vals)
    prefix = str(tmp_path / "field")
    mv.save_field(f, prefix)
    back = mv.load_field(prefix)
    assert np.array_equal(back.values(), f.values())
