import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _fd import helmholtz_residuals
from sloshprism._fit import fit_exponential_decay
from sloshprism.config import validate_config
from sloshprism.errors import BelowCutoff, DomainError, OutsideSector, OutsideTriangle
from sloshprism.surface import (
    beach_gradient,
    beach_parts,
    beach_value,
    build_beach_solution,
    enumerate_surface_quasi,
    gamma_closed_form,
    quantization_derivative,
    quantization_value,
    quasimode_defects,
    quasimode_eval,
    real_principal_part,
    solve_quasi,
    theta_phase,
)

PI = math.pi


@pytest.mark.parametrize("q", range(1, 13))
def test_theta_at_zero(q):
    assert abs(theta_phase(q, 0.0) + (q - 1) * PI / 4) < 1e-12


def test_theta_at_one_vanishes():
    assert theta_phase(7, 1.0) == 0.0


def test_theta_domain():
    with pytest.raises(DomainError):
        theta_phase(3, 1.5)


@settings(max_examples=60, deadline=None)
@given(q=st.integers(2, 12), a=st.floats(0.0, 1.0), b=st.floats(0.0, 1.0))
def test_theta_increasing(q, a, b):
    lo, hi = sorted((a, b))
    if hi - lo > 1e-9:
        assert theta_phase(q, lo) < theta_phase(q, hi)


@pytest.mark.parametrize("q", range(1, 13))
def test_gamma_unimodular_and_closed_form(q):
    for mu in np.linspace(0.0, 1.0, 100):
        sol = build_beach_solution(q, float(mu))
        assert len(sol.terms) == 2 * q
        assert abs(abs(sol.gamma) - 1.0) < 1e-10
        ref = gamma_closed_form(q, float(mu))
        dphase = math.remainder(np.angle(sol.gamma) - np.angle(ref), 2 * PI)
        assert abs(dphase) < 1e-10


def _sector_grid(angle, scale=4.0):
    rho, phi = np.meshgrid(np.linspace(0.5, scale, 8), np.linspace(-angle + 0.05, -0.05, 6))
    return (rho * np.cos(phi)).ravel(), (rho * np.sin(phi)).ravel()


@pytest.mark.parametrize("q, mu", [(2, 0.0), (3, 0.4), (5, 0.8), (9, 0.55)])
def test_beach_helmholtz_second_order(q, mu):
    sol = build_beach_solution(q, mu)
    x, y = _sector_grid(sol.angle)
    res = helmholtz_residuals(lambda a, b: beach_value(sol, a, b, check=False), mu**2, x, y, [1e-2, 5e-3])
    assert res[0] / res[1] == pytest.approx(4.0, rel=0.1)


@pytest.mark.parametrize("q, mu", [(1, 0.3), (2, 0.5), (4, 0.1), (6, 0.9), (11, 0.7)])
def test_beach_steklov_defect(q, mu):
    sol = build_beach_solution(q, mu)
    x = np.linspace(0.0, 30.0, 100)
    v = beach_value(sol, x, 0 * x)
    _, gy = beach_gradient(sol, x, 0 * x)
    assert np.max(np.abs(gy - v)) < 1e-8


@pytest.mark.parametrize("q, mu", [(2, 0.5), (3, 0.2), (7, 0.95)])
def test_beach_wall_neumann(q, mu):
    sol = build_beach_solution(q, mu)
    a = sol.angle
    rho = np.linspace(0.0, 20.0, 60)
    gx, gy = beach_gradient(sol, rho * math.cos(a), -rho * math.sin(a))
    assert np.max(np.abs(-math.sin(a) * gx - math.cos(a) * gy)) < 1e-10


@pytest.mark.parametrize("q", [2, 3, 4, 7])
def test_rotated_principal_part_is_real(q):
    mu = 0.35
    sol = build_beach_solution(q, mu)
    x = np.linspace(0.0, 8.0, 25)
    p, _ = beach_parts(sol, x, 0 * x)
    th = theta_phase(q, mu)
    rot = np.exp(-1j * th) * p if q % 2 else 1j * np.exp(-1j * th) * p
    assert np.max(np.abs(rot - real_principal_part(q, mu, x))) < 1e-12


def test_decaying_part_decays():
    sol = build_beach_solution(5, 0.4)
    _, d = beach_parts(sol, np.array([1.0, 40.0]), np.zeros(2))
    assert abs(d[1]) < 1e-8 * max(1.0, abs(d[0]))


def test_beach_outside_sector():
    with pytest.raises(OutsideSector):
        beach_value(build_beach_solution(2, 0.5), 1.0, -3.0)


def test_quantization_values():
    cfg = validate_config(PI, PI, 2, 2)
    # f_0(sigma) = sigma - 1/2 here
    assert quantization_value(cfg, 0, 0.5) == pytest.approx(0.0, abs=1e-15)
    assert quantization_value(cfg, 0, 3.5) == pytest.approx(3.0)
    with pytest.raises(BelowCutoff):
        quantization_value(cfg, 1, 1.0)


@pytest.mark.parametrize("q, r, n", [(2, 3, 0), (2, 3, 2), (5, 5, 3), (3, 9, 4)])
def test_derivative_matches_finite_difference(q, r, n):
    cfg = validate_config(PI, PI, q, r)
    for s in n + np.array([0.3, 1.1, 4.0]):
        h = 1e-6
        fd = (quantization_value(cfg, n, s + h) - quantization_value(cfg, n, s - h)) / (2 * h)
        assert quantization_derivative(cfg, n, s) == pytest.approx(fd, rel=1e-5)


@pytest.mark.parametrize("q, r", [(2, 3), (5, 5), (3, 9), (4, 7)])
def test_f_increasing_where_above_kappa(q, r):
    # f_n starts at kappa at the cutoff; for kappa = 1/2 it may dip before rising
    cfg = validate_config(PI, PI, q, r)
    for n in range(0, 8):
        s = n + np.geomspace(1e-6, 20.0, 2000)
        f = quantization_value(cfg, n, s) - cfg.kappa
        pos = f[:-1] > 0
        assert np.all(np.diff(f)[pos] > 0)


@pytest.mark.parametrize(
    "key, q, r, m, n",
    [
        ("surface_q2_r3_m1_n0", 2, 3, 1, 0),
        ("surface_q2_r3_m4_n3", 2, 3, 4, 3),
        ("surface_q5_r5_m2_n2", 5, 5, 2, 2),
        ("surface_q3_r9_m6_n5", 3, 9, 6, 5),
    ],
)
def test_solve_quasi_against_oracle(oracle, key, q, r, m, n):
    mode = solve_quasi(validate_config(PI, PI, q, r), m, n)
    assert mode.sigma == pytest.approx(oracle[key], abs=1e-12)
    assert mode.residual < 1e-12


def test_solve_quasi_n0_closed_form():
    cfg = validate_config(PI, PI, 2, 2)
    assert solve_quasi(cfg, 3, 0).sigma == pytest.approx(3.5, abs=1e-13)


def test_enumeration_examples():
    s23 = [md.sigma for md in enumerate_surface_quasi(validate_config(PI, PI, 2, 3), 1.3)]
    assert any(abs(s - 0.25) < 1e-12 for s in s23)
    assert any(abs(s - 1.25) < 1e-12 for s in s23)
    s55 = enumerate_surface_quasi(validate_config(PI, PI, 5, 5), 1.05)
    assert any(abs(md.sigma - 1.0) < 1e-12 and md.m == -1 and md.n == 0 for md in s55)
    s22 = [md.sigma for md in enumerate_surface_quasi(validate_config(PI, PI, 2, 2), 2.0) if md.n == 0]
    assert s22 == pytest.approx([0.5, 1.5])


def test_negative_branch_roots_come_in_pairs():
    # for q=r=9 the n=1 row dips below zero and crosses m = 0 twice
    cfg = validate_config(PI, PI, 9, 9)
    row = [md for md in enumerate_surface_quasi(cfg, 6.0) if md.n == 1 and md.m <= 0]
    by_m = {}
    for md in row:
        by_m.setdefault(md.m, []).append(md)
    assert by_m
    for m, group in by_m.items():
        assert all(abs(quantization_value(cfg, 1, md.sigma) - m) < 1e-10 for md in group)
        if m < 0:
            assert len(group) == 2


def test_enumeration_sorted_and_complete():
    cfg = validate_config(PI, PI, 4, 7)
    modes = enumerate_surface_quasi(cfg, 10.0)
    sig = [md.sigma for md in modes]
    assert sig == sorted(sig)
    assert len({(md.m, md.n, round(md.sigma, 9)) for md in modes}) == len(modes)
    assert all(md.residual < 1e-10 for md in modes)


@pytest.mark.parametrize("q, r", [(2, 3), (5, 5), (1, 2), (3, 9)])
def test_quasimode_surface_defect_and_Q(q, r):
    cfg = validate_config(PI, PI, q, r)
    for m, n in [(2, 0), (5, 1), (9, 3)]:
        mode = solve_quasi(cfg, m, n)
        assert abs(abs(mode.Q) - 1) < 1e-8
        rep = quasimode_defects(cfg, mode, 100)
        assert rep.steklov_max < 1e-8


def test_quasimode_wall_defect_decays_exponentially():
    cfg = validate_config(PI, PI, 2, 3)
    sig, wall = [], []
    for m in range(1, 12):
        mode = solve_quasi(cfg, m, 0)
        sig.append(mode.sigma)
        wall.append(quasimode_defects(cfg, mode, 100).wall_max)
    fit = fit_exponential_decay(sig, wall)
    assert fit.rate > 0
    assert fit.r_squared > 0.95


def test_quasimode_outside_triangle():
    cfg = validate_config(PI, PI, 2, 2)
    mode = solve_quasi(cfg, 1, 0)
    with pytest.raises(OutsideTriangle):
        quasimode_eval(cfg, mode, 0.5, -1.0)
    assert np.isfinite(quasimode_eval(cfg, mode, 1.5, -0.5))
