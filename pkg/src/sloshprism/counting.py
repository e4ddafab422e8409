"""Counting functions for the quasi-eigenvalues and their two-term asymptotics.

Surface quasi-eigenvalues with ``m >= 1`` are compared with lattice points
``(m, n)`` in the quarter ellipse ``E_sigma``: ``(m pi/L)^2 + (n pi/M)^2 <
sigma^2``.  Along row ``n`` the quantization condition reads
``m = x_n - f(lam_n / sigma)`` with ``x_n = sqrt(sigma^2 - lam_n^2) L / pi``
and the perturbation profile ``f(t) = -kappa - (theta_q(t) + theta_r(t))/pi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .config import PrismConfig
from .edge import edge_counting_asymptotic, enumerate_edge_quasi, expand_values
from .errors import DomainError
from .surface import _f, _solve_many, enumerate_surface_quasi, theta_phase


@dataclass(frozen=True)
class EllipseSpec:
    sigma: float
    L: float
    M: float

    def row_extent(self, n: int) -> float:
        """x_n: the ellipse reaches m < x_n on row n."""
        lam = n * math.pi / self.M
        if lam >= self.sigma:
            return 0.0
        return math.sqrt((self.sigma - lam) * (self.sigma + lam)) * self.L / math.pi


def _inside(m, lam, sigma: float, L: float):
    """The single membership test used everywhere, so points on the boundary are classified consistently."""
    return (np.asarray(m) * math.pi / L) ** 2 + np.asarray(lam) ** 2 < sigma**2


def lattice_count(spec: EllipseSpec) -> int:
    """Points (m, n), m >= 1, n >= 0, strictly inside E_sigma."""
    if spec.sigma <= 0:
        raise ValueError("sigma must be positive")
    total = 0
    n = 0
    while _inside(0, n * math.pi / spec.M, spec.sigma, spec.L):
        lam = n * math.pi / spec.M
        m = 1
        while _inside(m, lam, spec.sigma, spec.L):
            m += 1
        total += m - 1
        n += 1
    return total


def _row_counts(sigma: float, L: float, M: float):
    """Per-row lattice counts and the row extents x_n, vectorised."""
    n = np.arange(0, int(math.floor(sigma * M / math.pi)) + 2)
    lam = n * math.pi / M
    keep = _inside(0, lam, sigma, L)
    n, lam = n[keep], lam[keep]
    x = np.sqrt(np.maximum((sigma - lam) * (sigma + lam), 0.0)) * L / math.pi
    counts = np.ceil(x).astype(np.int64) - 1
    # rounding in x can misplace points lying on the ellipse itself
    counts = np.where(_inside(counts + 1, lam, sigma, L), counts + 1, counts)
    counts = np.where((counts >= 1) & ~_inside(counts, lam, sigma, L), counts - 1, counts)
    return n, lam, x, counts


def perturbation_profile(cfg: PrismConfig, t):
    t_arr = np.asarray(t, dtype=float)
    if np.any((t_arr < 0) | (t_arr > 1)):
        raise DomainError("perturbation profile needs 0 <= t <= 1")
    out = -cfg.kappa - (theta_phase(cfg.q, t_arr) + theta_phase(cfg.r, t_arr)) / math.pi
    return float(out) if np.ndim(t) == 0 else out


def theta_integral(cfg: PrismConfig) -> float:
    """Integral over [0, 1] of theta_q + theta_r, by quadrature in t = sin(u)."""

    def integrand(u):
        t = math.sin(u)
        return (theta_phase(cfg.q, t) + theta_phase(cfg.r, t)) * math.cos(u)

    val, _ = quad(integrand, 0.0, math.pi / 2, epsabs=1e-13, epsrel=1e-13, limit=200)
    return float(val)


def theta_integral_closed_form(cfg: PrismConfig) -> float:
    """Same integral term by term: int_0^1 arctan(c sqrt(1-t^2)) dt = pi(sqrt(1+c^2)-1)/(2c)."""
    total = 0.0
    for k in (cfg.q, cfg.r):
        for j in range(1, k):
            x = j * math.pi / (2 * k)
            total -= 0.5 * math.pi * (1 - math.sin(x)) / math.cos(x)
    return total


def profile_integral(cfg: PrismConfig) -> float:
    """int_0^1 f(t) dt, the limiting deficit per row."""
    return -cfg.kappa - theta_integral(cfg) / math.pi


def deficit_exact(cfg: PrismConfig, sigma: float, modes=None, method: str = "roots") -> int:
    """Signed number of lattice points in E_sigma not matched by a surface quasi-eigenvalue.

    Counts ellipse points whose quasi-eigenvalue ``sigma_{m,n}`` is ``>= sigma``
    minus points outside the ellipse whose quasi-eigenvalue is ``< sigma``, so

        #{surface quasi-eigenvalues < sigma with m >= 1} = lattice_count - deficit

    holds exactly.  The outside points only occur where ``f < 0`` (kappa = 1/2).

    ``modes``: a surface enumeration past ``sigma``; counts solved roots.
    ``method="roots"``: solves sigma_{m,n} for the band
    ``x_n - f(0) - 1 <= m <= x_n + kappa + 1`` on every row; points further
    inside satisfy ``m < f_n(sigma)`` automatically.
    ``method="profile"``: counts ``m < f_n(sigma)`` per row without solving.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    n_arr, lam_arr, x_arr, counts = _row_counts(sigma, cfg.L, cfg.M)
    lattice = int(counts.sum())
    if modes is not None:
        matched = sum(1 for md in modes if md.m >= 1 and md.sigma < sigma)
        return lattice - matched
    if method == "profile":
        fvals = np.array([float(_f(cfg, l, sigma)) for l in lam_arr])
        surf = np.maximum(np.ceil(fvals).astype(np.int64) - 1, 0)
        return lattice - int(surf.sum())
    if method != "roots":
        raise ValueError(f"unknown method {method!r}")
    f0 = perturbation_profile(cfg, 0.0)
    signed = 0
    for n, lam, x in zip(n_arr, lam_arr, x_arr):
        lo = max(1, math.floor(x - f0) - 1)
        hi = math.floor(x + cfg.kappa) + 1
        if hi < lo:
            continue
        ms = np.arange(lo, hi + 1)
        sig = _solve_many(cfg, int(n), ms)
        inside = _inside(ms, lam, sigma, cfg.L)
        signed += int(np.sum(inside & (sig >= sigma))) - int(np.sum(~inside & (sig < sigma)))
    return signed


def deficit_asymptotic(cfg: PrismConfig, sigma: float) -> float:
    return cfg.M * sigma / math.pi * profile_integral(cfg)


def surface_counting_asymptotic(cfg: PrismConfig, sigma: float) -> float:
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    L, M = cfg.L, cfg.M
    return (
        L * M * sigma**2 / (4 * math.pi)
        + (L - M) * sigma / (2 * math.pi)
        + cfg.kappa * M * sigma / math.pi
        + M * sigma / math.pi**2 * theta_integral(cfg)
    )


def s_limit(cfg: PrismConfig) -> float:
    """Linear coefficient of N^e + N^s, the conjectured limit of S(sigma)."""
    surface_linear = surface_counting_asymptotic(cfg, 1.0) - cfg.L * cfg.M / (4 * math.pi)
    return surface_linear + edge_counting_asymptotic(cfg, 1.0)


def approx_sigma_check(cfg: PrismConfig, sigma: float) -> float:
    """max |f(n/sigma_{m,n}) - f(n/sigma)| over the rows and the band near the ellipse edge.

    The band is ``x_n - ceil(f(0)) - 1 <= m <= x_n`` with ``m >= 1``.
    """
    width = math.ceil(perturbation_profile(cfg, 0.0)) + 1
    worst = 0.0
    n_arr, lam_arr, x_arr, _ = _row_counts(sigma, cfg.L, cfg.M)
    for n, lam, x in zip(n_arr, lam_arr, x_arr):
        ms = np.arange(max(1, math.ceil(x - width)), math.floor(x) + 1)
        if ms.size == 0:
            continue
        sig = _solve_many(cfg, int(n), ms)
        a = perturbation_profile(cfg, np.clip(lam / sig, 0, 1))
        b = perturbation_profile(cfg, lam / sigma)
        worst = max(worst, float(np.max(np.abs(a - b))))
    return worst


@dataclass
class CountReport:
    """Counting series on a sigma grid.

    ``exact_total`` includes the constant mode (sigma = 0) once.
    """

    sigma_grid: list
    exact_Ne: list
    exact_Ns: list
    exact_total: list
    asym_Ne: list
    asym_Ns: list
    deficit_exact: list
    deficit_asym: list
    S_values: list
    s_limit: float
    meta: dict = field(default_factory=dict)


def quasi_spectrum(cfg: PrismConfig, sigma_max: float):
    """Edge values (with multiplicity) and surface modes below ``sigma_max``."""
    edge = np.sort(np.array(expand_values(enumerate_edge_quasi(cfg, sigma_max)), dtype=float))
    surface = enumerate_surface_quasi(cfg, sigma_max)
    return edge, surface


def merged_quasi_values(cfg: PrismConfig, sigma_max: float) -> np.ndarray:
    """Sorted quasi-eigenvalues below ``sigma_max``, the constant mode first."""
    edge, surface = quasi_spectrum(cfg, sigma_max)
    vals = np.concatenate([[0.0], edge, [md.sigma for md in surface]])
    return np.sort(vals)


def total_counts_and_S(cfg: PrismConfig, sigma_grid) -> CountReport:
    grid = np.asarray(sigma_grid, dtype=float)
    if grid.size == 0 or np.any(np.diff(grid) < 0) or grid[0] <= 0:
        raise ValueError("sigma grid must be positive and ascending")
    edge, surface = quasi_spectrum(cfg, float(grid[-1]) * (1 + 1e-12) + 1e-12)
    surf_vals = np.sort(np.array([md.sigma for md in surface]))
    surf_pos = np.sort(np.array([md.sigma for md in surface if md.m >= 1]))
    Ne = np.searchsorted(edge, grid, side="left")
    Ns = np.searchsorted(surf_vals, grid, side="left")
    total = Ne + Ns + 1
    lead = cfg.L * cfg.M * grid**2 / (4 * math.pi)
    S = (total - lead) / grid
    lattice = np.array([int(_row_counts(s, cfg.L, cfg.M)[3].sum()) for s in grid])
    deficit = lattice - np.searchsorted(surf_pos, grid, side="left")
    return CountReport(
        sigma_grid=grid.tolist(),
        exact_Ne=Ne.tolist(),
        exact_Ns=Ns.tolist(),
        exact_total=total.tolist(),
        asym_Ne=[edge_counting_asymptotic(cfg, s) for s in grid],
        asym_Ns=[surface_counting_asymptotic(cfg, s) for s in grid],
        deficit_exact=deficit.tolist(),
        deficit_asym=[deficit_asymptotic(cfg, s) for s in grid],
        S_values=S.tolist(),
        s_limit=s_limit(cfg),
        meta={"L": cfg.L, "M": cfg.M, "q": cfg.q, "r": cfg.r},
    )
