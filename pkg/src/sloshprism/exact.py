"""Closed-form spectra used as independent oracles.

For ``alpha = beta = pi/4`` the prism extends by even reflection to a square
cylinder and the problem separates in ``(x, y)``.  Five families appear:
``cosh cosh``, ``sinh sinh``, ``cos cosh``, ``sin sinh`` and the single
function ``xy``.  For the right-angled prism of depth ``R`` the spectrum is
``mu tanh(mu R)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import RootNotBracketed

SQRT2 = math.sqrt(2.0)


class Branch(enum.Enum):
    COSH_COSH = "CoshCosh"
    SINH_SINH = "SinhSinh"
    COS_COSH = "CosCosh"
    SIN_SINH = "SinSinh"
    XY = "XY"


@dataclass(frozen=True)
class Pi4Root:
    branch: Branch
    n: int
    m: int
    sigma: float
    chi: float | None = None


def _check(L, M, sigma_max):
    if not (L > 0 and M > 0):
        raise ValueError("L and M must be positive")
    if sigma_max <= 0:
        raise ValueError("sigma_max must be positive")


def pi4_corner_branches(L: float, M: float, sigma_max: float) -> list[Pi4Root]:
    _check(L, M, sigma_max)
    out = [Pi4Root(Branch.COSH_COSH, 0, 0, 0.0)]
    n = 1
    # both branches approach lam/sqrt2; tanh lies below, coth above
    while True:
        lam = n * math.pi / M
        arg = lam * L / (2 * SQRT2)
        lo = lam / SQRT2 * math.tanh(arg)
        if lo >= sigma_max:
            break
        out.append(Pi4Root(Branch.COSH_COSH, n, 0, lo))
        hi = lam / SQRT2 / math.tanh(arg)
        if hi < sigma_max:
            out.append(Pi4Root(Branch.SINH_SINH, n, 0, hi))
        n += 1
    if 2.0 / L < sigma_max:
        out.append(Pi4Root(Branch.XY, 0, 0, 2.0 / L))
    out.sort(key=lambda rt: rt.sigma)
    return out


def _cond(chi, lam, L, k, hyper):
    eta = math.hypot(chi, lam)
    h = math.tanh(eta * L / 2)
    if hyper == "coth":
        h = 1.0 / h
    return chi * L / math.pi + 2 / math.pi * math.atan(math.sqrt(1 + (lam / chi) ** 2) * h) - k


def _solve_branch(lam, L, k, lo, hi, hyper):
    a = lo + 1e-14 * max(1.0, lo) if lo == 0 else lo
    fa, fb = _cond(a, lam, L, k, hyper), _cond(hi, lam, L, k, hyper)
    if fa == 0:
        return a
    if fb == 0:
        return hi
    if fa * fb > 0:
        return None
    return brentq(_cond, a, hi, args=(lam, L, k, hyper), xtol=1e-15, rtol=4 * np.finfo(float).eps)


def pi4_oscillatory_roots(L: float, M: float, sigma_max: float) -> list[Pi4Root]:
    """Roots of the cos-cosh and sin-sinh conditions below ``sigma_max``.

    Conditions are solved for chi > 0 in the rearranged form
    ``chi L/pi + (2/pi) arctan(sqrt(1 + (lam/chi)^2) h(eta L/2)) = k``
    with ``eta = sqrt(chi^2 + lam^2)`` and ``h = tanh`` (k = 2m) or ``coth``
    (k = 2m+1).  Positivity of sigma puts chi in ``((2m-1)pi/L, 2m pi/L)``
    respectively ``(2m pi/L, (2m+1) pi/L)``.
    """
    _check(L, M, sigma_max)
    out = []
    n = 0
    while n * math.pi / M < sigma_max:
        lam = n * math.pi / M
        m = 0
        while True:
            # sigma > sqrt(chi^2 + lam^2) - tiny, chi >= (2m - 1) pi/L
            chi_floor = max(0.0, (2 * m - 1) * math.pi / L)
            if math.hypot(chi_floor, lam) * 0.999 > sigma_max + 1:
                break
            if m >= 1:
                chi = _solve_branch(lam, L, 2 * m, (2 * m - 1) * math.pi / L, 2 * m * math.pi / L, "tanh")
                if chi is None:
                    raise RootNotBracketed(f"cos-cosh condition not bracketed at n={n}, m={m}")
                # equal to -chi tan(chi L/2) at the root, but well conditioned in chi
                eta = math.hypot(chi, lam)
                sig = eta * math.tanh(eta * L / 2)
                if 0 < sig < sigma_max:
                    out.append(Pi4Root(Branch.COS_COSH, n, m, sig, chi))
            lo = 2 * m * math.pi / L
            chi = _solve_branch(lam, L, 2 * m + 1, lo, (2 * m + 1) * math.pi / L, "coth")
            if chi is None and m >= 1:
                raise RootNotBracketed(f"sin-sinh condition not bracketed at n={n}, m={m}")
            if chi is not None:
                eta = math.hypot(chi, lam)
                sig = eta / math.tanh(eta * L / 2)
                if 0 < sig < sigma_max:
                    out.append(Pi4Root(Branch.SIN_SINH, n, m, sig, chi))
            m += 1
        n += 1
    out.sort(key=lambda rt: rt.sigma)
    return out


def pi4_spectrum(L: float, M: float, sigma_max: float) -> list[Pi4Root]:
    roots = pi4_corner_branches(L, M, sigma_max) + pi4_oscillatory_roots(L, M, sigma_max)
    roots.sort(key=lambda rt: rt.sigma)
    return roots


def pi4_s_target(L: float, M: float) -> float:
    return (L + M * (2 * SQRT2 + 1)) / (2 * math.pi)


def pi4_counting_check(L: float, M: float, sigma_max: float, points: int = 200):
    """(sigma grid, S(sigma) from the exact spectrum, theoretical limit)."""
    if sigma_max < 20:
        raise ValueError("sigma_max must be at least 20")
    vals = np.array([rt.sigma for rt in pi4_spectrum(L, M, sigma_max)])
    grid = np.linspace(sigma_max / points, sigma_max, points)
    N = np.searchsorted(vals, grid, side="left")
    S = (N - L * M * grid**2 / (4 * math.pi)) / grid
    return grid, S, pi4_s_target(L, M)


def cuboid_reference(L: float, M: float, R: float, sigma_max: float) -> list[float]:
    """Eigenvalues mu tanh(mu R), mu = |(m pi/L, n pi/M)|, of the rectangular tank."""
    if R <= 0:
        raise ValueError("R must be positive")
    _check(L, M, sigma_max)
    vals = []
    m = 0
    while True:
        mu0 = m * math.pi / L
        if mu0 * math.tanh(mu0 * R) >= sigma_max and m > 0:
            break
        n = 0
        while True:
            mu = math.hypot(mu0, n * math.pi / M)
            s = mu * math.tanh(mu * R)
            if s >= sigma_max:
                break
            vals.append(s)
            n += 1
        m += 1
    return sorted(vals)


@dataclass
class CrossCheck:
    """Sorted exact pi/4 spectrum paired index-by-index with the q = r = 2 quasi list."""

    pairs: list  # (exact sigma, quasi sigma, gap)
    window_edges: list
    window_max: list
    floor: float

    @property
    def max_gap(self) -> float:
        return max(g for _, _, g in self.pairs)

    @property
    def decreasing(self) -> bool:
        """Window maxima shrink until they reach the rounding floor."""
        w = self.window_max
        return all(b < a or b <= self.floor for a, b in zip(w, w[1:]))


def pi4_cross_check(L: float, M: float, lo: float = 5.0, hi: float = 30.0, window: float = 5.0) -> CrossCheck:
    from .config import validate_config
    from .counting import merged_quasi_values

    top = hi + 2.0
    exact = np.array([rt.sigma for rt in pi4_spectrum(L, M, top)])
    quasi = merged_quasi_values(validate_config(L, M, 2, 2), top)
    n = min(len(exact), len(quasi))
    exact, quasi = exact[:n], quasi[:n]
    sel = (exact >= lo) & (exact <= hi)
    pairs = [(float(a), float(b), float(abs(a - b))) for a, b in zip(exact[sel], quasi[sel])]
    edges = list(np.arange(lo, hi, window))
    wmax = []
    for a in edges:
        g = [p[2] for p in pairs if a <= p[0] < a + window]
        wmax.append(max(g) if g else 0.0)
    # bracketing and root polishing leave a few ulps of sigma
    floor = 64 * np.finfo(float).eps * hi
    return CrossCheck(pairs, [float(e) for e in edges], wmax, float(floor))
