"""Edge-wave quasimodes built from Ursell's sloping-beach solutions.

In the sector ``S = {-angle <= theta <= 0}`` with the free surface on
``y = 0`` the edge wave of order ``m`` is a finite sum of real exponentials
with Steklov eigenvalue ``lambda_n * sin((2m+1) angle)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .config import PrismConfig
from .errors import IndexOutOfRange, OutsideSector, TangentPole

_SECTOR_TOL = 1e-12


class Corner(enum.IntEnum):
    ALPHA = 0
    BETA = 1
    # alpha and beta modes with the same eigenvalue, (2m+1) r == (2l+1) q
    BOTH = 2

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class EdgeMode:
    """One edge-wave quasimode attached to a single corner.

    ``angle_integer`` is q for the alpha corner and r for the beta corner.
    For ``Corner.BOTH`` the beta-corner index is kept in ``partner_m``.
    """

    corner: Corner
    n: int
    m: int
    sigma: float
    lam: float
    angle_integer: int
    coeffs: tuple[float, ...] = ()
    multiplicity: int = 1
    partner_m: int | None = None

    @property
    def angle(self) -> float:
        return math.pi / (2 * self.angle_integer)


@dataclass(frozen=True)
class CornerPairMode:
    """The glued mode psi_n, present only when q and r are both odd."""

    n: int
    sigma: float
    amp_alpha: float
    amp_beta: float
    cfg: PrismConfig = field(repr=False)
    multiplicity: int = 1

    @property
    def lam(self) -> float:
        return self.sigma


def edge_coefficients(q: int, m: int) -> list[float]:
    """Coefficients A_{1m}, ..., A_{mm} of the order-m edge wave at angle pi/(2q)."""
    if m < 0 or 2 * m > q - 1:
        raise IndexOutOfRange(f"need 0 <= m <= (q-1)/2, got q={q}, m={m}")
    alpha = math.pi / (2 * q)
    out = []
    prod = 1.0
    for j in range(1, m + 1):
        top, bottom = (m - j + 1) * alpha, (m + j) * alpha
        for ang in (top, bottom):
            if abs(math.cos(ang)) < 1e-12:
                raise TangentPole(f"tan({ang}) is at a pole (q={q}, m={m}, j={j})")
        prod *= math.tan(top) / math.tan(bottom)
        out.append((-1) ** j * prod)
    return out


def _edge_terms(angle: float, coeffs) -> list[tuple[float, float, float]]:
    # each term is coef * exp(-lam * (c x + s y))
    terms = [(1.0, math.cos(angle), -math.sin(angle))]
    for j, a in enumerate(coeffs, start=1):
        terms.append((a, math.cos((2 * j - 1) * angle), math.sin((2 * j - 1) * angle)))
        terms.append((a, math.cos((2 * j + 1) * angle), -math.sin((2 * j + 1) * angle)))
    return terms


def _check_sector(angle: float, x, y) -> None:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    bad = (x < -_SECTOR_TOL) | (y > _SECTOR_TOL)
    if angle < math.pi / 2 - 1e-15:
        bad |= y < -x * math.tan(angle) - _SECTOR_TOL * (1 + np.abs(x))
    if np.any(bad):
        raise OutsideSector(f"point(s) outside the sector of angle {angle}")


def _sector_value(angle, lam, coeffs, x, y, check=True):
    if check:
        _check_sector(angle, x, y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    val = np.zeros(np.broadcast(x, y).shape)
    for coef, c, s in _edge_terms(angle, coeffs):
        val = val + coef * np.exp(-lam * (c * x + s * y))
    return val


def _sector_gradient(angle, lam, coeffs, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    gx = np.zeros(np.broadcast(x, y).shape)
    gy = np.zeros_like(gx)
    for coef, c, s in _edge_terms(angle, coeffs):
        e = coef * np.exp(-lam * (c * x + s * y))
        gx = gx - lam * c * e
        gy = gy - lam * s * e
    return gx, gy


def edge_wave_value(mode, x, y, check=True):
    """Evaluate an edge mode.

    ``EdgeMode`` is evaluated in its own sector coordinates (corner at the
    origin, surface along ``y = 0``, water in ``x >= 0``).  ``CornerPairMode``
    is evaluated on the triangle in global coordinates.
    """
    if isinstance(mode, CornerPairMode):
        return _pair_value(mode, x, y)
    return _sector_value(mode.angle, mode.lam, mode.coeffs, x, y, check)


def edge_wave_gradient(mode: EdgeMode, x, y):
    return _sector_gradient(mode.angle, mode.lam, mode.coeffs, x, y)


def _pair_value(mode: CornerPairMode, x, y):
    cfg = mode.cfg
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    lam = mode.lam
    ca = edge_coefficients(cfg.q, (cfg.q - 1) // 2)
    cb = edge_coefficients(cfg.r, (cfg.r - 1) // 2)
    va = _sector_value(cfg.alpha, lam, ca, x, y, check=False)
    vb = _sector_value(cfg.beta, lam, cb, cfg.L - x, y, check=False)
    # the glued constant uses exp(lam * y); the printed exp(lam) is a typo
    return mode.amp_beta * va + mode.amp_alpha * vb - mode.amp_alpha * mode.amp_beta * np.exp(lam * y)


def corner_pair_gradient(mode: CornerPairMode, x, y):
    cfg = mode.cfg
    lam = mode.lam
    ca = edge_coefficients(cfg.q, (cfg.q - 1) // 2)
    cb = edge_coefficients(cfg.r, (cfg.r - 1) // 2)
    ax, ay = _sector_gradient(cfg.alpha, lam, ca, x, y)
    bx, by = _sector_gradient(cfg.beta, lam, cb, cfg.L - np.asarray(x, float), y)
    ey = lam * np.exp(lam * np.asarray(y, float))
    gx = mode.amp_beta * ax - mode.amp_alpha * bx
    gy = mode.amp_beta * ay + mode.amp_alpha * by - mode.amp_alpha * mode.amp_beta * ey
    return gx, gy


def _corner_orders(k: int) -> range:
    """Admissible orders 0 <= m < (k-1)/2 for a decaying edge wave."""
    return range(k // 2)


def enumerate_edge_quasi(cfg: PrismConfig, sigma_max: float) -> list:
    """All edge quasi-eigenvalues below ``sigma_max``, sorted ascending."""
    if sigma_max <= 0:
        raise ValueError("sigma_max must be positive")
    lam1 = math.pi / cfg.M
    modes: list = []
    beta_orders = set(_corner_orders(cfg.r))
    # alpha index -> coincident beta index
    twins = {}
    for m in _corner_orders(cfg.q):
        num = (2 * m + 1) * cfg.r
        if num % cfg.q == 0 and (num // cfg.q) % 2 == 1:
            ell = (num // cfg.q - 1) // 2
            if ell in beta_orders:
                twins[m] = ell
    alpha_coeffs = {m: tuple(edge_coefficients(cfg.q, m)) for m in _corner_orders(cfg.q)}
    beta_coeffs = {l: tuple(edge_coefficients(cfg.r, l)) for l in _corner_orders(cfg.r)}

    n = 1
    while n * lam1 * min(math.sin(cfg.alpha), math.sin(cfg.beta)) < sigma_max:
        lam = n * lam1
        for m, co in alpha_coeffs.items():
            s = lam * math.sin((2 * m + 1) * cfg.alpha)
            if s >= sigma_max:
                continue
            if m in twins:
                modes.append(EdgeMode(Corner.BOTH, n, m, s, lam, cfg.q, co, 2, twins[m]))
            else:
                modes.append(EdgeMode(Corner.ALPHA, n, m, s, lam, cfg.q, co))
        for l, co in beta_coeffs.items():
            if l in twins.values():
                continue
            s = lam * math.sin((2 * l + 1) * cfg.beta)
            if s < sigma_max:
                modes.append(EdgeMode(Corner.BETA, n, l, s, lam, cfg.r, co))
        n += 1

    if cfg.nu == 1:
        amp_a = edge_coefficients(cfg.q, (cfg.q - 1) // 2)
        amp_b = edge_coefficients(cfg.r, (cfg.r - 1) // 2)
        a = amp_a[-1] if amp_a else 1.0
        b = amp_b[-1] if amp_b else 1.0
        n = 1
        while n * lam1 < sigma_max:
            modes.append(CornerPairMode(n, n * lam1, a, b, cfg))
            n += 1

    modes.sort(key=_sort_key)
    return modes


def _sort_key(mode):
    if isinstance(mode, CornerPairMode):
        return (mode.sigma, 3, mode.n, 0)
    return (mode.sigma, int(mode.corner), mode.n, mode.m)


def edge_counting_asymptotic(cfg: PrismConfig, sigma: float) -> float:
    """Leading (linear) part of the edge-wave counting function."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    base = cfg.M * sigma / math.pi
    total = cfg.nu * base
    total += sum(base / math.sin((2 * m + 1) * cfg.alpha) for m in _corner_orders(cfg.q))
    total += sum(base / math.sin((2 * l + 1) * cfg.beta) for l in _corner_orders(cfg.r))
    return total


def expand_values(modes) -> list[float]:
    """Quasi-eigenvalues repeated by multiplicity."""
    out = []
    for mode in modes:
        out.extend([mode.sigma] * mode.multiplicity)
    return out
