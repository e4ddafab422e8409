"""Surface-wave quasimodes.

The sloping-beach solution ``v`` on a sector of angle ``pi/(2q)`` (rescaled
so the Steklov eigenvalue is 1 and the Helmholtz parameter is ``mu``) is a
sum of ``2q`` complex plane waves

    g_{a,b}(x, y) = exp(x cos a + y sin a) * exp(i s (x cos b + y sin b)),
    s = sqrt(1 - mu^2),

obtained from ``g_{pi/2, pi}`` by alternately applying a wall reflection
(keeps the Neumann condition on the wall) and a surface reflection (keeps the
Steklov condition on ``y = 0``).  Gluing the solutions from both corners so
their oscillating parts agree gives the quantization condition

    f_n(sigma) = (sqrt(sigma^2 - lam_n^2) L + theta_q + theta_r) / pi + kappa = m.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.optimize import brentq

from ._roots import bisect_increasing
from .config import PrismConfig, mode_wavenumber
from .errors import BelowCutoff, DomainError, OutsideSector, OutsideTriangle, QUndefined, RootNotBracketed

__all__ = [
    "BeachTerm",
    "BeachSolution",
    "SurfaceMode",
    "theta_phase",
    "build_beach_solution",
    "gamma_closed_form",
    "beach_value",
    "beach_parts",
    "beach_gradient",
    "quantization_value",
    "quantization_derivative",
    "solve_quasi",
    "enumerate_surface_quasi",
    "matching_constant",
    "quasimode_eval",
    "quasimode_gradient",
    "quasimode_defects",
]


def _cotangents(q: int) -> np.ndarray:
    # sin(j pi/q) / (1 - cos(j pi/q)) == cot(j pi / 2q)
    j = np.arange(1, q)
    return 1.0 / np.tan(j * np.pi / (2 * q))


def theta_phase(q: int, t):
    """Phase -sum_j arctan(sqrt(1-t^2) cot(j pi/2q)), j = 1..q-1."""
    t_arr = np.asarray(t, dtype=float)
    if np.any((t_arr < 0) | (t_arr > 1)):
        raise DomainError("theta_phase needs 0 <= t <= 1")
    s = np.sqrt((1.0 - t_arr) * (1.0 + t_arr))
    c = _cotangents(q)
    out = -np.arctan(np.multiply.outer(s, c)).sum(axis=-1)
    return float(out) if np.ndim(t) == 0 else out


# ---------------------------------------------------------------------------
# sloping-beach solution


@dataclass(frozen=True)
class BeachTerm:
    a: float
    b: float
    amp: complex


@dataclass(frozen=True)
class BeachSolution:
    mu: float
    q: int
    terms: tuple[BeachTerm, ...]
    gamma: complex

    @property
    def s(self) -> float:
        return math.sqrt(max(0.0, (1.0 - self.mu) * (1.0 + self.mu)))

    @property
    def angle(self) -> float:
        return math.pi / (2 * self.q)


def _surface_reflection_factor(a: float, b: float, s: float) -> complex:
    z = math.sin(a) + 1j * s * math.sin(b)
    return (z - 1) / (z + 1)


def build_beach_solution(q: int, mu: float) -> BeachSolution:
    if not 0.0 <= mu <= 1.0:
        raise DomainError("mu must lie in [0, 1]")
    s = math.sqrt((1.0 - mu) * (1.0 + mu))
    xi = -math.pi / q
    a, b, amp = math.pi / 2, math.pi, 1.0 + 0j
    terms = [BeachTerm(a, b, amp)]
    for k in range(1, 2 * q):
        if k % 2 == 1:
            a, b = -a + xi, -b + xi
        else:
            amp = amp * _surface_reflection_factor(a, b, s)
            a, b = -a, -b
        terms.append(BeachTerm(a, b, amp))
    return BeachSolution(mu, q, tuple(terms), terms[-1].amp)


def gamma_closed_form(q: int, mu: float) -> complex:
    s = math.sqrt((1.0 - mu) * (1.0 + mu))
    j = np.arange(1, q)
    ang = j * np.pi / q
    total = np.sum(np.arctan(s * np.sin(ang) / (np.cos(ang) - 1.0)))
    return (-1) ** (q - 1) * complex(np.exp(2j * total))


def _check_sector(angle: float, x, y) -> None:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    tol = 1e-12 * (1 + np.abs(x))
    bad = (x < -tol) | (y > tol)
    if angle < math.pi / 2 - 1e-15:
        bad |= y < -x * math.tan(angle) - tol
    if np.any(bad):
        raise OutsideSector("point(s) outside the sector")


def _term_value(term: BeachTerm, s: float, x, y):
    re = x * math.cos(term.a) + y * math.sin(term.a)
    im = s * (x * math.cos(term.b) + y * math.sin(term.b))
    return term.amp * np.exp(re + 1j * im)


def beach_parts(sol: BeachSolution, x, y, check=True):
    """Split ``v`` into its principal part (first and last term) and the rest."""
    if check:
        _check_sector(sol.angle, x, y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = sol.s
    principal = _term_value(sol.terms[0], s, x, y) + _term_value(sol.terms[-1], s, x, y)
    decaying = np.zeros(np.broadcast(x, y).shape, dtype=complex)
    for term in sol.terms[1:-1]:
        decaying = decaying + _term_value(term, s, x, y)
    return principal, decaying


def beach_value(sol: BeachSolution, x, y, check=True):
    p, d = beach_parts(sol, x, y, check)
    return p + d


def beach_gradient(sol: BeachSolution, x, y, part="all"):
    """Analytic gradient; ``part`` is ``"all"``, ``"principal"`` or ``"decaying"``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = sol.s
    if part == "all":
        terms = sol.terms
    elif part == "principal":
        terms = (sol.terms[0], sol.terms[-1])
    elif part == "decaying":
        terms = sol.terms[1:-1]
    else:
        raise ValueError(part)
    shape = np.broadcast(x, y).shape
    gx = np.zeros(shape, dtype=complex)
    gy = np.zeros(shape, dtype=complex)
    for term in terms:
        v = _term_value(term, s, x, y)
        gx = gx + (math.cos(term.a) + 1j * s * math.cos(term.b)) * v
        gy = gy + (math.sin(term.a) + 1j * s * math.sin(term.b)) * v
    return gx, gy


def real_principal_part(q: int, mu: float, x):
    """Principal part rotated to be real: 2cos(sx+theta) (q odd), 2sin(sx+theta) (q even)."""
    s = math.sqrt((1.0 - mu) * (1.0 + mu))
    th = theta_phase(q, mu)
    x = np.asarray(x, dtype=float)
    return 2 * np.cos(s * x + th) if q % 2 else 2 * np.sin(s * x + th)


# ---------------------------------------------------------------------------
# quantization


def _f_parts(cfg: PrismConfig, lam: float, sigma):
    sigma = np.asarray(sigma, dtype=float)
    t = np.clip(lam / sigma, 0.0, 1.0)
    root = np.sqrt(np.maximum((sigma - lam) * (sigma + lam), 0.0))
    return t, root


def _f(cfg: PrismConfig, lam: float, sigma):
    t, root = _f_parts(cfg, lam, sigma)
    th = theta_phase(cfg.q, t) + theta_phase(cfg.r, t)
    return (root * cfg.L + th) / math.pi + cfg.kappa


def _fprime_bracket(cfg: PrismConfig, lam: float, sigma):
    """The factor L - lam^2 sum_j c_j / (sigma^3 (1 + c_j^2 s^2)) whose sign is that of f_n'."""
    sigma = np.asarray(sigma, dtype=float)
    t = np.clip(lam / sigma, 0.0, 1.0)
    s2 = (1.0 - t) * (1.0 + t)
    c = np.concatenate([_cotangents(cfg.q), _cotangents(cfg.r)])
    tot = np.sum(c / (1.0 + np.multiply.outer(s2, c**2)), axis=-1)
    return cfg.L - lam**2 * tot / sigma**3


def quantization_value(cfg: PrismConfig, n: int, sigma):
    """f_n(sigma); the surface quasi-eigenvalues solve f_n(sigma) = m."""
    lam = mode_wavenumber(cfg, n)
    sig = np.asarray(sigma, dtype=float)
    if np.any(sig <= lam) or np.any(sig <= 0):
        raise BelowCutoff(f"sigma must exceed lambda_{n} = {lam}")
    out = _f(cfg, lam, sig)
    return float(out) if np.ndim(sigma) == 0 else out


def quantization_derivative(cfg: PrismConfig, n: int, sigma):
    lam = mode_wavenumber(cfg, n)
    sig = np.asarray(sigma, dtype=float)
    if np.any(sig <= lam):
        raise BelowCutoff(f"sigma must exceed lambda_{n} = {lam}")
    s = np.sqrt((sig - lam) * (sig + lam)) / sig
    out = _fprime_bracket(cfg, lam, sig) / (math.pi * s)
    return float(out) if np.ndim(sigma) == 0 else out


@dataclass(frozen=True)
class SurfaceMode:
    m: int
    n: int
    sigma: float
    theta_alpha: float
    theta_beta: float
    residual: float
    cfg: PrismConfig = field(repr=False, compare=False)

    @property
    def lam(self) -> float:
        return mode_wavenumber(self.cfg, self.n)

    @property
    def mu(self) -> float:
        return self.lam / self.sigma

    @cached_property
    def Q(self) -> complex:
        return matching_constant(self.cfg, self)


def _make_mode(cfg, m, n, sigma) -> SurfaceMode:
    lam = mode_wavenumber(cfg, n)
    t = lam / sigma
    res = abs(float(_f(cfg, lam, sigma)) - m)
    return SurfaceMode(int(m), int(n), float(sigma), theta_phase(cfg.q, t), theta_phase(cfg.r, t), res, cfg)


def _solve_many(cfg: PrismConfig, n: int, ms) -> np.ndarray:
    """Solve f_n(sigma) = m for an array of m >= 1 at fixed n."""
    lam = mode_wavenumber(cfg, n)
    ms = np.asarray(ms, dtype=float)
    shift = (cfg.q + cfg.r - 2) / 4.0
    # f lies between sqrt(s^2-lam^2) L/pi + kappa - shift and the same without shift
    lo = np.sqrt(((ms - cfg.kappa) * math.pi / cfg.L) ** 2 + lam**2)
    hi = np.sqrt(((ms - cfg.kappa + shift) * math.pi / cfg.L) ** 2 + lam**2)
    lo = np.maximum(lo * (1 - 1e-12), lam * (1 + 1e-9) if lam > 0 else 1e-300)
    hi = hi * (1 + 1e-12) + 1e-300
    flo = _f(cfg, lam, lo) - ms
    fhi = _f(cfg, lam, hi) - ms
    if np.any(flo > 0) or np.any(fhi < 0):
        raise RootNotBracketed(f"quantization root not bracketed for n={n}")

    def g(x):
        return _f(cfg, lam, x) - ms

    def gp(x):
        s = np.sqrt((x - lam) * (x + lam)) / x
        return _fprime_bracket(cfg, lam, x) / (math.pi * s)

    return bisect_increasing(g, lo, hi, iters=80, fprime=gp, newton_steps=3)


def solve_quasi(cfg: PrismConfig, m: int, n: int) -> SurfaceMode:
    """The unique root sigma_{m,n} > lambda_n of f_n(sigma) = m for m >= 1."""
    if m < 1:
        raise ValueError("solve_quasi needs m >= 1; use enumerate_surface_quasi for m <= 0")
    sigma = float(_solve_many(cfg, n, [m])[0])
    return _make_mode(cfg, m, n, sigma)


def _negative_branch(cfg: PrismConfig, n: int, sigma_max: float) -> list[tuple[int, float]]:
    """Roots of f_n = m with m <= 0 (finitely many), excluding the cutoff root."""
    lam = mode_wavenumber(cfg, n)
    found = []
    if n == 0:
        # f_0 is affine: sigma L/pi + c0
        c0 = cfg.kappa - (cfg.q + cfg.r - 2) / 4.0
        m = math.floor(c0) + 1
        while m <= 0:
            sigma = (m - c0) * math.pi / cfg.L
            if 0 < sigma < sigma_max:
                found.append((m, sigma))
            m += 1
        return found
    if _fprime_bracket(cfg, lam, lam) >= 0:
        return found  # f_n increases from kappa >= 0

    def g(x):
        return float(_fprime_bracket(cfg, lam, x))

    hi = 2 * lam
    while g(hi) <= 0:
        hi *= 2
    lo = lam * (1 + 1e-14)
    crit = brentq(g, lo, hi, xtol=1e-14, rtol=1e-15)
    fmin = float(_f(cfg, lam, crit))

    def fm(x, m):
        return float(_f(cfg, lam, x)) - m

    for m in range(math.floor(fmin) + 1, 1):
        if fm(crit, m) >= 0:
            continue
        # left branch: f falls from kappa to fmin; m == kappa == 0 is the trivial root
        if m < cfg.kappa:
            a = lam * (1 + 1e-15)
            if fm(a, m) > 0:
                found.append((m, brentq(fm, a, crit, args=(m,), xtol=1e-14, rtol=1e-15)))
        b = crit * 2
        while fm(b, m) <= 0:
            b *= 2
        found.append((m, brentq(fm, crit, b, args=(m,), xtol=1e-14, rtol=1e-15)))
    return [(m, s) for m, s in found if s < sigma_max]


def enumerate_surface_quasi(cfg: PrismConfig, sigma_max: float) -> list[SurfaceMode]:
    """All surface quasi-eigenvalues below ``sigma_max`` (including m <= 0 roots)."""
    if sigma_max <= 0:
        raise ValueError("sigma_max must be positive")
    modes: list[SurfaceMode] = []
    n = 0
    while mode_wavenumber(cfg, n) < sigma_max:
        lam = mode_wavenumber(cfg, n)
        for m, sigma in _negative_branch(cfg, n, sigma_max):
            modes.append(_make_mode(cfg, m, n, sigma))
        # sigma_{m,n} >= sqrt(((m - kappa) pi/L)^2 + lam^2)
        m_max = math.floor(math.sqrt(max(sigma_max**2 - lam**2, 0.0)) * cfg.L / math.pi + cfg.kappa) + 1
        if m_max >= 1:
            ms = np.arange(1, m_max + 1)
            sig = _solve_many(cfg, n, ms)
            keep = sig < sigma_max
            if np.any(keep):
                ms_k, sig_k = ms[keep], sig[keep]
                t = lam / sig_k
                th_a = theta_phase(cfg.q, t)
                th_b = theta_phase(cfg.r, t)
                res = np.abs(_f(cfg, lam, sig_k) - ms_k)
                for i in range(len(ms_k)):
                    modes.append(
                        SurfaceMode(int(ms_k[i]), n, float(sig_k[i]), float(th_a[i]), float(th_b[i]), float(res[i]), cfg)
                    )
        n += 1
    modes.sort(key=lambda md: (md.sigma, md.n, md.m))
    return modes


# ---------------------------------------------------------------------------
# glued quasimodes on the triangle


def _beaches(cfg: PrismConfig, mode: SurfaceMode):
    mu = min(max(mode.mu, 0.0), 1.0)
    return build_beach_solution(cfg.q, mu), build_beach_solution(cfg.r, mu)


def matching_constant(cfg: PrismConfig, mode: SurfaceMode, tol: float = 1e-6) -> complex:
    """Q with v_alpha^p(sigma x) = Q v_beta^p(sigma (L - x)) on the free surface."""
    va, vb = _beaches(cfg, mode)
    xs = np.linspace(0.0, cfg.L, 9)
    pa, _ = beach_parts(va, mode.sigma * xs, 0.0 * xs, check=False)
    pb, _ = beach_parts(vb, mode.sigma * (cfg.L - xs), 0.0 * xs, check=False)
    den = np.vdot(pb, pb).real
    if den == 0:
        raise QUndefined("beta principal part vanishes identically")
    Q = np.vdot(pb, pa) / den
    scale = np.max(np.abs(pa))
    if np.max(np.abs(pa - Q * pb)) > tol * max(scale, 1.0):
        raise QUndefined(f"principal parts do not match (residual {mode.residual:.2e})")
    return complex(Q)


def _check_triangle(cfg: PrismConfig, x, y) -> None:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    tol = 1e-12 * (1 + cfg.L)
    bad = (y > tol) | (x < -tol) | (x > cfg.L + tol)
    if cfg.q > 1:
        bad |= y < -x * math.tan(cfg.alpha) - tol
    if cfg.r > 1:
        bad |= y < -(cfg.L - x) * math.tan(cfg.beta) - tol
    if np.any(bad):
        raise OutsideTriangle("point(s) outside the triangle")


def quasimode_eval(cfg: PrismConfig, mode: SurfaceMode, x, y, check=True):
    """g(x,y) = v_alpha(sigma x, sigma y) + Q v_beta^d(sigma (L-x), sigma y)."""
    if check:
        _check_triangle(cfg, x, y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    va, vb = _beaches(cfg, mode)
    s = mode.sigma
    full_a = beach_value(va, s * x, s * y, check=False)
    _, dec_b = beach_parts(vb, s * (cfg.L - x), s * y, check=False)
    return full_a + mode.Q * dec_b


def quasimode_gradient(cfg: PrismConfig, mode: SurfaceMode, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    va, vb = _beaches(cfg, mode)
    s = mode.sigma
    ax, ay = beach_gradient(va, s * x, s * y)
    bx, by = beach_gradient(vb, s * (cfg.L - x), s * y, part="decaying")
    return s * (ax - mode.Q * bx), s * (ay + mode.Q * by)


@dataclass(frozen=True)
class DefectReport:
    steklov_max: float
    wall_alpha_max: float
    wall_beta_max: float

    @property
    def wall_max(self) -> float:
        return max(self.wall_alpha_max, self.wall_beta_max)


def quasimode_defects(cfg: PrismConfig, mode: SurfaceMode, samples: int = 200) -> DefectReport:
    """Sampled Steklov defect on the surface and Neumann defect on both walls."""
    ax_, ay_ = cfg.apex
    t = np.linspace(0.0, 1.0, samples + 2)[1:-1]
    xs = cfg.L * t
    gx, gy = quasimode_gradient(cfg, mode, xs, 0.0 * xs)
    g = quasimode_eval(cfg, mode, xs, 0.0 * xs, check=False)
    steklov = float(np.max(np.abs(gy - mode.sigma * g)))

    # wall at the alpha corner runs from (0,0) to the apex
    wx, wy = ax_ * t, ay_ * t
    gx, gy = quasimode_gradient(cfg, mode, wx, wy)
    na = (-math.sin(cfg.alpha), -math.cos(cfg.alpha))
    wall_a = float(np.max(np.abs(na[0] * gx + na[1] * gy)))

    wx, wy = cfg.L + (ax_ - cfg.L) * t, ay_ * t
    gx, gy = quasimode_gradient(cfg, mode, wx, wy)
    nb = (math.sin(cfg.beta), -math.cos(cfg.beta))
    wall_b = float(np.max(np.abs(nb[0] * gx + nb[1] * gy)))
    return DefectReport(steklov, wall_a, wall_b)
