"""Exponential sums and fractional parts of sqrt(sigma^2 - n^2).

These are the number-theoretic ingredients of the lattice-point count near
the ellipse boundary: the fractional parts ``d_n = frac(sqrt(sigma^2 - n^2))``
over a window ``rK^-1 sigma <= n < (r+1)K^-1 sigma`` become uniformly
distributed, which follows from the decay of the Weyl sums below.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats


@dataclass(frozen=True)
class ExpSumSpec:
    sigma: float
    K: int
    r: int
    h: int

    def __post_init__(self):
        if self.K < 2:
            raise ValueError("K must be at least 2")
        if not 0 <= self.r <= self.K - 2:
            raise ValueError("need 0 <= r <= K - 2")
        if self.h == 0:
            raise ValueError("h must be nonzero")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")

    def window(self) -> np.ndarray:
        lo = self.r * self.sigma / self.K
        hi = (self.r + 1) * self.sigma / self.K
        n = np.arange(math.ceil(lo), math.ceil(hi), dtype=float)
        return n[(n >= lo) & (n < hi)]


def _root(sigma: float, n: np.ndarray) -> np.ndarray:
    # product form avoids cancellation in sigma^2 - n^2
    return np.sqrt((sigma - n) * (sigma + n))


def _raw_sum(spec: ExpSumSpec) -> complex:
    n = spec.window()
    if n.size == 0:
        return 0j
    root = _root(spec.sigma, n)
    # reduce the phase mod 1 before multiplying by 2 pi
    phase = np.mod(spec.h * root, 1.0)
    return complex(np.sum(np.exp(2j * np.pi * phase)))


def exponential_sum(spec: ExpSumSpec) -> complex:
    """(K/sigma) * sum over the window of exp(2 pi i h sqrt(sigma^2 - n^2))."""
    return spec.K / spec.sigma * _raw_sum(spec)


@dataclass(frozen=True)
class CorputReport:
    sigma: float
    K: int
    r: int
    h: int
    sum_modulus: float
    bound: float
    C0: float
    ks: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def corput_bound(spec: ExpSumSpec) -> float:
    """K^{3/2} |I| lam^{1/2} + lam^{-1/2} with |I| = sigma/K and lam = |h|/sigma."""
    lam = abs(spec.h) / spec.sigma
    width = spec.sigma / spec.K
    return spec.K**1.5 * width * math.sqrt(lam) + 1 / math.sqrt(lam)


def vdcorput_bound_check(spec: ExpSumSpec, with_ks: bool = False) -> CorputReport:
    """Raw window sum against the second-derivative bound; C0 is the observed ratio."""
    raw = abs(_raw_sum(spec))
    bound = corput_bound(spec)
    ks = fractional_part_histogram(spec.sigma, spec.K, spec.r).ks if with_ks else None
    return CorputReport(spec.sigma, spec.K, spec.r, spec.h, spec.K / spec.sigma * raw, bound, raw / bound, ks)


@dataclass(frozen=True)
class FractionalPartSample:
    sigma: float
    values: np.ndarray


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    ks: float
    sample_size: int


def fractional_parts(sigma: float, K: int, r: int) -> FractionalPartSample:
    spec = ExpSumSpec(sigma, K, r, 1)
    root = _root(sigma, spec.window())
    return FractionalPartSample(sigma, root - np.floor(root))


def fractional_part_histogram(sigma: float, K: int, r: int, bins: int = 20) -> Histogram:
    """Histogram of d_n on the window and the Kolmogorov-Smirnov distance to U[0,1)."""
    vals = fractional_parts(sigma, K, r).values
    counts, edges = np.histogram(vals, bins=bins, range=(0.0, 1.0))
    ks = float(stats.kstest(vals, "uniform").statistic) if vals.size else 1.0
    return Histogram(edges, counts, ks, int(vals.size))
