"""Discrete sloshing spectra and their alignment with quasi-eigenvalues."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as la
from scipy.sparse.linalg import splu

from ..config import PrismConfig, mode_wavenumber
from ..errors import FactorizationFailure, InsufficientModes
from .assemble import EigPencil, assemble_operators
from .mesh import TriangleMesh, generate_mesh

_BLOCK = 64


def thread_count() -> int:
    raw = os.environ.get("SLOSHPRISM_THREADS")
    if raw:
        return max(1, int(raw))
    return min(8, os.cpu_count() or 1)


def default_mesh_size(cfg: PrismConfig) -> float:
    # quadratic elements at L/100 carry as many unknowns as linear ones at L/200
    return cfg.L / 100


def dirichlet_to_neumann(pencil: EigPencil):
    """Schur complement of A onto the surface unknowns, with the matching block of B."""
    n = pencil.A.shape[0]
    s = pencil.surface_dofs
    mask = np.ones(n, dtype=bool)
    mask[s] = False
    i = np.flatnonzero(mask)
    A = pencil.A.tocsc()
    A_ii = A[i][:, i].tocsc()
    A_is = A[i][:, s].toarray()
    A_ss = A[s][:, s].toarray()
    try:
        lu = splu(A_ii, permc_spec="MMD_AT_PLUS_A")
    except RuntimeError as exc:
        raise FactorizationFailure(str(exc)) from exc
    S = A_ss.copy()
    for start in range(0, len(s), _BLOCK):
        cols = slice(start, start + _BLOCK)
        X = lu.solve(np.asfortranarray(A_is[:, cols]))
        S[:, cols] -= A_is.T @ X
    S = 0.5 * (S + S.T)
    B_ss = pencil.B.tocsc()[s][:, s].toarray()
    return S, B_ss


def solve_sloshing_modes(pencil: EigPencil, count: int | None = None) -> np.ndarray:
    """Smallest ``count`` eigenvalues of A x = sigma B x (all of them if ``count`` is None).

    Interior unknowns are eliminated exactly, leaving a dense symmetric
    definite problem on the free surface.  For lam = 0 the reduced matrix
    keeps the constant in its kernel and returns eigenvalue 0 directly.
    """
    ns = len(pencil.surface_dofs)
    if count is not None:
        if count < 1:
            raise ValueError("count must be >= 1")
        if count > ns:
            raise InsufficientModes(f"requested {count} modes but only {ns} surface unknowns")
    S, B = dirichlet_to_neumann(pencil)
    try:
        if count is None:
            vals = la.eigh(S, B, eigvals_only=True)
        else:
            vals = la.eigh(S, B, eigvals_only=True, subset_by_index=[0, count - 1])
    except la.LinAlgError as exc:
        raise FactorizationFailure(str(exc)) from exc
    return np.sort(vals)


@dataclass
class FemSpectrum:
    per_n: dict
    merged: list  # (sigma, n, k)
    mesh_size: float
    order: int = 2
    meta: dict = field(default_factory=dict)

    def values(self) -> np.ndarray:
        return np.array([row[0] for row in self.merged])

    def friedlander_violations(self) -> list[tuple[int, int]]:
        """(n, k) where sigma_k(n+1) <= sigma_k(n) among computed values."""
        bad = []
        ns = sorted(self.per_n)
        for a, b in zip(ns, ns[1:]):
            lo, hi = self.per_n[a], self.per_n[b]
            for k in range(min(len(lo), len(hi))):
                if not hi[k] > lo[k]:
                    bad.append((a, k))
        return bad


def fem_spectrum(
    cfg: PrismConfig,
    sigma_max: float,
    h: float | None = None,
    grading: float = 4.0,
    order: int = 2,
    mesh: TriangleMesh | None = None,
    threads: int | None = None,
) -> FemSpectrum:
    """All discrete eigenvalues below ``sigma_max`` over the transverse modes n = 0, 1, ...

    Modes are added until the lowest eigenvalue for some n exceeds ``sigma_max``;
    since sigma_1(n) increases with n no later n can contribute.
    """
    if h is None:
        h = default_mesh_size(cfg)
    if mesh is None:
        mesh = generate_mesh(cfg, h, grading)
    ops = assemble_operators(mesh, order)
    threads = threads or thread_count()

    def run(n: int) -> np.ndarray:
        vals = solve_sloshing_modes(ops.pencil(mode_wavenumber(cfg, n)))
        return np.maximum(vals, 0.0) if n == 0 else vals

    per_n: dict = {}
    n = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        done = False
        while not done:
            batch = list(range(n, n + threads))
            for k, vals in zip(batch, pool.map(run, batch)):
                if vals[0] >= sigma_max:
                    done = True
                    break
                per_n[k] = [float(v) for v in vals if v < sigma_max]
            n += threads
    merged = sorted((v, k, j) for k, vals in per_n.items() for j, v in enumerate(vals))
    return FemSpectrum(per_n, merged, float(h), order, {"grading": grading, "cells": len(mesh.cells)})


# ---------------------------------------------------------------------------
# alignment


@dataclass
class Alignment:
    """Pairs quasi[j] with fem[j + offset]."""

    offset: int | None
    median_gap: float
    first_matched: int | None
    pairs: list  # (j, quasi sigma, fem sigma, gap)
    tolerance: float
    stable: bool

    def gaps_in(self, lo: float, hi: float) -> np.ndarray:
        return np.array([g for _, s, _, g in self.pairs if lo <= s <= hi])


def match_spectra(fem, quasi, tolerance: float = 1e-2, max_offset: int = 10, sigma_cap: float | None = None) -> Alignment:
    """Integer shift J minimizing the median gap over the upper half of the common range.

    ``sigma_cap`` drops pairs near the end of the computed range, where one
    list may be truncated before the other.
    """
    fem = np.sort(np.asarray(fem, dtype=float))
    quasi = np.sort(np.asarray(quasi, dtype=float))
    if sigma_cap is None:
        sigma_cap = min(fem[-1], quasi[-1])
    best = None
    for J in range(-max_offset, max_offset + 1):
        j = np.arange(len(quasi))
        ok = (j + J >= 0) & (j + J < len(fem))
        j = j[ok]
        q, f = quasi[j], fem[j + J]
        keep = (q < sigma_cap) & (f < sigma_cap)
        if keep.sum() < 4:
            continue
        j, q, f = j[keep], q[keep], f[keep]
        upper = q >= 0.5 * (q[0] + q[-1])
        med = float(np.median(np.abs(q[upper] - f[upper])))
        if best is None or med < best[1]:
            best = (J, med, j, q, f)
    if best is None:
        return Alignment(None, math.inf, None, [], tolerance, False)
    J, med, j, q, f = best
    gaps = np.abs(q - f)
    pairs = [(int(a), float(b), float(c), float(d)) for a, b, c, d in zip(j, q, f, gaps)]
    bad = np.flatnonzero(gaps >= tolerance)
    first = int(j[bad[-1] + 1]) if bad.size and bad[-1] + 1 < len(j) else (int(j[0]) if not bad.size else None)
    return Alignment(J, med, first, pairs, tolerance, med < 0.05)
