"""Structured, corner-graded triangle meshes of the prism cross-section."""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..config import PrismConfig
from ..errors import DegenerateTriangle

SLOSHING = 1
WALL = 2
_TAG_NAMES = {SLOSHING: "sloshing", WALL: "wall"}
_TAG_CODES = {v: k for k, v in _TAG_NAMES.items()}


@dataclass(frozen=True)
class TriangleMesh:
    vertices: np.ndarray  # (nv, 2)
    cells: np.ndarray  # (nc, 3), counter-clockwise
    boundary_edges: np.ndarray  # (nb, 2)
    boundary_tags: np.ndarray  # (nb,), SLOSHING or WALL
    grading: float = 1.0

    @property
    def sloshing_edges(self) -> np.ndarray:
        return self.boundary_edges[self.boundary_tags == SLOSHING]

    def cell_areas(self) -> np.ndarray:
        p = self.vertices[self.cells]
        d1 = p[:, 1] - p[:, 0]
        d2 = p[:, 2] - p[:, 0]
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    def cell_diameters(self) -> np.ndarray:
        p = self.vertices[self.cells]
        e = [np.linalg.norm(p[:, a] - p[:, b], axis=1) for a, b in ((0, 1), (1, 2), (2, 0))]
        return np.max(e, axis=0)


def _corners(cfg: PrismConfig) -> np.ndarray:
    ax, ay = cfg.apex
    if not ay < 0:
        raise DegenerateTriangle("walls do not meet below the free surface")
    return np.array([[0.0, 0.0], [cfg.L, 0.0], [ax, ay]])


def _dist_to_line(p, a, b) -> float:
    d = b - a
    return abs(d[0] * (p[1] - a[1]) - d[1] * (p[0] - a[0])) / math.hypot(*d)


def generate_mesh(cfg: PrismConfig, h: float, grading: float = 4.0) -> TriangleMesh:
    """Mesh the triangle with elements of size about ``h``.

    A uniform barycentric lattice is pulled towards each vertex by the radial
    map ``rho -> R (rho/R)^k`` inside radius ``R = L/10`` so the cells
    touching a vertex shrink by the factor ``grading``.  Lines through a
    vertex are preserved, so walls and surface stay straight.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    if grading < 1:
        raise ValueError("grading must be >= 1")
    P = _corners(cfg)
    sides = [np.linalg.norm(P[i] - P[(i + 1) % 3]) for i in range(3)]
    N = max(2, math.ceil(max(sides) / h))

    ii, jj = np.meshgrid(np.arange(N + 1), np.arange(N + 1), indexing="ij")
    keep = ii + jj <= N
    ii, jj = ii[keep], jj[keep]
    index = -np.ones((N + 1, N + 1), dtype=np.int64)
    index[ii, jj] = np.arange(ii.size)
    # i runs along the surface (P0 -> P1), j towards the apex
    verts = P[0] + np.outer(ii / N, P[1] - P[0]) + np.outer(jj / N, P[2] - P[0])
    verts[jj == 0, 1] = 0.0

    cells = []
    for i in range(N):
        for j in range(N - i):
            cells.append((index[i, j], index[i + 1, j], index[i, j + 1]))
            if i + j < N - 1:
                cells.append((index[i + 1, j], index[i + 1, j + 1], index[i, j + 1]))
    cells = np.array(cells, dtype=np.int64)

    s = np.arange(N)
    surface = np.stack([index[s, 0], index[s + 1, 0]], axis=1)
    wall_a = np.stack([index[0, s], index[0, s + 1]], axis=1)
    wall_b = np.stack([index[N - s, s], index[N - s - 1, s + 1]], axis=1)
    edges = np.concatenate([surface, wall_a, wall_b])
    tags = np.concatenate([np.full(N, SLOSHING), np.full(2 * N, WALL)])

    if grading > 1:
        verts = _grade(verts, P, h, grading, cfg.L)

    mesh = TriangleMesh(verts, cells, edges, tags, float(grading))
    areas = mesh.cell_areas()
    flip = areas < 0
    if np.any(flip):
        cells = cells.copy()
        cells[flip] = cells[flip][:, [0, 2, 1]]
        mesh = TriangleMesh(verts, cells, edges, tags, float(grading))
    if np.any(np.abs(mesh.cell_areas()) < 1e-300):
        raise DegenerateTriangle("zero-area cell produced")
    return mesh


def _grade(verts, P, h, grading, L):
    heights = [_dist_to_line(P[k], P[(k + 1) % 3], P[(k + 2) % 3]) for k in range(3)]
    R = min(L / 10, 0.45 * min(heights))
    if R <= 2 * h:
        return verts
    k = 1.0 + math.log(grading) / math.log(R / h)
    out = verts.copy()
    for c in P:
        d = out - c
        rho = np.hypot(d[:, 0], d[:, 1])
        near = (rho > 0) & (rho < R)
        scale = (rho[near] / R) ** (k - 1)
        out[near] = c + d[near] * scale[:, None]
    # keep surface vertices exactly on y = 0
    return out


def write_mesh(mesh: TriangleMesh, path: str | Path) -> None:
    """Text format: counts line, vertex lines, cell lines, tagged boundary-edge lines."""
    lines = [f"{len(mesh.vertices)} {len(mesh.cells)} {len(mesh.boundary_edges)} {float(mesh.grading)!r}"]
    lines += [f"{float(x)!r} {float(y)!r}" for x, y in mesh.vertices]
    lines += [f"{a} {b} {c}" for a, b, c in mesh.cells]
    lines += [f"{a} {b} {_TAG_NAMES[int(t)]}" for (a, b), t in zip(mesh.boundary_edges, mesh.boundary_tags)]
    Path(path).write_text("\n".join(lines) + "\n")


def read_mesh(path: str | Path) -> TriangleMesh:
    rows = Path(path).read_text().split("\n")
    nv, nc, nb, grading = rows[0].split()
    nv, nc, nb = int(nv), int(nc), int(nb)
    verts = np.array([[float(v) for v in r.split()] for r in rows[1 : 1 + nv]])
    cells = np.array([[int(v) for v in r.split()] for r in rows[1 + nv : 1 + nv + nc]], dtype=np.int64)
    edges, tags = [], []
    for r in rows[1 + nv + nc : 1 + nv + nc + nb]:
        a, b, t = r.split()
        edges.append((int(a), int(b)))
        tags.append(_TAG_CODES[t])
    return TriangleMesh(verts, cells, np.array(edges, dtype=np.int64), np.array(tags), float(grading))
