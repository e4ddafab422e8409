"""Lagrange finite elements (order 1 or 2) for -Delta u + lam^2 u on the mesh."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ..errors import SingularElement
from .mesh import SLOSHING, TriangleMesh

# degree-4 rule on the reference triangle, barycentric points, weights sum to 1
_A1, _B1, _W1 = 0.445948490915965, 0.108103018168070, 0.223381589678011
_A2, _B2, _W2 = 0.091576213509771, 0.816847572980459, 0.109951743655322
_QUAD_PTS = np.array(
    [[_B1, _A1, _A1], [_A1, _B1, _A1], [_A1, _A1, _B1], [_B2, _A2, _A2], [_A2, _B2, _A2], [_A2, _A2, _B2]]
)
_QUAD_W = np.array([_W1] * 3 + [_W2] * 3)
# local edge k joins the two vertices other than k
_LOCAL_EDGES = ((1, 2), (2, 0), (0, 1))


@dataclass(frozen=True)
class DofMap:
    order: int
    cell_dofs: np.ndarray  # (nc, 3) or (nc, 6)
    coords: np.ndarray  # (ndof, 2)
    surface_edges: np.ndarray  # (ns, 2) or (ns, 3): end, end[, mid]

    @property
    def ndof(self) -> int:
        return len(self.coords)

    def surface_dofs(self) -> np.ndarray:
        return np.unique(self.surface_edges)


def build_dofmap(mesh: TriangleMesh, order: int) -> DofMap:
    if order == 1:
        return DofMap(1, mesh.cells, mesh.vertices, mesh.sloshing_edges)
    if order != 2:
        raise ValueError("order must be 1 or 2")
    nv = len(mesh.vertices)
    local = np.concatenate([mesh.cells[:, list(e)] for e in _LOCAL_EDGES])
    local = np.sort(local, axis=1)
    uniq, inverse = np.unique(local, axis=0, return_inverse=True)
    inverse = inverse.reshape(3, -1).T
    cell_dofs = np.concatenate([mesh.cells, nv + inverse], axis=1)
    mids = 0.5 * (mesh.vertices[uniq[:, 0]] + mesh.vertices[uniq[:, 1]])
    coords = np.concatenate([mesh.vertices, mids])
    se = np.sort(mesh.sloshing_edges, axis=1)
    lookup = {tuple(e): k for k, e in enumerate(uniq)}
    mid_ids = np.array([nv + lookup[tuple(e)] for e in se], dtype=np.int64)
    coords[mid_ids, 1] = 0.0
    return DofMap(2, cell_dofs, coords, np.column_stack([se, mid_ids]))


def _basis(order: int, bary: np.ndarray, grad_l: np.ndarray):
    """Basis values (nb,) and gradients (nc, nb, 2) at one barycentric point."""
    if order == 1:
        return bary.copy(), grad_l
    vals = [bary[i] * (2 * bary[i] - 1) for i in range(3)]
    grads = [(4 * bary[i] - 1) * grad_l[:, i] for i in range(3)]
    for a, b in _LOCAL_EDGES:
        vals.append(4 * bary[a] * bary[b])
        grads.append(4 * (bary[a] * grad_l[:, b] + bary[b] * grad_l[:, a]))
    return np.array(vals), np.stack(grads, axis=1)


def _barycentric_gradients(mesh: TriangleMesh):
    p = mesh.vertices[mesh.cells]
    x, y = p[..., 0], p[..., 1]
    area2 = (x[:, 1] - x[:, 0]) * (y[:, 2] - y[:, 0]) - (x[:, 2] - x[:, 0]) * (y[:, 1] - y[:, 0])
    if np.any(np.abs(area2) < 1e-300):
        raise SingularElement("zero-area cell")
    g = np.empty((len(p), 3, 2))
    g[:, 0] = np.stack([y[:, 1] - y[:, 2], x[:, 2] - x[:, 1]], axis=1)
    g[:, 1] = np.stack([y[:, 2] - y[:, 0], x[:, 0] - x[:, 2]], axis=1)
    g[:, 2] = np.stack([y[:, 0] - y[:, 1], x[:, 1] - x[:, 0]], axis=1)
    return g / area2[:, None, None], 0.5 * np.abs(area2)


def _scatter(dofs: np.ndarray, local: np.ndarray, n: int) -> sp.csr_matrix:
    nb = dofs.shape[1]
    rows = np.repeat(dofs, nb, axis=1).ravel()
    cols = np.tile(dofs, (1, nb)).ravel()
    return sp.coo_matrix((local.ravel(), (rows, cols)), shape=(n, n)).tocsr()


@dataclass(frozen=True)
class FemOperators:
    """Stiffness, volume mass and surface mass for one mesh and element order."""

    dofmap: DofMap
    stiffness: sp.csr_matrix
    mass: sp.csr_matrix
    surface_mass: sp.csr_matrix

    def pencil(self, lambda_n: float) -> "EigPencil":
        A = (self.stiffness + lambda_n**2 * self.mass).tocsr()
        return EigPencil(A, self.surface_mass, self.dofmap.surface_dofs(), lambda_n)


@dataclass(frozen=True)
class EigPencil:
    A: sp.csr_matrix
    B: sp.csr_matrix
    surface_dofs: np.ndarray
    lambda_n: float = 0.0


def assemble_operators(mesh: TriangleMesh, order: int = 2) -> FemOperators:
    dm = build_dofmap(mesh, order)
    grad_l, area = _barycentric_gradients(mesh)
    nb = dm.cell_dofs.shape[1]
    K = np.zeros((len(area), nb, nb))
    Mloc = np.zeros_like(K)
    for bary, w in zip(_QUAD_PTS, _QUAD_W):
        phi, dphi = _basis(order, bary, grad_l)
        K += w * np.einsum("e,eik,ejk->eij", area, dphi, dphi)
        Mloc += w * area[:, None, None] * np.outer(phi, phi)[None]
    stiff = _scatter(dm.cell_dofs, K, dm.ndof)
    mass = _scatter(dm.cell_dofs, Mloc, dm.ndof)

    se = dm.surface_edges
    length = np.linalg.norm(dm.coords[se[:, 0]] - dm.coords[se[:, 1]], axis=1)
    if order == 1:
        ref = np.array([[2.0, 1.0], [1.0, 2.0]]) / 6.0
    else:
        # ordering: end, end, midpoint
        ref = np.array([[4.0, -1.0, 2.0], [-1.0, 4.0, 2.0], [2.0, 2.0, 16.0]]) / 30.0
    bmass = _scatter(se, length[:, None, None] * ref[None], dm.ndof)
    return FemOperators(dm, stiff, mass, bmass)


def assemble_pencil(mesh: TriangleMesh, lambda_n: float, order: int = 2) -> EigPencil:
    return assemble_operators(mesh, order).pencil(lambda_n)


def sloshing_nodes(mesh: TriangleMesh) -> np.ndarray:
    return np.unique(mesh.boundary_edges[mesh.boundary_tags == SLOSHING])
