from .assemble import EigPencil, FemOperators, assemble_operators, assemble_pencil, sloshing_nodes
from .mesh import SLOSHING, WALL, TriangleMesh, generate_mesh, read_mesh, write_mesh
from .solve import Alignment, FemSpectrum, fem_spectrum, match_spectra, solve_sloshing_modes

__all__ = [
    "Alignment",
    "EigPencil",
    "FemOperators",
    "FemSpectrum",
    "SLOSHING",
    "TriangleMesh",
    "WALL",
    "assemble_operators",
    "assemble_pencil",
    "sloshing_nodes",
    "fem_spectrum",
    "generate_mesh",
    "match_spectra",
    "read_mesh",
    "solve_sloshing_modes",
    "write_mesh",
]
