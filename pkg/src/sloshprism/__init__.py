"""Sloshing in triangular prisms: edge/surface quasi-eigenvalues, counting, exact and FEM spectra."""

__version__ = "0.1.0"

from .config import PrismConfig, validate_config  # noqa: E402
from .counting import merged_quasi_values, total_counts_and_S  # noqa: E402
from .edge import enumerate_edge_quasi  # noqa: E402
from .surface import enumerate_surface_quasi, solve_quasi  # noqa: E402

__all__ = [
    "PrismConfig",
    "__version__",
    "enumerate_edge_quasi",
    "enumerate_surface_quasi",
    "merged_quasi_values",
    "solve_quasi",
    "total_counts_and_S",
    "validate_config",
]
