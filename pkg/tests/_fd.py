"""Five-point Laplacian used by the PDE residual checks."""
import numpy as np


def fd_laplacian(func, x, y, h):
    return (func(x + h, y) + func(x - h, y) + func(x, y + h) + func(x, y - h) - 4 * func(x, y)) / h**2


def helmholtz_residuals(func, k2, x, y, steps):
    """max |Delta_h u - k2 u| for each step size."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    u = func(x, y)
    return [float(np.max(np.abs(fd_laplacian(func, x, y, h) - k2 * u))) for h in steps]
