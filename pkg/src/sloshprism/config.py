"""Prism geometry and the scalar constants derived from it.

The corner with angle ``alpha = pi/(2q)`` sits at ``x = 0`` and the corner
with angle ``beta = pi/(2r)`` at ``x = L``.  Angles are always recomputed from
the integers ``q`` and ``r``; they are never stored as inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    DegenerateBothHalfPi,
    InvalidAngleInteger,
    NegativeIndex,
    NonPositiveLength,
)


@dataclass(frozen=True)
class PrismConfig:
    L: float
    M: float
    q: int
    r: int

    def __post_init__(self):
        if not (self.L > 0 and self.M > 0) or not (math.isfinite(self.L) and math.isfinite(self.M)):
            raise NonPositiveLength(f"L and M must be positive, got L={self.L}, M={self.M}")
        if int(self.q) != self.q or int(self.r) != self.r or self.q < 1 or self.r < 1:
            raise InvalidAngleInteger(f"q and r must be integers >= 1, got q={self.q}, r={self.r}")
        object.__setattr__(self, "q", int(self.q))
        object.__setattr__(self, "r", int(self.r))
        if self.q == 1 and self.r == 1:
            raise DegenerateBothHalfPi("q = r = 1 gives two right angles, not a triangle")

    @property
    def alpha(self) -> float:
        return math.pi / (2 * self.q)

    @property
    def beta(self) -> float:
        return math.pi / (2 * self.r)

    @property
    def kappa(self) -> float:
        """0 when q and r share parity, 1/2 otherwise."""
        return 0.0 if (self.q - self.r) % 2 == 0 else 0.5

    @property
    def nu(self) -> int:
        return (self.q * self.r) % 2

    def wavenumber(self, n: int) -> float:
        return mode_wavenumber(self, n)

    @property
    def apex(self) -> tuple[float, float]:
        """Bottom vertex where the two walls meet."""
        ta = math.tan(self.alpha) if self.q > 1 else math.inf
        tb = math.tan(self.beta) if self.r > 1 else math.inf
        if math.isinf(ta):
            return 0.0, -self.L * tb
        if math.isinf(tb):
            return self.L, -self.L * ta
        x = self.L * tb / (ta + tb)
        return x, -x * ta


def validate_config(L: float, M: float, q: int, r: int) -> PrismConfig:
    return PrismConfig(float(L), float(M), q, r)


def mode_wavenumber(cfg: PrismConfig, n: int) -> float:
    """Transverse wavenumber n*pi/M of the n-th cosine mode in z."""
    if n < 0:
        raise NegativeIndex(f"mode index must be >= 0, got {n}")
    return n * math.pi / cfg.M


CONFIG_KEYS = ("L", "M", "q", "r", "sigma_max", "out")


def read_config_file(path: str | Path) -> dict:
    """Parse a ``key = value`` text file; ``#`` starts a comment.

    Unknown keys are rejected so typos do not silently fall back to defaults.
    """
    out: dict = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, value = line.split("=", 1)
        elif ":" in line:
            key, value = line.split(":", 1)
        else:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = key.strip(), value.strip()
        if key not in CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        if key in ("q", "r"):
            out[key] = int(value)
        elif key == "out":
            out[key] = value
        else:
            out[key] = float(value)
    return out
