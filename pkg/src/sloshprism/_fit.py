from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ExpFit:
    """Least-squares fit of ``|v| ~ C exp(-c t)``."""

    rate: float
    prefactor: float
    r_squared: float


def fit_exponential_decay(t, values) -> ExpFit:
    t = np.asarray(t, dtype=float)
    logv = np.log(np.abs(np.asarray(values, dtype=float)))
    slope, intercept = np.polyfit(t, logv, 1)
    pred = slope * t + intercept
    ss_res = float(np.sum((logv - pred) ** 2))
    ss_tot = float(np.sum((logv - logv.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return ExpFit(rate=-float(slope), prefactor=float(np.exp(intercept)), r_squared=r2)
