import json
import math
from pathlib import Path

import numpy as np
import pytest

from sloshprism.config import validate_config

DATA = Path(__file__).parent / "data"
PI = math.pi


def load_reference(q: int, r: int) -> np.ndarray:
    """Two columns: quasi-eigenvalue, computed sloshing eigenvalue (nan when absent)."""
    return np.loadtxt(DATA / f"quasi_reference_q{q}_r{r}.txt")


@pytest.fixture(scope="session")
def oracle():
    raw = json.loads((DATA / "oracles.json").read_text())
    return {k: float(v) for k, v in raw.items()}


@pytest.fixture
def cfg22():
    return validate_config(PI, PI, 2, 2)


@pytest.fixture
def cfg23():
    return validate_config(PI, PI, 2, 3)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
