import math

import pytest

from sloshprism.config import PrismConfig, mode_wavenumber, read_config_file, validate_config
from sloshprism.errors import (
    DegenerateBothHalfPi,
    InvalidAngleInteger,
    NegativeIndex,
    NonPositiveLength,
)

PI = math.pi


@pytest.mark.parametrize(
    "q, r, kappa, nu",
    [(2, 2, 0.0, 0), (2, 3, 0.5, 0), (5, 5, 0.0, 1), (3, 9, 0.0, 1), (1, 2, 0.5, 0), (4, 7, 0.5, 0)],
)
def test_kappa_and_nu(q, r, kappa, nu):
    cfg = validate_config(PI, PI, q, r)
    assert cfg.kappa == kappa
    assert cfg.nu == nu


def test_angles_are_derived():
    cfg = validate_config(2.0, 1.0, 3, 6)
    assert cfg.alpha == pytest.approx(PI / 6)
    assert cfg.beta == pytest.approx(PI / 12)


@pytest.mark.parametrize(
    "args, exc",
    [
        ((0.0, 1.0, 2, 2), NonPositiveLength),
        ((1.0, -1.0, 2, 2), NonPositiveLength),
        ((1.0, 1.0, 0, 2), InvalidAngleInteger),
        ((1.0, 1.0, 2.5, 2), InvalidAngleInteger),
        ((1.0, 1.0, 1, 1), DegenerateBothHalfPi),
    ],
)
def test_invalid_configs(args, exc):
    with pytest.raises(exc):
        validate_config(*args)


def test_apex_symmetric():
    x, y = validate_config(PI, PI, 2, 2).apex
    assert x == pytest.approx(PI / 2)
    assert y == pytest.approx(-PI / 2)


def test_apex_on_both_walls():
    cfg = validate_config(PI, PI, 2, 3)
    x, y = cfg.apex
    assert y == pytest.approx(-x * math.tan(PI / 4))
    assert y == pytest.approx(-(PI - x) * math.tan(PI / 6))


def test_apex_vertical_wall():
    x, y = validate_config(2.0, 1.0, 1, 2).apex
    assert x == 0.0
    assert y == pytest.approx(-2.0)


def test_wavenumber():
    cfg = validate_config(PI, 2.0, 2, 2)
    assert mode_wavenumber(cfg, 0) == 0.0
    assert cfg.wavenumber(3) == pytest.approx(3 * PI / 2)
    with pytest.raises(NegativeIndex):
        mode_wavenumber(cfg, -1)


def test_config_is_frozen():
    cfg = validate_config(PI, PI, 2, 2)
    assert isinstance(cfg, PrismConfig)
    with pytest.raises(AttributeError):
        cfg.q = 3


def test_read_config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# geometry\nq = 2\nr: 3\nL = 3.5  # trailing comment\nsigma_max = 12\n")
    assert read_config_file(path) == {"q": 2, "r": 3, "L": 3.5, "sigma_max": 12.0}
    path.write_text("qq = 2\n")
    with pytest.raises(ValueError, match="unknown key"):
        read_config_file(path)
