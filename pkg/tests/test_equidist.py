import math

import numpy as np
import pytest

from sloshprism.equidist import (
    ExpSumSpec,
    corput_bound,
    exponential_sum,
    fractional_part_histogram,
    fractional_parts,
    vdcorput_bound_check,
)


def test_spec_validation():
    with pytest.raises(ValueError):
        ExpSumSpec(100.0, 4, 3, 1)  # r = K - 1 excluded
    with pytest.raises(ValueError):
        ExpSumSpec(100.0, 1, 0, 1)
    with pytest.raises(ValueError):
        ExpSumSpec(100.0, 4, 0, 0)


def test_empty_window():
    assert exponential_sum(ExpSumSpec(0.5, 4, 1, 1)) == 0


def test_direct_sum():
    spec = ExpSumSpec(50.0, 5, 1, 2)
    n = np.arange(10, 20)
    ref = sum(np.exp(2j * math.pi * 2 * math.sqrt(50.0**2 - k**2)) for k in n) * 5 / 50.0
    assert exponential_sum(spec) == pytest.approx(ref, abs=1e-10)


def test_conjugate_symmetry():
    a = exponential_sum(ExpSumSpec(777.7, 4, 1, 3))
    b = exponential_sum(ExpSumSpec(777.7, 4, 1, -3))
    assert a == pytest.approx(b.conjugate(), abs=1e-12)


def test_decay_rate_roughly_inverse_sqrt():
    m1 = abs(exponential_sum(ExpSumSpec(1e4, 4, 0, 1)))
    m2 = abs(exponential_sum(ExpSumSpec(4e4, 4, 0, 1)))
    assert 0.25 < m2 / m1 < 1.0


def test_bound_formula():
    spec = ExpSumSpec(1e4, 4, 0, 1)
    lam = 1e-4
    assert corput_bound(spec) == pytest.approx(4**1.5 * 2500 * math.sqrt(lam) + 1 / math.sqrt(lam))
    assert corput_bound(ExpSumSpec(1e4, 4, 0, 2)) != corput_bound(spec)


def test_fitted_constant_stable():
    c = [vdcorput_bound_check(ExpSumSpec(s, 4, 0, 1)).C0 for s in (1e3, 1e4, 1e5)]
    assert max(c) / min(c) < 3


def test_fractional_parts_range():
    vals = fractional_parts(1234.5, 4, 1).values
    assert np.all((vals >= 0) & (vals < 1))


def test_ks_shrinks():
    assert fractional_part_histogram(1e4, 4, 0).ks < fractional_part_histogram(1e2, 4, 0).ks


def test_weyl_consistency_across_decades():
    ks, sums = [], []
    for s in (1e2, 1e3, 1e4, 1e5):
        ks.append(fractional_part_histogram(s, 4, 0).ks)
        sums.append(max(abs(exponential_sum(ExpSumSpec(s, 4, 0, h))) for h in (1, 2, 3)))
    assert all(np.diff(ks) < 0) and all(np.diff(sums) < 0)


def test_report_dict():
    rep = vdcorput_bound_check(ExpSumSpec(1e3, 4, 0, 1), with_ks=True).to_dict()
    assert set(rep) == {"sigma", "K", "r", "h", "sum_modulus", "bound", "C0", "ks"}
