import numpy as np
import pytest
from scipy import special

from npcsource import bessel


@pytest.mark.parametrize("fn,ref", [(bessel.j0, special.j0), (bessel.j1, special.j1)])
def test_against_scipy(fn, ref):
    x = np.concatenate([np.linspace(-30, 30, 6001), np.linspace(30, 200, 1701), [0.0, 3.9999, 4.0, 4.0001]])
    assert np.max(np.abs(fn(x) - ref(x))) < 1e-10


def test_scalar_returns_float():
    assert isinstance(bessel.j1(1.5), float)
    assert bessel.j0(0.0) == 1.0
    assert bessel.j1(0.0) == 0.0


def test_j0_zeros_match_tables():
    zeros = bessel.j0_zeros(40.0)
    ref = special.jn_zeros(0, len(zeros))
    assert np.max(np.abs(np.array(zeros) - ref)) < 1e-12
    assert zeros[0] == pytest.approx(2.404825557695773, abs=1e-12)
    assert bessel.j0_zeros(2.0) == []
