import numpy as np
import pytest

from npcsource import _backend, _kernels_py

compiled = pytest.importorskip("npcsource._kernels")

OFFSETS = np.array([(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1)], dtype=np.int64)


def test_backend_selection(monkeypatch):
    assert _backend.load("python") is _kernels_py
    assert _backend.load("compiled") is compiled
    monkeypatch.setenv("NPCSOURCE_PURE_PYTHON", "1")
    assert _backend.load() is _kernels_py


@pytest.mark.parametrize("m,n", [(2, 1), (-1, 3), (0, 1)])
def test_circle_cell_sum_agrees(m, n):
    a = compiled.circle_cell_sum(6.4, 13.46, 2.7, m, n, 512)
    b = _kernels_py.circle_cell_sum(6.4, 13.46, 2.7, m, n, 512)
    assert abs(a - b) < 1e-13


@pytest.mark.parametrize("kind,p1,p2", [(0, 1.5, 0.0), (1, 1.2, 0.8)])
def test_supersampled_sum_agrees(kind, p1, p2):
    args = ((3.2, 6.73), (3.2, -6.73), kind, p1, p2, OFFSETS, 1, 0, 256, 3)
    assert abs(compiled.supersampled_cell_sum(*args) - _kernels_py.supersampled_cell_sum(*args)) < 1e-13


def test_sign_map_identical():
    xs = np.linspace(-3, 9, 97)
    ys = np.linspace(-2, 15, 83)
    args = ((4.0, 0.0), (2.0, 6.0), 0, 1.3, 0.0, OFFSETS)
    a = np.asarray(compiled.sign_map(*args, xs, ys))
    b = np.asarray(_kernels_py.sign_map(*args, xs, ys))
    assert a.shape == (83, 97)
    assert np.array_equal(a, b)
