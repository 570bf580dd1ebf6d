"""Pure-numpy implementations of the rasterisation kernels.

Same signatures and results as the compiled ``_kernels`` module; used when
the extension is not built or ``NPCSOURCE_PURE_PYTHON`` is set.

Conventions shared by both backends
-----------------------------------
kind
    0 = circle (``p1`` = radius), 1 = rectangle (``p1``, ``p2`` = half-widths).
offsets
    int64 array (k, 2) of lattice translations (dp, dq), relative to the
    lattice point nearest (in fractional coordinates) to the sample point,
    whose motif may cover that point.
sign
    +1 outside every motif (background), -1 inside (inverted domain).
"""
from __future__ import annotations

import numpy as np

_ROW_BLOCK = 256


def _corner_area(x, y, r):
    """Signed area of the disk of radius r inside the box spanned by (0,0) and (x,y)."""
    sx = np.sign(x)
    sy = np.sign(y)
    x = np.minimum(np.abs(x), r)
    y = np.minimum(np.abs(y), r)
    xc = np.sqrt(np.maximum(r * r - y * y, 0.0))
    a = np.minimum(x, xc)

    def prim(t):
        return 0.5 * (t * np.sqrt(np.maximum(r * r - t * t, 0.0)) + r * r * np.arcsin(np.clip(t / r, -1.0, 1.0)))

    area = y * a + np.where(x > a, prim(x) - prim(a), 0.0)
    return sx * sy * area


def _phases(k, n_pts):
    u = (np.arange(n_pts) + 0.5) / n_pts - 0.5
    return np.exp(-2j * np.pi * k * u)


def circle_cell_sum(lx, ly, r, m, n, n_grid):
    """Mean of sign * exp(-2 pi i (m u + n v)) over an n_grid^2 rectangular cell.

    Each pixel's sign is weighted by the exact fraction of its area covered
    by the centred disk, so the map is the area-averaged +-1 function.
    """
    edges = np.arange(n_grid + 1) / n_grid - 0.5
    ex = _phases(m, n_grid)
    ey = _phases(n, n_grid)
    pix = (lx / n_grid) * (ly / n_grid)
    xe = edges * lx
    total = 0.0j
    for j0 in range(0, n_grid, _ROW_BLOCK):
        j1 = min(j0 + _ROW_BLOCK, n_grid)
        ye = edges[j0 : j1 + 1] * ly
        corners = _corner_area(xe[:, None], ye[None, :], r)
        cov = np.diff(np.diff(corners, axis=0), axis=1) / pix
        total += ex @ (1.0 - 2.0 * cov) @ ey[j0:j1]
    return complex(total / (n_grid * n_grid))


def _inside(x, y, a, b, inv, kind, p1, p2, offsets):
    u = inv[0, 0] * x + inv[0, 1] * y
    v = inv[1, 0] * x + inv[1, 1] * y
    p0 = np.rint(u)
    q0 = np.rint(v)
    hit = np.zeros(np.broadcast(x, y).shape, dtype=bool)
    for dp, dq in offsets:
        p = p0 + dp
        q = q0 + dq
        dx = x - (p * a[0] + q * b[0])
        dy = y - (p * a[1] + q * b[1])
        if kind == 0:
            hit |= dx * dx + dy * dy < p1 * p1
        else:
            hit |= (np.abs(dx) < p1) & (np.abs(dy) < p2)
    return hit


def supersampled_cell_sum(a, b, kind, p1, p2, offsets, m, n, n_grid, ss):
    """Like :func:`circle_cell_sum` for any cell and motif, using ss x ss
    point samples per pixel of the fractional (u, v) grid."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    inv = np.linalg.inv(np.column_stack([a, b]))
    fine = n_grid * ss
    uf = (np.arange(fine) + 0.5) / fine - 0.5
    ex = _phases(m, n_grid)
    ey = _phases(n, n_grid)
    total = 0.0j
    block = max(1, _ROW_BLOCK // ss) * ss
    for j0 in range(0, fine, block):
        vf = uf[j0 : j0 + block]
        x = uf[:, None] * a[0] + vf[None, :] * b[0]
        y = uf[:, None] * a[1] + vf[None, :] * b[1]
        hit = _inside(x, y, a, b, inv, kind, p1, p2, offsets)
        cov = hit.reshape(n_grid, ss, -1, ss).mean(axis=(1, 3))
        total += ex @ (1.0 - 2.0 * cov) @ ey[j0 // ss : (j0 + vf.size) // ss]
    return complex(total / (n_grid * n_grid))


def sign_map(a, b, kind, p1, p2, offsets, xs, ys):
    """Sign of the poling pattern at the points (xs[i], ys[j]); shape (len(ys), len(xs))."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    inv = np.linalg.inv(np.column_stack([a, b]))
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    hit = _inside(xs[None, :], ys[:, None], a, b, inv, kind, p1, p2, offsets)
    return np.where(hit, -1, 1).astype(np.int8)
