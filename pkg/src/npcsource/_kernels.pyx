# cython: language_level=3
"""Compiled rasterisation kernels; see _kernels_py for the conventions."""
import numpy as np

from libc.math cimport asin, cos, fabs, rint, sin, sqrt, M_PI


cdef inline double _prim(double t, double r) nogil:
    cdef double s = r * r - t * t
    cdef double q = t / r
    if s < 0.0:
        s = 0.0
    if q > 1.0:
        q = 1.0
    elif q < -1.0:
        q = -1.0
    return 0.5 * (t * sqrt(s) + r * r * asin(q))


cdef inline double _corner_area(double x, double y, double r) nogil:
    cdef double sgn = 1.0
    cdef double xc, a, area
    if x < 0.0:
        x = -x
        sgn = -sgn
    if y < 0.0:
        y = -y
        sgn = -sgn
    if x > r:
        x = r
    if y > r:
        y = r
    xc = r * r - y * y
    xc = sqrt(xc) if xc > 0.0 else 0.0
    a = x if x < xc else xc
    area = y * a
    if x > a:
        area += _prim(x, r) - _prim(a, r)
    return sgn * area


def circle_cell_sum(double lx, double ly, double r, int m, int n, int n_grid):
    cdef Py_ssize_t i, j
    cdef int N = n_grid
    cdef double pix = (lx / N) * (ly / N)
    cdef double[::1] xe = np.empty(N + 1)
    cdef double[::1] prev = np.empty(N + 1)
    cdef double[::1] cur = np.empty(N + 1)
    cdef double[::1] exr = np.empty(N)
    cdef double[::1] exi = np.empty(N)
    cdef double[::1] tmp
    cdef double u, y1, cov, s, rr, ri, eyr, eyi
    cdef double tot_r = 0.0, tot_i = 0.0
    for i in range(N + 1):
        xe[i] = (<double>i / N - 0.5) * lx
    for i in range(N):
        u = (i + 0.5) / N - 0.5
        exr[i] = cos(-2.0 * M_PI * m * u)
        exi[i] = sin(-2.0 * M_PI * m * u)
    with nogil:
        for i in range(N + 1):
            prev[i] = _corner_area(xe[i], -0.5 * ly, r)
        for j in range(N):
            y1 = (<double>(j + 1) / N - 0.5) * ly
            for i in range(N + 1):
                cur[i] = _corner_area(xe[i], y1, r)
            rr = 0.0
            ri = 0.0
            for i in range(N):
                cov = (cur[i + 1] - cur[i] - prev[i + 1] + prev[i]) / pix
                s = 1.0 - 2.0 * cov
                rr += s * exr[i]
                ri += s * exi[i]
            u = (j + 0.5) / N - 0.5
            eyr = cos(-2.0 * M_PI * n * u)
            eyi = sin(-2.0 * M_PI * n * u)
            tot_r += rr * eyr - ri * eyi
            tot_i += rr * eyi + ri * eyr
            tmp = prev
            prev = cur
            cur = tmp
    return complex(tot_r, tot_i) / (<double>N * N)


cdef inline bint _inside(double x, double y, double ax, double ay, double bx, double by,
                         double i00, double i01, double i10, double i11,
                         int kind, double p1, double p2, long long[:, ::1] offs) nogil:
    cdef double p0 = rint(i00 * x + i01 * y)
    cdef double q0 = rint(i10 * x + i11 * y)
    cdef double p, q, dx, dy
    cdef Py_ssize_t k
    for k in range(offs.shape[0]):
        p = p0 + offs[k, 0]
        q = q0 + offs[k, 1]
        dx = x - (p * ax + q * bx)
        dy = y - (p * ay + q * by)
        if kind == 0:
            if dx * dx + dy * dy < p1 * p1:
                return True
        elif fabs(dx) < p1 and fabs(dy) < p2:
            return True
    return False


def _inverse(a, b):
    inv = np.linalg.inv(np.column_stack([np.asarray(a, float), np.asarray(b, float)]))
    return inv[0, 0], inv[0, 1], inv[1, 0], inv[1, 1]


def supersampled_cell_sum(a, b, int kind, double p1, double p2, offsets,
                          int m, int n, int n_grid, int ss):
    cdef double ax = a[0], ay = a[1], bx = b[0], by = b[1]
    cdef double i00, i01, i10, i11
    i00, i01, i10, i11 = _inverse(a, b)
    cdef long long[:, ::1] offs = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef int N = n_grid
    cdef int fine = n_grid * ss
    cdef double[::1] uf = (np.arange(fine) + 0.5) / fine - 0.5
    cdef double[::1] exr = np.empty(N)
    cdef double[::1] exi = np.empty(N)
    cdef double[::1] rowcov = np.empty(N)
    cdef Py_ssize_t i, j, si, sj
    cdef double u, v, x, y, s, rr, ri, eyr, eyi
    cdef double inv_ss2 = 1.0 / (ss * ss)
    cdef double tot_r = 0.0, tot_i = 0.0
    for i in range(N):
        u = (i + 0.5) / N - 0.5
        exr[i] = cos(-2.0 * M_PI * m * u)
        exi[i] = sin(-2.0 * M_PI * m * u)
    with nogil:
        for j in range(N):
            for i in range(N):
                rowcov[i] = 0.0
            for sj in range(ss):
                v = uf[j * ss + sj]
                for i in range(N):
                    for si in range(ss):
                        u = uf[i * ss + si]
                        x = u * ax + v * bx
                        y = u * ay + v * by
                        if _inside(x, y, ax, ay, bx, by, i00, i01, i10, i11, kind, p1, p2, offs):
                            rowcov[i] += inv_ss2
            rr = 0.0
            ri = 0.0
            for i in range(N):
                s = 1.0 - 2.0 * rowcov[i]
                rr += s * exr[i]
                ri += s * exi[i]
            v = (j + 0.5) / N - 0.5
            eyr = cos(-2.0 * M_PI * n * v)
            eyi = sin(-2.0 * M_PI * n * v)
            tot_r += rr * eyr - ri * eyi
            tot_i += rr * eyi + ri * eyr
    return complex(tot_r, tot_i) / (<double>N * N)


def sign_map(a, b, int kind, double p1, double p2, offsets, xs, ys):
    cdef double ax = a[0], ay = a[1], bx = b[0], by = b[1]
    cdef double i00, i01, i10, i11
    i00, i01, i10, i11 = _inverse(a, b)
    cdef long long[:, ::1] offs = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=float)
    cdef double[::1] yv = np.ascontiguousarray(ys, dtype=float)
    out = np.empty((yv.shape[0], xv.shape[0]), dtype=np.int8)
    cdef signed char[:, ::1] o = out
    cdef Py_ssize_t i, j
    with nogil:
        for j in range(yv.shape[0]):
            for i in range(xv.shape[0]):
                if _inside(xv[i], yv[j], ax, ay, bx, by, i00, i01, i10, i11, kind, p1, p2, offs):
                    o[j, i] = -1
                else:
                    o[j, i] = 1
    return out
