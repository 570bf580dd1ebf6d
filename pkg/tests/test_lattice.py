import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special

from npcsource.lattice import (
    GridTooCoarseError,
    LatticeError,
    MotifShape,
    NpcLattice,
    UnsupportedShapeError,
    fill_factor,
    fourier_coefficient_analytic,
    fourier_coefficient_numeric,
    fourier_coefficient_rectangle,
    has_lattice_point_at,
    optimize_motif_radius,
    reciprocal_vector,
    render_domain_map,
)

LX, LY = 6.4, 13.46
DESIGN = NpcLattice.rectangular(LX, LY, MotifShape.circle(2.7))

# closed form at (6.4, 13.46, R=2.7, (2,1)), evaluated with scipy's J1
EQ4_DESIGN = -0.0670999283643368
# same with the prefactor indices swapped, (m Lx, n Ly)
EQ4_DESIGN_SWAPPED = -0.09996


def scipy_eq4(lx, ly, r, m, n, swapped=False):
    pre = math.hypot(m * lx, n * ly) if swapped else math.hypot(n * lx, m * ly)
    return 2 * r / pre * special.j1(2 * math.pi * r * math.hypot(m / lx, n / ly))


def test_reciprocal_vector_rectangular():
    g = reciprocal_vector(DESIGN, 2, 1)
    assert g.components == pytest.approx((2 * math.pi * 2 / LX, 2 * math.pi / LY), rel=1e-15)
    assert reciprocal_vector(DESIGN, 0, 0).components == (0.0, 0.0)
    neg = reciprocal_vector(DESIGN, -2, -1).components
    assert neg == (-g.components[0], -g.components[1])


def test_reciprocal_basis_is_dual():
    lat = NpcLattice((3.0, 0.5), (1.0, 4.0), MotifShape.circle(0.5))
    (b1, b2) = lat.reciprocal_basis
    a, b = lat.primitive_a, lat.primitive_b
    dot = lambda u, v: u[0] * v[0] + u[1] * v[1]  # noqa: E731
    assert dot(a, b1) == pytest.approx(2 * math.pi)
    assert dot(b, b2) == pytest.approx(2 * math.pi)
    assert abs(dot(a, b2)) < 1e-12 and abs(dot(b, b1)) < 1e-12


def test_dependent_vectors_rejected():
    with pytest.raises(LatticeError, match="linearly dependent"):
        NpcLattice((1.0, 2.0), (2.0, 4.0), MotifShape.circle(0.1))


def test_overlapping_motif_rejected_touching_allowed():
    NpcLattice.rectangular(LX, LY, MotifShape.circle(LX / 2))
    with pytest.raises(LatticeError, match="overlaps"):
        NpcLattice.rectangular(LX, LY, MotifShape.circle(LX / 2 * 1.001))


def test_eq4_design_value():
    c = fourier_coefficient_analytic(DESIGN, 2, 1)
    assert c == pytest.approx(EQ4_DESIGN, abs=1e-13)
    assert c == pytest.approx(scipy_eq4(LX, LY, 2.7, 2, 1), abs=1e-13)
    numeric = fourier_coefficient_numeric(DESIGN, 2, 1, 2048)
    assert abs(c - numeric) < 1e-3
    # the swapped prefactor is rejected by the raster oracle
    assert scipy_eq4(LX, LY, 2.7, 2, 1, swapped=True) == pytest.approx(EQ4_DESIGN_SWAPPED, abs=1e-5)
    assert abs(scipy_eq4(LX, LY, 2.7, 2, 1, swapped=True) - numeric) > 1e-2


def test_eq4_vanishes_for_small_motif_and_at_j1_zero():
    for r in (1e-3, 1e-5):
        assert abs(fourier_coefficient_analytic(DESIGN.with_motif(MotifShape.circle(r)), 2, 1)) < 1e-5
    q = 2 * math.pi * math.hypot(2 / LX, 1 / LY)
    r0 = special.jn_zeros(1, 1)[0] / q
    assert abs(fourier_coefficient_analytic(DESIGN.with_motif(MotifShape.circle(r0)), 2, 1)) < 1e-6


def test_analytic_rejections():
    with pytest.raises(LatticeError, match="DC term"):
        fourier_coefficient_analytic(DESIGN, 0, 0)
    rect = DESIGN.with_motif(MotifShape.rectangle(2.4, 2.4))
    with pytest.raises(UnsupportedShapeError, match="fourier_coefficient_numeric"):
        fourier_coefficient_analytic(rect, 2, 1)


def test_numeric_grid_floor():
    with pytest.raises(GridTooCoarseError, match="minimum of 256"):
        fourier_coefficient_numeric(DESIGN, 2, 1, 128)
    with pytest.raises(LatticeError):
        fourier_coefficient_numeric(DESIGN, 0, 0)


def test_full_cell_rectangle_has_no_harmonics():
    full = DESIGN.with_motif(MotifShape.rectangle(LX, LY))
    assert fill_factor(full) == pytest.approx(1.0)
    for m, n in [(1, 0), (0, 1), (2, 1), (3, -2)]:
        assert abs(fourier_coefficient_numeric(full, m, n, 512)) < 1e-12


def quad_rectangle(lx, ly, w, h, m, n):
    # indicator-relative coefficient by direct 1D quadrature, doubled for the +-1 map
    fx = integrate.quad(lambda x: math.cos(2 * math.pi * m * x / lx), -w / 2, w / 2)[0] / lx
    fy = integrate.quad(lambda y: math.cos(2 * math.pi * n * y / ly), -h / 2, h / 2)[0] / ly
    return 2 * fx * fy


@pytest.mark.parametrize("m,n", [(2, 1), (1, 0), (0, 1), (1, 2), (3, -1)])
def test_rectangle_paths(m, n):
    rect = DESIGN.with_motif(MotifShape.rectangle(2.4, 2.4))
    closed = fourier_coefficient_rectangle(rect, m, n)
    assert closed == pytest.approx(quad_rectangle(LX, LY, 2.4, 2.4, m, n), abs=1e-12)
    assert abs(fourier_coefficient_numeric(rect, m, n, 2048) - closed) < 1e-3


def test_oblique_numeric_matches_equivalent_rectangular_cell():
    # the oblique lattice is centred rectangular: a (Lx/2) x Ly conventional cell holding two motifs
    ga = reciprocal_vector(DESIGN, 2, 1).components
    gb = reciprocal_vector(DESIGN, 2, -1).components
    obl = NpcLattice.from_reciprocal(ga, gb, MotifShape.circle(1.0))
    conv = NpcLattice.rectangular(LX / 2, LY, MotifShape.circle(1.0))
    # G(1,0) of the oblique cell is (1,1) of the conventional cell; the centre motif adds in phase
    expected = 2 * fourier_coefficient_analytic(conv, 1, 1)
    assert abs(fourier_coefficient_numeric(obl, 1, 0, 1024) - expected) < 1e-3


def test_fill_factor_examples():
    assert fill_factor(DESIGN) == pytest.approx(math.pi * 2.7**2 / (LX * LY), rel=1e-15)
    assert fill_factor(DESIGN) == pytest.approx(0.266, abs=5e-4)
    r_half = math.sqrt(0.5 * 4.0 * 4.0 / math.pi)
    assert fill_factor(NpcLattice.rectangular(4.0, 4.0, MotifShape.circle(r_half))) == pytest.approx(0.5)


def test_optimum_design_lattice():
    r, c = optimize_motif_radius(DESIGN, 2, 1)
    q = 2 * math.pi * math.hypot(2 / LX, 1 / LY)
    assert r * q == pytest.approx(special.jn_zeros(0, 2)[1], rel=1e-10)
    assert abs(r - 2.7) < 0.2
    assert c == fourier_coefficient_analytic(DESIGN.with_motif(MotifShape.circle(r)), 2, 1)


def test_optimum_first_maximum_and_boundary():
    lat = NpcLattice.rectangular(LX, LY, MotifShape.circle(1.0))
    q = 2 * math.pi * math.hypot(1 / LX, 1 / LY)
    first = special.jn_zeros(0, 1)[0] / q
    r, _ = optimize_motif_radius(lat, 1, 1, max_radius=first * 1.5)
    assert r * q == pytest.approx(2.404825557695773, rel=1e-10)
    r, _ = optimize_motif_radius(lat, 1, 1, max_radius=first * 0.7)
    assert r == first * 0.7
    with pytest.raises(LatticeError, match="empty feasible"):
        optimize_motif_radius(lat, 1, 1, max_radius=0.0)


@given(
    st.floats(1.0, 20.0), st.floats(1.0, 20.0), st.integers(-4, 4), st.integers(-4, 4), st.floats(0.05, 1.0)
)
def test_optimum_is_feasible_and_consistent(lx, ly, m, n, cap):
    if m == 0 and n == 0:
        return
    lat = NpcLattice.rectangular(lx, ly, MotifShape.circle(0.1 * min(lx, ly)))
    bound = 0.5 * min(lx, ly) * cap
    r, c = optimize_motif_radius(lat, m, n, max_radius=bound)
    assert 0 < r <= bound
    assert c == fourier_coefficient_analytic(lat.with_motif(MotifShape.circle(r)), m, n)


@given(st.floats(1.0, 20.0), st.floats(1.0, 20.0), st.floats(0.01, 0.5), st.integers(-6, 6), st.integers(-6, 6))
def test_parity(lx, ly, frac, m, n):
    if m == 0 and n == 0:
        return
    lat = NpcLattice.rectangular(lx, ly, MotifShape.circle(frac * min(lx, ly)))
    assert fourier_coefficient_analytic(lat, m, n) == fourier_coefficient_analytic(lat, -m, -n)


def test_numeric_parity():
    a = fourier_coefficient_numeric(DESIGN, 2, 1, 512)
    b = fourier_coefficient_numeric(DESIGN, -2, -1, 512)
    assert a == pytest.approx(b, abs=1e-15)


def test_monotone_convergence():
    # strictly shrinking error, except once both errors sit at the 1e-7 summation floor
    rng = np.random.default_rng(7)
    for _ in range(12):
        lx, ly = rng.uniform(2, 12, 2)
        r = rng.uniform(0.05, 0.5) * min(lx, ly)
        m, n = rng.integers(-3, 4, 2)
        if m == 0 and n == 0:
            m = 1
        lat = NpcLattice.rectangular(lx, ly, MotifShape.circle(r))
        exact = fourier_coefficient_analytic(lat, m, n)
        errs = [abs(fourier_coefficient_numeric(lat, m, n, g) - exact) for g in (256, 512, 1024, 2048)]
        for coarse, fine in zip(errs, errs[1:]):
            assert fine < coarse or max(coarse, fine) < 1e-7, errs


def test_domain_map_fill_fraction():
    lat = NpcLattice.rectangular(LX, LY, MotifShape.circle(2.7))
    dm = render_domain_map(lat, (LX, LY), 20)
    assert set(np.unique(dm.signs)) == {-1, 1}
    assert abs(dm.inverted_fraction - fill_factor(lat)) <= 2 / math.sqrt(dm.signs.size)


def test_domain_map_two_by_two_is_block_periodic():
    lat = NpcLattice.rectangular(4.0, 6.0, MotifShape.circle(1.3))
    dm = render_domain_map(lat, (8.0, 12.0), 10)
    s = dm.signs
    h, w = s.shape
    assert (h, w) == (120, 80)
    assert np.array_equal(s[: h // 2, : w // 2], s[h // 2 :, : w // 2])
    assert np.array_equal(s[:, : w // 2], s[:, w // 2 :])


def test_domain_map_oblique_rows_are_offset():
    obl = NpcLattice((4.0, 0.0), (2.0, 6.0), MotifShape.circle(1.0))
    dm = render_domain_map(obl, (8.0, 12.0), 10)
    row_mid = dm.signs[np.argmin(np.abs(dm.y - 0.05))]
    row_next = dm.signs[np.argmin(np.abs(dm.y - 6.05))]
    # the second row of motifs is shifted by the oblique component, 2 um = 20 px
    assert np.array_equal(np.roll(row_mid, 20), row_next)
    assert not np.array_equal(row_mid, row_next)


def test_domain_map_low_resolution_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        dm = render_domain_map(DESIGN.with_motif(MotifShape.circle(0.2)), (LX, LY), 5)
    assert dm.warnings and "pixels" in dm.warnings[0]
    assert caught


def test_domain_map_window_too_small():
    with pytest.raises(LatticeError, match="smaller than one unit cell"):
        render_domain_map(DESIGN, (LX / 2, LY), 10)


def test_g20_midpoint_lookup():
    ga = reciprocal_vector(DESIGN, 2, 1).components
    gb = reciprocal_vector(DESIGN, 2, -1).components
    mid = (0.5 * (ga[0] + gb[0]), 0.5 * (ga[1] + gb[1]))
    assert has_lattice_point_at(DESIGN, mid, 1e-3)
    obl = NpcLattice.from_reciprocal(ga, gb, MotifShape.circle(1.0))
    assert not has_lattice_point_at(obl, mid, 1e-3)
    assert has_lattice_point_at(obl, ga, 1e-9) and has_lattice_point_at(obl, gb, 1e-9)
    assert has_lattice_point_at(obl, (0.0, 0.0), 1e-12)
    with pytest.raises(LatticeError):
        has_lattice_point_at(obl, mid, 0.0)
