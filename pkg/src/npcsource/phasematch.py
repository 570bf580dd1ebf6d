"""Quasi-phase-matching geometry for beamlike down-conversion in a 2D poled crystal.

Conventions: the pump travels along +x, the poling lattice lies in the x-y
plane and z is normal to it. The two down-converted photons of a beamlike
pair travel together at the internal angle theta from the pump in the x-y
plane, so momentum conservation reads

    k_p - (k_s + k_i) cos(theta) = G_x,    (k_s + k_i) sin(theta) = G_y.

All angles in the solver are internal; ``pattern_scan`` works in air.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ._numerics import bisect, sinc2
from .dispersion import DispersionModel, refractive_index, wavevector_magnitude
from .lattice import MotifShape, NpcLattice, reciprocal_vector

ENERGY_TOL = 1e-9  # 1/um
EXACT_TOL = 1e-9  # rad/um
ANGLE_WINDOW = math.radians(5.0)
MIN_PATTERN_GRID = 64


class PhaseMatchError(ValueError):
    pass


class NoSolutionError(PhaseMatchError):
    """No forward phase-matched geometry exists for the requested inputs."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class PhaseMatchProblem:
    pump_wavelength: float
    signal_wavelength: float
    idler_wavelength: float
    internal_angle: float
    temperature: float
    orders: tuple[int, int]
    crystal_length: float = 13.0  # mm

    def __post_init__(self):
        for name in ("pump_wavelength", "signal_wavelength", "idler_wavelength"):
            if not getattr(self, name) > 0:
                raise PhaseMatchError(f"{name} must be positive, got {getattr(self, name)}")
        gap = 1.0 / self.pump_wavelength - 1.0 / self.signal_wavelength - 1.0 / self.idler_wavelength
        if abs(gap) > ENERGY_TOL:
            raise PhaseMatchError(
                f"energy conservation violated: 1/pump - 1/signal - 1/idler = {gap:.3e} 1/um "
                f"(tolerance {ENERGY_TOL:g})"
            )
        if not self.internal_angle >= 0:
            raise PhaseMatchError(f"internal_angle must be >= 0, got {self.internal_angle}")
        if not self.crystal_length >= 0:
            raise PhaseMatchError(f"crystal_length must be >= 0 mm, got {self.crystal_length}")
        m, n = self.orders
        object.__setattr__(self, "orders", (int(m), int(n)))

    @classmethod
    def degenerate(
        cls, pump_wavelength: float, internal_angle: float, temperature: float, orders, crystal_length: float = 13.0
    ) -> "PhaseMatchProblem":
        lam = 2.0 * pump_wavelength
        return cls(pump_wavelength, lam, lam, internal_angle, temperature, tuple(orders), crystal_length)

    @property
    def crystal_length_um(self) -> float:
        return self.crystal_length * 1e3


@dataclass(frozen=True)
class PhaseMatchSolution:
    problem: PhaseMatchProblem
    periods: tuple[float, float | None]
    residual_mismatch: tuple[float, float]

    def lattice(self, motif: MotifShape | None = None) -> NpcLattice:
        """Rectangular lattice realising these periods (Lambda_y falls back to Lambda_x when unset)."""
        lx, ly = self.periods
        ly = ly if ly is not None else lx
        if motif is None:
            motif = MotifShape.circle(0.25 * min(lx, ly))
        return NpcLattice.rectangular(lx, ly, motif)


def _k(model, wl, temp):
    return wavevector_magnitude(model, wl, temp)


def _idler(pump, signal):
    return 1.0 / (1.0 / pump - 1.0 / signal)


def solve_periods(dispersion: DispersionModel, problem: PhaseMatchProblem) -> PhaseMatchSolution:
    m, n = problem.orders
    t, theta = problem.temperature, problem.internal_angle
    kp = _k(dispersion, problem.pump_wavelength, t)
    ks = _k(dispersion, problem.signal_wavelength, t) + _k(dispersion, problem.idler_wavelength, t)

    long_gap = kp - ks * math.cos(theta)
    if m == 0 or not long_gap > 0:
        raise NoSolutionError(
            f"no forward QPM solution: k_p - (k_s + k_i) cos(theta) = {long_gap:.6g} rad/um with m = {m}"
        )
    lx = 2.0 * math.pi * m / long_gap
    if lx <= 0:
        raise NoSolutionError(f"order m = {m} gives a negative period; use m > 0")

    trans = ks * math.sin(theta)
    if n == 0:
        if theta != 0.0:
            raise NoSolutionError("order n = 0 cannot supply transverse momentum for theta > 0")
        ly = None
    else:
        if not trans > 0:
            raise NoSolutionError(f"order n = {n} needs theta > 0 for a transverse period")
        ly = 2.0 * math.pi * abs(n) / trans

    gx = 2.0 * math.pi * m / lx
    gy = 0.0 if ly is None else 2.0 * math.pi * n / ly
    sign_y = 1.0 if n >= 0 else -1.0
    res = (kp - ks * math.cos(theta) - gx, sign_y * trans - gy)
    return PhaseMatchSolution(problem, (lx, ly), res)


def mismatch(
    dispersion: DispersionModel,
    lattice: NpcLattice,
    orders: Sequence[int],
    pump_wavelength: float,
    signal_wavelength: float,
    theta: float,
    temperature: float,
) -> tuple[float, float]:
    """Residual (dKx, dKy) of k_p - k_s - k_i - G for photons travelling at +theta."""
    idler = _idler(pump_wavelength, signal_wavelength)
    kp = _k(dispersion, pump_wavelength, temperature)
    ks = _k(dispersion, signal_wavelength, temperature) + _k(dispersion, idler, temperature)
    gx, gy = reciprocal_vector(lattice, *orders).components
    return kp - ks * math.cos(theta) - gx, ks * math.sin(theta) - gy


@dataclass(frozen=True)
class EmissionAngle:
    """Emission geometry at fixed periods.

    ``theta`` is the axis of emission (internal, from the pump). ``regime`` is
    ``beamlike`` (both photons along the axis, |dK| < 1e-9), ``cone`` (the
    photons split symmetrically about the axis by ``cone_half_angle``) or
    ``detuned`` (too much longitudinal momentum for an exact solution but
    within the sinc^2 half-width; ``residual`` holds the excess).
    """

    theta: float
    cone_half_angle: float
    residual: float
    regime: str

    @property
    def beamlike(self) -> bool:
        return self.regime == "beamlike"


def _available_vector(dispersion, lattice, orders, pump, signal, temperature):
    idler = _idler(pump, signal)
    kp = _k(dispersion, pump, temperature)
    ks = _k(dispersion, signal, temperature)
    ki = _k(dispersion, idler, temperature)
    gx, gy = reciprocal_vector(lattice, *orders).components
    return kp - gx, gy, ks, ki


def emission_angle(
    dispersion: DispersionModel,
    lattice: NpcLattice,
    orders: Sequence[int],
    pump_wavelength: float,
    signal_wavelength: float,
    temperature: float,
    crystal_length: float = 13.0,
) -> EmissionAngle:
    kx, ky, ks, ki = _available_vector(dispersion, lattice, orders, pump_wavelength, signal_wavelength, temperature)
    kmag = math.hypot(kx, ky)
    theta = math.atan2(abs(ky), kx)
    if not (kx > 0 and theta <= ANGLE_WINDOW):
        raise NoSolutionError(f"emission axis {math.degrees(theta):.3f} deg lies outside the 5 deg window")
    total = ks + ki
    delta = kmag - total
    if abs(delta) < EXACT_TOL:
        return EmissionAngle(theta, 0.0, abs(delta), "beamlike")
    if delta < 0:
        # signal and idler split about the axis; the half-angle is the signal's
        cos_a = (kmag**2 + ks**2 - ki**2) / (2.0 * kmag * ks)
        return EmissionAngle(theta, math.acos(min(1.0, cos_a)), 0.0, "cone")
    half_width = 2.0 * math.pi / (crystal_length * 1e3) if crystal_length > 0 else math.inf
    if delta < half_width:
        return EmissionAngle(theta, 0.0, delta, "detuned")
    raise NoSolutionError(
        f"longitudinal excess {delta:.3e} rad/um exceeds the sinc^2 half-width {half_width:.3e} rad/um",
        residual=delta,
    )


def _excess(dispersion, lattice, orders, pump, signal, temperature):
    kx, ky, ks, ki = _available_vector(dispersion, lattice, orders, pump, signal, temperature)
    return math.hypot(kx, ky) - ks - ki


def threshold_temperature(
    dispersion: DispersionModel,
    lattice: NpcLattice,
    orders: Sequence[int],
    pump_wavelength: float,
    signal_wavelength: float,
    t_range: tuple[float, float] | None = None,
) -> float:
    """Temperature where the fixed lattice phase-matches the pair exactly along one direction."""
    lo, hi = t_range if t_range is not None else dispersion.valid_temperature_range
    f = lambda t: _excess(dispersion, lattice, orders, pump_wavelength, signal_wavelength, t)  # noqa: E731
    try:
        return bisect(f, float(lo), float(hi))
    except ValueError:
        raise NoSolutionError(f"no phase-matching temperature in [{lo}, {hi}] C") from None


@dataclass(frozen=True)
class TuningRow:
    temperature: float
    theta: float | None
    cone_half_angle: float | None
    min_mismatch: float
    regime: str


def temperature_tuning_curve(
    dispersion: DispersionModel,
    lattice: NpcLattice,
    orders: Sequence[int],
    pump_wavelength: float,
    t_range: tuple[float, float],
    steps: int,
    signal_wavelength: float | None = None,
    crystal_length: float = 13.0,
) -> list[TuningRow]:
    if steps < 1:
        raise PhaseMatchError("steps must be >= 1")
    signal = signal_wavelength if signal_wavelength is not None else 2.0 * pump_wavelength
    temps = [t_range[0]] if steps == 1 else list(np.linspace(t_range[0], t_range[1], steps))
    rows = []
    for t in temps:
        t = float(t)
        try:
            e = emission_angle(dispersion, lattice, orders, pump_wavelength, signal, t, crystal_length)
            rows.append(TuningRow(t, e.theta, e.cone_half_angle, e.residual, e.regime))
        except NoSolutionError as err:
            resid = err.residual
            if resid is None:
                resid = abs(_excess(dispersion, lattice, orders, pump_wavelength, signal, t))
            rows.append(TuningRow(t, None, None, resid, "none"))
    return rows


@dataclass
class PatternMap:
    """Relative signal intensity over external emission angles (degrees)."""

    intensity: np.ndarray  # shape (len(angle_z), len(angle_y))
    angle_y: np.ndarray
    angle_z: np.ndarray
    orders: list[tuple[int, int]]


def _grid_pair(value, name):
    if np.ndim(value) == 0:
        return value, value
    a, b = value
    return a, b


def pattern_scan(
    dispersion: DispersionModel,
    lattice: NpcLattice,
    orders_list: Iterable[Sequence[int]],
    pump_wavelength: float,
    temperature: float,
    angular_window: float | tuple[float, float],
    grid: int | tuple[int, int],
    crystal_length: float = 13.0,
    signal_wavelength: float | None = None,
) -> PatternMap:
    """Far-field signal intensity summed over poling orders.

    For each external direction the signal is refracted into the crystal, the
    idler takes the transverse momentum left over from k_p - G, and the pair
    is weighted by sinc^2(dK_x L / 2). ``angular_window`` is the half-width
    in degrees along y and z; the map is normalised to its maximum.
    """
    ny_pts, nz_pts = (int(g) for g in _grid_pair(grid, "grid"))
    if ny_pts < MIN_PATTERN_GRID or nz_pts < MIN_PATTERN_GRID:
        raise PhaseMatchError(f"grid must be at least {MIN_PATTERN_GRID} x {MIN_PATTERN_GRID}, got {ny_pts} x {nz_pts}")
    wy, wz = (float(w) for w in _grid_pair(angular_window, "angular_window"))
    if not (0 < wy < 90 and 0 < wz < 90):
        raise PhaseMatchError("angular_window half-widths must lie in (0, 90) degrees")
    if crystal_length < 0:
        raise PhaseMatchError("crystal_length must be >= 0 mm")
    orders = [(int(m), int(n)) for m, n in orders_list]
    if not orders:
        raise PhaseMatchError("orders_list is empty")

    signal = signal_wavelength if signal_wavelength is not None else 2.0 * pump_wavelength
    idler = _idler(pump_wavelength, signal)
    kp = _k(dispersion, pump_wavelength, temperature)
    ks = _k(dispersion, signal, temperature)
    ki = _k(dispersion, idler, temperature)
    n_s = refractive_index(dispersion, signal, temperature)

    ay = np.linspace(-wy, wy, ny_pts)
    az = np.linspace(-wz, wz, nz_pts)
    sy = np.sin(np.radians(ay))[None, :] / n_s
    sz = np.sin(np.radians(az))[:, None] / n_s
    sx = np.sqrt(np.clip(1.0 - sy**2 - sz**2, 0.0, None))
    half_l = 0.5 * crystal_length * 1e3

    total = np.zeros((nz_pts, ny_pts))
    for m, n in orders:
        gx, gy = reciprocal_vector(lattice, m, n).components
        iy = gy - ks * sy
        iz = -ks * sz
        ix2 = ki**2 - iy**2 - iz**2
        ok = ix2 > 0
        dk = kp - gx - ks * sx - np.sqrt(np.where(ok, ix2, 0.0))
        total += np.where(ok, sinc2(dk * half_l), 0.0)
    peak = total.max()
    if peak > 0:
        total = total / peak
    return PatternMap(total, ay, az, orders)
