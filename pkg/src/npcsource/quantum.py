"""Two-mode Fock-state algebra, beam-splitter interference and fringe visibility.

Beam-splitter convention (symmetric): a^dag -> sqrt(T) c^dag + i sqrt(R) d^dag,
b^dag -> i sqrt(R) c^dag + sqrt(T) d^dag, with R = 1 - T. With this choice the
path-entangled input (|2,0> + e^{2i phi}|0,2>)/sqrt(2) leaves a balanced
splitter with |1,1> weight |(1 + e^{2i phi})/2|^2.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np
from scipy.optimize import minimize_scalar

NORM_TOL = 1e-12
MIN_FRINGE_STEPS = 16


class QuantumError(ValueError):
    pass


class PeriodExtractionError(QuantumError):
    pass


class TwoModeState:
    """Pure state sum_{a+b<=n_max} amp[a, b] |a, b>."""

    __slots__ = ("n_max", "_amp")

    def __init__(self, n_max: int, amplitudes, *, normalize: bool = False):
        n_max = int(n_max)
        if n_max < 0:
            raise QuantumError("n_max must be >= 0")
        amp = np.array(amplitudes, dtype=complex)
        if amp.shape != (n_max + 1, n_max + 1):
            raise QuantumError(f"amplitudes must have shape {(n_max + 1, n_max + 1)}, got {amp.shape}")
        if np.any(amp[~_allowed(n_max)] != 0):
            raise QuantumError(f"amplitudes present above the truncation a + b <= {n_max}")
        norm = float(np.sum(np.abs(amp) ** 2))
        if normalize:
            if norm == 0:
                raise QuantumError("cannot normalise the zero vector")
            amp /= math.sqrt(norm)
        elif abs(norm - 1.0) > NORM_TOL:
            raise QuantumError(f"state is not normalised: sum |amp|^2 = {norm!r}")
        amp.flags.writeable = False
        self.n_max = n_max
        self._amp = amp

    @classmethod
    def from_components(cls, components: Mapping[tuple[int, int], complex], n_max: int | None = None,
                        normalize: bool = False) -> "TwoModeState":
        if n_max is None:
            n_max = max(a + b for a, b in components)
        amp = np.zeros((n_max + 1, n_max + 1), dtype=complex)
        for (a, b), c in components.items():
            if a < 0 or b < 0 or a + b > n_max:
                raise QuantumError(f"component |{a},{b}> outside truncation n_max={n_max}")
            amp[a, b] += c
        return cls(n_max, amp, normalize=normalize)

    @classmethod
    def fock(cls, a: int, b: int, n_max: int | None = None) -> "TwoModeState":
        return cls.from_components({(a, b): 1.0}, n_max=n_max if n_max is not None else a + b)

    @classmethod
    def vacuum(cls) -> "TwoModeState":
        return cls.fock(0, 0)

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amp

    def amplitude(self, a: int, b: int) -> complex:
        if 0 <= a <= self.n_max and 0 <= b <= self.n_max:
            return complex(self._amp[a, b])
        return 0j

    def norm(self) -> float:
        return float(np.sum(np.abs(self._amp) ** 2))

    def probabilities(self) -> np.ndarray:
        return np.abs(self._amp) ** 2

    def mean_photon_number(self) -> float:
        a, b = np.indices(self._amp.shape)
        return float(np.sum((a + b) * self.probabilities()))

    def __repr__(self):
        terms = [
            f"({self._amp[a, b]:.6g})|{a},{b}>"
            for a in range(self.n_max + 1)
            for b in range(self.n_max + 1 - a)
            if self._amp[a, b] != 0
        ]
        return f"TwoModeState(n_max={self.n_max}: " + " + ".join(terms) + ")"


def _allowed(n_max):
    a, b = np.indices((n_max + 1, n_max + 1))
    return a + b <= n_max


def make_path_entangled_state(phi: float) -> TwoModeState:
    """(|2,0> + e^{2i phi}|0,2>) / sqrt(2)."""
    s = 1.0 / math.sqrt(2.0)
    return TwoModeState.from_components({(2, 0): s, (0, 2): s * np.exp(2j * phi)}, n_max=2)


@lru_cache(maxsize=256)
def _sector_unitary(n: int, t: float) -> np.ndarray:
    """Matrix U[k, a] mapping |a, n-a> to |k, n-k> for n photons."""
    st, sr = math.sqrt(t), 1j * math.sqrt(1.0 - t)
    u = np.zeros((n + 1, n + 1), dtype=complex)
    fact = [math.factorial(j) for j in range(n + 1)]
    for a in range(n + 1):
        b = n - a
        # (st c + sr d)^a (sr c + st d)^b expanded in c^k d^(n-k)
        poly_a = np.array([math.comb(a, j) * st**j * sr ** (a - j) for j in range(a + 1)])
        poly_b = np.array([math.comb(b, j) * sr**j * st ** (b - j) for j in range(b + 1)])
        coeff = np.convolve(poly_a, poly_b)
        for k in range(n + 1):
            u[k, a] = coeff[k] * math.sqrt(fact[k] * fact[n - k] / (fact[a] * fact[b]))
    u.flags.writeable = False
    return u


def beamsplitter(state: TwoModeState, transmittance: float) -> TwoModeState:
    t = float(transmittance)
    if not 0.0 <= t <= 1.0:
        raise QuantumError(f"transmittance must lie in [0, 1], got {t}")
    amp = state.amplitudes
    out = np.zeros_like(amp)
    for n in range(state.n_max + 1):
        a_idx = np.arange(n + 1)
        vec = amp[a_idx, n - a_idx]
        if not vec.any():
            continue
        out[a_idx, n - a_idx] = _sector_unitary(n, t) @ vec
    return TwoModeState(state.n_max, out, normalize=True)


def coincidence_probability(state: TwoModeState) -> float:
    """Probability that both output ports click (threshold detectors)."""
    return float(np.sum(state.probabilities()[1:, 1:]))


def singles_expectation(state: TwoModeState) -> tuple[float, float]:
    a, b = np.indices(state.amplitudes.shape)
    p = state.probabilities()
    return float(np.sum(a * p)), float(np.sum(b * p))


@dataclass(frozen=True)
class ImperfectionModel:
    coupler_transmittance: float = 0.5
    polarization_rotation: float = 0.0  # rad
    residual_ellipticity: float = 0.0
    multipair_fraction: float = 0.0
    background_pair_ratio: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.coupler_transmittance < 1.0:
            raise QuantumError(f"coupler_transmittance must lie in (0, 1), got {self.coupler_transmittance}")
        if not 0.0 <= self.residual_ellipticity <= 0.5:
            raise QuantumError(f"residual_ellipticity must lie in [0, 0.5], got {self.residual_ellipticity}")
        if not 0.0 <= self.multipair_fraction < 1.0:
            raise QuantumError(f"multipair_fraction must lie in [0, 1), got {self.multipair_fraction}")
        if not self.background_pair_ratio >= 0.0:
            raise QuantumError(f"background_pair_ratio must be >= 0, got {self.background_pair_ratio}")
        if not math.isfinite(self.polarization_rotation):
            raise QuantumError("polarization_rotation must be finite")
        if self.weights()["ideal"] < -1e-15:
            raise QuantumError("multipair_fraction and background weight exceed 1 together")

    def weights(self) -> dict[str, float]:
        w_bg = self.background_pair_ratio / (1.0 + self.background_pair_ratio)
        return {
            "ideal": 1.0 - self.multipair_fraction - w_bg,
            "background": w_bg,
            "multipair": self.multipair_fraction,
        }

    @property
    def overlap(self) -> float:
        """Interfering fraction: (1 - eps) cos^2(theta) + eps sin^2(theta)."""
        c2 = math.cos(self.polarization_rotation) ** 2
        eps = self.residual_ellipticity
        return (1.0 - eps) * c2 + eps * (1.0 - c2)

    def replace(self, **changes) -> "ImperfectionModel":
        return ImperfectionModel(**{**asdict(self), **changes})

    def as_dict(self) -> dict:
        return asdict(self)


IDEAL = ImperfectionModel()


# phase-averaged coincidence of the double-pair term; exact for 16 samples
# since the probability is a trigonometric polynomial of degree <= 8 in phi
_PHASE_SAMPLES = np.arange(16) * (math.pi / 16)


@lru_cache(maxsize=64)
def _double_pair_terms(t: float) -> tuple[float, float, float]:
    coinc, s1, s2 = 0.0, 0.0, 0.0
    for phi in _PHASE_SAMPLES:
        e = np.exp(2j * phi)
        four = TwoModeState.from_components(
            {(4, 0): math.sqrt(24.0), (2, 2): 4.0 * e, (0, 4): math.sqrt(24.0) * e**2}, n_max=4, normalize=True
        )
        out = beamsplitter(four, t)
        coinc += coincidence_probability(out)
        a, b = singles_expectation(out)
        s1 += a
        s2 += b
    k = len(_PHASE_SAMPLES)
    return coinc / k, s1 / k, s2 / k


@lru_cache(maxsize=64)
def _fock_terms(a: int, b: int, t: float) -> tuple[float, float, float]:
    out = beamsplitter(TwoModeState.fock(a, b), t)
    return (coincidence_probability(out), *singles_expectation(out))


def _mixture_point(phi: float, model: ImperfectionModel) -> tuple[float, float, float]:
    """(coincidence, singles1, singles2) of the composite source at phase phi."""
    t = model.coupler_transmittance
    eta = model.overlap
    w = model.weights()

    out = beamsplitter(make_path_entangled_state(phi), t)
    coh = np.array([coincidence_probability(out), *singles_expectation(out)])
    inc = 0.5 * (np.array(_fock_terms(2, 0, t)) + np.array(_fock_terms(0, 2, t)))
    ideal = eta * coh + (1.0 - eta) * inc

    # distinguishable |1,1> pairs behave as two independent photons
    hom = np.array(_fock_terms(1, 1, t))
    r = 1.0 - t
    indep = np.array([t * t + r * r, 1.0, 1.0])
    background = eta * hom + (1.0 - eta) * indep

    double = np.array(_double_pair_terms(t))
    total = w["ideal"] * ideal + w["background"] * background + w["multipair"] * double
    return float(total[0]), float(total[1]), float(total[2])


def contrast(model: ImperfectionModel) -> float:
    """(C0 - C90) / (C0 + C90) from the coincidence at phi = 0 and phi = pi/2."""
    c0 = _mixture_point(0.0, model)[0]
    c90 = _mixture_point(0.5 * math.pi, model)[0]
    if c0 + c90 == 0:
        return 0.0
    return (c0 - c90) / (c0 + c90)


@dataclass
class FringeFit:
    visibility: float
    period: float
    offset: float
    amplitude: float


def fit_fringe(delays, values) -> FringeFit:
    """Least-squares fit of offset + amplitude cos(2 pi d / period + phase).

    The frequency is seeded at the zero-padded FFT peak and refined by a
    bounded scalar search over the variable-projection residual.
    """
    d = np.asarray(delays, dtype=float)
    y = np.asarray(values, dtype=float)
    if d.size < 4 or d.size != y.size:
        raise PeriodExtractionError("need at least 4 matching delay/value samples")
    step = np.diff(d)
    if not np.allclose(step, step[0], rtol=1e-9, atol=0):
        raise PeriodExtractionError("delays must be uniformly spaced")
    step = step[0]
    span = d[-1] - d[0]
    mean = float(y.mean())
    ac = y - mean
    scale = max(abs(mean), float(np.max(np.abs(y))), 1e-300)
    if np.max(np.abs(ac)) <= 1e-12 * scale:
        return FringeFit(0.0, float("nan"), mean, 0.0)

    pad = 16 * d.size
    spectrum = np.abs(np.fft.rfft(ac, n=pad))
    freqs = np.fft.rfftfreq(pad, d=step)
    k = int(np.argmax(spectrum[1:]) + 1)
    f0 = freqs[k]
    if f0 * span < 1.0:
        raise PeriodExtractionError(f"delay range {span:g} um is shorter than one fringe period ({1 / f0:g} um)")

    def design(f):
        w = 2 * np.pi * f * (d - d[0])
        return np.column_stack([np.ones_like(d), np.cos(w), np.sin(w)])

    def resid(f):
        a = design(f)
        coef, *_ = np.linalg.lstsq(a, y, rcond=None)
        return float(np.sum((a @ coef - y) ** 2))

    bin_width = 1.0 / (pad * step)
    res = minimize_scalar(
        resid, bounds=(max(f0 - 2 * bin_width, 1e-12), f0 + 2 * bin_width), method="bounded",
        options={"xatol": 1e-13 * f0},
    )
    f = float(res.x)
    coef, *_ = np.linalg.lstsq(design(f), y, rcond=None)
    # the residual is flat near its minimum, so polish jointly by Gauss-Newton
    x = d - d[0]
    for _ in range(4):
        w = 2 * np.pi * f * x
        c, s = np.cos(w), np.sin(w)
        model = coef[0] + coef[1] * c + coef[2] * s
        dfreq = 2 * np.pi * x * (coef[2] * c - coef[1] * s)
        jac = np.column_stack([np.ones_like(d), c, s, dfreq])
        step_, *_ = np.linalg.lstsq(jac, y - model, rcond=None)
        coef = coef + step_[:3]
        f += step_[3]
        if abs(step_[3]) <= 1e-15 * abs(f):
            break
    offset = float(coef[0])
    amp = float(math.hypot(coef[1], coef[2]))
    vis = amp / offset if offset != 0 else float("nan")
    return FringeFit(vis, 1.0 / f, offset, amp)


@dataclass
class FringeScan:
    delays: np.ndarray  # um
    singles_port1: np.ndarray
    singles_port2: np.ndarray
    coincidences: np.ndarray
    visibility: float
    period: float  # um
    model: ImperfectionModel
    wavelength: float

    @property
    def raw_visibility(self) -> float:
        hi, lo = float(self.coincidences.max()), float(self.coincidences.min())
        return (hi - lo) / (hi + lo) if hi + lo > 0 else 0.0


def fringe_scan(
    wavelength: float,
    delay_range: tuple[float, float],
    steps: int,
    imperfections: ImperfectionModel = IDEAL,
) -> FringeScan:
    """Coincidence fringe versus path delay d, with phi = 2 pi d / wavelength."""
    if not wavelength > 0:
        raise QuantumError("wavelength must be positive")
    if steps < MIN_FRINGE_STEPS:
        raise QuantumError(f"steps must be >= {MIN_FRINGE_STEPS}, got {steps}")
    start, stop = (float(v) for v in delay_range)
    if stop - start < 0.5 * wavelength:
        raise PeriodExtractionError(
            f"delay range {stop - start:g} um is shorter than one fringe period ({0.5 * wavelength:g} um)"
        )
    delays = np.linspace(start, stop, int(steps))
    rows = np.array([_mixture_point(2 * math.pi * d / wavelength, imperfections) for d in delays])
    fit = fit_fringe(delays, rows[:, 0])
    return FringeScan(delays, rows[:, 1], rows[:, 2], rows[:, 0], fit.visibility, fit.period, imperfections, wavelength)


@dataclass(frozen=True)
class BudgetEntry:
    cause: str
    visibility_alone: float
    note: str


def visibility_budget(imperfections: ImperfectionModel) -> list[BudgetEntry]:
    """Visibility with each cause acting alone, followed by the composite."""
    m = imperfections
    t = m.coupler_transmittance
    alone = {
        "coupler_imbalance": IDEAL.replace(coupler_transmittance=t),
        "polarization_mismatch": IDEAL.replace(
            polarization_rotation=m.polarization_rotation, residual_ellipticity=m.residual_ellipticity
        ),
        "multipair": IDEAL.replace(multipair_fraction=m.multipair_fraction),
        "g20_background": IDEAL.replace(coupler_transmittance=t, background_pair_ratio=m.background_pair_ratio),
    }
    notes = {
        "coupler_imbalance": f"T={t:g}; the two-photon path state keeps full contrast for any split",
        "polarization_mismatch": f"overlap={m.overlap:.6g}",
        "multipair": f"p4={m.multipair_fraction:g}; phase-averaged double-pair coincidence floor",
        "g20_background": f"beta={m.background_pair_ratio:g} at T={t:g}; HOM leakage (T-R)^2",
    }
    entries = [BudgetEntry(k, contrast(v), notes[k]) for k, v in alone.items()]
    entries.append(BudgetEntry("composite", contrast(m), "all causes together"))
    return entries


def polarization_visibility_curve(
    angles: Iterable[float], residual_ellipticity: float, imperfections: ImperfectionModel = IDEAL
) -> list[tuple[float, float]]:
    """(theta_pol, V) pairs with the remaining imperfections held fixed."""
    base = imperfections.replace(residual_ellipticity=residual_ellipticity)
    return [(float(a), contrast(base.replace(polarization_rotation=float(a)))) for a in angles]
