"""Refractive index of the nonlinear crystal versus wavelength and temperature.

Two functional forms are understood:

``sellmeier-thermal``
    n^2 = A + B/(l^2 - C^2) + D/(l^2 - E^2) - F l^2, where every coefficient
    ``X`` may carry a temperature term ``t_X`` so that it reads
    ``X + t_X * f(T)`` with ``f(T) = (T - T_ref)(T + T_ref + 2 kelvin)``.
    This is the form used for congruent and stoichiometric LiTaO3/LiNbO3 data.

``sellmeier-poles``
    n^2 = 1 + sum_i B_i l^2 / (l^2 - C_i), plus a linear thermo-optic shift
    ``dn_dT * (T - T_ref)`` on n.

Wavelengths are vacuum wavelengths in micrometres, temperatures in deg C.
"""
from __future__ import annotations

import hashlib
import json
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Mapping

import yaml

FORMS = ("sellmeier-thermal", "sellmeier-poles")

_THERMAL_COEFFS = ("A", "B", "C", "D", "E", "F")
_THERMAL_EXTRA = ("T_ref", "kelvin")
_POLE_KEY = re.compile(r"^([BC])(\d+)$")
_CONFIG_KEYS = (
    "name",
    "form",
    "coefficients",
    "temperature_terms",
    "valid_wavelength_range",
    "valid_temperature_range",
)

SHIPPED = {"slt": "slt_mgo_extraordinary.yaml"}


class DispersionRangeError(ValueError):
    """Wavelength or temperature outside the model's validity range."""


class DispersionConfigError(ValueError):
    pass


@dataclass(frozen=True)
class DispersionModel:
    name: str
    form: str
    coefficients: Mapping[str, float]
    temperature_terms: Mapping[str, float] = field(default_factory=dict)
    valid_wavelength_range: tuple[float, float] = (0.3, 5.0)
    valid_temperature_range: tuple[float, float] = (-273.15, 1000.0)

    def __post_init__(self):
        if self.form not in FORMS:
            raise DispersionConfigError(
                f"unknown dispersion form {self.form!r}; expected one of {FORMS}"
            )
        object.__setattr__(self, "coefficients", dict(self.coefficients))
        object.__setattr__(self, "temperature_terms", dict(self.temperature_terms))
        object.__setattr__(self, "valid_wavelength_range", tuple(map(float, self.valid_wavelength_range)))
        object.__setattr__(self, "valid_temperature_range", tuple(map(float, self.valid_temperature_range)))
        if self.form == "sellmeier-thermal":
            missing = [k for k in _THERMAL_COEFFS if k not in self.coefficients]
            unknown = set(self.coefficients) - set(_THERMAL_COEFFS)
            bad_t = set(self.temperature_terms) - set(_THERMAL_COEFFS) - set(_THERMAL_EXTRA)
        else:
            poles = {}
            unknown = set()
            for key in self.coefficients:
                match = _POLE_KEY.match(key)
                if match is None:
                    unknown.add(key)
                else:
                    poles.setdefault(int(match.group(2)), set()).add(match.group(1))
            missing = [f"B{i}/C{i}" for i, seen in sorted(poles.items()) if seen != {"B", "C"}]
            bad_t = set(self.temperature_terms) - {"dn_dT", "T_ref"}
        if missing:
            raise DispersionConfigError(f"{self.name}: missing coefficients {missing}")
        if unknown:
            raise DispersionConfigError(f"{self.name}: unknown coefficients {sorted(unknown)}")
        if bad_t:
            raise DispersionConfigError(f"{self.name}: unknown temperature terms {sorted(bad_t)}")
        for lo, hi, what in (
            (*self.valid_wavelength_range, "wavelength"),
            (*self.valid_temperature_range, "temperature"),
        ):
            if not lo < hi:
                raise DispersionConfigError(f"{self.name}: empty {what} range [{lo}, {hi}]")

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "form": self.form,
            "coefficients": dict(self.coefficients),
            "temperature_terms": dict(self.temperature_terms),
            "valid_wavelength_range": list(self.valid_wavelength_range),
            "valid_temperature_range": list(self.valid_temperature_range),
        }

    def digest(self) -> str:
        """SHA-256 of the canonical JSON form; identifies the data behind a result."""
        blob = json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _check_range(model: DispersionModel, wavelength: float, temperature: float) -> None:
    lo, hi = model.valid_wavelength_range
    if wavelength < lo:
        raise DispersionRangeError(f"wavelength {wavelength} um below lower bound {lo} um of {model.name}")
    if wavelength > hi:
        raise DispersionRangeError(f"wavelength {wavelength} um above upper bound {hi} um of {model.name}")
    lo, hi = model.valid_temperature_range
    if temperature < lo:
        raise DispersionRangeError(f"temperature {temperature} C below lower bound {lo} C of {model.name}")
    if temperature > hi:
        raise DispersionRangeError(f"temperature {temperature} C above upper bound {hi} C of {model.name}")


def _n_thermal(c, t, lam, temp):
    f = 0.0
    if any(t.get(k, 0.0) for k in _THERMAL_COEFFS):
        t_ref = t.get("T_ref", 0.0)
        f = (temp - t_ref) * (temp + t_ref + 2.0 * t.get("kelvin", 0.0))
    A, B, C, D, E, F = (c[k] + t.get(k, 0.0) * f for k in _THERMAL_COEFFS)
    l2 = lam * lam
    return math.sqrt(A + B / (l2 - C * C) + D / (l2 - E * E) - F * l2)


def _n_poles(c, t, lam, temp):
    l2 = lam * lam
    n2 = 1.0
    i = 1
    while f"B{i}" in c:
        n2 += c[f"B{i}"] * l2 / (l2 - c[f"C{i}"])
        i += 1
    return math.sqrt(n2) + t.get("dn_dT", 0.0) * (temp - t.get("T_ref", 0.0))


def refractive_index(model: DispersionModel, wavelength: float, temperature: float) -> float:
    """Extraordinary index n(wavelength [um], temperature [C])."""
    wavelength = float(wavelength)
    temperature = float(temperature)
    _check_range(model, wavelength, temperature)
    if model.form == "sellmeier-thermal":
        return _n_thermal(model.coefficients, model.temperature_terms, wavelength, temperature)
    return _n_poles(model.coefficients, model.temperature_terms, wavelength, temperature)


def wavevector_magnitude(model: DispersionModel, wavelength: float, temperature: float) -> float:
    """|k| = 2 pi n / wavelength, in rad/um."""
    return 2.0 * math.pi * refractive_index(model, wavelength, temperature) / float(wavelength)


def from_mapping(data: Mapping, source: str = "<mapping>") -> DispersionModel:
    if not isinstance(data, Mapping):
        raise DispersionConfigError(f"{source}: expected a mapping at top level")
    unknown = set(data) - set(_CONFIG_KEYS)
    if unknown:
        raise DispersionConfigError(f"{source}: unknown fields {sorted(unknown)}")
    missing = [k for k in _CONFIG_KEYS if k not in data]
    if missing:
        raise DispersionConfigError(f"{source}: missing fields {missing}")
    try:
        coefficients = {str(k): float(v) for k, v in data["coefficients"].items()}
        terms = {str(k): float(v) for k, v in (data["temperature_terms"] or {}).items()}
        wl = tuple(float(v) for v in data["valid_wavelength_range"])
        tr = tuple(float(v) for v in data["valid_temperature_range"])
    except (AttributeError, TypeError, ValueError) as exc:
        raise DispersionConfigError(f"{source}: malformed numeric field ({exc})") from None
    if len(wl) != 2 or len(tr) != 2:
        raise DispersionConfigError(f"{source}: validity ranges must be [low, high] pairs")
    return DispersionModel(
        name=str(data["name"]),
        form=str(data["form"]),
        coefficients=coefficients,
        temperature_terms=terms,
        valid_wavelength_range=wl,
        valid_temperature_range=tr,
    )


def load_dispersion(path: str | Path) -> DispersionModel:
    path = Path(path)
    with path.open() as fh:
        data = yaml.safe_load(fh)
    return from_mapping(data, source=str(path))


def shipped_dispersion(name: str = "slt") -> DispersionModel:
    """Load one of the configs bundled with the package (currently ``"slt"``)."""
    try:
        filename = SHIPPED[name]
    except KeyError:
        raise DispersionConfigError(f"no shipped dispersion named {name!r}; have {sorted(SHIPPED)}") from None
    text = resources.files("npcsource").joinpath("data", filename).read_text()
    return from_mapping(yaml.safe_load(text), source=filename)
