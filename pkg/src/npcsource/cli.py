"""Command-line workflows: design, pattern, fringe, polscan, lattice-check.

Every command reads a YAML config, writes CSV (and PGM where useful) into
``--out`` and finishes with a ``manifest.json`` sidecar. Exit codes: 0 ok,
2 config error, 3 no physical solution, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import copy
import math
import sys
from pathlib import Path
from typing import Any, Callable

import yaml

from . import __version__
from .dispersion import (
    DispersionConfigError,
    DispersionRangeError,
    load_dispersion,
    refractive_index,
    shipped_dispersion,
    SHIPPED,
)
from .export import write_csv, write_manifest, write_pgm, write_sign_pgm
from .lattice import (
    LatticeError,
    MotifShape,
    NpcLattice,
    fill_factor,
    fourier_coefficient_analytic,
    fourier_coefficient_numeric,
    fourier_coefficient_rectangle,
    has_lattice_point_at,
    optimize_motif_radius,
    reciprocal_vector,
    render_domain_map,
)
from .phasematch import (
    NoSolutionError,
    PhaseMatchError,
    PhaseMatchProblem,
    emission_angle,
    pattern_scan,
    solve_periods,
    threshold_temperature,
)
from .quantum import ImperfectionModel, QuantumError, fringe_scan, polarization_visibility_curve, visibility_budget

EXIT_OK, EXIT_CONFIG, EXIT_NO_SOLUTION, EXIT_NUMERIC = 0, 2, 3, 4

DEFAULT_COEFFICIENT_ORDERS = [[1, 0], [0, 1], [1, 1], [2, 1], [2, -1], [1, 2]]


class ConfigError(ValueError):
    pass


# --- config loading ---------------------------------------------------------


class Config:
    """Parsed YAML plus the source line of every key, for diagnostics."""

    def __init__(self, data: dict, lines: dict[tuple, int], source: str, base_dir: Path):
        self.data = data
        self.lines = lines
        self.source = source
        self.base_dir = base_dir

    def where(self, *path) -> str:
        line = self.lines.get(tuple(path))
        dotted = ".".join(str(p) for p in path)
        return f"{self.source}:{line}: {dotted}" if line else f"{self.source}: {dotted}"

    def error(self, path: tuple, message: str) -> ConfigError:
        return ConfigError(f"{self.where(*path)}: {message}")


def _key_lines(node, prefix=()) -> dict[tuple, int]:
    out = {}
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            path = prefix + (k.value,)
            out[path] = k.start_mark.line + 1
            out.update(_key_lines(v, path))
    return out


def load_config(path: str | Path, overrides: list[str] | None = None) -> Config:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"{path}: cannot read config ({err.strerror})") from None
    try:
        node = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as err:
        mark = getattr(err, "problem_mark", None)
        where = f"{path}:{mark.line + 1}" if mark else str(path)
        raise ConfigError(f"{where}: invalid YAML ({getattr(err, 'problem', err)})") from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    cfg = Config(data, _key_lines(node), str(path), path.parent)
    for item in overrides or []:
        _apply_override(cfg, item)
    return cfg


def _apply_override(cfg: Config, item: str) -> None:
    if "=" not in item:
        raise ConfigError(f"--override {item!r}: expected key.path=value")
    key, raw = item.split("=", 1)
    parts = [p for p in key.strip().split(".") if p]
    if not parts:
        raise ConfigError(f"--override {item!r}: empty key")
    try:
        value = yaml.safe_load(raw)
    except yaml.YAMLError:
        raise ConfigError(f"--override {item!r}: value does not parse") from None
    if isinstance(value, (dict, list)):
        raise ConfigError(f"--override {item!r}: only scalar values can be overridden")
    node = cfg.data
    for p in parts[:-1]:
        node = node.setdefault(p, {})
        if not isinstance(node, dict):
            raise ConfigError(f"--override {item!r}: {p} is not a section")
    node[parts[-1]] = value
    cfg.lines[tuple(parts)] = 0


class Section:
    """Typed accessor for one config section that rejects unknown keys."""

    def __init__(self, cfg: Config, name: str, known: set[str], required: bool = True):
        self.cfg, self.name = cfg, name
        raw = cfg.data.get(name)
        if raw is None:
            if required:
                raise ConfigError(f"{cfg.source}: missing section '{name}'")
            raw = {}
        if not isinstance(raw, dict):
            raise cfg.error((name,), "must be a mapping")
        unknown = sorted(set(raw) - known)
        if unknown:
            raise cfg.error((name, unknown[0]), f"unknown key (known: {', '.join(sorted(known))})")
        self.raw = raw

    def __contains__(self, key):
        return key in self.raw

    def err(self, key, message) -> ConfigError:
        return self.cfg.error((self.name, key), message)

    def number(self, key, default=None, check: Callable[[float], bool] | None = None, why: str = "") -> float:
        if key not in self.raw:
            if default is None:
                raise self.err(key, "required")
            return float(default)
        v = self.raw[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise self.err(key, f"expected a number, got {v!r}")
        if check is not None and not check(v):
            raise self.err(key, f"{why or 'out of range'} (got {v})")
        return float(v)

    def integer(self, key, default=None, minimum=None) -> int:
        if key not in self.raw:
            if default is None:
                raise self.err(key, "required")
            return int(default)
        v = self.raw[key]
        if isinstance(v, bool) or not isinstance(v, int):
            raise self.err(key, f"expected an integer, got {v!r}")
        if minimum is not None and v < minimum:
            raise self.err(key, f"must be >= {minimum} (got {v})")
        return v

    def flag(self, key, default=False) -> bool:
        v = self.raw.get(key, default)
        if not isinstance(v, bool):
            raise self.err(key, f"expected true/false, got {v!r}")
        return v

    def text(self, key, default=None, choices=None) -> str:
        v = self.raw.get(key, default)
        if not isinstance(v, str):
            raise self.err(key, f"expected text, got {v!r}")
        if choices and v not in choices:
            raise self.err(key, f"must be one of {', '.join(choices)}")
        return v

    def orders(self, key, default=None) -> list[tuple[int, int]]:
        v = self.raw.get(key, default)
        if v is None:
            raise self.err(key, "required")
        ok = isinstance(v, list) and v and all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(i, int) and not isinstance(i, bool) for i in p)
            for p in v
        )
        if not ok:
            raise self.err(key, "expected a non-empty list of [m, n] integer pairs")
        return [(p[0], p[1]) for p in v]

    def pair(self, key, default=None) -> tuple[float, float]:
        v = self.raw.get(key, default)
        if v is None:
            raise self.err(key, "required")
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            return float(v), float(v)
        if not (isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v)):
            raise self.err(key, "expected a number or a [x, y] pair")
        return float(v[0]), float(v[1])


def _positive(x):
    return x > 0


def _dispersion(cfg: Config):
    ref = cfg.data.get("dispersion", "slt")
    if not isinstance(ref, str):
        raise cfg.error(("dispersion",), "expected a shipped name or a file path")
    try:
        if ref in SHIPPED:
            return shipped_dispersion(ref)
        return load_dispersion(cfg.base_dir / ref)
    except (DispersionConfigError, OSError) as err:
        raise cfg.error(("dispersion",), str(err)) from None


def _problem_from(sec: Section, orders) -> PhaseMatchProblem:
    pump = sec.number("pump_wavelength_um", check=_positive, why="must be positive")
    signal = sec.number("signal_wavelength_um", default=2.0 * pump, check=_positive, why="must be positive")
    if "idler_wavelength_um" in sec:
        idler = sec.number("idler_wavelength_um", check=_positive, why="must be positive")
    else:
        if not signal > pump:
            raise sec.err("signal_wavelength_um", "must exceed the pump wavelength")
        idler = 1.0 / (1.0 / pump - 1.0 / signal)
    angle = sec.number("internal_angle_deg", check=lambda v: v >= 0, why="must be >= 0")
    temp = sec.number("temperature_c")
    length = sec.number("crystal_length_mm", default=13.0, check=lambda v: v >= 0, why="must be >= 0")
    try:
        return PhaseMatchProblem(pump, signal, idler, math.radians(angle), temp, orders, length)
    except PhaseMatchError as err:
        key = "idler_wavelength_um" if "energy" in str(err) else "internal_angle_deg"
        raise sec.err(key, str(err)) from None


DESIGN_KEYS = {
    "pump_wavelength_um", "signal_wavelength_um", "idler_wavelength_um", "internal_angle_deg", "temperature_c",
    "crystal_length_mm", "orders", "coefficient_orders", "grid_points_per_cell",
}


# --- commands -----------------------------------------------------------------


def cmd_design(cfg: Config, out: Path) -> dict:
    model = _dispersion(cfg)
    sec = Section(cfg, "design", DESIGN_KEYS)
    orders = sec.orders("orders")
    coeff_orders = sec.orders("coefficient_orders", DEFAULT_COEFFICIENT_ORDERS)
    grid = sec.integer("grid_points_per_cell", 2048, minimum=256)
    problems = [_problem_from(sec, o) for o in orders]

    design_rows, outputs, results = [], [], []
    for prob in problems:
        sol = solve_periods(model, prob)
        lx, ly = sol.periods
        m, n = prob.orders
        row = {"m": m, "n": n, "period_x_um": lx, "period_y_um": ly}
        if ly is not None:
            lat = sol.lattice()
            r_opt, c_opt = optimize_motif_radius(lat, m, n)
            lat = lat.with_motif(MotifShape.circle(r_opt))
            table = []
            for cm, cn in coeff_orders:
                if (cm, cn) == (0, 0):
                    continue
                a = fourier_coefficient_analytic(lat, cm, cn)
                num = fourier_coefficient_numeric(lat, cm, cn, grid)
                table.append((cm, cn, a, num, abs(a - num)))
            path = write_csv(
                out / f"coefficients_m{m}_n{n}.csv",
                ["m [1]", "n [1]", "analytic [1]", "numeric [1]", "abs_error [1]"],
                table,
            )
            outputs.append(path)
            row.update(radius_opt_um=r_opt, coefficient_opt=c_opt, fill_factor=fill_factor(lat))
        design_rows.append(row)
        results.append(row)

    path = write_csv(
        out / "design.csv",
        ["m [1]", "n [1]", "period_x [um]", "period_y [um]", "radius_opt [um]", "coefficient_opt [1]",
         "fill_factor [1]"],
        [
            (r["m"], r["n"], r["period_x_um"], r["period_y_um"], r.get("radius_opt_um"), r.get("coefficient_opt"),
             r.get("fill_factor"))
            for r in design_rows
        ],
    )
    outputs.insert(0, path)
    return {"outputs": outputs, "results": {"designs": results}, "dispersion": model}


PATTERN_KEYS = {
    "pump_wavelength_um", "signal_wavelength_um", "temperature_c", "orders", "include_g20", "window_deg", "grid",
    "crystal_length_mm",
}
LATTICE_KEYS = {
    "kind", "period_x_um", "period_y_um", "radius_um", "width_um", "height_um", "primitive_a_um", "primitive_b_um",
    "orders_a", "orders_b",
}


def _motif(sec: Section, default_radius=None) -> MotifShape:
    if "width_um" in sec or "height_um" in sec:
        return MotifShape.rectangle(sec.number("width_um", check=_positive), sec.number("height_um", check=_positive))
    if default_radius is not None and "radius_um" not in sec:
        return MotifShape.circle(default_radius)
    return MotifShape.circle(sec.number("radius_um", check=_positive, why="must be positive"))


def _lattice(cfg: Config) -> tuple[NpcLattice, NpcLattice]:
    """(lattice, rectangular reference) from the ``lattice`` section."""
    sec = Section(cfg, "lattice", LATTICE_KEYS)
    kind = sec.text("kind", "rectangular", ("rectangular", "vectors", "reciprocal_orders"))
    try:
        if kind == "vectors":
            a, b = sec.pair("primitive_a_um"), sec.pair("primitive_b_um")
            lat = NpcLattice(a, b, _motif(sec))
            return lat, lat
        lx = sec.number("period_x_um", check=_positive, why="must be positive")
        ly = sec.number("period_y_um", check=_positive, why="must be positive")
        motif = _motif(sec, default_radius=0.25 * min(lx, ly))
        if kind == "rectangular":
            lat = NpcLattice.rectangular(lx, ly, motif)
            return lat, lat
        ref = NpcLattice.rectangular(lx, ly, MotifShape.circle(0.25 * min(lx, ly)))
        oa = sec.orders("orders_a", [[2, 1]])[0]
        ob = sec.orders("orders_b", [[2, -1]])[0]
        ga = reciprocal_vector(ref, *oa).components
        gb = reciprocal_vector(ref, *ob).components
        return NpcLattice.from_reciprocal(ga, gb, motif), ref
    except LatticeError as err:
        raise cfg.error(("lattice",), str(err)) from None


def _pattern_lattice(cfg: Config, model) -> NpcLattice:
    if "lattice" in cfg.data:
        return _lattice(cfg)[0]
    sec = Section(cfg, "design", DESIGN_KEYS)
    order = sec.orders("orders")[0]
    return solve_periods(model, _problem_from(sec, order)).lattice()


def cmd_pattern(cfg: Config, out: Path) -> dict:
    model = _dispersion(cfg)
    lattice = _pattern_lattice(cfg, model)
    sec = Section(cfg, "pattern", PATTERN_KEYS)
    pump = sec.number("pump_wavelength_um", check=_positive, why="must be positive")
    signal = sec.number("signal_wavelength_um", default=2 * pump, check=lambda v: v > pump, why="must exceed pump")
    temp = sec.number("temperature_c")
    orders = sec.orders("orders", [[2, 1], [2, -1]])
    if sec.flag("include_g20") and (2, 0) not in orders:
        orders.append((2, 0))
    window = sec.pair("window_deg", 3.0)
    grid = sec.integer("grid", 201)
    if grid < 64:
        raise sec.err("grid", f"must be at least 64 points per axis (got {grid})")
    length = sec.number("crystal_length_mm", default=13.0, check=lambda v: v >= 0, why="must be >= 0")

    pm = pattern_scan(model, lattice, orders, pump, temp, window, grid, length, signal)
    n_s = refractive_index(model, signal, temp)
    rows = []
    for j, az in enumerate(pm.angle_z):
        for i, ay in enumerate(pm.angle_y):
            rows.append((ay, az, pm.intensity[j, i]))
    csv_path = write_csv(out / "pattern.csv", ["angle_y [deg]", "angle_z [deg]", "intensity [rel]"], rows)
    pgm_path = write_pgm(out / "pattern.pgm", pm.intensity[::-1], 0.0, 1.0)

    order_rows = []
    for m, n in orders:
        try:
            e = emission_angle(model, lattice, (m, n), pump, signal, temp, length)
            ext_axis = math.degrees(math.asin(min(1.0, n_s * math.sin(e.theta))))
            ext_cone = math.degrees(math.asin(min(1.0, n_s * math.sin(e.cone_half_angle))))
            order_rows.append((m, n, e.regime, math.degrees(e.theta), ext_axis, ext_cone))
        except NoSolutionError:
            order_rows.append((m, n, "none", None, None, None))
    ord_path = write_csv(
        out / "pattern_orders.csv",
        ["m [1]", "n [1]", "regime", "axis_internal [deg]", "axis_external [deg]", "cone_half_angle_external [deg]"],
        order_rows,
    )
    results = {"orders": [list(r) for r in order_rows]}
    try:
        results["threshold_temperature_c"] = threshold_temperature(model, lattice, orders[0], pump, signal)
    except NoSolutionError:
        results["threshold_temperature_c"] = None
    return {"outputs": [csv_path, pgm_path, ord_path], "results": results, "dispersion": model}


IMPERFECTION_KEYS = {
    "coupler_transmittance", "polarization_rotation_deg", "residual_ellipticity", "multipair_fraction",
    "background_pair_ratio",
}


def _imperfections(cfg: Config) -> ImperfectionModel:
    sec = Section(cfg, "imperfections", IMPERFECTION_KEYS, required=False)
    values = dict(
        coupler_transmittance=sec.number("coupler_transmittance", 0.5),
        polarization_rotation=math.radians(sec.number("polarization_rotation_deg", 0.0)),
        residual_ellipticity=sec.number("residual_ellipticity", 0.0),
        multipair_fraction=sec.number("multipair_fraction", 0.0),
        background_pair_ratio=sec.number("background_pair_ratio", 0.0),
    )
    try:
        return ImperfectionModel(**values)
    except QuantumError as err:
        key = next((k for k in IMPERFECTION_KEYS if k.split("_deg")[0] in str(err)), "imperfections")
        raise sec.err(key, str(err)) from None


def cmd_fringe(cfg: Config, out: Path, budget: bool = False) -> dict:
    imp = _imperfections(cfg)
    sec = Section(cfg, "fringe", {"wavelength_um", "delay_start_um", "delay_stop_um", "steps", "budget"})
    lam = sec.number("wavelength_um", check=_positive, why="must be positive")
    start = sec.number("delay_start_um", 0.0)
    stop = sec.number("delay_stop_um", start + 5 * lam)
    steps = sec.integer("steps", 201, minimum=16)
    budget = budget or sec.flag("budget")
    scan = fringe_scan(lam, (start, stop), steps, imp)

    outputs = [
        write_csv(
            out / "fringe.csv",
            ["delay_um [um]", "singles1 [photons/trial]", "singles2 [photons/trial]", "coincidence_prob [1/trial]"],
            zip(scan.delays, scan.singles_port1, scan.singles_port2, scan.coincidences),
        ),
        write_csv(
            out / "fringe_summary.csv",
            ["visibility [1]", "period [um]", "raw_visibility [1]", "wavelength [um]"],
            [(scan.visibility, scan.period, scan.raw_visibility, lam)],
        ),
    ]
    results = {"visibility": scan.visibility, "period_um": scan.period, "imperfections": imp.as_dict()}
    if budget:
        entries = visibility_budget(imp)
        outputs.append(
            write_csv(out / "budget.csv", ["cause", "visibility_alone [1]", "note"],
                      [(e.cause, e.visibility_alone, e.note) for e in entries])
        )
        results["budget"] = {e.cause: e.visibility_alone for e in entries}
    return {"outputs": outputs, "results": results}


def cmd_polscan(cfg: Config, out: Path) -> dict:
    imp = _imperfections(cfg)
    sec = Section(cfg, "polscan", {"start_deg", "stop_deg", "steps", "residual_ellipticity"})
    start = sec.number("start_deg", 0.0)
    stop = sec.number("stop_deg", 90.0)
    steps = sec.integer("steps", 19, minimum=1)
    eps = sec.number("residual_ellipticity", imp.residual_ellipticity)
    if not 0 <= eps <= 0.5:
        raise sec.err("residual_ellipticity", f"must lie in [0, 0.5] (got {eps})")
    if steps == 1:
        angles = [start]
    else:
        angles = [start + (stop - start) * k / (steps - 1) for k in range(steps)]
    curve = polarization_visibility_curve([math.radians(a) for a in angles], eps, imp)
    path = write_csv(out / "polscan.csv", ["theta_pol [deg]", "visibility [1]"],
                     [(a, v) for a, (_, v) in zip(angles, curve)])
    return {"outputs": [path], "results": {"final_visibility": curve[-1][1], "rows": len(curve)}}


def cmd_lattice_check(cfg: Config, out: Path) -> dict:
    lattice, ref = _lattice(cfg)
    sec = Section(cfg, "check", {"midpoint_of", "vector_rad_per_um", "tolerance_rad_per_um"}, required=False)
    tol = sec.number("tolerance_rad_per_um", 1e-3, check=_positive, why="must be positive")
    if "vector_rad_per_um" in sec:
        vec = sec.pair("vector_rad_per_um")
        label = "explicit"
    else:
        pair = sec.orders("midpoint_of", [[2, 1], [2, -1]])
        if len(pair) != 2:
            raise sec.err("midpoint_of", "expected exactly two [m, n] pairs")
        ga = reciprocal_vector(ref, *pair[0]).components
        gb = reciprocal_vector(ref, *pair[1]).components
        vec = (0.5 * (ga[0] + gb[0]), 0.5 * (ga[1] + gb[1]))
        label = f"midpoint({pair[0][0]},{pair[0][1]};{pair[1][0]},{pair[1][1]})"
    present = has_lattice_point_at(lattice, vec, tol)
    (b1x, b1y), (b2x, b2y) = lattice.reciprocal_basis
    outputs = [
        write_csv(
            out / "lattice_check.csv",
            ["label", "vector_x [rad/um]", "vector_y [rad/um]", "tolerance [rad/um]", "lattice_point_present [bool]"],
            [(label, vec[0], vec[1], tol, present)],
        )
    ]

    rsec = Section(cfg, "render", {"window_um", "resolution_per_um"}, required=False)
    if rsec.raw:
        window = rsec.pair("window_um")
        res = rsec.number("resolution_per_um", check=_positive, why="must be positive")
        try:
            dm = render_domain_map(lattice, window, res)
        except LatticeError as err:
            raise rsec.err("window_um", str(err)) from None
        outputs.append(write_sign_pgm(out / "domain.pgm", dm.signs))
        grid_rows = ([y, *row] for y, row in zip(dm.y[::-1], dm.signs[::-1].tolist()))
        outputs.append(write_csv(out / "domain.csv", ["y [um] \\ x [um]", *dm.x], grid_rows))
        render_info = {"inverted_fraction": dm.inverted_fraction, "warnings": dm.warnings}
    else:
        render_info = None
    results = {
        "lattice_point_present": present,
        "primitive_a_um": list(lattice.primitive_a),
        "primitive_b_um": list(lattice.primitive_b),
        "reciprocal_b1": [b1x, b1y],
        "reciprocal_b2": [b2x, b2y],
        "fill_factor": fill_factor(lattice),
        "render": render_info,
    }
    if lattice.motif.kind == "rectangle" and lattice.is_rectangular:
        results["coefficient_rect_2_1"] = fourier_coefficient_rectangle(lattice, 2, 1)
    return {"outputs": outputs, "results": results}


COMMANDS = {
    "design": cmd_design,
    "pattern": cmd_pattern,
    "fringe": cmd_fringe,
    "polscan": cmd_polscan,
    "lattice-check": cmd_lattice_check,
}


def run(command: str, config: str | Path, out: str | Path, overrides: list[str] | None = None, **kwargs) -> int:
    try:
        cfg = load_config(config, overrides)
        params = copy.deepcopy(cfg.data)
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        result = COMMANDS[command](cfg, out_dir, **kwargs)
        extra = {}
        model = result.get("dispersion")
        if model is not None:
            extra["dispersion"] = {"name": model.name, "sha256": model.digest()}
        write_manifest(out_dir, command, __version__, params, result["outputs"], result["results"], extra)
    except NoSolutionError as err:
        print(f"error: no physical solution: {err}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except (ConfigError, PhaseMatchError, LatticeError, QuantumError, DispersionRangeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (ArithmeticError, ValueError) as err:
        print(f"error: numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERIC
    print(f"wrote {Path(out) / 'manifest.json'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="npcsource", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="YAML config file")
        p.add_argument("--out", default=f"out_{name.replace('-', '_')}", help="output directory")
        p.add_argument("--override", action="append", default=[], metavar="KEY.PATH=VALUE",
                       help="replace one scalar config value; repeatable")
        if name == "fringe":
            p.add_argument("--budget", action="store_true", help="also write the itemised visibility budget")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    kwargs: dict[str, Any] = {}
    if args.command == "fringe":
        kwargs["budget"] = args.budget
    return run(args.command, args.config, args.out, args.override, **kwargs)


if __name__ == "__main__":
    raise SystemExit(main())
