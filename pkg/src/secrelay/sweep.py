"""Sweep configuration, execution, and report emission.

Configs are flat JSON documents; decibel inputs carry a ``_db`` key suffix
and are converted at parse time, so everything downstream is linear.  Report
emission is deterministic byte-for-byte and atomic (temp file + rename).
"""
import json
import math
import os
import tempfile
from dataclasses import dataclass, replace
from pathlib import Path

from . import montecarlo
from .analytic import Scheme, scheme_report
from .params import ParameterError, SystemParams, from_decibel, validate

DEFAULT_SEED = 42
DEFAULT_TRIALS = 10_000

_PARAM_KEYS = ("alpha_sr", "alpha_rd", "alpha_re", "rho", "n_r", "w_hz", "epsilon")
_POWER_KEYS = ("p_s", "p_r")
_SWEEP_KEYS = ("variable", "grid", "schemes", "mode", "trials", "seed")


class ConfigError(ValueError):
    """Configuration rejected; ``field`` holds the offending key path."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


VARIABLES = ("source-power-db", "relay-power-db", "alpha-re", "n-r", "rho", "epsilon")
MODES = ("analytic", "montecarlo", "both")


@dataclass(frozen=True)
class SweepSpec:
    base: SystemParams
    variable: str             # one of VARIABLES
    grid: tuple               # strictly increasing values of the swept variable
    schemes: tuple            # subset of (Scheme.AF, Scheme.DF), canonical order
    mode: str                 # one of MODES
    trials: int | None = None  # required iff mode includes montecarlo
    seed: int | None = None    # required iff mode includes montecarlo

    @property
    def montecarlo_active(self) -> bool:
        return self.mode in ("montecarlo", "both")


@dataclass(frozen=True)
class SchemeColumns:
    c_d: float
    c_soc_analytic: float
    p0_analytic: float
    c_soc_mc: float | None = None
    c_soc_mc_stderr: float | None = None
    p0_mc: float | None = None
    p0_mc_stderr: float | None = None


@dataclass(frozen=True)
class SweepRow:
    value: float                       # swept-variable value for this row
    schemes: dict                      # Scheme -> SchemeColumns


class RowError(RuntimeError):
    """A row of a sweep failed; carries the row index and variable value."""

    def __init__(self, index: int, variable: str, value, cause: Exception):
        self.index = index
        super().__init__(f"row {index} ({variable}={value}): {cause}")


def _require_number(raw, key, *, integer=False):
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ConfigError(key, f"expected a number, got {raw!r}")
    if integer and raw != int(raw):
        raise ConfigError(key, f"expected an integer, got {raw!r}")
    if not math.isfinite(raw):
        raise ConfigError(key, f"expected a finite value, got {raw!r}")
    return int(raw) if integer else float(raw)


def _parse_grid(raw, variable: str):
    integer = variable == "n-r"
    if isinstance(raw, list):
        if not raw:
            raise ConfigError("grid", "grid must be nonempty")
        values = [_require_number(v, "grid", integer=integer) for v in raw]
    elif isinstance(raw, dict):
        extra = set(raw) - {"lo", "hi", "step"}
        if extra:
            raise ConfigError("grid", f"unknown grid keys: {sorted(extra)}")
        missing = {"lo", "hi", "step"} - set(raw)
        if missing:
            raise ConfigError("grid", f"grid range needs lo/hi/step, missing {sorted(missing)}")
        lo = _require_number(raw["lo"], "grid.lo")
        hi = _require_number(raw["hi"], "grid.hi")
        step = _require_number(raw["step"], "grid.step")
        if step <= 0:
            raise ConfigError("grid", f"step must be > 0, got {step}")
        if hi < lo:
            raise ConfigError("grid", f"grid range is empty: hi={hi} < lo={lo}")
        values = []
        i = 0
        while True:
            x = lo + i * step
            if x > hi + 1e-9 * max(1.0, abs(hi)):
                break
            values.append(int(round(x)) if integer else x)
            i += 1
    else:
        raise ConfigError("grid", "grid must be a list of values or a {lo, hi, step} object")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError("grid", "grid values must be strictly increasing")
    return tuple(values)


def parse_config(text: str) -> SweepSpec:
    """Parse and validate a flat JSON sweep configuration."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("<document>", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("<document>", "top level must be a JSON object")

    known = set(_PARAM_KEYS) | set(_POWER_KEYS) | {k + "_db" for k in _POWER_KEYS}
    known |= set(_SWEEP_KEYS)
    for key in doc:
        if key not in known:
            raise ConfigError(key, "unknown key")

    fields = {}
    for key in _POWER_KEYS:
        db_key = key + "_db"
        if key in doc and db_key in doc:
            raise ConfigError(db_key, f"conflicts with {key}; give one or the other")
        if key in doc:
            fields[key] = _require_number(doc[key], key)
        elif db_key in doc:
            fields[key] = from_decibel(_require_number(doc[db_key], db_key))
    for key in _PARAM_KEYS:
        if key in doc:
            fields[key] = _require_number(doc[key], key, integer=(key == "n_r"))
    try:
        base = validate(SystemParams(**fields))
    except ParameterError as exc:
        names = ", ".join(e.split(" ", 1)[0] for e in exc.errors)
        raise ConfigError(names, str(exc)) from None

    for key in ("variable", "grid", "schemes", "mode"):
        if key not in doc:
            raise ConfigError(key, "required key is missing")
    variable = doc["variable"]
    if variable not in VARIABLES:
        raise ConfigError("variable", f"must be one of {VARIABLES}, got {variable!r}")
    grid = _parse_grid(doc["grid"], variable)

    raw_schemes = doc["schemes"]
    if not isinstance(raw_schemes, list) or not raw_schemes:
        raise ConfigError("schemes", "expected a nonempty list drawn from ['AF', 'DF']")
    try:
        requested = {Scheme(s) for s in raw_schemes}
    except ValueError:
        raise ConfigError("schemes", f"expected values from ['AF', 'DF'], got {raw_schemes!r}") from None
    schemes = tuple(s for s in (Scheme.AF, Scheme.DF) if s in requested)

    mode = doc["mode"]
    if mode not in MODES:
        raise ConfigError("mode", f"must be one of {MODES}, got {mode!r}")

    mc_active = mode in ("montecarlo", "both")
    trials = seed = None
    for key, integer_floor in (("trials", 1), ("seed", 0)):
        if mc_active:
            if key not in doc:
                raise ConfigError(key, "required when mode includes montecarlo")
            value = _require_number(doc[key], key, integer=True)
            if value < integer_floor:
                raise ConfigError(key, f"must be >= {integer_floor}, got {value}")
            if key == "seed" and value >= 2**64:
                raise ConfigError(key, "must fit in 64 bits")
            if key == "trials":
                trials = value
            else:
                seed = value
        elif key in doc:
            raise ConfigError(key, "only valid when mode includes montecarlo")

    return SweepSpec(
        base=base, variable=variable, grid=grid, schemes=schemes,
        mode=mode, trials=trials, seed=seed,
    )


def _apply_variable(base: SystemParams, variable: str, value) -> SystemParams:
    if variable == "source-power-db":
        return replace(base, p_s=from_decibel(value))
    if variable == "relay-power-db":
        return replace(base, p_r=from_decibel(value))
    if variable == "alpha-re":
        return replace(base, alpha_re=value)
    if variable == "n-r":
        return replace(base, n_r=int(value))
    if variable == "rho":
        return replace(base, rho=value)
    return replace(base, epsilon=value)


def run_sweep(spec: SweepSpec):
    """Evaluate every grid point, one SweepRow per point, in grid order.

    Monte Carlo rows reseed with seed XOR row-index so rows are independent
    while the whole sweep stays a pure function of (config, seed).
    """
    rows = []
    for index, value in enumerate(spec.grid):
        try:
            p = validate(_apply_variable(spec.base, spec.variable, value))
            columns = {}
            for scheme in spec.schemes:
                report = scheme_report(scheme, p)
                cols = SchemeColumns(
                    c_d=report.c_d, c_soc_analytic=report.c_soc, p0_analytic=report.p0
                )
                if spec.montecarlo_active:
                    est = montecarlo.estimate(scheme, p, spec.trials, spec.seed ^ index)
                    cols = replace(
                        cols,
                        c_soc_mc=est.c_soc.value,
                        c_soc_mc_stderr=est.c_soc.std_error,
                        p0_mc=est.p0.value,
                        p0_mc_stderr=est.p0.std_error,
                    )
                columns[scheme] = cols
        except (ParameterError, ValueError, ArithmeticError) as exc:
            raise RowError(index, spec.variable, value, exc) from exc
        rows.append(SweepRow(value=float(value), schemes=columns))
    return rows


_ANALYTIC_FIELDS = ("c_d", "c_soc_analytic", "p0_analytic")
_MC_FIELDS = ("c_soc_mc", "c_soc_mc_stderr", "p0_mc", "p0_mc_stderr")


def _columns(rows):
    header = ["value"]
    first = rows[0]
    for scheme in (Scheme.AF, Scheme.DF):
        if scheme not in first.schemes:
            continue
        fields = _ANALYTIC_FIELDS
        if first.schemes[scheme].c_soc_mc is not None:
            fields = _ANALYTIC_FIELDS + _MC_FIELDS
        header.extend(f"{scheme.value.lower()}_{f}" for f in fields)
    return header


def _cells(row):
    cells = [row.value]
    for scheme in (Scheme.AF, Scheme.DF):
        if scheme not in row.schemes:
            continue
        cols = row.schemes[scheme]
        cells.extend(getattr(cols, f) for f in _ANALYTIC_FIELDS)
        if cols.c_soc_mc is not None:
            cells.extend(getattr(cols, f) for f in _MC_FIELDS)
    return cells


def _fmt(value: float) -> str:
    return format(value, ".9g")


def emit_report(rows, format: str, destination) -> int:
    """Write rows as CSV or JSON; returns the byte count written.

    Output is byte-identical for identical inputs and is written atomically.
    """
    if not rows:
        raise ValueError("no rows to emit")
    if format not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {format!r}")
    header = _columns(rows)
    if format == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(_fmt(c) for c in _cells(row)) for row in rows)
        payload = "\n".join(lines) + "\n"
    else:
        objects = [
            {name: float(_fmt(cell)) for name, cell in zip(header, _cells(row))}
            for row in rows
        ]
        payload = json.dumps(objects, indent=2) + "\n"
    data = payload.encode("utf-8")

    destination = Path(destination)
    fd, tmp_path = tempfile.mkstemp(dir=destination.parent, prefix=destination.name + ".")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_path, destination)
    except OSError:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    return len(data)


def _alpha_re_grid():
    return {"lo": 0.1, "hi": 3.0, "step": 0.1}


def _preset_doc(**overrides):
    doc = {
        "p_s_db": 20.0, "p_r_db": 20.0, "rho": 0.9, "n_r": 100, "w_hz": 10_000.0,
        "epsilon": 0.01, "variable": "alpha-re", "grid": _alpha_re_grid(),
        "schemes": ["AF", "DF"], "mode": "both",
        "trials": DEFAULT_TRIALS, "seed": DEFAULT_SEED,
    }
    doc.update(overrides)
    return json.dumps(doc)


# Reproduction presets for the reference figures.  Each entry expands to one
# or more labeled runs; one output table per run.
PRESETS = ("fig2", "fig3", "fig3b", "fig4", "fig5", "fig6", "fig7")


def preset_specs(name: str):
    """Labeled SweepSpec list for a named preset."""
    if name == "fig2":
        return [
            (f"eps{eps}", parse_config(_preset_doc(schemes=["AF"], epsilon=eps)))
            for eps in (0.001, 0.01, 0.1)
        ]
    if name == "fig3":
        return [
            (f"eps{eps}", parse_config(_preset_doc(schemes=["DF"], epsilon=eps)))
            for eps in (0.001, 0.01, 0.1)
        ]
    if name == "fig3b":
        return [
            (f"nr{n}", parse_config(_preset_doc(p_s_db=10.0, p_r_db=10.0, n_r=n, trials=5000)))
            for n in (100, 200)
        ]
    if name == "fig4":
        return [("", parse_config(_preset_doc(
            p_s_db=10.0, p_r_db=10.0, epsilon=0.05, trials=5000,
            variable="source-power-db", grid={"lo": -10.0, "hi": 40.0, "step": 1.0},
        )))]
    if name == "fig5":
        return [("", parse_config(_preset_doc(
            p_s_db=10.0, p_r_db=10.0, epsilon=0.05, trials=5000,
            variable="relay-power-db", grid={"lo": -10.0, "hi": 50.0, "step": 2.0},
        )))]
    if name == "fig6":
        return [("", parse_config(_preset_doc(
            p_s_db=10.0, p_r_db=10.0, epsilon=0.05, trials=5000,
            variable="source-power-db", grid={"lo": -10.0, "hi": 40.0, "step": 1.0},
        )))]
    if name == "fig7":
        return [("", parse_config(_preset_doc(
            p_s_db=10.0, p_r_db=10.0, epsilon=0.05, trials=5000,
            variable="relay-power-db", grid={"lo": -10.0, "hi": 50.0, "step": 2.0},
        )))]
    raise ConfigError("preset", f"unknown preset {name!r}; choose from {PRESETS}")
