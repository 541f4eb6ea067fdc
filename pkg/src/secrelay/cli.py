"""Command-line interface.

Subcommands: ``point`` (closed forms at one operating point), ``sweep``
(config- or preset-driven tables), ``optimize`` (relay-power search), and
``switch`` (AF/DF switching points).  Exit codes: 0 success, 2 config error,
3 numeric/domain error, 4 I/O error.
"""
import argparse
import json
import sys
from dataclasses import asdict, replace
from pathlib import Path

from . import decision, sweep
from .analytic import Scheme, scheme_report
from .params import SystemParams, from_decibel, validate
from .sweep import ConfigError

EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="override the Monte Carlo master seed (u64)")
    common.add_argument("--trials", type=int, default=None,
                        help="override the Monte Carlo trial count")

    parser = argparse.ArgumentParser(
        prog="secrelay",
        description="Secrecy performance of large-antenna AF/DF relay links",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", parents=[common],
                           help="closed-form report for both schemes at one operating point")
    point.add_argument("--p-s-db", type=float, default=20.0, help="source power, dB")
    point.add_argument("--p-r-db", type=float, default=20.0, help="relay power, dB")
    point.add_argument("--alpha-sr", type=float, default=1.0)
    point.add_argument("--alpha-rd", type=float, default=1.0)
    point.add_argument("--alpha-re", type=float, default=1.0)
    point.add_argument("--rho", type=float, default=0.9)
    point.add_argument("--n-r", type=int, default=100)
    point.add_argument("--w-hz", type=float, default=10_000.0)
    point.add_argument("--epsilon", type=float, default=0.01)

    sweep_cmd = sub.add_parser("sweep", parents=[common],
                               help="run a parameter sweep and write a table")
    source = sweep_cmd.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", type=Path, help="JSON sweep configuration")
    source.add_argument("--preset", choices=sweep.PRESETS, help="built-in figure preset")
    sweep_cmd.add_argument("--out", type=Path, required=True, help="output path")
    sweep_cmd.add_argument("--format", choices=("csv", "json"), default="csv")

    optimize = sub.add_parser("optimize", parents=[common],
                              help="find the relay power maximizing secrecy outage capacity")
    optimize.add_argument("--config", type=Path, required=True,
                          help="config with variable=relay-power-db; its grid is the bracket")

    switch = sub.add_parser("switch", parents=[common],
                            help="locate AF/DF switching points along a power axis")
    switch.add_argument("--config", type=Path, required=True,
                        help="config with a power-axis variable; its grid is the bracket")
    return parser


def _load_spec(path: Path, args) -> sweep.SweepSpec:
    spec = sweep.parse_config(path.read_text())
    return _apply_overrides(spec, args)


def _apply_overrides(spec: sweep.SweepSpec, args) -> sweep.SweepSpec:
    if not spec.montecarlo_active:
        return spec
    if args.seed is not None:
        spec = replace(spec, seed=args.seed)
    if args.trials is not None:
        spec = replace(spec, trials=args.trials)
    return spec


def _cmd_point(args) -> int:
    params = validate(SystemParams(
        p_s=from_decibel(args.p_s_db),
        p_r=from_decibel(args.p_r_db),
        alpha_sr=args.alpha_sr,
        alpha_rd=args.alpha_rd,
        alpha_re=args.alpha_re,
        rho=args.rho,
        n_r=args.n_r,
        w_hz=args.w_hz,
        epsilon=args.epsilon,
    ))
    out = {}
    for scheme in (Scheme.AF, Scheme.DF):
        report = scheme_report(scheme, params)
        out[scheme.value] = {"c_d": report.c_d, "c_soc": report.c_soc, "p0": report.p0}
    print(json.dumps(out, indent=2))
    return 0


def _out_path(base: Path, label: str) -> Path:
    if not label:
        return base
    return base.with_name(f"{base.stem}-{label}{base.suffix}")


def _cmd_sweep(args) -> int:
    if args.preset:
        runs = [(label, _apply_overrides(spec, args)) for label, spec in sweep.preset_specs(args.preset)]
    else:
        runs = [("", _load_spec(args.config, args))]
    for label, spec in runs:
        path = _out_path(args.out, label)
        rows = sweep.run_sweep(spec)
        written = sweep.emit_report(rows, args.format, path)
        print(f"wrote {written} bytes to {path}")
    return 0


def _power_bracket(spec: sweep.SweepSpec, allowed) -> tuple:
    if spec.variable not in allowed:
        raise ConfigError("variable", f"must be one of {allowed}, got {spec.variable!r}")
    return float(spec.grid[0]), float(spec.grid[-1])


def _cmd_optimize(args) -> int:
    spec = _load_spec(args.config, args)
    lo_db, hi_db = _power_bracket(spec, ("relay-power-db",))
    out = {}
    for scheme in spec.schemes:
        opt = decision.optimal_relay_power(spec.base, lo_db, hi_db, scheme)
        out[scheme.value] = asdict(opt)
    print(json.dumps(out, indent=2))
    return 0


def _cmd_switch(args) -> int:
    spec = _load_spec(args.config, args)
    lo_db, hi_db = _power_bracket(spec, ("source-power-db", "relay-power-db"))
    axis = "source-power" if spec.variable == "source-power-db" else "relay-power"
    crossings = decision.find_switching_point(spec.base, axis, lo_db, hi_db)
    print(json.dumps({"axis": axis, "crossings_db": crossings}, indent=2))
    return 0


_COMMANDS = {
    "point": _cmd_point,
    "sweep": _cmd_sweep,
    "optimize": _cmd_optimize,
    "switch": _cmd_switch,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
