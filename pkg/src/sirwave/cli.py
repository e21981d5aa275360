"""Command-line front end.

Subcommands::

    sirwave simulate      batch simulation -> trajectory CSV
    sirwave grr           recurrence trajectories -> one CSV per variant
    sirwave fixed-points  fixed-point/stability report -> JSON
    sirwave compare       simulation vs. recurrences -> error CSV
    sirwave surface       2-axis sweep -> surface CSV

Every subcommand accepts ``--config`` (key = value lines mirroring the
simulation parameters, plus ``replicates``, ``variants``, ``<name>_axis``
lists), ``--seed``, ``--replicates``, ``--iters``, ``--variant`` and
``--out``. Exit status: 0 success, 2 bad parameters or usage, 3 I/O
failure.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .analysis import find_fixed_points, reports_to_json
from .core import (
    ConfigError,
    ParamError,
    SimParams,
    params_from_config,
    parse_config,
    validate,
)
from .harness import (
    CANONICAL_VARIANTS,
    SweepSpec,
    compare,
    error_surface,
    errors_csv_text,
    params_snapshot_text,
    run_variant,
    surface_csv_text,
)
from .simulator import simulate_batch

__all__ = ["cli", "main"]

_DEFAULT_OUT = "sirwave-out"
_SURFACE_DEFAULT_ITERS = 150


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="key = value parameter file")
    common.add_argument("--seed", type=int, help="override the base random seed")
    common.add_argument(
        "--replicates", type=int, help="simulation replicates (default 100)"
    )
    common.add_argument(
        "--iters", type=int, help="iteration count override for this invocation"
    )
    common.add_argument(
        "--variant",
        action="append",
        choices=CANONICAL_VARIANTS,
        help="recurrence variant (repeatable)",
    )
    common.add_argument(
        "--out",
        metavar="DIR",
        default=_DEFAULT_OUT,
        help=f"output directory (default ./{_DEFAULT_OUT})",
    )

    parser = argparse.ArgumentParser(
        prog="sirwave",
        description="Off-lattice epidemic simulator and its mean-field recurrences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simulate", parents=[common], help="run a simulation batch")
    sub.add_parser("grr", parents=[common], help="run recurrence trajectories")
    sub.add_parser(
        "fixed-points", parents=[common], help="fixed-point/stability report"
    )
    sub.add_parser("compare", parents=[common], help="simulation vs. recurrences")
    sub.add_parser("surface", parents=[common], help="error surface sweep")
    return parser


def _load(args: argparse.Namespace) -> tuple[SimParams, dict[str, str], dict[str, str]]:
    raw: dict[str, str] = {}
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            raise OSError(f"config file not found: {path}")
        raw = parse_config(path)
    params, extras = params_from_config(raw)
    if args.seed is not None:
        params = replace(params, seed=args.seed)
    if args.iters is not None:
        params = replace(params, n_iters=args.iters)
    return validate(params), extras, raw


def _replicates(args: argparse.Namespace, extras: dict[str, str]) -> int:
    if args.replicates is not None:
        return args.replicates
    return int(extras.get("replicates", 100))


def _variants(
    args: argparse.Namespace, extras: dict[str, str], default: tuple[str, ...]
) -> tuple[str, ...]:
    if args.variant:
        return tuple(dict.fromkeys(args.variant))  # dedupe, keep order
    if "variants" in extras:
        return tuple(v.strip() for v in extras["variants"].split(",") if v.strip())
    return default


def _outdir(args: argparse.Namespace) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _cmd_simulate(args: argparse.Namespace) -> int:
    params, extras, _ = _load(args)
    replicates = _replicates(args, extras)
    batch = simulate_batch(params, replicates)
    out = _outdir(args)
    (out / "params.snapshot").write_text(
        params_snapshot_text(params, {"replicates": replicates})
    )
    batch.to_csv(out / "trajectory_sim.csv")
    print(
        f"wrote {out / 'trajectory_sim.csv'}: {replicates} replicates, "
        f"{batch.died_out} died out"
    )
    return 0


def _cmd_grr(args: argparse.Namespace) -> int:
    params, extras, _ = _load(args)
    variants = _variants(args, extras, CANONICAL_VARIANTS)
    out = _outdir(args)
    (out / "params.snapshot").write_text(
        params_snapshot_text(params, {"variants": ",".join(variants)})
    )
    for variant in variants:
        traj = run_variant(params, variant)
        path = out / f"trajectory_{variant}.csv"
        traj.to_csv(path, variant=variant)
        last = traj.t.size - 1
        print(
            f"wrote {path}: t={last} i={traj.i[last]:.6g} r={traj.r[last]:.6g}"
        )
    return 0


def _cmd_fixed_points(args: argparse.Namespace) -> int:
    params, _, _ = _load(args)
    text = reports_to_json(find_fixed_points(params), params)
    out = _outdir(args)
    (out / "params.snapshot").write_text(params_snapshot_text(params))
    (out / "fixed_points.json").write_text(text + "\n")
    print(text)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    params, extras, _ = _load(args)
    replicates = _replicates(args, extras)
    variants = _variants(args, extras, ("global", "local"))
    result = compare(params, replicates, variants, out_dir=_outdir(args))
    sys.stdout.write(errors_csv_text(result.errors))
    return 0


def _cmd_surface(args: argparse.Namespace) -> int:
    params, extras, raw = _load(args)
    if args.iters is None and "n_iters" not in raw:
        params = replace(params, n_iters=_SURFACE_DEFAULT_ITERS)
    axes = [
        (key[: -len("_axis")], [float(x) for x in value.replace(",", " ").split()])
        for key, value in extras.items()
        if key.endswith("_axis")
    ]
    if not axes:
        raise ValueError(
            "surface needs axis lists in the config, e.g. "
            "'kappa_axis = 0.6,0.8' and "
            "'expected_initial_susceptibles_axis = 2,8,32'"
        )
    sweep = SweepSpec(
        base=params,
        axes=axes,
        replicates=_replicates(args, extras),
        n_iters=params.n_iters,
        out_dir=_outdir(args),
    )
    cells = error_surface(sweep)
    sys.stdout.write(surface_csv_text(cells))
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "grr": _cmd_grr,
    "fixed-points": _cmd_fixed_points,
    "compare": _cmd_compare,
    "surface": _cmd_surface,
}


def cli(argv: list[str]) -> int:
    """Run one command line; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints usage/help itself
        return 0 if exc.code in (0, None) else 2
    try:
        return _COMMANDS[args.command](args)
    except (ParamError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


def main(argv: list[str] | None = None) -> int:
    return cli(sys.argv[1:] if argv is None else argv)
