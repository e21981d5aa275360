"""Experiment orchestration: batch simulations vs. recurrence curves.

Two entry points cover the standard experiments:

* :func:`compare` — one parameter set: replicate-averaged simulation against
  each requested recurrence variant, with the normalized curve error per
  state.
* :func:`error_surface` — a grid sweep (typically contact tolerance x
  expected initial neighborhood occupancy) recording the infected-curve
  error of the locally conditioned recurrence and the fraction of replicates
  whose epidemic died out.

Both write plain CSV/key-value files so external plotting tools can consume
the results without this package. Cells and replicates are independent of
each other; outputs are ordered by grid index, never by completion time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .core import SimParams, Trajectory, validate
from .metrics import curve_error, trajectory_curve
from .recurrence import (
    global_trajectory,
    local_trajectory,
    sparse_local_trajectory,
)
from .simulator import BatchResult, simulate_batch

__all__ = [
    "CANONICAL_VARIANTS",
    "ErrorRow",
    "CompareResult",
    "SweepSpec",
    "SurfaceCell",
    "expected_initial_susceptibles",
    "rho0_for_expected_susceptibles",
    "run_variant",
    "compare",
    "error_surface",
]

#: Recurrence variants in canonical output order.
CANONICAL_VARIANTS = ("global", "local", "sparse")

_STATES = (("infected", "i"), ("recovered", "r"))


def _fmt(x: float) -> str:
    if isinstance(x, float):
        return "%.10g" % x
    return str(x)


@dataclass(frozen=True)
class ErrorRow:
    """One curve-error measurement (one state of one variant of one cell)."""

    state: str
    variant: str
    rho0: float
    kappa: float
    t_infect: int
    t_recover: int
    nu: float


@dataclass
class CompareResult:
    """Batch simulation plus recurrence curves and their error rows."""

    batch: BatchResult
    curves: dict[str, Trajectory]
    errors: list[ErrorRow]


ERROR_CSV_HEADER = "state,variant,rho0,kappa,t_infect,t_recover,nu"


def errors_csv_text(rows: list[ErrorRow]) -> str:
    lines = [ERROR_CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                (
                    r.state,
                    r.variant,
                    _fmt(r.rho0),
                    _fmt(r.kappa),
                    str(r.t_infect),
                    str(r.t_recover),
                    _fmt(r.nu),
                )
            )
        )
    return "\n".join(lines) + "\n"


def params_snapshot_text(params: SimParams, extras: dict[str, object] | None = None) -> str:
    """Key-value echo of the resolved parameters (config-file syntax), so a
    run directory is self-describing and replayable."""
    lines = [f"{f.name} = {_fmt(getattr(params, f.name))}" for f in fields(params)]
    for key in sorted(extras or {}):
        lines.append(f"{key} = {extras[key]}")
    return "\n".join(lines) + "\n"


def run_variant(params: SimParams, variant: str, m: int | None = None) -> Trajectory:
    """Trajectory of one recurrence variant over ``m`` iterations."""
    if variant == "global":
        return global_trajectory(params, m=m)
    if variant == "local":
        return local_trajectory(params, m=m)
    if variant == "sparse":
        return sparse_local_trajectory(params, m=m)
    raise ValueError(f"unknown recurrence variant {variant!r}")


def compare(
    params: SimParams,
    replicates: int,
    variants: tuple[str, ...] = ("global", "local"),
    out_dir: str | Path | None = None,
) -> CompareResult:
    """Replicate-averaged simulation vs. each requested recurrence variant.

    Computes the normalized curve error for the infected and recovered
    counts of every variant against the simulation mean. With ``out_dir``
    set, writes ``params.snapshot``, ``trajectory_sim.csv``, one
    ``trajectory_<variant>.csv`` per variant, and ``errors.csv``.
    """
    params = validate(params)
    unknown = set(variants) - set(CANONICAL_VARIANTS)
    if unknown:
        raise ValueError(f"unknown recurrence variant(s): {sorted(unknown)}")
    batch = simulate_batch(params, replicates)
    curves: dict[str, Trajectory] = {}
    rows: list[ErrorRow] = []
    for variant in CANONICAL_VARIANTS:
        if variant not in variants:
            continue
        traj = run_variant(params, variant)
        curves[variant] = traj
        for state_name, field in _STATES:
            nu = curve_error(
                trajectory_curve(batch.mean, field), trajectory_curve(traj, field)
            )
            rows.append(
                ErrorRow(
                    state_name,
                    variant,
                    params.rho0,
                    params.kappa,
                    params.t_infect,
                    params.t_recover,
                    nu,
                )
            )
    result = CompareResult(batch, curves, rows)
    if out_dir is not None:
        _write_compare(result, params, replicates, variants, Path(out_dir))
    return result


def _write_compare(
    result: CompareResult,
    params: SimParams,
    replicates: int,
    variants: tuple[str, ...],
    out: Path,
) -> None:
    out.mkdir(parents=True, exist_ok=True)
    extras = {"replicates": replicates, "variants": ",".join(variants)}
    (out / "params.snapshot").write_text(params_snapshot_text(params, extras))
    result.batch.to_csv(out / "trajectory_sim.csv")
    for variant, traj in result.curves.items():
        traj.to_csv(out / f"trajectory_{variant}.csv", variant=variant)
    (out / "errors.csv").write_text(errors_csv_text(result.errors))


# --- error surface ---------------------------------------------------------

#: Axis name accepted in addition to real SimParams fields; it is realized
#: by solving (n_agents - 1) * pi * rho0**2 = value for rho0.
DENSITY_AXIS = "expected_initial_susceptibles"


def expected_initial_susceptibles(params: SimParams) -> float:
    """Expected number of susceptible agents inside the first infected
    agent's disk: (N-1) * disk area / domain area."""
    return (params.n_agents - 1) * params.mu_disk / params.mu_domain


def rho0_for_expected_susceptibles(value: float, params: SimParams) -> float:
    """Disk radius that places ``value`` expected susceptibles inside the
    initial infected agent's neighborhood."""
    if value <= 0:
        raise ValueError("expected susceptible count must be positive")
    return math.sqrt(value * params.mu_domain / ((params.n_agents - 1) * math.pi))


@dataclass
class SweepSpec:
    """A 1- or 2-axis parameter sweep around a base parameter set.

    Axis names must be SimParams field names or ``DENSITY_AXIS``. The
    iteration budget applies to every cell (simulation and recurrence
    alike).
    """

    base: SimParams
    axes: list[tuple[str, list[float]]]
    replicates: int = 100
    n_iters: int = 150
    out_dir: str | Path | None = None


@dataclass(frozen=True)
class SurfaceCell:
    """One sweep cell: neighborhood occupancy, contact tolerance, the
    infected-curve error of the locally conditioned recurrence (NaN when
    every replicate's infected curve was flat zero), and the replicate
    die-out fraction."""

    expected_initial_susceptibles: float
    kappa: float
    nu_infected: float
    died_out_fraction: float


SURFACE_CSV_HEADER = (
    "expected_initial_susceptibles,kappa,nu_infected,died_out_fraction"
)


def surface_csv_text(cells: list[SurfaceCell]) -> str:
    lines = [SURFACE_CSV_HEADER]
    for c in cells:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    c.expected_initial_susceptibles,
                    c.kappa,
                    c.nu_infected,
                    c.died_out_fraction,
                )
            )
        )
    return "\n".join(lines) + "\n"


def _cell_params(sweep: SweepSpec, assignment: dict[str, float]) -> SimParams:
    kwargs: dict[str, object] = {"n_iters": sweep.n_iters}
    for name, value in assignment.items():
        if name == DENSITY_AXIS:
            kwargs["rho0"] = rho0_for_expected_susceptibles(value, sweep.base)
        elif name in {f.name for f in fields(SimParams)}:
            # integer fields arrive as floats from config lists
            kwargs[name] = type(getattr(sweep.base, name))(value)
        else:
            raise ValueError(f"unknown sweep axis {name!r}")
    return validate(replace(sweep.base, **kwargs))


def error_surface(sweep: SweepSpec) -> list[SurfaceCell]:
    """Run the sweep and return its cells in row-major axis order.

    Per cell: batch-simulate, run the locally conditioned recurrence, and
    record the infected-curve error plus the died-out fraction. A cell whose
    simulation never infects anyone (flat-zero curve) gets ``nu_infected =
    NaN`` instead of aborting the sweep. With an output directory set,
    writes ``surface.csv`` and ``params.snapshot``.
    """
    if not 1 <= len(sweep.axes) <= 2:
        raise ValueError("sweep needs one or two axes")
    if sweep.replicates < 1:
        raise ValueError("sweep needs at least one replicate")
    outer_name, outer_values = sweep.axes[0]
    inner: tuple[str, list[float]] = sweep.axes[1] if len(sweep.axes) == 2 else ("", [])
    cells: list[SurfaceCell] = []
    for outer_value in outer_values:
        assignments: list[dict[str, float]] = (
            [{outer_name: outer_value, inner[0]: v} for v in inner[1]]
            if inner[0]
            else [{outer_name: outer_value}]
        )
        for assignment in assignments:
            p = _cell_params(sweep, assignment)
            batch = simulate_batch(p, sweep.replicates)
            local = local_trajectory(p)
            try:
                nu = curve_error(
                    trajectory_curve(batch.mean, "i"), trajectory_curve(local, "i")
                )
            except ValueError:
                nu = float("nan")
            cells.append(
                SurfaceCell(
                    expected_initial_susceptibles(p),
                    p.kappa,
                    nu,
                    batch.died_out / sweep.replicates,
                )
            )
    if sweep.out_dir is not None:
        out = Path(sweep.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        extras = {
            "replicates": sweep.replicates,
            "axes": "; ".join(
                f"{name}: " + ",".join(_fmt(v) for v in values)
                for name, values in sweep.axes
            ),
        }
        (out / "params.snapshot").write_text(params_snapshot_text(sweep.base, extras))
        (out / "surface.csv").write_text(surface_csv_text(cells))
    return cells
