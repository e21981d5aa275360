"""Shared domain types: model parameters, per-iteration counts, trajectories.

Everything downstream (simulator, recurrences, analysis, experiment harness)
consumes :class:`SimParams` and produces :class:`Trajectory` objects, so the
conventions live here:

* the domain is the closed unit square (side ``domain_side``, fixed to 1.0),
* an interaction disk has radius ``rho0`` and area ``pi * rho0**2``,
* agents stay ``t_infect`` iterations infected and ``t_recover`` iterations
  recovered, then return to susceptible,
* per-step infection probability for an exposed susceptible is ``1 - kappa``,
* all randomness flows from ``numpy.random.default_rng``; replicate ``k`` of a
  batch uses ``seed + k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterator

import numpy as np

__all__ = [
    "SimParams",
    "ParamError",
    "ConfigError",
    "Counts",
    "Trajectory",
    "validate",
    "rng_stream",
    "replicate_seed",
    "parse_config",
    "params_from_config",
    "load_config",
]


class ParamError(ValueError):
    """Raised by :func:`validate` with one message line per violated bound."""


class ConfigError(ValueError):
    """Raised for unreadable or malformed key=value config text."""


@dataclass(frozen=True)
class SimParams:
    """Scalar parameters of one simulation / recurrence run.

    Attributes:
        n_agents: total agent count N (constant over a run).
        rho0: interaction-disk radius, in domain units.
        kappa: contact tolerance; a covered susceptible is infected with
            probability ``1 - kappa`` per iteration.
        t_infect: iterations spent infected before recovering.
        t_recover: iterations spent recovered before becoming susceptible.
        dr: random-walk step length per iteration.
        n_iters: default iteration count M for trajectories.
        seed: base RNG seed; replicate k derives ``seed + k``.
        domain_side: side of the square domain. Fixed to 1.0; kept as a field
            so the unit-area assumption is explicit in every formula.
    """

    n_agents: int = 10_000
    rho0: float = 0.04
    kappa: float = 0.95
    t_infect: int = 30
    t_recover: int = 30
    dr: float = 0.001
    n_iters: int = 500
    seed: int = 0
    domain_side: float = 1.0

    @property
    def q(self) -> float:
        """Recovered-to-infected residence ratio (t_recover / t_infect)."""
        return self.t_recover / self.t_infect

    @property
    def mu_disk(self) -> float:
        """Area of one interaction disk."""
        return math.pi * self.rho0 * self.rho0

    @property
    def mu_domain(self) -> float:
        """Area of the whole domain (1.0 for the unit square)."""
        return self.domain_side * self.domain_side


def validate(params: SimParams) -> SimParams:
    """Check every parameter bound; return ``params`` unchanged if all hold.

    All violations are collected so the error message reports the complete
    list rather than the first failure.

    Raises:
        ParamError: with one line per violated bound.
    """
    problems: list[str] = []
    p = params
    if not isinstance(p.n_agents, (int, np.integer)) or p.n_agents < 2:
        problems.append(
            f"n_agents={p.n_agents!r}: need at least one susceptible and one infected"
        )
    if not 0.0 <= p.kappa <= 1.0:
        problems.append(f"kappa={p.kappa!r}: kappa out of [0, 1]")
    if not 0.0 < p.rho0 < 0.5 * p.domain_side:
        problems.append(
            f"rho0={p.rho0!r}: interaction radius must lie in (0, {0.5 * p.domain_side})"
        )
    if not 0.0 < p.dr < 0.5 * p.domain_side:
        problems.append(
            f"dr={p.dr!r}: step length must lie in (0, {0.5 * p.domain_side})"
        )
    if not isinstance(p.t_infect, (int, np.integer)) or p.t_infect < 1:
        problems.append(f"t_infect={p.t_infect!r}: must be a positive integer")
    if not isinstance(p.t_recover, (int, np.integer)) or p.t_recover < 1:
        problems.append(f"t_recover={p.t_recover!r}: must be a positive integer")
    if not isinstance(p.n_iters, (int, np.integer)) or p.n_iters < 0:
        problems.append(f"n_iters={p.n_iters!r}: must be a nonnegative integer")
    if p.domain_side != 1.0:
        problems.append(
            f"domain_side={p.domain_side!r}: only the unit square is supported"
        )
    if problems:
        raise ParamError("; ".join(problems))
    return params


def rng_stream(seed: int) -> np.random.Generator:
    """Deterministic uniform random stream for a given seed.

    The same seed yields a bit-identical draw sequence on every platform
    (PCG64 under the hood). Uniform reals on [0, 1) come from
    ``rng.random(...)``; angles on [0, 2*pi) from ``rng.uniform(0, 2*pi, ...)``.
    """
    return np.random.default_rng(int(seed))


def replicate_seed(base_seed: int, k: int) -> int:
    """Seed for replicate ``k`` of a batch: ``base_seed + k``."""
    return int(base_seed) + int(k)


# ---------------------------------------------------------------------------
# counts and trajectories
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Counts:
    """Number of agents per compartment at one iteration.

    Values are integers for simulation output and reals for recurrence
    output; the container does not distinguish.
    """

    t: int
    s: float
    i: float
    r: float

    def total(self) -> float:
        return self.s + self.i + self.r


class Trajectory:
    """Per-iteration compartment counts for t = 0..M.

    A thin wrapper over four aligned arrays. Simulation trajectories carry
    integer-valued arrays; recurrence trajectories carry floats.
    """

    def __init__(self, t: np.ndarray, s: np.ndarray, i: np.ndarray, r: np.ndarray):
        t = np.asarray(t)
        s = np.asarray(s)
        i = np.asarray(i)
        r = np.asarray(r)
        if not (t.shape == s.shape == i.shape == r.shape) or t.ndim != 1:
            raise ValueError("trajectory arrays must be 1-D and aligned")
        if t.size and not np.array_equal(t, t[0] + np.arange(t.size)):
            raise ValueError("iteration index must increase by exactly 1")
        self.t = t
        self.s = s
        self.i = i
        self.r = r

    def __len__(self) -> int:
        return self.t.size

    def __iter__(self) -> Iterator[Counts]:
        for k in range(len(self)):
            yield Counts(int(self.t[k]), self.s[k], self.i[k], self.r[k])

    def totals(self) -> np.ndarray:
        return self.s + self.i + self.r

    def check_conservation(self, n_agents: int, tol: float = 0.0) -> None:
        """Assert s+i+r == N at every step (within ``tol * N`` for reals)."""
        err = np.abs(self.totals() - n_agents)
        worst = float(err.max()) if err.size else 0.0
        if worst > tol * n_agents:
            raise AssertionError(
                f"conservation violated: max |s+i+r - N| = {worst} (tol {tol * n_agents})"
            )

    def to_csv(self, path: str | Path, variant: str | None = None) -> None:
        """Write ``t,s,i,r`` rows; an optional trailing ``variant`` column
        tags recurrence output so curves from different solvers can share a
        directory."""
        path = Path(path)
        integral = np.issubdtype(self.s.dtype, np.integer)
        with open(path, "w") as fh:
            if variant is None:
                fh.write("t,s,i,r\n")
            else:
                fh.write("t,s,i,r,variant\n")
            for k in range(len(self)):
                if integral:
                    row = f"{int(self.t[k])},{int(self.s[k])},{int(self.i[k])},{int(self.r[k])}"
                else:
                    row = (
                        f"{int(self.t[k])},{self.s[k]:.10g},"
                        f"{self.i[k]:.10g},{self.r[k]:.10g}"
                    )
                if variant is not None:
                    row += f",{variant}"
                fh.write(row + "\n")

    @staticmethod
    def from_csv(path: str | Path) -> "Trajectory":
        raw = np.genfromtxt(path, delimiter=",", names=True, dtype=None, encoding=None)
        raw = np.atleast_1d(raw)
        return Trajectory(
            np.asarray(raw["t"], dtype=np.int64),
            np.asarray(raw["s"], dtype=float),
            np.asarray(raw["i"], dtype=float),
            np.asarray(raw["r"], dtype=float),
        )


# ---------------------------------------------------------------------------
# key=value config files
# ---------------------------------------------------------------------------

_INT_FIELDS = {"n_agents", "t_infect", "t_recover", "n_iters", "seed"}
_FLOAT_FIELDS = {"rho0", "kappa", "dr", "domain_side"}
_PARAM_FIELDS = {f.name for f in fields(SimParams)}


def parse_config(path: str | Path) -> dict[str, str]:
    """Read flat ``key = value`` text into a string dict.

    Blank lines and ``#`` comments are ignored. Values keep their raw string
    form; typed conversion happens in :func:`params_from_config`.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    out: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = body.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def params_from_config(cfg: dict[str, str]) -> tuple[SimParams, dict[str, str]]:
    """Split a parsed config into a validated SimParams and leftover keys.

    Leftover keys (replicate counts, sweep axes, ...) are returned untouched
    for the harness to interpret.
    """
    kwargs: dict[str, object] = {}
    extras: dict[str, str] = {}
    for key, raw in cfg.items():
        if key in _INT_FIELDS:
            try:
                kwargs[key] = int(raw)
            except ValueError as exc:
                raise ConfigError(f"config key {key}={raw!r}: expected integer") from exc
        elif key in _FLOAT_FIELDS:
            try:
                kwargs[key] = float(raw)
            except ValueError as exc:
                raise ConfigError(f"config key {key}={raw!r}: expected number") from exc
        elif key in _PARAM_FIELDS:  # pragma: no cover - all fields typed above
            kwargs[key] = raw
        else:
            extras[key] = raw
    params = validate(SimParams(**kwargs))
    return params, extras


def load_config(path: str | Path) -> tuple[SimParams, dict[str, str]]:
    """Parse and validate a config file in one call."""
    return params_from_config(parse_config(path))
