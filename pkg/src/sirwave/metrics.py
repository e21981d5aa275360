"""Normalized distance between a simulated mean curve and a recurrence curve.

Both curves are point sequences over iteration numbers. They are jointly
rescaled — time by the final iteration number, values by the simulation
curve's maximum — and the error is the mean Euclidean distance from each
recurrence point to the polyline through the simulation points. The measure
is deliberately asymmetric: recurrence points are measured against the
simulation polyline, never the reverse.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Trajectory

__all__ = [
    "Curve",
    "trajectory_curve",
    "normalize_pair",
    "point_to_polyline",
    "curve_error",
]


@dataclass(frozen=True)
class Curve:
    """Finite planar point sequence with strictly increasing abscissae."""

    t: np.ndarray
    u: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.t, dtype=float)
        u = np.asarray(self.u, dtype=float)
        if t.ndim != 1 or t.shape != u.shape:
            raise ValueError("curve needs matching 1-D t and u arrays")
        if t.size < 2:
            raise ValueError("curve needs at least two points")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(u))):
            raise ValueError("curve values must be finite")
        if np.any(np.diff(t) <= 0):
            raise ValueError("curve t values must be strictly increasing")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "u", u)

    def __len__(self) -> int:
        return int(self.t.size)


def trajectory_curve(traj: Trajectory, field: str = "i") -> Curve:
    """Curve of one state count over iterations 1..M (the t=0 seed row is
    not part of the comparison)."""
    if field not in ("s", "i", "r"):
        raise ValueError(f"unknown trajectory field {field!r}")
    values = getattr(traj, field)
    return Curve(traj.t[1:], values[1:])


def normalize_pair(sim: Curve, grr: Curve) -> tuple[Curve, Curve]:
    """Rescale both curves by the simulation curve's extent: t by the last
    iteration number, u by the simulation maximum."""
    if len(sim) != len(grr) or not np.array_equal(sim.t, grr.t):
        raise ValueError("curves are not on a shared iteration grid")
    t_scale = float(sim.t[-1])
    gamma = float(sim.u.max())
    if gamma == 0.0:
        raise ValueError("degenerate flat-zero simulation curve")
    return (
        Curve(sim.t / t_scale, sim.u / gamma),
        Curve(grr.t / t_scale, grr.u / gamma),
    )


def point_to_polyline(pt: tuple[float, float], curve: Curve) -> float:
    """Minimum Euclidean distance from ``pt`` to the linear spline through
    the curve's points: per segment the orthogonal projection clamped to the
    endpoints, minimized over segments."""
    px, py = float(pt[0]), float(pt[1])
    ax, ay = curve.t[:-1], curve.u[:-1]
    bx, by = np.diff(curve.t), np.diff(curve.u)
    # bx > 0 because t is strictly increasing, so segments are never degenerate
    frac = np.clip(((px - ax) * bx + (py - ay) * by) / (bx * bx + by * by), 0.0, 1.0)
    dx = ax + frac * bx - px
    dy = ay + frac * by - py
    return float(np.sqrt(np.min(dx * dx + dy * dy)))


def curve_error(sim: Curve, grr: Curve) -> float:
    """Mean distance from the recurrence curve's normalized points to the
    normalized simulation polyline."""
    sim_n, grr_n = normalize_pair(sim, grr)
    dists = [point_to_polyline((t, u), sim_n) for t, u in zip(grr_n.t, grr_n.u)]
    return float(np.mean(dists))
