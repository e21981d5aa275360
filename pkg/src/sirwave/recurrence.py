"""Deterministic mean-field recurrences for the disk-contact epidemic model.

Three solvers share one state-count update and differ only in how they treat
the region infected agents occupy:

* :func:`global_step` — infected disks spread uniformly over the whole
  domain (well-mixed limit).
* :func:`local_step` — infected disks confined to an expanding front disk;
  the infection pressure is conditioned on that disk and weighted by its
  area share. The front radius advances by an RMS-of-shells rule
  (:func:`front_radius_update`).
* :func:`sparse_local_trajectory` — same counts, but the front advances by
  explicit circle-union geometry driven by the number of newly infected
  agents per step (:func:`sparse_front_update`).

All maps are real-valued (expected counts, not integers) and conserve
``s + i + r = n_agents`` identically because ``s`` is defined as the
remainder.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import SimParams, Trajectory
from .geometry import sparse_union_area

__all__ = [
    "GrrState",
    "FrontState",
    "initial_front",
    "prob_in_transition_region",
    "global_step",
    "global_trajectory",
    "front_radius_update",
    "local_step",
    "local_trajectory",
    "sparse_front_update",
    "sparse_local_trajectory",
]


@dataclass(frozen=True)
class GrrState:
    """Expected infected/recovered counts (real-valued; susceptible is the
    remainder ``n_agents - i - r``)."""

    i: float
    r: float


@dataclass(frozen=True)
class FrontState:
    """Current and previous infection-front radii plus a sticky flag that
    records the front area having reached the whole domain.

    Updates keep ``zeta_t >= zeta_prev >= 0`` along any trajectory grown
    from :func:`initial_front`; the dataclass does not police hand-built
    states.
    """

    zeta_t: float
    zeta_prev: float
    saturated: bool = False


def initial_front(params: SimParams) -> FrontState:
    """Front seeded by the first infected agent's own disk: current radius
    ``rho0``, previous radius 0."""
    return FrontState(params.rho0, 0.0, False)


def prob_in_transition_region(i_count: float, mu_n: float, mu_region: float) -> float:
    """Probability that a uniformly placed agent falls inside at least one of
    ``i_count`` independently placed disks of area ``mu_n`` within a region
    of area ``mu_region``: ``1 - (1 - mu_n/mu_region)**i_count``.

    ``i_count`` may be fractional (the recurrences track expected counts);
    the power is then a real exponent.
    """
    if mu_n <= 0.0:
        raise ValueError("neighborhood area must be positive")
    if mu_n > mu_region:
        raise ValueError("neighborhood exceeds region")
    if i_count < 0.0:
        raise ValueError("negative infected count")
    frac = mu_n / mu_region
    if frac >= 1.0:
        return 0.0 if i_count == 0.0 else 1.0
    # 1 - (1-frac)^i, computed in log space so tiny frac keeps full precision
    return -math.expm1(i_count * math.log1p(-frac))


def _count_step(
    state: GrrState, params: SimParams, mu_region: float, region_share: float
) -> GrrState:
    """One update of the expected counts, given the area of the region the
    infected disks live in and that region's share of the domain."""
    p_infect = (
        prob_in_transition_region(state.i, params.mu_disk, mu_region)
        * region_share
        * (1.0 - params.kappa)
    )
    susceptible = params.n_agents - state.i - state.r
    i_new = susceptible * p_infect + (1.0 - 1.0 / params.t_infect) * state.i
    r_new = state.i / params.t_infect + (1.0 - 1.0 / params.t_recover) * state.r
    return GrrState(i_new, r_new)


def global_step(state: GrrState, params: SimParams) -> GrrState:
    """Counts update with infected disks uniform over the whole domain."""
    return _count_step(state, params, params.mu_domain, 1.0)


def _trajectory_from_states(
    params: SimParams, states: list[GrrState]
) -> Trajectory:
    n = params.n_agents
    i = np.array([s.i for s in states], dtype=float)
    r = np.array([s.r for s in states], dtype=float)
    t = np.arange(len(states))
    return Trajectory(t, n - i - r, i, r)


def global_trajectory(
    params: SimParams, i0: float = 1.0, r0: float = 0.0, m: int | None = None
) -> Trajectory:
    """Iterate :func:`global_step` from ``(i0, r0)`` for ``m`` steps
    (default ``params.n_iters``); rows cover t = 0..m."""
    m = params.n_iters if m is None else m
    states = [GrrState(float(i0), float(r0))]
    for _ in range(m):
        states.append(global_step(states[-1], params))
    return _trajectory_from_states(params, states)


def front_radius_update(front: FrontState, params: SimParams) -> FrontState:
    """Advance the front radius one step.

    New radius = ``rho0`` + RMS of the two bracketing shells: the current
    radius pushed outward by one movement step ``dr`` and the previous
    radius pulled inward by ``dr`` (floored at 0). The saturation flag turns
    on once the front disk's area reaches the domain area and never turns
    off.
    """
    outer = front.zeta_t + params.dr
    inner = max(front.zeta_prev - params.dr, 0.0)
    zeta_new = params.rho0 + math.sqrt((outer * outer + inner * inner) / 2.0)
    saturated = front.saturated or math.pi * zeta_new * zeta_new >= params.mu_domain
    return FrontState(zeta_new, front.zeta_t, saturated)


def _front_area(front: FrontState, params: SimParams) -> float:
    """Area of the front disk, capped at the domain area and floored at one
    interaction disk (flooring below that is unreachable from
    :func:`initial_front` but guards hand-built states)."""
    area = min(math.pi * front.zeta_t * front.zeta_t, params.mu_domain)
    if area < params.mu_disk:
        warnings.warn(
            "front disk smaller than one interaction disk; clamped",
            RuntimeWarning,
            stacklevel=3,
        )
        area = params.mu_disk
    return area


def local_step(
    state: GrrState, front: FrontState, params: SimParams
) -> tuple[GrrState, FrontState]:
    """Counts update conditioned on the front disk, plus front advance.

    Once the front is saturated the counts update is the well-mixed one,
    bit for bit: the region is the whole domain and its share is 1.
    """
    if front.saturated:
        new_state = global_step(state, params)
    else:
        mu_front = _front_area(front, params)
        new_state = _count_step(
            state, params, mu_front, mu_front / params.mu_domain
        )
    return new_state, front_radius_update(front, params)


def local_trajectory(
    params: SimParams, i0: float = 1.0, r0: float = 0.0, m: int | None = None
) -> Trajectory:
    """Iterate :func:`local_step` from ``(i0, r0)`` and a fresh front."""
    m = params.n_iters if m is None else m
    states = [GrrState(float(i0), float(r0))]
    front = initial_front(params)
    for _ in range(m):
        new_state, front = local_step(states[-1], front, params)
        states.append(new_state)
    return _trajectory_from_states(params, states)


def sparse_front_update(
    front: FrontState, n_new: float, params: SimParams
) -> FrontState:
    """Advance the front by the area ``n_new`` equally spaced fresh disks
    add beyond it.

    The disks sit at the RMS radius of the current and previous fronts.
    Fewer than one new infected agent leaves the radius where it is (the
    pair still shifts forward in time). The union area is spread back into
    a full circle to produce the new radius, so radii never decrease.
    """
    if n_new < 1.0:
        return FrontState(front.zeta_t, front.zeta_t, front.saturated)
    r_com = math.sqrt(
        (front.zeta_t * front.zeta_t + front.zeta_prev * front.zeta_prev) / 2.0
    )
    union = sparse_union_area(front.zeta_t, r_com, params.rho0, n_new)
    zeta_new = math.sqrt((math.pi * front.zeta_t * front.zeta_t + union) / math.pi)
    saturated = front.saturated or math.pi * zeta_new * zeta_new >= params.mu_domain
    return FrontState(zeta_new, front.zeta_t, saturated)


def sparse_local_trajectory(
    params: SimParams, m: int | None = None, i0: float = 1.0, r0: float = 0.0
) -> Trajectory:
    """Locally conditioned counts with geometry-driven front growth.

    The counts update is the same as in :func:`local_step`; the front
    advances via :func:`sparse_front_update` with the latest realized
    increment of the infected count (clamped at 0; the infected count
    before t=0 is taken as 0).
    """
    m = params.n_iters if m is None else m
    states = [GrrState(float(i0), float(r0))]
    front = initial_front(params)
    i_before = 0.0
    for _ in range(m):
        current = states[-1]
        if front.saturated:
            new_state = global_step(current, params)
        else:
            mu_front = _front_area(front, params)
            new_state = _count_step(
                current, params, mu_front, mu_front / params.mu_domain
            )
        n_new = max(current.i - i_before, 0.0)
        front = sparse_front_update(front, n_new, params)
        i_before = current.i
        states.append(new_state)
    return _trajectory_from_states(params, states)
