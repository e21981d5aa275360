"""Stochastic off-lattice SIR simulation with disk neighborhoods.

One iteration applies, in order:

1. neighbor search on the current positions (who is inside whose disk),
2. state transitions, all computed from that same snapshot so agent order
   is irrelevant:

   * a susceptible inside at least one infected agent's disk becomes
     infected (stage 1) with probability ``1 - kappa``; being inside several
     disks does not raise the probability,
   * infected stage j advances to j+1, leaving to recovered stage 1 after
     ``t_infect`` iterations,
   * recovered stage m advances to m+1, returning to susceptible after
     ``t_recover`` iterations,

3. movement: every agent steps a fixed distance ``dr`` in a uniform random
   direction; an agent whose proposed position leaves the square is placed
   ``dr`` inside the boundary along each violated axis.

Randomness: per iteration the RNG first draws one uniform per covered
susceptible (ascending agent index), then ``n_agents`` direction angles.
This makes every trajectory a pure function of (params, seed).
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .core import SimParams, Trajectory, replicate_seed, rng_stream
from .grid import cell_layout, covered_mask

__all__ = [
    "SUSCEPTIBLE",
    "INFECTED",
    "RECOVERED",
    "STATE_NAMES",
    "Population",
    "BatchResult",
    "init_population",
    "step_states",
    "step_movement",
    "simulate",
    "simulate_batch",
    "write_snapshot",
]

SUSCEPTIBLE, INFECTED, RECOVERED = 0, 1, 2
STATE_NAMES = {SUSCEPTIBLE: "S", INFECTED: "I", RECOVERED: "R"}


@dataclass
class Population:
    """Per-agent state at one instant.

    ``states`` holds the compartment tag; ``stages`` the 1-based residence
    clock within infected/recovered (0 while susceptible); ``positions`` the
    agent coordinates inside the unit square, shape (N, 2).
    """

    states: np.ndarray
    stages: np.ndarray
    positions: np.ndarray

    def counts(self) -> tuple[int, int, int]:
        s = int(np.count_nonzero(self.states == SUSCEPTIBLE))
        i = int(np.count_nonzero(self.states == INFECTED))
        r = int(np.count_nonzero(self.states == RECOVERED))
        return s, i, r

    def copy(self) -> "Population":
        return Population(
            self.states.copy(), self.stages.copy(), self.positions.copy()
        )


def init_population(params: SimParams, rng: np.random.Generator) -> Population:
    """Agent 0 infected (stage 1) at the center; the rest susceptible at
    i.i.d. uniform positions."""
    n = params.n_agents
    positions = np.empty((n, 2), dtype=np.float64)
    positions[0] = 0.5 * params.domain_side
    positions[1:] = rng.uniform(0.0, params.domain_side, size=(n - 1, 2))
    states = np.full(n, SUSCEPTIBLE, dtype=np.int8)
    stages = np.zeros(n, dtype=np.int32)
    states[0] = INFECTED
    stages[0] = 1
    return Population(states, stages, positions)


def step_states(
    pop: Population, params: SimParams, rng: np.random.Generator
) -> Population:
    """Apply one round of state transitions (positions unchanged).

    All transitions are evaluated against the entering snapshot: an agent
    recovering this step does not infect based on its new state, and a newly
    infected agent does not infect others until the next iteration.
    """
    states, stages = pop.states, pop.stages
    sus_idx = np.flatnonzero(states == SUSCEPTIBLE)
    inf_idx = np.flatnonzero(states == INFECTED)
    rec_idx = np.flatnonzero(states == RECOVERED)

    _, n_cells = cell_layout(params.rho0, params.dr, params.domain_side)
    covered = covered_mask(
        pop.positions[sus_idx], pop.positions[inf_idx], params.rho0, n_cells
    )
    exposed = sus_idx[covered]  # ascending: flatnonzero preserves order
    draws = rng.random(exposed.size)
    newly_infected = exposed[draws < (1.0 - params.kappa)]

    new_states = states.copy()
    new_stages = stages.copy()

    inf_leaving = inf_idx[stages[inf_idx] >= params.t_infect]
    inf_staying = inf_idx[stages[inf_idx] < params.t_infect]
    rec_leaving = rec_idx[stages[rec_idx] >= params.t_recover]
    rec_staying = rec_idx[stages[rec_idx] < params.t_recover]

    new_stages[inf_staying] += 1
    new_states[inf_leaving] = RECOVERED
    new_stages[inf_leaving] = 1
    new_stages[rec_staying] += 1
    new_states[rec_leaving] = SUSCEPTIBLE
    new_stages[rec_leaving] = 0
    new_states[newly_infected] = INFECTED
    new_stages[newly_infected] = 1

    return Population(new_states, new_stages, pop.positions)


def _shift_inside(positions: np.ndarray, dr: float, domain_side: float) -> None:
    """Boundary rule, in place: a coordinate that left the square is placed
    ``dr`` inside along that axis (each axis handled independently, so a
    corner exit is shifted in both)."""
    for ax in (0, 1):
        col = positions[:, ax]
        col[col < 0.0] = dr
        col[col > domain_side] = domain_side - dr


def step_movement(
    pop: Population, params: SimParams, rng: np.random.Generator
) -> Population:
    """Displace every agent by ``dr`` in a uniform random direction."""
    n = params.n_agents
    theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
    positions = pop.positions.copy()
    positions[:, 0] += params.dr * np.cos(theta)
    positions[:, 1] += params.dr * np.sin(theta)
    _shift_inside(positions, params.dr, params.domain_side)
    return Population(pop.states, pop.stages, positions)


def simulate(
    params: SimParams,
    rng: np.random.Generator | None = None,
    snapshot_times: tuple[int, ...] = (),
    snapshot_sink: Callable[[int, Population], None] | None = None,
) -> Trajectory:
    """Run one replicate for ``params.n_iters`` iterations.

    Returns integer compartment counts for t = 0..M (row 0 is the initial
    condition). When ``snapshot_times`` is given, ``snapshot_sink(t, pop)``
    is called with a copy of the population at each listed iteration.
    """
    if rng is None:
        rng = rng_stream(params.seed)
    wanted = set(snapshot_times)
    pop = init_population(params, rng)
    m = params.n_iters
    t_arr = np.arange(m + 1, dtype=np.int64)
    s_arr = np.empty(m + 1, dtype=np.int64)
    i_arr = np.empty(m + 1, dtype=np.int64)
    r_arr = np.empty(m + 1, dtype=np.int64)
    for t in range(m + 1):
        s_arr[t], i_arr[t], r_arr[t] = pop.counts()
        if t in wanted and snapshot_sink is not None:
            snapshot_sink(t, pop.copy())
        if t == m:
            break
        pop = step_states(pop, params, rng)
        pop = step_movement(pop, params, rng)
    return Trajectory(t_arr, s_arr, i_arr, r_arr)


@dataclass
class BatchResult:
    """Pointwise statistics over independent replicates.

    ``mean`` is a float-valued Trajectory; the ``*_std`` arrays are the
    population standard deviations (ddof=0) at each iteration. ``terminal``
    holds each replicate's final (s, i, r) row; ``died_out`` counts the
    replicates whose infected count hit zero at any iteration.
    """

    mean: Trajectory
    s_std: np.ndarray
    i_std: np.ndarray
    r_std: np.ndarray
    replicates: int
    terminal: np.ndarray
    died_out: int

    def to_csv(self, path: str | Path) -> None:
        with open(Path(path), "w") as fh:
            fh.write("t,s_mean,i_mean,r_mean,s_std,i_std,r_std\n")
            for k in range(len(self.mean)):
                fh.write(
                    f"{int(self.mean.t[k])},"
                    f"{self.mean.s[k]:.10g},{self.mean.i[k]:.10g},{self.mean.r[k]:.10g},"
                    f"{self.s_std[k]:.10g},{self.i_std[k]:.10g},{self.r_std[k]:.10g}\n"
                )


def simulate_batch(params: SimParams, replicates: int) -> BatchResult:
    """Run ``replicates`` independent runs; replicate k is seeded with
    ``params.seed + k``. Replicates that die out stay in the average."""
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    m = params.n_iters
    acc = np.zeros((m + 1, 3), dtype=np.float64)
    acc2 = np.zeros((m + 1, 3), dtype=np.float64)
    terminal = np.empty((replicates, 3), dtype=np.int64)
    died_out = 0
    for k in range(replicates):
        rng = rng_stream(replicate_seed(params.seed, k))
        traj = simulate(params, rng)
        block = np.column_stack([traj.s, traj.i, traj.r]).astype(np.float64)
        acc += block
        acc2 += block * block
        terminal[k] = block[-1]
        if (traj.i == 0).any():
            died_out += 1
    mean = acc / replicates
    var = np.maximum(acc2 / replicates - mean * mean, 0.0)
    std = np.sqrt(var)
    t_arr = np.arange(m + 1, dtype=np.int64)
    mean_traj = Trajectory(t_arr, mean[:, 0], mean[:, 1], mean[:, 2])
    return BatchResult(
        mean=mean_traj,
        s_std=std[:, 0],
        i_std=std[:, 1],
        r_std=std[:, 2],
        replicates=replicates,
        terminal=terminal,
        died_out=died_out,
    )


def write_snapshot(pop: Population, path: str | Path) -> None:
    """Dump per-agent rows ``agent_id,state,stage,x,y`` for external plotting."""
    with open(Path(path), "w") as fh:
        fh.write("agent_id,state,stage,x,y\n")
        for k in range(pop.states.size):
            fh.write(
                f"{k},{STATE_NAMES[int(pop.states[k])]},{int(pop.stages[k])},"
                f"{pop.positions[k, 0]:.10g},{pop.positions[k, 1]:.10g}\n"
            )
