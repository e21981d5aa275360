"""Fixed points and linear stability of the well-mixed counts map.

The map under study is :func:`sirwave.recurrence.global_step` acting on
``(i, r)``. Everything here is closed-form except the nontrivial fixed
point, which is a root of a scalar transcendental equation along the line
``r = q * i`` and is found by sampling for a sign change and polishing with
a bracketed root solver.

Stability is judged for the *map*: the Jacobian is of the next-state with
respect to the current state, and eigenvalue moduli are compared with 1.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import SimParams
from .recurrence import GrrState, global_step

__all__ = [
    "Jacobian2",
    "FixedPointReport",
    "jacobian_at",
    "eigen2",
    "classify",
    "find_fixed_points",
    "reports_to_json",
]

#: Eigenvalue moduli within this distance of 1 make a point nonhyperbolic.
HYPERBOLICITY_TOL = 1e-9

#: Interior samples used to bracket the nontrivial fixed point.
BRACKET_SAMPLES = 512


@dataclass(frozen=True)
class Jacobian2:
    """2x2 Jacobian of the counts map at a state, rows = (next i, next r),
    columns = (d/di, d/dr). The second row is exactly (1/t_infect,
    1 - 1/t_recover) because the recovered update is linear."""

    a11: float
    a12: float
    a21: float
    a22: float


def jacobian_at(state: GrrState, params: SimParams) -> Jacobian2:
    """Closed-form Jacobian of :func:`global_step` at ``state``.

    With ``L = ln(1 - mu_disk)``, ``P = (1 - mu_disk)**i`` and susceptible
    count ``S``:

    * d(next i)/di = (1-kappa) * (-(1-P) - S*L*P) + 1 - 1/t_infect
    * d(next i)/dr = -(1-kappa) * (1-P)
    """
    log_base = math.log1p(-params.mu_disk)
    pow_i = math.exp(state.i * log_base)
    susceptible = params.n_agents - state.i - state.r
    c = 1.0 - params.kappa
    a11 = (
        c * (-(1.0 - pow_i) - susceptible * log_base * pow_i)
        + 1.0
        - 1.0 / params.t_infect
    )
    a12 = -c * (1.0 - pow_i)
    return Jacobian2(a11, a12, 1.0 / params.t_infect, 1.0 - 1.0 / params.t_recover)


def eigen2(jac: Jacobian2) -> tuple[complex | float, complex | float]:
    """Eigenvalues of a 2x2 matrix, ascending by (real, imag).

    Triangular matrices return their diagonal entries exactly; otherwise the
    quadratic formula applies and a negative discriminant yields a complex
    conjugate pair.
    """
    if jac.a12 == 0.0 or jac.a21 == 0.0:
        lo, hi = sorted((jac.a11, jac.a22))
        return lo, hi
    trace = jac.a11 + jac.a22
    det = jac.a11 * jac.a22 - jac.a12 * jac.a21
    disc = trace * trace - 4.0 * det
    if disc >= 0.0:
        root = math.sqrt(disc)
        return (trace - root) / 2.0, (trace + root) / 2.0
    root = math.sqrt(-disc)
    return complex(trace / 2.0, -root / 2.0), complex(trace / 2.0, root / 2.0)


def classify(eigenvalues: tuple[complex | float, complex | float]) -> str:
    """Map-stability label from eigenvalue moduli: ``stable`` (all inside
    the unit circle), ``unstable`` (all outside), ``saddle`` (split), or
    ``nonhyperbolic`` (any modulus within ``HYPERBOLICITY_TOL`` of 1)."""
    moduli = [abs(ev) for ev in eigenvalues]
    if any(abs(m - 1.0) <= HYPERBOLICITY_TOL for m in moduli):
        return "nonhyperbolic"
    inside = sum(m < 1.0 for m in moduli)
    if inside == len(moduli):
        return "stable"
    if inside == 0:
        return "unstable"
    return "saddle"


@dataclass(frozen=True)
class FixedPointReport:
    """One fixed point with its local linearization.

    ``residual`` is the max component of ``|step(x) - x|``; ``note`` carries
    solver remarks (e.g. that no nontrivial point was found).
    """

    i: float
    r: float
    jacobian: Jacobian2
    eigenvalues: tuple[complex | float, complex | float]
    classification: str
    residual: float
    note: str = ""


def _report_at(i_star: float, r_star: float, params: SimParams, note: str = "") -> FixedPointReport:
    state = GrrState(i_star, r_star)
    stepped = global_step(state, params)
    residual = max(abs(stepped.i - state.i), abs(stepped.r - state.r))
    jac = jacobian_at(state, params)
    eigs = eigen2(jac)
    return FixedPointReport(i_star, r_star, jac, eigs, classify(eigs), residual, note)


def _stationarity_gap(i: float, params: SimParams) -> float:
    """Scalar residual of the infected balance along the line r = q*i:
    infections gained per step minus infections retiring per step. A root
    of this is a fixed point of the full 2-D map."""
    susceptible = params.n_agents - (1.0 + params.q) * i
    gained = (
        susceptible
        * -math.expm1(i * math.log1p(-params.mu_disk))
        * (1.0 - params.kappa)
    )
    return gained - i / params.t_infect


def find_fixed_points(params: SimParams) -> list[FixedPointReport]:
    """All fixed points of the well-mixed counts map.

    Always reports the extinction point (0, 0). The endemic point, when one
    exists, lies on ``r = q * i`` with ``i`` in (0, N/(1+q)); it is located
    by scanning ``BRACKET_SAMPLES`` interior points for sign changes of the
    stationarity gap and polishing each bracket, accepting roots with
    ``|gap| < 1e-10 * n_agents``.
    """
    gap_tol = 1e-10 * params.n_agents
    reports = [_report_at(0.0, 0.0, params)]

    upper = params.n_agents / (1.0 + params.q)
    xs = np.linspace(0.0, upper, BRACKET_SAMPLES + 2)[1:-1]
    gaps = np.array([_stationarity_gap(x, params) for x in xs])
    signs = np.sign(gaps)
    found = False
    for k in np.flatnonzero(signs[:-1] * signs[1:] < 0):
        root = brentq(
            _stationarity_gap,
            xs[k],
            xs[k + 1],
            args=(params,),
            xtol=1e-13,
            rtol=8.9e-16,
            maxiter=500,
        )
        if abs(_stationarity_gap(root, params)) < gap_tol:
            reports.append(_report_at(root, params.q * root, params))
            found = True
    # an exact grid hit (gap == 0 at a sample) counts as a root too
    for k in np.flatnonzero(gaps == 0.0):
        reports.append(_report_at(float(xs[k]), params.q * float(xs[k]), params))
        found = True
    if not found:
        reports[0] = _report_at(0.0, 0.0, params, note="no nontrivial fixed point detected")
    return reports


def _eig_pairs(eigs: tuple[complex | float, complex | float]) -> list[list[float]]:
    out = []
    for ev in eigs:
        evc = complex(ev)
        out.append([evc.real, evc.imag])
    return out


def reports_to_json(reports: list[FixedPointReport], params: SimParams) -> str:
    """Serialize fixed-point reports (plus the generating parameters) to a
    deterministic JSON document."""
    body = {
        "params": {
            "n_agents": params.n_agents,
            "rho0": params.rho0,
            "kappa": params.kappa,
            "t_infect": params.t_infect,
            "t_recover": params.t_recover,
        },
        "fixed_points": [
            {
                "i": rep.i,
                "r": rep.r,
                "jacobian": [
                    [rep.jacobian.a11, rep.jacobian.a12],
                    [rep.jacobian.a21, rep.jacobian.a22],
                ],
                "eigenvalues": _eig_pairs(rep.eigenvalues),
                "classification": rep.classification,
                "residual": rep.residual,
                "note": rep.note,
            }
            for rep in reports
        ],
    }
    return json.dumps(body, indent=2, sort_keys=True)
