"""Closed-form areas for the expanding-front construction.

Setting: a circular front of radius ``zeta`` is centered at the origin; ``n``
newly infected agents sit equally spaced on a circle of radius ``r_com``
inside it, each carrying an interaction disk of radius ``rho0`` that pokes
outside the front. The front's next radius comes from the area the disks add
beyond the front, computed per agent (:func:`sparse_mu_A`) minus the overlap
between azimuthal neighbors (:func:`sparse_mu_overlap`) via
inclusion-exclusion (:func:`sparse_union_area`).

The per-agent formula books each agent's contribution against a wedge of
angle ``2*pi/n`` of the front circle. That accounting reproduces the plain
protruding-lens area exactly when the wedge angle equals the lens angle
:func:`lens_angle` (the disks tile the front circle); for other ``n`` it
over- or under-counts by ``(lens_angle - 2*pi/n) * zeta**2 / 2`` per agent,
which the inclusion-exclusion sum then offsets against neighbor overlaps.
Tests validate both the tiling case (against plain Monte-Carlo areas) and
the wedge-accounting identity itself.

All functions are scalar and pure; inputs are lengths in domain units.
"""
from __future__ import annotations

import math

__all__ = [
    "lens_angle",
    "tiling_count",
    "sparse_mu_A",
    "sparse_mu_overlap",
    "sparse_union_area",
]


def _chord(zeta: float, r_com: float, rho0: float) -> tuple[float, float] | None:
    """Chord of the agent-disk/front-circle intersection.

    Returns ``(y, alpha)`` where ``y`` is the distance from the front center
    to the chord through the two circle intersection points and ``alpha`` is
    the half-chord length, or None when the circles do not cross.
    """
    y = (zeta * zeta - rho0 * rho0 + r_com * r_com) / (2.0 * r_com)
    a2 = zeta * zeta - y * y
    if a2 <= 0.0:
        return None
    return y, math.sqrt(a2)


def lens_angle(zeta: float, r_com: float, rho0: float) -> float:
    """Angle the protruding lens subtends at the front center.

    Defined when the agent circle crosses the front circle
    (``|r_com - rho0| < zeta < r_com + rho0``).
    """
    ch = _chord(zeta, r_com, rho0)
    if ch is None:
        raise ValueError("circles do not intersect; no lens")
    _, alpha = ch
    return 2.0 * math.asin(min(1.0, alpha / zeta))


def tiling_count(zeta: float, r_com: float, rho0: float) -> float:
    """Number of equally spaced disks whose lenses exactly tile the front
    circle: ``2*pi / lens_angle``. The per-agent wedge accounting is exact
    at this count."""
    return 2.0 * math.pi / lens_angle(zeta, r_com, rho0)


def sparse_mu_A(zeta_t: float, r_com: float, rho0: float, n: float) -> float:
    """Wedge-accounted area one agent's disk adds beyond the front.

    The value is (agent-disk segment beyond the chord) minus (front-circle
    wedge of angle ``2*pi/n`` minus the chord triangle). With
    ``n == tiling_count(...)`` this equals the plain area of
    {inside the agent disk, outside the front circle} — the protruding lens.

    Degenerate inputs: a disk fully inside the front contributes 0; a disk
    containing the whole front circle contributes its wedge share of the
    annular excess; a disk entirely outside contributes its full area.
    """
    if n < 1:
        raise ValueError("need n >= 1 disks")
    if r_com + rho0 <= zeta_t:
        return 0.0  # disk swallowed by the front
    theta = 2.0 * math.pi / n
    ch = _chord(zeta_t, r_com, rho0)
    if ch is None:
        # No crossing. Either the disk engulfs the front circle entirely
        # (share out the annular excess) or it sits wholly outside.
        if rho0 >= r_com + zeta_t:
            return (rho0 * rho0 - zeta_t * zeta_t) * theta / 2.0
        return math.pi * rho0 * rho0
    y, alpha = ch
    # Segment of the agent disk beyond the chord. d is the signed distance
    # from the agent center to the chord: negative once the chord passes the
    # center (deep intersection), where the segment exceeds a half-disk.
    d = y - r_com
    cap = rho0 * rho0 * math.acos(max(-1.0, min(1.0, d / rho0))) - alpha * d
    front_piece = 0.5 * theta * zeta_t * zeta_t - alpha * y
    return max(0.0, cap - front_piece)


def sparse_mu_overlap(zeta_t: float, r_com: float, rho0: float, n: float) -> float:
    """Area shared by two azimuthally adjacent protruding lenses.

    The two agents sit at angle ``2*pi/n`` apart on the ``r_com`` circle
    (chord distance ``2*r_com*sin(pi/n)``). Solves for the x-coordinate
    ``x_hat`` where an agent circle crosses the front circle in the frame
    bisecting the pair; no crossing with positive ``x_hat`` means the lenses
    are disjoint and the overlap is 0.
    """
    if n < 2:
        raise ValueError("need n >= 2 disks for a pairwise overlap")
    theta = 2.0 * math.pi / n
    h = r_com * math.sin(theta / 2.0)
    k = r_com * math.cos(theta / 2.0)
    eta = h * h - k * k + zeta_t * zeta_t - rho0 * rho0
    qa = 4.0 * (h * h + k * k)
    qb = 4.0 * h * (2.0 * k * k + eta)
    qc = eta * eta - 4.0 * k * k * (rho0 * rho0 - h * h)
    disc = qb * qb - 4.0 * qa * qc
    if disc <= 0.0:
        return 0.0
    x_hat = (-qb + math.sqrt(disc)) / (2.0 * qa)
    if x_hat <= 0.0:
        return 0.0
    u = h + x_hat
    u = min(u, rho0)  # numerical safety: u == rho0 at exact tangency
    x_cl = min(x_hat, zeta_t)
    term_disk = u * math.sqrt(max(0.0, rho0 * rho0 - u * u)) + rho0 * rho0 * math.asin(
        min(1.0, u / rho0)
    )
    term_front = zeta_t * zeta_t * math.asin(
        min(1.0, x_cl / zeta_t)
    ) + x_cl * math.sqrt(max(0.0, zeta_t * zeta_t - x_cl * x_cl))
    term_base = h * math.sqrt(max(0.0, rho0 * rho0 - h * h)) + rho0 * rho0 * math.asin(
        min(1.0, h / rho0)
    )
    return max(0.0, term_disk - term_front + 2.0 * k * x_hat - term_base)


def sparse_union_area(zeta_t: float, r_com: float, rho0: float, n: float) -> float:
    """Inclusion-exclusion total the ``n`` disks add beyond the front:
    ``n * (per-agent area - adjacent overlap)``, clamped nonnegative."""
    mu_a = sparse_mu_A(zeta_t, r_com, rho0, n)
    if mu_a == 0.0:
        return 0.0
    overlap = sparse_mu_overlap(zeta_t, r_com, rho0, n) if n >= 2 else 0.0
    return max(0.0, n * (mu_a - overlap))
