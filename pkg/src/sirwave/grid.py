"""Fixed-radius neighbor search over the unit square via uniform-grid hashing.

Two entry points share one bucketing scheme:

* :func:`covered_mask` — the hot path used by the simulator. A compiled
  kernel answers, for a batch of query points, whether any source point lies
  within ``radius`` (closed disk). Sources are counting-sorted into grid
  cells once; each query scans the 3x3 cell stencil around it, which is a
  superset of the disk because the cell side is at least the radius.

* :class:`NeighborIndex` — an inspectable index with an exact ``query``
  returning indices of all points within a radius. Used by tests and any
  caller that needs the neighbor sets themselves. The stencil width adapts
  to the query radius, so it stays exact even for radii larger than a cell.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

__all__ = ["cell_layout", "covered_mask", "NeighborIndex"]


def cell_layout(rho0: float, dr: float, domain_side: float = 1.0) -> tuple[float, int]:
    """Grid geometry used throughout: ``(cell_side, cells_per_axis)``.

    The side is ``max(rho0, dr, domain_side/64)`` so the cell count never
    exceeds 64 per axis (bounded memory) while one-cell neighborhoods still
    cover an interaction disk.
    """
    side = max(rho0, dr, domain_side / 64.0)
    n_cells = max(1, int(domain_side / side))
    return domain_side / n_cells, n_cells


@njit(cache=True)
def _bucket_sources(points: np.ndarray, n_cells: int, inv_side: float):
    """Counting-sort point indices by cell id; returns (starts, order)."""
    n = points.shape[0]
    cell_of = np.empty(n, np.int64)
    starts = np.zeros(n_cells * n_cells + 1, np.int64)
    for j in range(n):
        cx = int(points[j, 0] * inv_side)
        cy = int(points[j, 1] * inv_side)
        if cx < 0:
            cx = 0
        elif cx >= n_cells:
            cx = n_cells - 1
        if cy < 0:
            cy = 0
        elif cy >= n_cells:
            cy = n_cells - 1
        c = cx * n_cells + cy
        cell_of[j] = c
        starts[c + 1] += 1
    for c in range(1, n_cells * n_cells + 1):
        starts[c] += starts[c - 1]
    order = np.empty(n, np.int64)
    fill = starts[:-1].copy()
    for j in range(n):
        c = cell_of[j]
        order[fill[c]] = j
        fill[c] += 1
    return starts, order


@njit(cache=True)
def _covered_kernel(queries, sources, starts, order, n_cells, inv_side, radius):
    m = queries.shape[0]
    out = np.zeros(m, np.bool_)
    r2 = radius * radius
    for s in range(m):
        px = queries[s, 0]
        py = queries[s, 1]
        cx = int(px * inv_side)
        cy = int(py * inv_side)
        if cx < 0:
            cx = 0
        elif cx >= n_cells:
            cx = n_cells - 1
        if cy < 0:
            cy = 0
        elif cy >= n_cells:
            cy = n_cells - 1
        hit = False
        for gx in range(cx - 1, cx + 2):
            if gx < 0 or gx >= n_cells:
                continue
            for gy in range(cy - 1, cy + 2):
                if gy < 0 or gy >= n_cells:
                    continue
                c = gx * n_cells + gy
                for idx in range(starts[c], starts[c + 1]):
                    j = order[idx]
                    dx = sources[j, 0] - px
                    dy = sources[j, 1] - py
                    if dx * dx + dy * dy <= r2:
                        hit = True
                        break
                if hit:
                    break
            if hit:
                break
        out[s] = hit
    return out


def covered_mask(
    queries: np.ndarray,
    sources: np.ndarray,
    radius: float,
    n_cells: int,
) -> np.ndarray:
    """Boolean mask: query point k is within ``radius`` of >= 1 source point.

    Distances use the closed disk (boundary counts as inside). ``n_cells``
    must come from :func:`cell_layout` for the same radius so the 3x3 stencil
    is a superset of the disk.
    """
    queries = np.ascontiguousarray(queries, dtype=np.float64)
    sources = np.ascontiguousarray(sources, dtype=np.float64)
    if sources.shape[0] == 0 or queries.shape[0] == 0:
        return np.zeros(queries.shape[0], dtype=bool)
    inv_side = float(n_cells)  # unit square: side = 1 / n_cells
    starts, order = _bucket_sources(sources, n_cells, inv_side)
    return _covered_kernel(queries, sources, starts, order, n_cells, inv_side, radius)


class NeighborIndex:
    """Uniform-grid index over points in the unit square with exact queries."""

    def __init__(self, points: np.ndarray, rho0: float, dr: float = 0.0,
                 domain_side: float = 1.0):
        self.points = np.ascontiguousarray(points, dtype=np.float64)
        self.cell_side, self.n_cells = cell_layout(rho0, dr, domain_side)
        self._inv_side = self.n_cells / domain_side
        n = self.points.shape[0]
        cols = np.clip((self.points[:, 0] * self._inv_side).astype(np.int64),
                       0, self.n_cells - 1)
        rows = np.clip((self.points[:, 1] * self._inv_side).astype(np.int64),
                       0, self.n_cells - 1)
        cell_ids = cols * self.n_cells + rows
        self._order = np.argsort(cell_ids, kind="stable")
        sorted_ids = cell_ids[self._order]
        self._starts = np.searchsorted(
            sorted_ids, np.arange(self.n_cells * self.n_cells + 1)
        )

    def query(self, point: np.ndarray, radius: float) -> np.ndarray:
        """Indices of all points within ``radius`` of ``point`` (closed disk),
        in ascending order."""
        px, py = float(point[0]), float(point[1])
        cx = min(max(int(px * self._inv_side), 0), self.n_cells - 1)
        cy = min(max(int(py * self._inv_side), 0), self.n_cells - 1)
        reach = max(1, math.ceil(radius / self.cell_side))
        found: list[np.ndarray] = []
        for gx in range(max(0, cx - reach), min(self.n_cells, cx + reach + 1)):
            for gy in range(max(0, cy - reach), min(self.n_cells, cy + reach + 1)):
                c = gx * self.n_cells + gy
                found.append(self._order[self._starts[c]:self._starts[c + 1]])
        if not found:
            return np.empty(0, dtype=np.int64)
        cand = np.concatenate(found)
        if cand.size == 0:
            return cand
        d2 = ((self.points[cand] - (px, py)) ** 2).sum(axis=1)
        hits = cand[d2 <= radius * radius]
        hits.sort()
        return hits
