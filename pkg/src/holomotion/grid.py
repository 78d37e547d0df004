"""Uniform-grid bucketing for exact nearest-neighbour queries in the plane.

Points are binned into square cells of side ``h`` (CSR layout: one sorted index
array plus per-cell offsets). A query scans Chebyshev rings of cells around its
own cell and stops once no unvisited ring can beat the best squared distance
found so far, so the answer is exact, not approximate. Squared distances are
formed as ``dx*dx + dy*dy`` in float64, the same expression the brute-force
reference uses, which keeps the two routes bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

MAX_CELLS_PER_POINT = 4
CELL_CLAMP = 2.0**52


@dataclass(frozen=True)
class GridIndex:
    x: np.ndarray
    y: np.ndarray
    order: np.ndarray
    start: np.ndarray
    x0: float
    y0: float
    h: float
    nx: int
    ny: int

    @property
    def size(self) -> int:
        return len(self.x)


def _as_xy(points) -> tuple[np.ndarray, np.ndarray]:
    z = np.asarray(points, dtype=np.complex128).ravel()
    return np.ascontiguousarray(z.real), np.ascontiguousarray(z.imag)


def _initial_cell_size(x, y) -> float:
    n = len(x)
    wx = float(x.max() - x.min()) if n else 0.0
    wy = float(y.max() - y.min()) if n else 0.0
    if wx == 0.0 and wy == 0.0:
        return 1.0
    if wx * wy > 0.0:
        return math.sqrt(wx * wy / n)
    return max(wx, wy) / n


def _capped(h, x, y) -> float:
    # keep nx * ny within a small multiple of the point count
    n = max(len(x), 1)
    wx = float(x.max() - x.min())
    wy = float(y.max() - y.min())
    limit = MAX_CELLS_PER_POINT * n
    h = max(h, math.sqrt(wx * wy / limit), max(wx, wy) / limit)
    return h if h > 0.0 else 1.0


def build(points, h: float | None = None) -> GridIndex:
    x, y = _as_xy(points)
    if len(x) == 0:
        raise ValueError("cannot index an empty point set")
    if h is None:
        h = _initial_cell_size(x, y)
    h = _capped(float(h), x, y)
    x0, y0 = float(x.min()), float(y.min())
    nx = int(math.floor((x.max() - x0) / h)) + 1
    ny = int(math.floor((y.max() - y0) / h)) + 1
    cx = np.clip(np.floor((x - x0) / h).astype(np.int64), 0, nx - 1)
    cy = np.clip(np.floor((y - y0) / h).astype(np.int64), 0, ny - 1)
    cell = cy * nx + cx
    order = np.argsort(cell, kind="stable").astype(np.int64)
    counts = np.bincount(cell, minlength=nx * ny)
    start = np.zeros(nx * ny + 1, dtype=np.int64)
    np.cumsum(counts, out=start[1:])
    return GridIndex(x, y, order, start, x0, y0, h, nx, ny)


@numba.njit(cache=True)
def _scan_cell(qx, qy, cell, skip, px, py, order, start, best, bi):
    for t in range(start[cell], start[cell + 1]):
        j = order[t]
        if j == skip:
            continue
        dx = qx - px[j]
        dy = qy - py[j]
        d2 = dx * dx + dy * dy
        if d2 < best or (d2 == best and j < bi):
            best = d2
            bi = j
    return best, bi


@numba.njit(cache=True)
def _query(qx, qy, px, py, order, start, x0, y0, h, nx, ny, self_query):
    n = qx.shape[0]
    out_d2 = np.empty(n)
    out_i = np.empty(n, dtype=np.int64)
    for i in range(n):
        skip = i if self_query else -1
        # clamp before the cast so far-away queries cannot overflow int64
        cx = int(math.floor(min(max((qx[i] - x0) / h, -CELL_CLAMP), CELL_CLAMP)))
        cy = int(math.floor(min(max((qy[i] - y0) / h, -CELL_CLAMP), CELL_CLAMP)))
        k0 = max(0, -cx, cx - (nx - 1), -cy, cy - (ny - 1))
        kmax = max(cx, nx - 1 - cx, cy, ny - 1 - cy)
        best = np.inf
        bi = -1
        k = k0
        while k <= kmax:
            if bi >= 0 and k >= 1:
                lb = (k - 1) * h
                if best < lb * lb * (1.0 - 1e-9):
                    break
            ylo = max(cy - k, 0)
            yhi = min(cy + k, ny - 1)
            xlo = max(cx - k, 0)
            xhi = min(cx + k, nx - 1)
            for yy in range(ylo, yhi + 1):
                if yy == cy - k or yy == cy + k:
                    for xx in range(xlo, xhi + 1):
                        best, bi = _scan_cell(qx[i], qy[i], yy * nx + xx, skip,
                                              px, py, order, start, best, bi)
                else:
                    if 0 <= cx - k <= nx - 1:
                        best, bi = _scan_cell(qx[i], qy[i], yy * nx + cx - k, skip,
                                              px, py, order, start, best, bi)
                    if k > 0 and 0 <= cx + k <= nx - 1:
                        best, bi = _scan_cell(qx[i], qy[i], yy * nx + cx + k, skip,
                                              px, py, order, start, best, bi)
            k += 1
        out_d2[i] = best
        out_i[i] = bi
    return out_d2, out_i


def nearest(index: GridIndex, queries) -> tuple[np.ndarray, np.ndarray]:
    """Squared distance and index of the nearest indexed point for each query."""
    qx, qy = _as_xy(queries)
    return _query(qx, qy, index.x, index.y, index.order, index.start,
                  index.x0, index.y0, index.h, index.nx, index.ny, False)


def nearest_other(index: GridIndex) -> tuple[np.ndarray, np.ndarray]:
    """Nearest *other* indexed point for every indexed point (self excluded)."""
    return _query(index.x, index.y, index.x, index.y, index.order, index.start,
                  index.x0, index.y0, index.h, index.nx, index.ny, True)


def nn_spacing(points) -> np.ndarray:
    """Distance from each point to its nearest neighbour (inf for a singleton)."""
    d2, _ = nearest_other(build(points))
    return np.sqrt(d2)


def median_spacing(points) -> float:
    d = nn_spacing(points)
    d = d[np.isfinite(d) & (d > 0)]
    return float(np.median(d)) if len(d) else 1.0


def brute_nearest(points, queries) -> tuple[np.ndarray, np.ndarray]:
    """O(|P||Q|) reference for :func:`nearest`, chunked to bound memory."""
    px, py = _as_xy(points)
    qx, qy = _as_xy(queries)
    d2_out = np.empty(len(qx))
    i_out = np.empty(len(qx), dtype=np.int64)
    chunk = max(1, 4_000_000 // max(len(px), 1))
    for s in range(0, len(qx), chunk):
        dx = qx[s:s + chunk, None] - px[None, :]
        dy = qy[s:s + chunk, None] - py[None, :]
        d2 = dx * dx + dy * dy
        i_out[s:s + chunk] = np.argmin(d2, axis=1)
        d2_out[s:s + chunk] = d2[np.arange(d2.shape[0]), i_out[s:s + chunk]]
    return d2_out, i_out
