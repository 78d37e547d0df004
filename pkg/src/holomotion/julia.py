"""Finite samples of Julia sets, escape tests and the radius/annulus bounds.

Complex clouds come from pulling the repelling fixed point back along both
square-root branches to a fixed depth; real Cantor clouds of the logistic map
come from the two real inverse branches applied to 1 - 1/mu. Everything is a
full binary tree, so the output is deterministic.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import grid
from .errors import BudgetExceeded, DomainError
from .families import Parameter, beta

DEFAULT_BUDGET = 2**20
DEDUP_TOL = 1e-12
COVERING_SAFETY = 2.0


@dataclass(frozen=True)
class PointCloud:
    points: np.ndarray
    covering_radius: float
    parameter: Parameter
    depth: int
    nn_spacing: np.ndarray = field(repr=False, compare=False, default=None)

    def __len__(self):
        return len(self.points)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("re,im\n")
        for z in self.points:
            buf.write(f"{z.real:.15g},{z.imag:.15g}\n")
        return buf.getvalue()

    def to_json(self) -> str:
        data = [[float(f"{z.real:.15g}"), float(f"{z.imag:.15g}")] for z in self.points]
        return json.dumps(data, separators=(",", ":"))

    def mapped(self, fn, scale: float, parameter: Parameter) -> "PointCloud":
        """Image under an affine map that scales distances by ``scale``."""
        pts = _canonical(fn(self.points))
        return PointCloud(pts, self.covering_radius * scale, parameter, self.depth)


def _canonical(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128)
    z = z[np.lexsort((z.imag, z.real))]
    # quantised keys catch almost every duplicate; the NN pass below the rest
    keys = np.stack([np.rint(z.real / DEDUP_TOL), np.rint(z.imag / DEDUP_TOL)], axis=1)
    _, first = np.unique(keys, axis=0, return_index=True)
    z = z[np.sort(first)]
    if len(z) > 1:
        d2, j = grid.nearest_other(grid.build(z))
        drop = (d2 <= DEDUP_TOL**2) & (j < np.arange(len(z)))
        z = z[~drop]
    # normalise -0.0 so text output is stable
    z = (z.real + 0.0) + 1j * (z.imag + 0.0)
    out = np.array(z, dtype=np.complex128)
    out.setflags(write=False)
    return out


def _cloud(points, parameter, depth) -> PointCloud:
    pts = _canonical(points)
    if len(pts) > 1:
        spacing = grid.nn_spacing(pts)
        radius = COVERING_SAFETY * float(spacing.max())
    else:
        spacing = np.array([math.inf])
        radius = math.inf
    spacing.setflags(write=False)
    return PointCloud(pts, radius, parameter, depth, spacing)


def escape_radius(c) -> float:
    """(1 + sqrt(1 + 4|c|)) / 2: every point of J(q_c) lies in this disk."""
    return (1 + math.sqrt(1 + 4 * abs(c))) / 2


def _real_in(x, lo, name):
    if isinstance(x, complex):
        if x.imag != 0:
            raise DomainError(f"{name} must be real")
        x = x.real
    x = float(x)
    if not lo(x):
        raise DomainError(f"{name}={x} out of range")
    return x


def annulus_bounds(c) -> tuple[float, float]:
    """Inner and outer radius of the annulus containing J(q_c) for real c in [0, 1/4)."""
    c = _real_in(c, lambda v: 0 <= v < 0.25, "c")
    return (1 + math.sqrt(1 - 4 * c)) / 2, (1 + math.sqrt(1 + 4 * c)) / 2


@dataclass(frozen=True)
class Escaped:
    at: int


class _Bounded:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Bounded"


Bounded = _Bounded()


def membership_escape(c, z, max_iter: int):
    """Escaped(k) if |q_c^k(z)| first exceeds the escape radius at k <= max_iter."""
    if max_iter < 1:
        raise DomainError("max_iter must be >= 1")
    r = escape_radius(c)
    for k in range(1, max_iter + 1):
        z = z * z + c
        if abs(z) > r:
            return Escaped(k)
    return Bounded


def escape_counts(c, z: np.ndarray, max_iter: int) -> np.ndarray:
    """Vectorised escape step per point; 0 marks points that stayed bounded."""
    z = np.array(z, dtype=np.complex128)
    r = escape_radius(c)
    out = np.zeros(z.shape, dtype=np.int64)
    live = np.ones(z.shape, dtype=bool)
    for k in range(1, max_iter + 1):
        z[live] = z[live] * z[live] + c
        hit = live & (np.abs(z) > r)
        out[hit] = k
        live &= ~hit
        if not live.any():
            break
    return out


def escape_raster(c, view, px, max_iter: int = 200) -> np.ndarray:
    """Escape counts on a W x H pixel grid covering ``view = (xmin, xmax, ymin, ymax)``.

    Row 0 is the top edge (ymax), matching image conventions.
    """
    xmin, xmax, ymin, ymax = view
    w, h = px
    xs = xmin + (np.arange(w) + 0.5) * (xmax - xmin) / w
    ys = ymax - (np.arange(h) + 0.5) * (ymax - ymin) / h
    grid_z = xs[None, :] + 1j * ys[:, None]
    return escape_counts(c, grid_z, max_iter)


def _check_budget(depth, budget):
    if depth < 1:
        raise DomainError("depth must be >= 1")
    if 2**depth > budget:
        raise BudgetExceeded(f"depth {depth} needs {2 ** depth} points, budget is {budget}")


def inverse_levels(c, depth: int) -> list[np.ndarray]:
    """Preimage levels q_c^{-k}(beta) for k = 0..depth, un-deduplicated.

    In each level the first half comes from the principal root at the newest
    pullback step and the second half from its negative.
    """
    level = np.array([complex(beta(c))])
    levels = [level]
    for _ in range(depth):
        r = np.sqrt(level - c)
        r = (r.real + 0.0) + 1j * (r.imag + 0.0)
        level = np.concatenate([r, -r])
        level = (level.real + 0.0) + 1j * (level.imag + 0.0)
        levels.append(level)
    return levels


def sample_inverse_iteration(c, depth: int, budget: int = DEFAULT_BUDGET) -> PointCloud:
    """Deterministic sample of J(q_c): union of the preimage levels 1..depth of beta."""
    _check_budget(depth, budget)
    levels = inverse_levels(c, depth)
    pts = np.concatenate(levels[1:])
    return _cloud(pts, Parameter.quadratic(c), depth)


def g_minus(mu, x):
    """Inverse branch of f_mu onto [0, 1/2], written without cancellation near 0."""
    return 2 * x / (mu * (1 + np.sqrt(1 - 4 * x / mu)))


def g_plus(mu, x):
    return 1 - g_minus(mu, x)


def real_pullback_levels(mu: float, depth: int) -> list[np.ndarray]:
    p = 1 - 1 / mu
    level = np.array([p])
    levels = [level]
    for _ in range(depth):
        left = g_minus(mu, level)
        level = np.concatenate([left, 1 - left])
        levels.append(level)
    return levels


def real_pullback(mu, depth: int, budget: int = DEFAULT_BUDGET) -> PointCloud:
    """Level ``depth`` of the real inverse-branch tree over 1 - 1/mu, for mu >= 4.

    At mu = 4 the tree densifies in J(f_4) = [0, 1]; above 4 it samples the Cantor set.
    """
    mu = _real_in(mu, lambda v: v >= 4, "mu")
    _check_budget(depth, budget)
    pts = real_pullback_levels(mu, depth)[-1].astype(np.complex128)
    return _cloud(pts, Parameter.logistic(mu), depth)


def cantor_sample_real(mu, depth: int, budget: int = DEFAULT_BUDGET) -> PointCloud:
    mu = _real_in(mu, lambda v: v > 4, "mu")
    return real_pullback(mu, depth, budget)

