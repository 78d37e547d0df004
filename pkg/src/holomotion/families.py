"""The quadratic family q_c(z) = z^2 + c and the logistic family f_mu(z) = mu z (1 - z).

Both families are handled with plain Python numbers (float or complex); the
vectorised kernels elsewhere in the package reimplement the same one-liners on
numpy arrays.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from numbers import Number

import numpy as np

from .errors import DomainError, OrbitOverflow


class Family(enum.Enum):
    QUADRATIC = "q"
    LOGISTIC = "f"


@dataclass(frozen=True)
class Parameter:
    family: Family
    value: complex

    @classmethod
    def quadratic(cls, c) -> "Parameter":
        return cls(Family.QUADRATIC, c)

    @classmethod
    def logistic(cls, mu) -> "Parameter":
        return cls(Family.LOGISTIC, mu)

    def real_value(self, lo=-math.inf, hi=math.inf, *, closed_hi=False) -> float:
        """Return the value as a float, checking it is real and inside [lo, hi)."""
        v = self.value
        if isinstance(v, complex):
            if v.imag != 0:
                raise DomainError(f"{self.family.name} parameter must be real, got {v!r}")
            v = v.real
        v = float(v)
        if not (lo <= v and (v <= hi if closed_hi else v < hi)):
            bracket = "]" if closed_hi else ")"
            raise DomainError(f"parameter {v} outside [{lo}, {hi}{bracket}")
        return v


def csqrt(x):
    """Principal square root; stays real for real non-negative input."""
    if isinstance(x, complex):
        return cmath.sqrt(x)
    if x >= 0:
        return math.sqrt(x)
    return cmath.sqrt(x)


def apply_q(c, z):
    return z * z + c


def apply_f(mu, z):
    return mu * z * (1 - z)


def deriv_q(c, z):
    return 2 * z


def deriv_f(mu, z):
    return mu * (1 - 2 * z)


def beta(c):
    """Repelling fixed point (1 + sqrt(1 - 4c)) / 2 of q_c (principal branch)."""
    return (1 + csqrt(1 - 4 * c)) / 2


def alpha(c):
    return (1 - csqrt(1 - 4 * c)) / 2


def fixed_points(p: Parameter) -> list[tuple[complex, complex]]:
    """Fixed points with their multipliers.

    Quadratic: ``[(beta, 2 beta), (alpha, 2 alpha)]``.
    Logistic: ``[(0, mu), (1 - 1/mu, 2 - mu)]``.
    """
    v = p.value
    if p.family is Family.QUADRATIC:
        b, a = beta(v), alpha(v)
        return [(b, 2 * b), (a, 2 * a)]
    if v == 0:
        raise DomainError("fixed point 1 - 1/mu undefined at mu = 0")
    return [(0 * v, v), (1 - 1 / v, 2 - v)]


def step(p: Parameter):
    """Return ``(map, derivative)`` callables for the family of ``p``."""
    v = p.value
    if p.family is Family.QUADRATIC:
        return (lambda z: z * z + v), (lambda z: 2 * z)
    return (lambda z: v * z * (1 - z)), (lambda z: v * (1 - 2 * z))


@dataclass(frozen=True)
class OrbitSegment:
    start: complex
    points: tuple
    derivs: tuple

    def __len__(self):
        return len(self.points)


def orbit(p: Parameter, z0, n: int) -> OrbitSegment:
    """Forward orbit z_0..z_n together with the running products Df^k(z_0).

    Raises OrbitOverflow at the first index whose point or derivative is not
    finite; nothing after it is computed.
    """
    if n < 0:
        raise DomainError("orbit length must be non-negative")
    fmap, dmap = step(p)
    points = [z0]
    derivs = [1.0 if not isinstance(z0, complex) else 1 + 0j]
    z, d = z0, derivs[0]
    for k in range(1, n + 1):
        d = d * dmap(z)
        z = fmap(z)
        if not (cmath.isfinite(z) and cmath.isfinite(d)):
            raise OrbitOverflow(k, z)
        points.append(z)
        derivs.append(d)
    return OrbitSegment(z0, tuple(points), tuple(derivs))


def conjugacy_G(mu, z):
    """Affine change of variable w = -mu z + mu/2 taking f_mu to q_{c(mu)}."""
    return -mu * z + mu / 2


def inverse_G(mu, w):
    if mu == 0:
        raise DomainError("inverse conjugacy undefined at mu = 0")
    return 0.5 - w / mu


def param_map(mu):
    """c = mu (2 - mu) / 4."""
    return mu * (2 - mu) / 4


def mu_of_c(c):
    """The branch mu = 1 + sqrt(1 - 4c); the mirror branch 1 - sqrt(...) is not exposed."""
    return 1 + csqrt(1 - 4 * c)


def is_real_number(x) -> bool:
    if isinstance(x, complex):
        return x.imag == 0
    return isinstance(x, Number)


def argmax_tie(values: np.ndarray, points: np.ndarray, rel: float = 1e-12) -> int:
    """Index of the largest value; near-ties (``rel`` relative) go to the point
    with the largest real part, then the largest imaginary part.

    Both families are symmetric (z -> -z, z -> 1 - z), so suprema are attained
    in pairs and a first-index rule would pick an arbitrary one.
    """
    m = values.max()
    cand = np.flatnonzero(values >= m - rel * abs(m))
    if len(cand) == 1:
        return int(cand[0])
    sub = np.asarray(points, dtype=np.complex128)[cand]
    return int(cand[np.lexsort((sub.imag, sub.real))[-1]])
