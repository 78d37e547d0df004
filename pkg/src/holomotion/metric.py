"""The singular metric |dz| / sqrt(|z| |z - 1|) and expansion of f_mu measured in it.

For real mu >= 4 every step of an orbit inside (0, 1) stretches this metric by
at least A = sqrt(mu); that is the whole mechanism behind the uniform decay of
the dz/dmu series. The Koenigs coordinate at the repelling fixed point 0 is
built here too, as the limit mu^k g^k(z) of the inverse branch g fixing 0.
"""

from __future__ import annotations

import math

import numpy as np

from . import report as rp
from .errors import BoundViolation, DomainError, Singular
from .families import OrbitSegment

SINGULAR_GUARD = 1e-14


def gamma(z) -> float:
    """Density 1 / sqrt(|z| |z - 1|) of the singular metric."""
    a, b = abs(z), abs(z - 1)
    if a < SINGULAR_GUARD or b < SINGULAR_GUARD:
        raise Singular(f"gamma is singular at z={z!r}")
    return 1.0 / math.sqrt(a * b)


def gamma_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z)
    with np.errstate(divide="ignore"):
        return 1.0 / np.sqrt(np.abs(z) * np.abs(z - 1))


def _real(x, name):
    if isinstance(x, complex):
        if x.imag != 0:
            raise DomainError(f"{name} must be real")
        x = x.real
    return float(x)


def expansion_factor(mu, z) -> float:
    """gamma(f(z)) |Df(z)| / gamma(z) for real z in (0, 1) with f(z) in (0, 1).

    Evaluated as 2 sqrt(mu/4 - f) / sqrt(1 - f), with both radicands written
    around the vertex, mu/4 - f = mu (z - 1/2)^2 and
    1 - f = (1 - mu/4) + mu (z - 1/2)^2, so nothing cancels near z = 1/2.
    """
    mu = _real(mu, "mu")
    z = _real(z, "z")
    if mu < 4:
        raise DomainError("expansion estimate needs mu >= 4")
    fz = mu * z * (1 - z)
    for v in (z, fz):
        if not (SINGULAR_GUARD <= v <= 1 - SINGULAR_GUARD):
            raise Singular(f"orbit point {v} not admissible (needs (0, 1) away from 0 and 1)")
    u = z - 0.5
    top = mu * u * u
    bottom = (1 - mu / 4) + top
    factor = 2 * math.sqrt(top) / math.sqrt(bottom)
    if factor < math.sqrt(mu) - 1e-12:
        raise BoundViolation(f"expansion {factor} below sqrt(mu) at z={z}")
    return factor


def expansion_factor_array(mu: float, z: np.ndarray) -> np.ndarray:
    """Vectorised :func:`expansion_factor` without admissibility checks."""
    u = np.asarray(z, dtype=float) - 0.5
    top = mu * u * u
    return 2 * np.sqrt(top) / np.sqrt((1 - mu / 4) + top)


def inv_deriv_bound(mu, orbit: OrbitSegment, *, check: bool = True) -> list[float]:
    """Bounds gamma(z_n) / (2 A^n) on 1/|Df^n(z)| along an orbit, A = sqrt(mu).

    With ``check`` set, every inequality is verified (absolute slack 1e-12) and
    BoundViolation names the first index that fails.
    """
    mu = _real(mu, "mu")
    if mu < 4:
        raise DomainError("needs mu >= 4")
    a = math.sqrt(mu)
    bounds = []
    for n, (zn, dn) in enumerate(zip(orbit.points, orbit.derivs)):
        zr = _real(zn, "orbit point")
        if not (0 < zr < 1):
            raise Singular(f"orbit point z_{n}={zr} outside (0, 1)")
        b = gamma(zr) / (2 * a**n)
        if check and 1 / abs(dn) > b + 1e-12:
            raise BoundViolation(f"1/|Df^{n}| = {1 / abs(dn)} exceeds {b}")
        bounds.append(b)
    return bounds


def g0(mu, z):
    """Inverse branch of f_mu fixing 0: (1 - sqrt(1 - 4z/mu)) / 2, cancellation-free."""
    return 2 * z / (mu * (1 + math.sqrt(1 - 4 * z / mu)))


def koenigs(mu, z, iters: int = 60) -> float:
    """Koenigs coordinate phi with phi(f(z)) = mu phi(z) and phi'(0) = 1.

    Computed as mu^k g^k(z); stops early once successive values agree to 1e-14
    relative. ``z`` must lie in [0, mu/4], the domain of the real branch g.
    """
    mu = _real(mu, "mu")
    z = _real(z, "z")
    if mu < 4:
        raise DomainError("koenigs coordinate implemented for mu >= 4")
    if not (0 <= z <= mu / 4):
        raise DomainError(f"z={z} outside the branch domain [0, mu/4]")
    if z == 0:
        return 0.0
    w, scale, prev = z, 1.0, z
    for _ in range(iters):
        w = g0(mu, w)
        scale *= mu
        val = scale * w
        if abs(val - prev) <= 1e-14 * abs(val):
            return val
        prev = val
    return prev


def koenigs_residual(mu, z, iters: int = 60) -> float:
    """|phi(f(z)) - mu phi(z)|; meaningful for z in [0, 1/2], where g(f(z)) = z."""
    fz = mu * z * (1 - z)
    return abs(koenigs(mu, fz, iters) - mu * koenigs(mu, z, iters))


def admissible(mu: float, z: np.ndarray) -> np.ndarray:
    """Mask of real points where z and f(z) both sit in (0, 1) away from the poles."""
    x = np.real(np.asarray(z))
    fx = mu * x * (1 - x)
    lo, hi = SINGULAR_GUARD, 1 - SINGULAR_GUARD
    return (x >= lo) & (x <= hi) & (fx >= lo) & (fx <= hi)


def verify_expansion(mu, points, exact_tol: float = 1e-9) -> rp.Report:
    """expansion_factor >= sqrt(mu) - 1e-12 on every admissible point; at mu = 4 also == 2."""
    mu = _real(mu, "mu")
    if mu < 4:
        raise DomainError("expansion estimate needs mu >= 4")
    x = np.real(np.asarray(points))
    x = x[admissible(mu, x)]
    if len(x) == 0:
        raise DomainError("no admissible points")
    fac = expansion_factor_array(mu, x)
    a = math.sqrt(mu)
    i = int(np.argmin(fac))
    ok = bool(fac[i] >= a - 1e-12)
    exact_err = float(np.max(np.abs(fac - 2))) if mu == 4 else None
    if ok and exact_err is not None and exact_err > exact_tol:
        ok = False
        violation = f"at mu=4 the factor deviates from 2 by {exact_err!r}"
    else:
        violation = None if ok else f"factor {fac[i]!r} < sqrt(mu) = {a!r} at z={x[i]!r}"
    return rp.Report(
        claim="expansion",
        parameters={"mu": mu, "points": len(x)},
        max_ratio=float(a / fac[i]),
        witness_point=complex(x[i]),
        verdict=rp.PASS if ok else rp.FAIL,
        tolerances={"slack": 1e-12, "exact_tol": exact_tol},
        details={"min_factor": float(fac[i]), "sqrt_mu": a, "deviation_from_2": exact_err},
        violation=violation,
    )


def verify_koenigs(mu, zs, tol: float = 1e-8, residual_tol: float = 1e-10,
                   iters: int = 60) -> rp.Report:
    """At mu = 4 compare against (arcsin sqrt z)^2; always check phi(f(z)) = mu phi(z)."""
    mu = _real(mu, "mu")
    rows = []
    for z in zs:
        z = _real(z, "z")
        if not 0 <= z <= 0.5:
            raise DomainError(f"z={z} outside [0, 1/2]")
        phi = koenigs(mu, z, iters)
        row = {"z": z, "phi": phi, "residual": koenigs_residual(mu, z, iters)}
        if mu == 4:
            row["closed_form_error"] = abs(phi - math.asin(math.sqrt(z)) ** 2)
        rows.append(row)
    worst_res = max(rows, key=lambda r: r["residual"])
    worst_cf = max(rows, key=lambda r: r.get("closed_form_error", 0.0))
    ok_res = worst_res["residual"] <= residual_tol
    ok_cf = worst_cf.get("closed_form_error", 0.0) <= tol
    violation = None
    if not ok_cf:
        violation = f"|phi - asin(sqrt z)^2| = {worst_cf['closed_form_error']!r} > {tol} at z={worst_cf['z']}"
    elif not ok_res:
        violation = f"|phi(f(z)) - mu phi(z)| = {worst_res['residual']!r} > {residual_tol} at z={worst_res['z']}"
    witness = worst_cf if not ok_cf else worst_res
    return rp.Report(
        claim="koenigs",
        parameters={"mu": mu, "z": [r["z"] for r in rows], "iters": iters},
        max_ratio=worst_res["residual"] / residual_tol if residual_tol > 0 else None,
        witness_point=complex(witness["z"]),
        verdict=rp.PASS if ok_res and ok_cf else rp.FAIL,
        tolerances={"tol": tol, "residual_tol": residual_tol},
        details={"rows": rows},
        violation=violation,
    )
