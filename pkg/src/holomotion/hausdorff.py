"""Hausdorff distance between finite point clouds, and the two distance claims.

The directed distances use the exact grid nearest-neighbour search in
:mod:`holomotion.grid`; :func:`hausdorff_brute` is the O(|A||B|) reference and
returns bit-identical numbers.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from . import grid
from . import report as rp
from .errors import DomainError
from .families import Parameter, argmax_tie, beta, inverse_G, param_map
from .julia import PointCloud, sample_inverse_iteration


@dataclass(frozen=True)
class DistanceReport:
    directed_ab: float
    directed_ba: float
    hausdorff: float
    witness_a: complex
    witness_b: complex
    sampling_error: float


def _points(x) -> tuple[np.ndarray, float]:
    if isinstance(x, PointCloud):
        return np.asarray(x.points, dtype=np.complex128), x.covering_radius
    pts = np.asarray(x, dtype=np.complex128).ravel()
    return pts, 0.0


def _assemble(a, b, d2_ab, j_ab, d2_ba, j_ba, sampling_error) -> DistanceReport:
    ia = argmax_tie(d2_ab, a)
    ib = argmax_tie(d2_ba, b)
    dab = math.sqrt(d2_ab[ia])
    dba = math.sqrt(d2_ba[ib])
    # ties go to the A -> B side, so swapping the inputs swaps the witnesses
    if dab >= dba:
        wa, wb = complex(a[ia]), complex(b[j_ab[ia]])
    else:
        wa, wb = complex(a[j_ba[ib]]), complex(b[ib])
    return DistanceReport(dab, dba, max(dab, dba), wa, wb, sampling_error)


def _cell_size(a, b) -> float:
    big = a if len(a) >= len(b) else b
    return grid.median_spacing(big) if len(big) > 1 else 1.0


def nearest_distances(source, target) -> tuple[np.ndarray, np.ndarray]:
    """Distance from each source point to the target cloud, and the nearest index."""
    s, _ = _points(source)
    t, _ = _points(target)
    d2, j = grid.nearest(grid.build(t, _cell_size(s, t)), s)
    return np.sqrt(d2), j


def hausdorff_distance(a, b) -> DistanceReport:
    """Exact Hausdorff distance between two finite clouds (PointCloud or array-like)."""
    pa, ra = _points(a)
    pb, rb = _points(b)
    if len(pa) == 0 or len(pb) == 0:
        raise DomainError("Hausdorff distance of an empty cloud")
    h = _cell_size(pa, pb)
    d2_ab, j_ab = grid.nearest(grid.build(pb, h), pa)
    d2_ba, j_ba = grid.nearest(grid.build(pa, h), pb)
    return _assemble(pa, pb, d2_ab, j_ab, d2_ba, j_ba, ra + rb)


def hausdorff_brute(a, b) -> DistanceReport:
    pa, ra = _points(a)
    pb, rb = _points(b)
    if len(pa) == 0 or len(pb) == 0:
        raise DomainError("Hausdorff distance of an empty cloud")
    d2_ab, j_ab = grid.brute_nearest(pb, pa)
    d2_ba, j_ba = grid.brute_nearest(pa, pb)
    return _assemble(pa, pb, d2_ab, j_ab, d2_ba, j_ba, ra + rb)


def nearest_csv(source, target) -> str:
    """Per-point nearest distances as CSV ``re,im,distance`` for plotting."""
    s, _ = _points(source)
    d, _ = nearest_distances(s, target)
    buf = io.StringIO()
    buf.write("re,im,distance\n")
    for z, v in zip(s, d):
        buf.write(f"{z.real:.15g},{z.imag:.15g},{v:.15g}\n")
    return buf.getvalue()


def _verdict(error, tol, sampling_error, signal):
    if sampling_error >= signal:
        return rp.INCONCLUSIVE
    return rp.PASS if error <= tol + sampling_error else rp.FAIL


def verify_corollary(c, depth: int = 16, tol: float = 0.01, *,
                     clouds: tuple[PointCloud, PointCloud] | None = None) -> rp.Report:
    """d_H(J(q_c), J(q_{1/4})) = sqrt(1/4 - c), attained between beta(c) and 1/2.

    INCONCLUSIVE when the sampling error is at least the distance being measured.
    """
    if isinstance(c, complex):
        c = c.real
    c = float(c)
    if not 0 <= c < 0.25:
        raise DomainError(f"c={c} outside [0, 1/4)")
    if clouds is None:
        clouds = sample_inverse_iteration(c, depth), sample_inverse_iteration(0.25, depth)
    jc, jq = clouds
    rep = hausdorff_distance(jc, jq)
    expected = math.sqrt(0.25 - c)
    err = abs(rep.hausdorff - expected)
    b = complex(beta(c))
    wit_c = abs(rep.witness_a - b)
    wit_q = abs(rep.witness_b - 0.5)
    verdict = _verdict(err, tol, rep.sampling_error, expected)
    witness_ok = wit_c <= tol and wit_q <= tol
    violation = None
    if verdict == rp.FAIL:
        violation = f"|d_H - sqrt(1/4-c)| = {err!r} > tol + sampling_error = {tol + rep.sampling_error!r}"
    elif verdict == rp.PASS and not witness_ok:
        verdict = rp.FAIL
        violation = (f"witnesses {rep.witness_a} / {rep.witness_b} not within {tol} "
                     f"of beta(c) = {b} and 1/2")
    return rp.Report(
        claim="corollary",
        parameters={"c": c, "depth": depth},
        max_ratio=rep.hausdorff / expected,
        witness_point=rep.witness_a,
        verdict=verdict,
        tolerances={"tol": tol, "sampling_error": rep.sampling_error},
        details={
            "hausdorff": rep.hausdorff,
            "expected": expected,
            "abs_error": err,
            "directed_c_to_quarter": rep.directed_ab,
            "directed_quarter_to_c": rep.directed_ba,
            "witness_c": rep.witness_a,
            "witness_quarter": rep.witness_b,
            "witness_distance_to_beta": wit_c,
            "witness_distance_to_half": wit_q,
        },
        violation=violation,
    )


from .motion import REMARK22_BOUND  # noqa: E402


def logistic_cloud(mu, depth: int) -> PointCloud:
    """Sample of J(f_mu) as the preimage under G(., mu) of a sample of J(q_{c(mu)})."""
    c = param_map(mu)
    q = sample_inverse_iteration(c, depth)
    return q.mapped(lambda w: inverse_G(mu, w), 1 / abs(mu), Parameter.logistic(mu))


def verify_remark22(mu, depth: int = 14, tol: float = 0.01) -> rp.Report:
    """d_H(J(f_mu), J(f_1)) <= (2 + sqrt 2)(mu - 1)/2 for 1 < mu < 2."""
    mu = float(mu.real if isinstance(mu, complex) else mu)
    if not 1 < mu < 2:
        raise DomainError(f"mu={mu} outside (1, 2)")
    rep = hausdorff_distance(logistic_cloud(mu, depth), logistic_cloud(1.0, depth))
    bound = REMARK22_BOUND * (mu - 1)
    ok = rep.hausdorff <= bound + tol + rep.sampling_error
    return rp.Report(
        claim="remark22",
        parameters={"mu": mu, "depth": depth},
        max_ratio=rep.hausdorff / bound,
        witness_point=rep.witness_a,
        verdict=rp.PASS if ok else rp.FAIL,
        tolerances={"tol": tol, "sampling_error": rep.sampling_error},
        details={"hausdorff": rep.hausdorff, "bound": bound,
                 "witness_mu": rep.witness_a, "witness_one": rep.witness_b},
        violation=None if ok else
        f"d_H = {rep.hausdorff!r} > bound + tol + sampling_error = {bound + tol + rep.sampling_error!r}",
    )
