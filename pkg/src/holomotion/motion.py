"""Derivatives of the holomorphic motion of Julia points, and checks of their bounds.

Two series do the work:

* quadratic family: dz/dc = -sum_{n>=1} 1 / Dq_c^n(z)
* logistic family:  dz/dmu = -(1/mu) sum_{n>=1} z_n / Df_mu^n(z)

Both are evaluated by vectorised kernels over arrays of starting points. For
real c in [0, 1/4) every point of J(q_c) satisfies |Dq_c| = 2|z| >= 1 + s with
s = sqrt(1 - 4c), so after N terms the remainder is at most
1 / (s |Dq_c^N(z)|) <= (1 + s)^-N / s; those results are flagged rigorous.
Everything else uses a heuristic stopping rule and is flagged as such.

Floating-point orbits on a repelling set drift away from it. Each kernel
carries a forward-error estimate eps |D^n| sum_k |z_k| / |D^k| and stops a
point once that estimate passes ``PRECISION_LIMIT``; by then the remaining
terms are at round-off level anyway.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import report as rp
from .errors import DomainError, NonReal, PreCritical, SeriesDivergence
from .families import argmax_tie, beta, orbit, Parameter, param_map
from .julia import PointCloud
from .metric import gamma_array
from .symbolic import code_point

EPS = np.finfo(float).eps
PRECISION_LIMIT = 1e-3
HEURISTIC_RUN = 8
HEURISTIC_SAFETY = 10.0
SNAP = 1e-13
MAX_TERMS = 1_000_000

OK, PRECRITICAL, DIVERGED, FROZEN, LANDED = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    tail_estimate: float
    rigorous: bool
    converged: bool = True


@dataclass(frozen=True)
class SeriesBatch:
    """Per-point results of a vectorised series evaluation."""

    value: np.ndarray
    terms_used: np.ndarray
    tail_estimate: np.ndarray
    rigorous: np.ndarray
    converged: np.ndarray
    status: np.ndarray

    def __len__(self):
        return len(self.value)

    def result(self, i: int) -> SeriesResult:
        st = int(self.status[i])
        if st == PRECRITICAL:
            raise PreCritical(int(self.terms_used[i]))
        if st == DIVERGED:
            raise SeriesDivergence(
                f"series terms grew at step {int(self.terms_used[i])}; "
                "the orbit is not on the Julia set")
        v = self.value[i]
        return SeriesResult(v.item() if hasattr(v, "item") else v, int(self.terms_used[i]),
                            float(self.tail_estimate[i]), bool(self.rigorous[i]),
                            bool(self.converged[i]))


def _is_real(x) -> bool:
    return not isinstance(x, complex) or x.imag == 0


def rigorous_c(c) -> bool:
    return _is_real(c) and 0 <= complex(c).real < 0.25


# -- quadratic family --------------------------------------------------------

def dzdc_many(c, z0, tol: float = 1e-12, *, n_terms: int | None = None,
              max_terms: int = MAX_TERMS) -> SeriesBatch:
    """Vectorised dz/dc series at every point of ``z0``."""
    z = np.array(z0, dtype=np.complex128).ravel()
    npts = len(z)
    rig = rigorous_c(c)
    cc = complex(c).real if rig else complex(c)
    s = math.sqrt(1 - 4 * cc) if rig else None
    limit = n_terms if n_terms is not None else max_terms

    D = np.ones(npts, dtype=np.complex128)
    total = np.zeros(npts, dtype=np.complex128)
    S = np.abs(z).astype(float)
    used = np.zeros(npts, dtype=np.int64)
    tail = np.full(npts, np.inf)
    status = np.zeros(npts, dtype=np.int8)
    done = np.zeros(npts, dtype=bool)
    prev_abs = np.full(npts, np.inf)
    recent = np.full((npts, HEURISTIC_RUN + 1), np.inf)

    with np.errstate(all="ignore"):
        for n in range(1, limit + 1):
            act = ~done
            if not act.any():
                break
            Dn = np.where(act, D * (2 * z), D)
            zero = act & (Dn == 0)
            if zero.any():
                status[zero] = PRECRITICAL
                used[zero] = n
                done |= zero
                act &= ~zero
            zn = np.where(act, z * z + cc, z)
            term = np.where(act, 1.0 / np.where(act, Dn, 1.0), 0.0)
            aterm = np.abs(term)
            total += term
            used[act] = n
            D, z = Dn, zn
            aD = np.abs(D)
            S = np.where(act, S + np.abs(z) / aD, S)
            bad = act & ~(np.isfinite(term) & np.isfinite(z))
            if rig:
                grew = act & (aterm > prev_abs * (1 + 1e-9))
                bad |= grew
            if bad.any():
                status[bad] = DIVERGED
                done |= bad
                act &= ~bad
            prev_abs = np.where(act, aterm, prev_abs)
            if rig:
                tail = np.where(act, 1.0 / (s * aD), tail)
                fin = act & (tail <= tol) if n_terms is None else np.zeros(npts, bool)
            else:
                recent[:, :-1] = recent[:, 1:]
                recent[:, -1] = np.where(act, aterm, recent[:, -1])
                rho = np.max(recent[:, 1:] / recent[:, :-1], axis=1)
                small = np.all(recent[:, 1:] < tol, axis=1)
                htail = aterm * rho / (1 - rho) * HEURISTIC_SAFETY
                ok = act & (n >= HEURISTIC_RUN) & (rho < 1)
                tail = np.where(ok, htail, tail)
                fin = ok & small if n_terms is None else np.zeros(npts, bool)
            lost = act & (EPS * aD * S > PRECISION_LIMIT) & ~fin
            if lost.any():
                status[lost] = FROZEN
            done |= fin | lost

    value = -total
    if npts:
        value[status == PRECRITICAL] = np.nan
    converged = (tail <= tol) & (status != PRECRITICAL) & (status != DIVERGED)
    return SeriesBatch(value, used, tail, np.full(npts, rig) & (status != DIVERGED),
                       converged, status)


def dzdc_series(c, z, tol: float = 1e-12, *, n_terms: int | None = None,
                max_terms: int = MAX_TERMS) -> SeriesResult:
    """dz/dc at a point z of J(q_c); the caller vouches that z is in the Julia set.

    ``n_terms`` forces a fixed truncation (useful for studying the tail bound);
    otherwise terms are added until the tail estimate drops below ``tol``.
    """
    batch = dzdc_many(c, np.array([z]), tol, n_terms=n_terms, max_terms=max_terms)
    return batch.result(0)


# -- logistic family ---------------------------------------------------------

def _check_mu_real(mu, z=None):
    if not _is_real(mu):
        raise NonReal(f"mu must be real, got {mu!r}")
    mu = complex(mu).real
    if mu < 4:
        raise DomainError(f"dz/dmu series needs mu >= 4, got {mu}")
    return mu


def dzdmu_many(mu, z0, tol: float = 1e-12, *, prefixed_steps=None,
               max_terms: int = 2000) -> SeriesBatch:
    """Vectorised dz/dmu series on real points of J(f_mu), mu >= 4.

    Orbits that reach 0 give a finite sum. A landing is recognised when an
    iterate comes within ``SNAP`` of 1 (it is then set to 1, whose image is
    exactly 0) or of 0; ``prefixed_steps`` (scalar or per-point array, the
    first N with z_N = 0) overrides detection for deep preimages whose
    computed orbits drift too far to be snapped.
    """
    mu = _check_mu_real(mu)
    z = np.array(z0, dtype=float).ravel()
    npts = len(z)
    if npts and (z.min() < -1e-12 or z.max() > 1 + 1e-12):
        raise DomainError("points must lie in [0, 1]")
    A = math.sqrt(mu)
    if prefixed_steps is None:
        landing = np.full(npts, -1, dtype=np.int64)
    else:
        landing = np.broadcast_to(np.asarray(prefixed_steps, dtype=np.int64), (npts,)).copy()

    D = np.ones(npts)
    total = np.zeros(npts)
    S = np.abs(z)
    used = np.zeros(npts, dtype=np.int64)
    tail = np.full(npts, np.inf)
    status = np.zeros(npts, dtype=np.int8)
    run = np.zeros(npts, dtype=np.int64)
    recent_b = np.zeros((npts, HEURISTIC_RUN))
    exact = np.zeros(npts, dtype=bool)

    landed_now = (z == 0) | (np.abs(z) <= SNAP) | (landing == 0)
    exact |= landed_now
    status[landed_now] = LANDED
    tail[landed_now] = 0.0
    done = landed_now.copy()

    with np.errstate(all="ignore"):
        for n in range(1, max_terms + 1):
            act = ~done
            if not act.any():
                break
            Dn = np.where(act, D * mu * (1 - 2 * z), D)
            zero = act & (Dn == 0)
            if zero.any():
                status[zero] = PRECRITICAL
                used[zero] = n
                done |= zero
                act &= ~zero
            zn = np.where(act, mu * z * (1 - z), z)
            near1 = act & (np.abs(zn - 1) <= SNAP)
            zn = np.where(near1, 1.0, zn)
            land = act & ((zn == 0) | (np.abs(zn) <= SNAP) | (landing == n))
            zn = np.where(land, 0.0, zn)
            term = np.where(act, zn / np.where(act, Dn, 1.0), 0.0)
            total += term
            used[act] = n
            D, z = Dn, zn
            aD = np.abs(D)
            if land.any():
                status[land] = LANDED
                tail[land] = 0.0
                exact |= land
                done |= land
                act &= ~land
            S = np.where(act, S + np.abs(z) / aD, S)
            bad = act & ~np.isfinite(term)
            if bad.any():
                status[bad] = DIVERGED
                done |= bad
                act &= ~bad
            b = np.abs(z) * gamma_array(z) / (2 * mu * A**n)
            recent_b[:, :-1] = recent_b[:, 1:]
            recent_b[:, -1] = np.where(act, b, recent_b[:, -1])
            run = np.where(act & (b < tol), run + 1, 0)
            btail = np.max(recent_b, axis=1) / (A - 1) * HEURISTIC_SAFETY
            fin = act & (run >= HEURISTIC_RUN)
            outside = (z < -1e-9) | (z > 1 + 1e-9)
            lost = act & ~fin & ((EPS * aD * S > PRECISION_LIMIT) | outside)
            tail = np.where(fin | lost, np.where(fin, recent_b[:, -1] / (A - 1) * HEURISTIC_SAFETY,
                                                 btail), tail)
            status[lost] = FROZEN
            done |= fin | lost

    value = -total / mu
    if npts:
        value[status == PRECRITICAL] = np.nan
    converged = exact | ((tail <= tol) & (status != PRECRITICAL) & (status != DIVERGED))
    return SeriesBatch(value, used, tail, exact.copy(), converged, status)


def dzdmu_series(mu, z, tol: float = 1e-12, *, prefixed_steps: int | None = None,
                 max_terms: int = 2000) -> SeriesResult:
    """dz/dmu at a real point z of J(f_mu), mu >= 4."""
    _check_mu_real(mu)
    if not _is_real(z):
        raise NonReal(f"z must be real, got {z!r}")
    batch = dzdmu_many(mu, np.array([complex(z).real]), tol,
                       prefixed_steps=prefixed_steps, max_terms=max_terms)
    return batch.result(0)


# -- transport across the affine conjugacy -----------------------------------

def _check_transport_mu(mu):
    if mu == 0 or mu == 1:
        raise DomainError("transport undefined at mu in {0, 1}")


def transport_dwdc(mu, z, dzdmu):
    """dw/dc for w = G(z, mu), c = mu (2 - mu) / 4, from dz/dmu."""
    _check_transport_mu(mu)
    return (-mu * dzdmu - z + 0.5) * 2 / (1 - mu)


def transport_dzdmu(mu, w, dwdc):
    """Inverse of :func:`transport_dwdc`: dz/dmu from dw/dc at w."""
    _check_transport_mu(mu)
    return (mu - 1) / (2 * mu) * dwdc + w / mu**2


# -- branch tracking ---------------------------------------------------------

def parse_word(word) -> tuple[int, ...]:
    """Normalise a branch word to a tuple of +1 / -1.

    Accepts strings such as ``"-+"`` or ``"-,+"`` (the Unicode minus is fine
    too) or any iterable of +1/-1 or "+"/"-".
    """
    out = []
    items = word if not isinstance(word, str) else [ch for ch in word if ch not in ", "]
    for ch in items:
        if ch in ("+", 1, "1"):
            out.append(1)
        elif ch in ("-", "−", -1, "-1"):
            out.append(-1)
        else:
            raise DomainError(f"bad branch symbol {ch!r}")
    return tuple(out)


def _principal(z: complex) -> complex:
    r = cmath.sqrt(complex(z.real + 0.0, z.imag + 0.0))
    return complex(r.real + 0.0, r.imag + 0.0)


def track_prefixed(c, word) -> complex:
    """The point z(c) with q_c^N(z) = beta(c) reached by pulling beta back along ``word``.

    The first symbol is applied first: "+" takes the principal root of z - c
    and "-" its negative. Zero imaginary parts are kept as +0, so on the cut
    (z - c a negative real) the principal root lies in the upper half-plane,
    which keeps z(c) continuous along [0, 1/4].
    """
    z = complex(beta(c))
    for sgn in parse_word(word):
        r = _principal(z - c)
        z = r if sgn > 0 else complex(-r.real + 0.0, -r.imag + 0.0)
    return z


def track_prefixed_logistic(mu, word) -> float:
    """Preimage of 1 (hence of the fixed point 0) with itinerary ``word``.

    The returned z satisfies f^len(word)(z) = 1 and f^(len(word)+1)(z) = 0.
    """
    return code_point(mu, word, seed=1.0)


def central_difference(fn, x, h: float = 1e-5):
    return (fn(x + h) - fn(x - h)) / (2 * h)


# -- verification ------------------------------------------------------------

def _real_c(c, lo=0.0, hi=0.25, closed=False):
    if not _is_real(c):
        raise DomainError("c must be real")
    c = complex(c).real
    if not (lo <= c and (c <= hi if closed else c < hi)):
        raise DomainError(f"c={c} outside [{lo}, {hi}{']' if closed else ')'}")
    return c


def verify_thm12(c, cloud: PointCloud | np.ndarray, tol: float = 1e-9) -> rp.Report:
    """Check |dz/dc| <= 1 / (2 sqrt(1/4 - c)) over a cloud, with equality at beta."""
    c = _real_c(c)
    pts = cloud.points if isinstance(cloud, PointCloud) else np.asarray(cloud)
    bound = 1 / (2 * math.sqrt(0.25 - c))
    series_tol = tol * bound * 1e-3
    batch = dzdc_many(c, pts, series_tol)
    good = (batch.status != PRECRITICAL) & (batch.status != DIVERGED)
    ratio = np.where(good, np.abs(batch.value) / bound, -np.inf)
    i = argmax_tie(ratio, pts)
    b = complex(beta(c))
    at_beta = dzdc_series(c, b, series_tol)
    ratio_beta = abs(at_beta.value) / bound
    max_ratio = float(ratio[i])
    ok_sup = max_ratio <= 1 + tol
    ok_beta = abs(ratio_beta - 1) <= tol
    violation = None
    if not ok_sup:
        violation = f"|dz/dc| 2 sqrt(1/4-c) = {max_ratio!r} > 1 + {tol} at {complex(pts[i])}"
    elif not ok_beta:
        violation = f"ratio at beta {ratio_beta!r} differs from 1 by more than {tol}"
    return rp.Report(
        claim="thm12",
        parameters={"c": c, "points": len(pts)},
        max_ratio=max_ratio,
        witness_point=complex(pts[i]),
        verdict=rp.PASS if ok_sup and ok_beta else rp.FAIL,
        tolerances={"tol": tol, "series_tol": series_tol},
        details={
            "bound": bound,
            "ratio_at_beta": ratio_beta,
            "witness_distance_to_beta": abs(complex(pts[i]) - b),
            "excluded_precritical": int(np.sum(batch.status == PRECRITICAL)),
            "diverged": int(np.sum(batch.status == DIVERGED)),
            "max_tail": float(np.max(batch.tail_estimate[good])) if good.any() else None,
        },
        violation=violation,
    )


def thm13_constant(mu, cloud: PointCloud | np.ndarray, tol: float = 1e-12,
                   max_rel_tail: float = 0.01) -> dict:
    """sup |dz/dmu| sqrt(mu - 4) over a real cloud, skipping points with a loose tail."""
    mu = _check_mu_real(mu)
    pts = cloud.points if isinstance(cloud, PointCloud) else np.asarray(cloud)
    x = np.real(pts)
    batch = dzdmu_many(mu, x, tol)
    good = (batch.status != PRECRITICAL) & (batch.status != DIVERGED)
    loose = good & ~batch.rigorous & (batch.tail_estimate > max_rel_tail * np.abs(batch.value))
    use = good & ~loose
    scaled = np.where(use, np.abs(batch.value) * math.sqrt(mu - 4), -np.inf)
    i = int(np.argmax(scaled))
    return {
        "mu": mu,
        "constant": float(scaled[i]),
        "witness": float(x[i]),
        "dzdmu_at_witness": float(batch.value[i]),
        "points": len(x),
        "excluded_loose_tail": int(loose.sum()),
        "excluded_failed": int((~good).sum()),
    }


def verify_thm13(mu, cloud: PointCloud | np.ndarray, tol: float = 1e-12) -> rp.Report:
    """Empirical constant of |dz/dmu| = O(1/sqrt(mu - 4)) at one mu; PASS iff finite."""
    info = thm13_constant(mu, cloud, tol)
    finite = math.isfinite(info["constant"]) and info["constant"] > -math.inf
    return rp.Report(
        claim="thm13",
        parameters={"mu": info["mu"], "points": info["points"]},
        max_ratio=info["constant"],
        witness_point=complex(info["witness"]),
        verdict=rp.PASS if finite else rp.FAIL,
        tolerances={"series_tol": tol, "max_rel_tail": 0.01},
        details=info,
        violation=None if finite else "no finite constant (all points excluded or divergent)",
    )


def verify_thm13_grid(mus, depth: int = 14, factor: float = 4.0, tol: float = 1e-12) -> rp.Report:
    """The scaled sup must stay within ``factor`` across the mu grid."""
    from .julia import cantor_sample_real

    rows = [thm13_constant(mu, cantor_sample_real(mu, depth), tol) for mu in mus]
    consts = [r["constant"] for r in rows]
    finite = all(math.isfinite(k) and k > 0 for k in consts)
    spread = max(consts) / min(consts) if finite else math.inf
    ok = finite and spread < factor
    worst = max(range(len(rows)), key=lambda j: consts[j])
    return rp.Report(
        claim="thm13",
        parameters={"mu": list(mus), "depth": depth},
        max_ratio=max(consts),
        witness_point=complex(rows[worst]["witness"]),
        verdict=rp.PASS if ok else rp.FAIL,
        tolerances={"factor": factor, "series_tol": tol, "max_rel_tail": 0.01},
        details={"per_mu": rows, "spread": spread, "empirical_constant": max(consts)},
        violation=None if ok else f"scaled sup varies by {spread} >= {factor}",
    )


def verify_holder_14(word, c_grid, tol: float = 1e-9) -> rp.Report:
    """|z(c) - z(1/4)| <= sqrt(1/4 - c) for the point tracked along ``word``."""
    z14 = track_prefixed(0.25, word)
    rows = []
    for c in c_grid:
        c = _real_c(c)
        d = abs(track_prefixed(c, word) - z14)
        bound = math.sqrt(0.25 - c)
        rows.append({"c": c, "distance": d, "bound": bound,
                     "ratio": d / bound if bound > 0 else math.inf})
    worst = max(rows, key=lambda r: r["distance"] - r["bound"]) if rows else None
    ok = all(r["distance"] <= r["bound"] + tol for r in rows)
    w = "".join("+" if s > 0 else "-" for s in parse_word(word))
    return rp.Report(
        claim="holder14",
        parameters={"word": w, "c_grid": [r["c"] for r in rows]},
        max_ratio=max((r["ratio"] for r in rows), default=None),
        witness_point=track_prefixed(worst["c"], word) if worst else None,
        verdict=rp.PASS if ok else rp.FAIL,
        tolerances={"tol": tol},
        details={"rows": rows, "z_quarter": z14},
        violation=None if ok else
        f"|z(c)-z(1/4)| = {worst['distance']!r} > sqrt(1/4-c) = {worst['bound']!r} at c={worst['c']}",
    )


def all_words(max_depth: int):
    for n in range(max_depth + 1):
        for w in itertools.product((1, -1), repeat=n):
            yield w


def verify_bounded_orbit_prop(mu, z, delta: float, tol: float = 1e-12) -> rp.Report:
    """|dz/dmu| <= 1/(8 delta) when the whole orbit stays in [delta, 1 - delta]."""
    mu = _check_mu_real(mu)
    res = dzdmu_series(mu, z, tol * 1e-3)
    seg = orbit(Parameter.logistic(mu), float(z), res.terms_used)
    slack = [max(1e-12, 4 * EPS * abs(d)) for d in seg.derivs]
    outside = [n for n, (p, sl) in enumerate(zip(seg.points, slack))
               if not (delta - sl <= p <= 1 - delta + sl)]
    bound = 1 / (8 * delta)
    params = {"mu": mu, "z": z, "delta": delta}
    if outside:
        n = outside[0]
        return rp.Report("prop_delta", params, None, complex(seg.points[n]), rp.INCONCLUSIVE,
                         {"tol": tol},
                         {"reason": f"precondition fails: z_{n} = {seg.points[n]!r} leaves "
                                    f"[{delta}, {1 - delta}]", "horizon": res.terms_used})
    val = abs(res.value)
    ok = val <= bound + tol
    return rp.Report(
        claim="prop_delta",
        parameters=params,
        max_ratio=val / bound,
        witness_point=complex(z),
        verdict=rp.PASS if ok else rp.FAIL,
        tolerances={"tol": tol},
        details={"dzdmu": res.value, "bound": bound, "horizon": res.terms_used,
                 "tail_estimate": res.tail_estimate},
        violation=None if ok else f"|dz/dmu| = {val!r} > 1/(8 delta) = {bound!r}",
    )


REMARK22_BOUND = (2 + math.sqrt(2)) / 2


def transported_dzdmu(mu, word, tol: float = 1e-14) -> complex:
    """dz/dmu on the logistic side for the q-side point tracked along ``word``, 1 < mu < 2."""
    c = param_map(mu)
    w = track_prefixed(c, word)
    dwdc = dzdc_series(c, w, tol).value
    return transport_dzdmu(mu, w, dwdc)


def preimages_of_one(mu) -> tuple[float, float]:
    """The two real solutions of f_mu(z) = 1 for mu >= 4."""
    r = math.sqrt(1 - 4 / mu)
    left = 2 / (mu * (1 + r))
    return left, 1 - left


def fixed_point_logistic(mu) -> float:
    return 1 - 1 / mu
