"""Acceptance matrix: fifteen criteria at their stated tolerances.

Each criterion prints exactly one ``ACCEPTANCE nn PASS|FAIL  detail`` line.
Run under pytest, or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import math
import subprocess
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from holomotion import hausdorff, julia, metric, motion, symbolic
from holomotion.families import Parameter, beta, orbit

C_GRID = [0, 0.1, 0.2, 0.24, 0.2499]


def c01_sharpness_quadratic():
    worst = 0.0
    for c in C_GRID:
        exact = -1 / (2 * math.sqrt(0.25 - c))
        v = motion.dzdc_series(c, beta(c)).value
        worst = max(worst, abs(v - exact) / abs(exact))
    return worst <= 1e-10, f"max relative error {worst:.3g} (tol 1e-10)"


def c02_velocity_bound_on_clouds():
    worst, far = 0.0, 0.0
    for c in C_GRID:
        rep = motion.verify_thm12(c, julia.sample_inverse_iteration(c, 12), tol=1e-9)
        worst = max(worst, rep.max_ratio)
        far = max(far, abs(rep.witness_point - beta(c)))
    ok = worst <= 1 + 1e-9 and far <= 1e-6
    return ok, f"max ratio {worst!r}, witness distance to beta {far:.3g}"


def c03_sharpness_logistic():
    worst = 0.0
    for mu in (4.1, 4.5, 5.0):
        exact = 1 / (mu * math.sqrt(mu) * math.sqrt(mu - 4))
        left, right = motion.preimages_of_one(mu)
        got = sorted([motion.dzdmu_series(mu, left).value, motion.dzdmu_series(mu, right).value])
        worst = max(worst, abs(got[0] + exact), abs(got[1] - exact))
    return worst <= 1e-10, f"max abs error {worst:.3g} (tol 1e-10)"


def c04_fixed_point():
    worst = max(abs(motion.dzdmu_series(mu, 1 - 1 / mu).value - 1 / mu**2)
                for mu in (4.5, 5.0, 6.0))
    return worst <= 1e-10, f"max abs error {worst:.3g} (tol 1e-10)"


def c05_cantor_velocity_scaling():
    rep = motion.verify_thm13_grid([4.1, 4.01, 4.001, 4.0001], depth=14, factor=4.0)
    rows = rep.details["per_mu"]
    excl = sum(r["excluded_loose_tail"] for r in rows)
    return rep.passed, (f"constant {rep.details['empirical_constant']:.5f}, "
                        f"spread {rep.details['spread']:.4f} (< 4), {excl} loose-tail points excluded")


def c06_distance_to_cauliflower():
    lines, ok = [], True
    for c in (0, 0.1, 0.1875):
        rep = hausdorff.verify_corollary(c, depth=16, tol=0.01)
        d = rep.details
        good = (d["abs_error"] <= 0.01 + rep.tolerances["sampling_error"]
                and d["witness_distance_to_beta"] <= 0.02 and d["witness_distance_to_half"] <= 0.02)
        ok &= good
        lines.append(f"c={c}: d={d['hausdorff']:.6f}")
    return ok, "; ".join(lines)


def c07_tracked_point_displacement():
    grid_c = [0, 0.1, 0.2, 0.24]
    n_words = 0
    ok = True
    for w in motion.all_words(6):
        ok &= motion.verify_holder_14(w, grid_c, tol=1e-9).passed
        n_words += 1
    rows = motion.verify_holder_14((), grid_c).details["rows"]
    eq = max(abs(r["distance"] - r["bound"]) for r in rows)
    return ok and eq <= 1e-10, f"{n_words} words pass; empty-word equality error {eq:.3g}"


def c08_bounded_orbit():
    cases = []
    for mu in (4.0, 4.5, 5.0):
        z = 1 - 1 / mu
        cases.append((mu, z, min(z, 1 - z)))
    lo, hi = (5 - math.sqrt(5)) / 8, (5 + math.sqrt(5)) / 8
    delta = min(lo, 1 - hi)
    cases += [(4.0, lo, delta), (4.0, hi, delta)]
    reps = [motion.verify_bounded_orbit_prop(*case) for case in cases]
    ok = all(r.passed for r in reps)
    worst = max(r.max_ratio for r in reps if r.max_ratio is not None)
    return ok, f"{len(reps)} cases, worst |dz/dmu| 8 delta = {worst:.4f}"


def c09_expansion():
    ok, parts = True, []
    for mu in (4.0, 4.1, 4.5):
        pts = julia.real_pullback(mu, 14).points
        n = int(metric.admissible(mu, pts).sum())
        rep = metric.verify_expansion(mu, pts, exact_tol=1e-9)
        ok &= rep.passed and n >= 10_000
        parts.append(f"mu={mu}: n={n} min={rep.details['min_factor']:.12f}")
    return ok, "; ".join(parts)


def c10_inv_deriv():
    rng = np.random.default_rng(2024)
    count = 0
    for mu in (4.1, 4.5, 5.0):
        for _ in range(334):
            word = rng.integers(0, 2, 20)
            x = symbolic.code_point(mu, word)
            metric.inv_deriv_bound(mu, orbit(Parameter.logistic(mu), x, 20), check=True)
            count += 1
    return count >= 1000, f"{count} orbits of length 20, no violation"


def c11_koenigs():
    rep = metric.verify_koenigs(4, [0.01, 0.05, 0.09], tol=1e-8, residual_tol=1e-10)
    rows = rep.details["rows"]
    cf = max(r["closed_form_error"] for r in rows)
    res = max(r["residual"] for r in rows)
    return rep.passed, f"closed-form error {cf:.3g}, residual {res:.3g}"


def c12_kneading():
    e = symbolic.kneading_E(Fraction(1, 2), 64).take(64)
    i = symbolic.itinerary_I(4, 64).take(64)
    ok = e == i == (0,) + (1,) * 63
    return ok, f"E(1/2) = I(f_4) = {symbolic.kneading_E(Fraction(1, 2))}"


def c13_logistic_distance_bound():
    ok, parts = True, []
    for mu in (1.05, 1.5, 1.9):
        rep = hausdorff.verify_remark22(mu, depth=14, tol=0.01)
        ok &= rep.passed
        parts.append(f"mu={mu}: d={rep.details['hausdorff']:.4f} <= {rep.details['bound']:.4f}")
    worst = max(abs(motion.transported_dzdmu(mu, w)) for mu in (1.05, 1.5, 1.9)
                for w in motion.all_words(6))
    ok &= worst <= motion.REMARK22_BOUND + 1e-9
    parts.append(f"max |dz/dmu| {worst:.4f}")
    return ok, "; ".join(parts)


def c14_finite_difference():
    rng = np.random.default_rng(14)
    errq = errf = 0.0
    for _ in range(20):
        n = int(rng.integers(0, 10))
        w = tuple(int(s) for s in rng.choice([1, -1], n))
        c = float(rng.uniform(0.0, 0.24))
        s = motion.dzdc_series(c, motion.track_prefixed(c, w)).value
        fd = motion.central_difference(lambda t: motion.track_prefixed(t, w), c, 1e-5)
        errq = max(errq, abs(s - fd))

        wl = tuple(int(s) for s in rng.integers(0, 2, n))
        mu = float(rng.uniform(4.05, 6.0))
        x = motion.track_prefixed_logistic(mu, wl)
        s = motion.dzdmu_series(mu, x, prefixed_steps=len(wl) + 1).value
        fd = motion.central_difference(lambda t: motion.track_prefixed_logistic(t, wl), mu, 1e-5)
        errf = max(errf, abs(s - fd))
    return max(errq, errf) <= 1e-6, f"max |series - FD|: q {errq:.3g}, f {errf:.3g}"


CLI_RUNS = [
    ["sample", "--family", "q", "--c", "0.25", "--depth", "12", "--format", "csv"],
    ["sample", "--family", "q", "--c", "0.1", "--depth", "10", "--format", "json"],
    ["sample", "--family", "q", "--c", "0", "--depth", "10", "--format", "ppm"],
    ["sample", "--family", "q", "--c", "0.2", "--depth", "8", "--format", "svg"],
    ["sample", "--family", "f", "--mu", "4.5", "--depth", "10"],
    ["sample", "--family", "f", "--mu", "1.5", "--depth", "8", "--format", "ppm"],
    ["sample", "--c", "0.25", "--format", "ppm", "--escape-time", "--px", "200,150"],
    ["verify", "thm12", "--c", "0.2", "--depth", "12"],
    ["verify", "corollary", "--c", "0", "--depth", "14"],
    ["verify", "kneading", "--n", "64"],
    ["verify", "expansion", "--mu", "4.1"],
    ["verify", "remark22", "--mu", "1.5", "--depth", "10"],
]


def _cli_snapshot(workdir: Path) -> dict:
    snap = {}
    for k, args in enumerate(CLI_RUNS):
        p = subprocess.run([sys.executable, "-m", "holomotion", *args], capture_output=True)
        snap[f"run{k}"] = (p.returncode, p.stdout)
    for which in ("fig1_top", "fig1_bottom", "fig2"):
        out = workdir / which
        subprocess.run([sys.executable, "-m", "holomotion", "figure", which, "--out", str(out)],
                       check=True, capture_output=True)
        for f in sorted(out.iterdir()):
            snap[f"{which}/{f.name}"] = f.read_bytes()
    return snap


def c15_engineering():
    rng = np.random.default_rng(15)
    identical = 0
    for _ in range(50):
        na, nb = rng.integers(1, 3000, 2)
        a = rng.normal(size=na) + 1j * rng.normal(size=na)
        b = rng.uniform(-2, 2, nb) + 1j * rng.uniform(-2, 2, nb)
        g = hausdorff.hausdorff_distance(a, b)
        bf = hausdorff.hausdorff_brute(a, b)
        identical += g == bf
    with tempfile.TemporaryDirectory() as t1, tempfile.TemporaryDirectory() as t2:
        s1 = _cli_snapshot(Path(t1))
        s2 = _cli_snapshot(Path(t2))
    same = s1 == s2
    codes_ok = all(s1[f"run{k}"][0] == 0 for k in range(len(CLI_RUNS)))
    ok = identical == 50 and same and codes_ok
    return ok, f"{identical}/50 pairs bit-identical; {len(s1)} CLI outputs reproducible={same}"


CRITERIA = [
    (1, "dz/dc sharp at beta", c01_sharpness_quadratic),
    (2, "|dz/dc| bound over clouds", c02_velocity_bound_on_clouds),
    (3, "dz/dmu sharp at preimages of 1", c03_sharpness_logistic),
    (4, "dz/dmu at the fixed point", c04_fixed_point),
    (5, "sqrt(mu-4) scaling", c05_cantor_velocity_scaling),
    (6, "Hausdorff distance sqrt(1/4-c)", c06_distance_to_cauliflower),
    (7, "Holder estimate", c07_tracked_point_displacement),
    (8, "1/(8 delta) bound", c08_bounded_orbit),
    (9, "expansion >= sqrt(mu)", c09_expansion),
    (10, "inverse derivative bounds", c10_inv_deriv),
    (11, "Koenigs coordinate", c11_koenigs),
    (12, "kneading E(1/2) = I(f_4)", c12_kneading),
    (13, "logistic Hausdorff bound", c13_logistic_distance_bound),
    (14, "series vs finite differences", c14_finite_difference),
    (15, "grid = brute force; CLI determinism", c15_engineering),
]


def run_one(n, name, fn) -> bool:
    ok, detail = fn()
    print(f"ACCEPTANCE {n:02d} {'PASS' if ok else 'FAIL'}  {name}: {detail}", flush=True)
    return bool(ok)


@pytest.mark.parametrize("n,name,fn", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_acceptance(n, name, fn, capsys):
    with capsys.disabled():
        print()
        ok = run_one(n, name, fn)
    assert ok


if __name__ == "__main__":
    results = [run_one(*c) for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
