import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holomotion import motion as M
from holomotion.errors import DomainError, PreCritical, SeriesDivergence
from holomotion.families import alpha, beta, param_map
from holomotion.julia import sample_inverse_iteration, membership_escape, Bounded

words = st.lists(st.sampled_from([1, -1]), max_size=8).map(tuple)


def test_dzdc_at_beta_zero():
    r = M.dzdc_series(0, 1.0)
    assert abs(r.value + 1) <= r.tail_estimate + 1e-15
    assert r.rigorous and r.converged


@pytest.mark.parametrize("c", [0, 0.1, 0.2, 0.24, 0.2499])
def test_dzdc_sharp_at_beta(c):
    exact = -1 / (2 * math.sqrt(0.25 - c))
    assert M.dzdc_series(c, beta(c)).value == pytest.approx(exact, rel=1e-10)


def test_dzdc_prefixed_minus_one():
    assert M.dzdc_series(0, -1.0).value == pytest.approx(1, abs=1e-12)
    fd = M.central_difference(lambda c: M.track_prefixed(c, "-"), 0.0)
    assert fd == pytest.approx(1, abs=1e-6)


def test_dzdc_tail_bound_is_honest():
    # truncate early and compare with the long sum
    c = 0.2
    z = M.track_prefixed(c, "+-+")
    full = M.dzdc_series(c, z).value
    short = M.dzdc_series(c, z, n_terms=10)
    assert abs(short.value - full) <= short.tail_estimate


def test_dzdc_errors():
    with pytest.raises(PreCritical):
        M.dzdc_series(0, 0.0)
    with pytest.raises(SeriesDivergence):
        M.dzdc_series(0.1, 0.1 + 0.0j)


@pytest.mark.parametrize("mu", [4.1, 4.5, 5.0])
def test_dzdmu_preimages_of_one(mu):
    left, right = M.preimages_of_one(mu)
    exact = 1 / (mu * math.sqrt(mu) * math.sqrt(mu - 4))
    a = M.dzdmu_series(mu, left).value
    b = M.dzdmu_series(mu, right).value
    assert sorted([a, b]) == pytest.approx([-exact, exact], abs=1e-10)


@pytest.mark.parametrize("mu", [4.5, 5.0, 6.0])
def test_dzdmu_fixed_point(mu):
    assert M.dzdmu_series(mu, 1 - 1 / mu).value == pytest.approx(1 / mu**2, abs=1e-10)


def test_dzdmu_zero_fixed_point():
    assert M.dzdmu_series(5, 0.0).value == 0


@given(st.floats(4.05, 6), st.lists(st.integers(0, 1), max_size=8))
@settings(max_examples=30)
def test_dzdmu_matches_finite_difference(mu, word):
    x = M.track_prefixed_logistic(mu, word)
    s = M.dzdmu_series(mu, x, prefixed_steps=len(word) + 1).value
    fd = M.central_difference(lambda t: M.track_prefixed_logistic(t, word), mu)
    assert s == pytest.approx(fd, abs=1e-6)


@given(st.floats(0.01, 0.24), words)
@settings(max_examples=30)
def test_dzdc_matches_finite_difference(c, word):
    z = M.track_prefixed(c, word)
    s = M.dzdc_series(c, z).value
    fd = M.central_difference(lambda t: M.track_prefixed(t, word), c)
    assert abs(s - fd) <= 1e-6


def test_transport_examples():
    assert M.transport_dwdc(4, 0, 0) == pytest.approx(-1 / 3)
    mu = 4.5
    c = param_map(mu)
    fd = M.central_difference(lambda t: alpha(t), c)
    assert M.transport_dwdc(mu, 1 - 1 / mu, 1 / mu**2) == pytest.approx(fd, abs=1e-7)


def test_transport_open_case_matches_oracle():
    # mu=2, w=beta(0)=1 is z=0, the fixed point 0 of every f_mu
    assert M.transport_dzdmu(2.0, 1.0, -1.0) == pytest.approx(0, abs=1e-15)

    def z_of_mu(mu):
        # follow beta(c(mu)) back through the conjugacy
        return 0.5 - beta(param_map(mu)) / mu

    assert M.central_difference(z_of_mu, 2.5) == pytest.approx(0, abs=1e-8)


@given(st.floats(1.1, 1.9), st.floats(-0.5, 0.5))
def test_transport_roundtrip(mu, z):
    d = 0.37
    w = -mu * z + mu / 2
    assert M.transport_dzdmu(mu, w, M.transport_dwdc(mu, z, d)) == pytest.approx(d, abs=1e-9)


def test_track_prefixed_examples():
    assert M.track_prefixed(0, "-") == -1
    z = M.track_prefixed(0, "-,+")
    assert abs(z) == pytest.approx(1) and abs(z.real) < 1e-15
    assert z == pytest.approx(1j)  # documented convention: principal root of -1
    assert M.parse_word("−+") == (-1, 1)
    with pytest.raises(DomainError):
        M.parse_word("x")


@given(words)
def test_tracked_points_in_cauliflower(word):
    z = M.track_prefixed(0.25, word)
    assert membership_escape(0.25, z, 1000) is Bounded


@given(st.floats(0, 0.25), words)
def test_tracked_point_is_preimage_of_beta(c, word):
    z = M.track_prefixed(c, word)
    for _ in word:
        z = z * z + c
    assert z == pytest.approx(beta(c), abs=1e-9)


def test_velocity_bound_on_cloud_attained_at_beta():
    rep = M.verify_thm12(0.24, sample_inverse_iteration(0.24, 10))
    assert rep.passed and rep.max_ratio <= 1 + 1e-9
    assert abs(rep.witness_point - beta(0.24)) < 1e-6
    single = M.verify_thm12(0.2, np.array([beta(0.2)]))
    assert single.max_ratio == pytest.approx(1, abs=1e-12)


def test_scaled_velocity_constants():
    mu = 4.5
    pts = np.array(M.preimages_of_one(mu))
    info = M.thm13_constant(mu, pts)
    assert info["constant"] == pytest.approx(1 / (mu * math.sqrt(mu)), rel=1e-9)
    mu = 4 + 1e-4
    info = M.thm13_constant(mu, np.array(M.preimages_of_one(mu)))
    assert info["constant"] == pytest.approx(1 / 8, rel=1e-3)
    assert M.verify_thm13(5, np.array([0.8])).max_ratio == pytest.approx(0.04)


def test_displacement_examples():
    rep = M.verify_holder_14((), [0, 0.1, 0.2, 0.24])
    for row in rep.details["rows"]:
        assert row["distance"] == pytest.approx(row["bound"], abs=1e-10)
    rep = M.verify_holder_14("-", [0.0])
    assert rep.passed and rep.details["z_quarter"] == pytest.approx(-0.5)
    assert rep.details["rows"][0]["distance"] == pytest.approx(0.5)


def test_bounded_orbit_examples():
    r = M.verify_bounded_orbit_prop(4.5, 7 / 9, 2 / 9)
    assert r.passed and r.details["dzdmu"] == pytest.approx(1 / 4.5**2)
    assert r.details["bound"] == pytest.approx(9 / 16)
    r = M.verify_bounded_orbit_prop(5, 0.8, 0.2)
    assert r.passed and r.details["bound"] == pytest.approx(0.625)
    # period-2 cycle of f_4; the orbit sits in [delta, 1 - delta] for delta = (3 - sqrt 5)/8
    delta = (3 - math.sqrt(5)) / 8
    for z in ((5 - math.sqrt(5)) / 8, (5 + math.sqrt(5)) / 8):
        assert M.verify_bounded_orbit_prop(4, z, delta).passed


def test_bounded_orbit_precondition():
    r = M.verify_bounded_orbit_prop(4.5, 7 / 9, 0.3)
    assert r.verdict == "INCONCLUSIVE"
    # (5 - sqrt 5)/8 is too large a delta: the partner point 0.905 lies outside the band
    lo = (5 - math.sqrt(5)) / 8
    assert M.verify_bounded_orbit_prop(4, lo, lo).verdict == "INCONCLUSIVE"


def test_transported_velocity_bound():
    worst = max(abs(M.transported_dzdmu(mu, w)) for mu in (1.05, 1.5, 1.9)
                for w in M.all_words(4))
    assert worst <= M.REMARK22_BOUND + 1e-9


def test_all_words_count():
    assert sum(1 for _ in M.all_words(6)) == 127
