import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from holomotion import metric
from holomotion.errors import BoundViolation, DomainError, Singular
from holomotion.families import Parameter, orbit


def test_gamma_values():
    assert metric.gamma(0.5) == pytest.approx(2)
    assert metric.gamma(0.25) == pytest.approx(4 / math.sqrt(3))
    with pytest.raises(Singular):
        metric.gamma(0.0)


@given(st.floats(1e-9, 1 - 1e-9))
def test_gamma_at_least_two(z):
    assert metric.gamma(z) >= 2 - 1e-12


def _oracle_factor(mu, z):
    f = mu * z * (1 - z)
    return metric.gamma(f) * abs(mu * (1 - 2 * z)) / metric.gamma(z)


@given(st.floats(4, 8), st.floats(0.01, 0.99))
def test_expansion_matches_definition(mu, z):
    f = mu * z * (1 - z)
    if not 1e-6 < f < 1 - 1e-6:
        return
    assert metric.expansion_factor(mu, z) == pytest.approx(_oracle_factor(mu, z), rel=1e-9)
    assert metric.expansion_factor(mu, z) >= math.sqrt(mu) - 1e-12


@given(st.floats(0.01, 0.49))
def test_expansion_is_two_at_four(z):
    assert metric.expansion_factor(4, z) == pytest.approx(2, abs=1e-12)


def test_expansion_examples():
    assert metric.expansion_factor(5, 0.8) == pytest.approx(3)
    mu = 4.41
    z = 2e-9 / mu  # f(z) close to 0
    assert metric.expansion_factor(mu, z) == pytest.approx(2.1, abs=1e-6)
    with pytest.raises(DomainError):
        metric.expansion_factor(3.9, 0.3)


def test_inv_deriv_bound():
    seg = orbit(Parameter.logistic(5.0), 0.8, 3)
    b = metric.inv_deriv_bound(5, seg)
    assert 1 / abs(seg.derivs[3]) == pytest.approx(1 / 27)
    assert b[3] == pytest.approx(metric.gamma(0.8) / (2 * 5**1.5))
    assert b[0] >= 1
    metric.inv_deriv_bound(4, orbit(Parameter.logistic(4.0), 0.3, 5))


def test_inv_deriv_bound_detects_violation():
    seg = orbit(Parameter.logistic(5.0), 0.8, 3)
    fake = type(seg)(seg.start, seg.points, tuple(d / 100 for d in seg.derivs))
    with pytest.raises(BoundViolation):
        metric.inv_deriv_bound(5, fake)


@pytest.mark.parametrize("z", [0.01, 0.05, 0.09, 0.3, 0.5])
def test_koenigs_closed_form(z):
    assert metric.koenigs(4, z) == pytest.approx(math.asin(math.sqrt(z)) ** 2, abs=1e-12)


@pytest.mark.parametrize("mu", [4.0, 4.5, 6.0])
def test_koenigs_normalised(mu):
    assert metric.koenigs(mu, 1e-8) / 1e-8 == pytest.approx(1, abs=1e-6)


# z stays below 1/2: at z = 1/2 the image mu/4 is the branch point, where phi has
# a square-root singularity and one ulp of rounding in f(z) costs ~1e-8
@given(st.floats(4, 7), st.floats(0, 0.49))
def test_koenigs_functional_equation(mu, z):
    assert metric.koenigs_residual(mu, z) <= 1e-10 * max(1, metric.koenigs(mu, mu * z * (1 - z)))


def test_verify_helpers():
    assert metric.verify_koenigs(4, [0.01, 0.05, 0.09]).passed
    x = np.linspace(0.01, 0.99, 200)
    assert metric.verify_expansion(4.5, x).passed


def test_koenigs_endpoint_conditioning():
    # the closed form is still matched at the branch point itself
    assert metric.koenigs(4, 1.0) == pytest.approx((math.pi / 2) ** 2, abs=1e-13)
