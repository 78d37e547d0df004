from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from holomotion import symbolic as S
from holomotion.errors import (CriticalNotInJulia, DomainError, EPeriodic,
                               OrbitHitsBoundary)

seqs = st.builds(S.SymbolSequence, st.lists(st.integers(0, 1), max_size=5).map(tuple),
                 st.lists(st.integers(0, 1), min_size=1, max_size=4).map(tuple))


def test_double():
    assert S.double(F(1, 2)) == 0
    assert S.double(S.double(F(1, 3))) == F(1, 3)
    assert [S.double(t) for t in (F(1, 4), F(1, 2), 0)] == [F(1, 2), 0, 0]


def test_kneading_examples():
    assert str(S.kneading_E(F(1, 2))) == "0,(1)"
    assert str(S.kneading_E(F(1, 4))) == "0,0,(1)"
    with pytest.raises(OrbitHitsBoundary) as info:
        S.kneading_E(F(1, 3))
    assert info.value.index == 1
    assert S.kneading_E(F(1, 2), 5).take(5) == (0, 1, 1, 1, 1)


def test_itinerary_examples():
    assert S.itinerary_I(4) == S.kneading_E(F(1, 2))
    with pytest.raises(CriticalNotInJulia):
        S.itinerary_I(5)


def test_equivalence_examples():
    e = S.kneading_E(F(1, 2))
    a = S.SymbolSequence.parse("0,0,(1)")
    s = S.SymbolSequence.parse("1,0,(1)")
    assert S.equiv_e(a, s, e)
    assert not S.equiv_e(S.SymbolSequence.parse("0,(1)"), S.SymbolSequence.parse("(1)"), e)
    with pytest.raises(EPeriodic):
        S.equiv_e(a, s, S.SymbolSequence.parse("(0,1)"))


@given(seqs)
def test_equivalence_reflexive_symmetric(a):
    e = S.kneading_E(F(1, 2))
    assert S.equiv_e(a, a, e)
    # flipping symbol 0 of a sequence whose tail is e gives an equivalent one
    x = S.SymbolSequence((a[0],) + e.head, e.period)
    y = S.SymbolSequence((1 - a[0],) + e.head, e.period)
    assert S.equiv_e(x, y, e) and S.equiv_e(y, x, e)


@given(seqs)
def test_canonical_roundtrip(a):
    assert S.SymbolSequence.parse(str(a)) == a
    assert a.shift(1).take(10) == a.take(11)[1:]


def test_canonical_form():
    assert S.SymbolSequence((0, 1, 1), (1, 1)) == S.SymbolSequence((0,), (1,))
    assert S.SymbolSequence((1,), (0, 1)) == S.SymbolSequence((), (1, 0))


def test_aperiodic():
    assert S.is_aperiodic(S.kneading_E(F(1, 2)))
    assert not S.is_aperiodic(S.SymbolSequence((), (0, 1)))
    with pytest.raises(DomainError):
        S.is_aperiodic(S.SymbolSequence.word([0, 1]))


def test_code_point_examples():
    assert S.code_point(5, []) == pytest.approx(0.8)
    assert S.code_point(5, [1]) == pytest.approx(0.2)
    with pytest.raises(DomainError):
        S.code_point(4, [1])


@given(st.floats(4.1, 6), st.lists(st.integers(0, 1), min_size=1, max_size=12))
def test_code_point_itinerary(mu, word):
    x = S.code_point(mu, word)
    assert S.itinerary_of_point(mu, x, len(word)) == tuple(word)


def test_verify_kneading():
    assert S.verify_kneading(64).passed
