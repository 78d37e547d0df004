"""Kneading sequences, itineraries and the one-symbol-flip equivalence on binary sequences.

Angles are exact ``Fraction`` values in [0, 1); binary sequences are stored as
an eventually periodic pair (head, period) in canonical form, so equality and
shifts are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import report as rp
from .errors import (CriticalNotInJulia, DomainError, EPeriodic, HitsCritical,
                     OrbitHitsBoundary)
from .julia import g_minus


def _primitive(period: tuple) -> tuple:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period[:d] * (n // d) == period:
            return period[:d]
    return period


@dataclass(frozen=True)
class SymbolSequence:
    """Binary sequence ``head`` followed by ``period`` repeated forever.

    An empty period means a finite word. The constructor canonicalises:
    shortest period, then shortest head.
    """

    head: tuple = ()
    period: tuple = ()

    def __post_init__(self):
        head = tuple(int(s) for s in self.head)
        period = _primitive(tuple(int(s) for s in self.period))
        if any(s not in (0, 1) for s in head + period):
            raise DomainError("symbols must be 0 or 1")
        while period and head and head[-1] == period[-1]:
            period = (head[-1],) + period[:-1]
            head = head[:-1]
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "period", period)

    @classmethod
    def word(cls, symbols) -> "SymbolSequence":
        return cls(tuple(symbols), ())

    @classmethod
    def parse(cls, text: str) -> "SymbolSequence":
        """Inverse of ``str``: ``"0,1,(1)"`` or ``"0,(1)"``; ``"0,1,1"`` is a finite word."""
        text = text.strip()
        period = ()
        if "(" in text:
            pre, _, rest = text.partition("(")
            period = tuple(int(ch) for ch in rest.rstrip(")").split(",") if ch.strip())
            text = pre
        head = tuple(int(ch) for ch in text.split(",") if ch.strip())
        return cls(head, period)

    @property
    def is_finite(self) -> bool:
        return not self.period

    def __len__(self):
        if self.period:
            raise TypeError("infinite sequence has no length")
        return len(self.head)

    def __getitem__(self, n: int) -> int:
        if n < len(self.head):
            return self.head[n]
        if not self.period:
            raise IndexError(n)
        return self.period[(n - len(self.head)) % len(self.period)]

    def take(self, n: int) -> tuple:
        return tuple(self[k] for k in range(n))

    def shift(self, k: int = 1) -> "SymbolSequence":
        """sigma^k."""
        if k <= len(self.head):
            return SymbolSequence(self.head[k:], self.period)
        if not self.period:
            raise IndexError("shift past the end of a finite word")
        r = (k - len(self.head)) % len(self.period)
        return SymbolSequence((), self.period[r:] + self.period[:r])

    def __str__(self):
        parts = [str(s) for s in self.head]
        if self.period:
            parts.append("(" + ",".join(str(s) for s in self.period) + ")")
        return ",".join(parts)


def angle(theta) -> Fraction:
    return Fraction(theta) % 1


def double(theta) -> Fraction:
    """Angle doubling t -> 2t mod 1, exactly."""
    return (2 * Fraction(theta)) % 1


def _kneading_symbol(t: Fraction, lo: Fraction, hi: Fraction, k: int) -> int:
    if t == lo or t == hi:
        raise OrbitHitsBoundary(k)
    return 0 if lo < t < hi else 1


def kneading_E(theta, n: int | None = None) -> SymbolSequence:
    """Kneading sequence of ``theta`` under doubling.

    The points theta/2 and (theta+1)/2 cut the circle into two open
    semicircles; symbol k is 0 when T^k(theta) lies in the one containing
    theta. With ``n`` the first n symbols come back as a finite word; without
    it the full sequence is returned, which is eventually periodic because
    theta is rational.
    """
    th = angle(theta)
    if th == 0:
        raise DomainError("kneading sequence undefined for theta = 0")
    lo, hi = th / 2, th / 2 + Fraction(1, 2)
    symbols, seen = [], {}
    t, k = th, 0
    while n is None or k < n:
        if n is None and t in seen:
            i = seen[t]
            return SymbolSequence(tuple(symbols[:i]), tuple(symbols[i:]))
        seen[t] = k
        symbols.append(_kneading_symbol(t, lo, hi, k))
        t = double(t)
        k += 1
    return SymbolSequence.word(symbols)


def itinerary_I(mu, n: int | None = None) -> SymbolSequence:
    """Kneading sequence of f_mu: symbol k is 1 if f^(1+k)(1/2) is in [0, 1/2], else 0.

    Defined only when 1/2 lies in J(f_mu); among real parameters this is
    handled for mu = 4, and exact rational arithmetic is used throughout.
    """
    m = Fraction(mu)
    f = lambda x: m * x * (1 - x)
    half = Fraction(1, 2)
    if m > 4:
        raise CriticalNotInJulia(f"critical orbit escapes: f(1/2) = {float(f(half))} > 1")
    if m != 4:
        raise CriticalNotInJulia(f"critical point membership in J(f_mu) only decided for mu = 4, "
                                 f"got {float(m)}")
    symbols, seen = [], {}
    x, k = f(half), 0
    while n is None or k < n:
        if n is None and x in seen:
            i = seen[x]
            return SymbolSequence(tuple(symbols[:i]), tuple(symbols[i:]))
        seen[x] = k
        if x == half:
            raise HitsCritical(k)
        symbols.append(1 if x < half else 0)
        x = f(x)
        k += 1
    return SymbolSequence.word(symbols)


def is_aperiodic(e: SymbolSequence) -> bool:
    """sigma^n(e) != e for every n >= 1, i.e. e is not purely periodic."""
    if e.is_finite:
        raise DomainError("aperiodicity is a property of infinite sequences")
    return len(e.head) > 0


def equiv_e(a: SymbolSequence, s: SymbolSequence, e: SymbolSequence) -> bool:
    """a ~_e s: equal, or differing in exactly one place k with sigma^(k+1) of both equal to e."""
    if not is_aperiodic(e):
        raise EPeriodic(f"{e} is periodic")
    if a.is_finite or s.is_finite:
        raise DomainError("equivalence is defined on infinite sequences")
    if a == s:
        return True
    horizon = max(len(a.head), len(s.head)) + lcm(len(a.period), len(s.period))
    k = next(i for i in range(horizon) if a[i] != s[i])
    return a.shift(k + 1) == e and s.shift(k + 1) == e


def code_point(mu, word, seed=None) -> float:
    """Real point of J(f_mu) with itinerary ``word`` (1 = left half, 0 = right half).

    Returns g_{s0}(g_{s1}(... g_{s_{n-1}}(seed))) where the branch for symbol 1
    maps onto [0, 1/2] and for symbol 0 onto [1/2, 1]; this is the same
    convention as :func:`itinerary_I`. The seed defaults to 1 - 1/mu.
    """
    if isinstance(mu, complex):
        if mu.imag != 0:
            raise DomainError("mu must be real")
        mu = mu.real
    mu = float(mu)
    if mu <= 4:
        raise DomainError("code_point needs mu > 4")
    x = 1 - 1 / mu if seed is None else float(seed)
    for sym in reversed(list(word)):
        sym = int(sym)
        if sym not in (0, 1):
            raise DomainError(f"bad symbol {sym!r}")
        left = float(g_minus(mu, x))
        x = left if sym == 1 else 1 - left
    return x


def itinerary_of_point(mu, x: float, n: int) -> tuple:
    """First n itinerary symbols of a real point (1 if in [0, 1/2), else 0)."""
    out = []
    for _ in range(n):
        out.append(1 if x < 0.5 else 0)
        x = mu * x * (1 - x)
    return tuple(out)


def verify_kneading(n: int = 64) -> rp.Report:
    """E(1/2) and I(f_4) agree on n symbols, both 0 followed by 1s."""
    if n < 1:
        raise DomainError("n must be positive")
    e = kneading_E(Fraction(1, 2), n).take(n)
    i = itinerary_I(4, n).take(n)
    expected = (0,) + (1,) * (n - 1)
    k = next((j for j in range(n) if e[j] != i[j] or e[j] != expected[j]), None)
    ok = k is None
    return rp.Report(
        claim="kneading",
        parameters={"n": n},
        max_ratio=None,
        witness_point=None,
        verdict=rp.PASS if ok else rp.FAIL,
        tolerances={},
        details={"E_half": str(kneading_E(Fraction(1, 2))), "I_f4": str(itinerary_I(4)),
                 "prefix_E": "".join(map(str, e)), "prefix_I": "".join(map(str, i))},
        violation=None if ok else f"sequences differ at symbol {k}",
    )
