"""Exact arithmetic primitives.

Every probability in the package is a :class:`fractions.Fraction`; floats only
appear when a caller asks for a decimal rendering.  This module holds the
combinatorial building blocks (binomials with a possibly negative upper index,
signless Stirling numbers of the first kind, falling and rising factorials) and
a small dense truncated power-series type used for all coefficient extractions.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]

__all__ = [
    "Rational",
    "FormalSeries",
    "binomial",
    "factorial",
    "falling",
    "rising",
    "neg_one_pow",
    "stirling1",
    "series_coeff",
    "series_mul_truncated",
    "series_pow_truncated",
    "poly_integrate_01",
    "format_rational",
    "parse_rational",
]


def neg_one_pow(e: int) -> int:
    """(-1)**e for any integer e."""
    return -1 if e & 1 else 1


def factorial(n: int) -> int:
    return math.factorial(n)


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """Binomial coefficient n(n-1)...(n-k+1)/k! for integer n of any sign.

    Returns 0 for k < 0.  For n < 0 the upper-negation rule is used, so
    ``binomial(-2, 3) == -4``.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    return neg_one_pow(k) * math.comb(k - n - 1, k)


def falling(a: Number, b: int) -> Number:
    """Falling factorial a(a-1)...(a-b+1); equals 1 for b == 0."""
    if b < 0:
        raise ValueError("falling factorial needs b >= 0")
    out: Number = 1
    for i in range(b):
        out *= a - i
    return out


def rising(a: Number, b: int) -> Number:
    """Rising factorial a(a+1)...(a+b-1); equals 1 for b == 0."""
    if b < 0:
        raise ValueError("rising factorial needs b >= 0")
    out: Number = 1
    for i in range(b):
        out *= a + i
    return out


class _StirlingTable:
    # Rows are appended under the lock; a row is never mutated once published.
    def __init__(self) -> None:
        self._rows: list[list[int]] = [[1]]
        self._lock = threading.Lock()

    def row(self, n: int) -> list[int]:
        rows = self._rows
        if n < len(rows):
            return rows[n]
        with self._lock:
            while len(self._rows) <= n:
                m = len(self._rows)
                prev = self._rows[-1]
                new = [0] * (m + 1)
                for j in range(1, m + 1):
                    left = prev[j - 1]
                    right = prev[j] if j < m else 0
                    new[j] = left + (m - 1) * right
                self._rows.append(new)
            return self._rows[n]


_STIRLING = _StirlingTable()


def stirling1(n: int, k: int) -> int:
    """Signless Stirling number of the first kind: permutations of [n] with k cycles."""
    if n < 0 or k < 0 or k > n:
        return 0
    return _STIRLING.row(n)[k]


def format_rational(x: Number) -> str:
    """Canonical ``p/q`` text (``p`` when q == 1), sign carried by the numerator."""
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


class FormalSeries:
    """Dense univariate power series over the rationals, truncated at degree ``cap``.

    ``exact`` records whether the stored coefficients are the whole object
    (a genuine polynomial of degree <= cap) or only a truncation of an infinite
    series.  Integration over [0, 1] is only allowed for exact polynomials.
    """

    __slots__ = ("coeffs", "cap", "exact")

    def __init__(self, coeffs: Iterable[Number], cap: int | None = None, exact: bool = True):
        c = [Fraction(v) for v in coeffs]
        if cap is None:
            cap = max(len(c) - 1, 0)
        if cap < 0:
            raise ValueError("cap must be non-negative")
        if len(c) > cap + 1:
            if any(c[cap + 1:]):
                exact = False
            c = c[: cap + 1]
        c.extend([Fraction(0)] * (cap + 1 - len(c)))
        self.coeffs = c
        self.cap = cap
        self.exact = exact

    # constructors

    @classmethod
    def zero(cls, cap: int) -> "FormalSeries":
        return cls([], cap)

    @classmethod
    def one(cls, cap: int) -> "FormalSeries":
        return cls([1], cap)

    @classmethod
    def monomial(cls, degree: int, cap: int, coeff: Number = 1) -> "FormalSeries":
        if degree > cap:
            return cls([], cap, exact=(coeff == 0))
        c = [0] * (degree + 1)
        c[degree] = coeff
        return cls(c, cap)

    @classmethod
    def binomial_power(cls, exponent: int, cap: int, c: Number = 1, step: int = 1) -> "FormalSeries":
        """(1 + c*z**step)**exponent truncated at ``cap``; exponent may be negative."""
        if step < 1:
            raise ValueError("step must be positive")
        coeffs = [Fraction(0)] * (cap + 1)
        c = Fraction(c)
        i = 0
        while i * step <= cap:
            coeffs[i * step] = binomial(exponent, i) * c**i
            i += 1
        exact = exponent >= 0 and (c == 0 or exponent * step <= cap)
        return cls(coeffs, cap, exact=exact)

    # inspection

    def coeff(self, d: int) -> Fraction:
        if d < 0:
            return Fraction(0)
        if d > self.cap:
            raise ValueError(f"degree {d} is beyond the truncation cap {self.cap}")
        return self.coeffs[d]

    @property
    def degree(self) -> int:
        for d in range(self.cap, -1, -1):
            if self.coeffs[d]:
                return d
        return -1

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for v in reversed(self.coeffs):
            acc = acc * x + v
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.cap == other.cap and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        body = ", ".join(format_rational(v) for v in self.coeffs)
        return f"FormalSeries([{body}], cap={self.cap})"

    # arithmetic

    def truncate(self, cap: int) -> "FormalSeries":
        return FormalSeries(self.coeffs, cap, self.exact)

    def _coerce(self, other: "FormalSeries | Number") -> "FormalSeries":
        if isinstance(other, FormalSeries):
            return other
        return FormalSeries([other], self.cap)

    def __add__(self, other: "FormalSeries | Number") -> "FormalSeries":
        o = self._coerce(other)
        cap = min(self.cap, o.cap)
        return FormalSeries(
            [self.coeffs[i] + o.coeffs[i] for i in range(cap + 1)],
            cap,
            self.exact and o.exact and self.degree <= cap and o.degree <= cap,
        )

    __radd__ = __add__

    def __neg__(self) -> "FormalSeries":
        return FormalSeries([-v for v in self.coeffs], self.cap, self.exact)

    def __sub__(self, other: "FormalSeries | Number") -> "FormalSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Number) -> "FormalSeries":
        return (-self) + other

    def __mul__(self, other: "FormalSeries | Number") -> "FormalSeries":
        if not isinstance(other, FormalSeries):
            f = Fraction(other)
            return FormalSeries([v * f for v in self.coeffs], self.cap, self.exact)
        return series_mul_truncated(self, other, min(self.cap, other.cap))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FormalSeries":
        return series_pow_truncated(self, n, self.cap)

    def shift(self, k: int) -> "FormalSeries":
        """Multiply by z**k (k >= 0) keeping the same cap."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        dropped = any(self.coeffs[self.cap - k + 1:]) if k else False
        return FormalSeries([0] * k + self.coeffs[: self.cap + 1 - k], self.cap, self.exact and not dropped)

    def integrate_01(self) -> Fraction:
        return poly_integrate_01(self)


def series_mul_truncated(a: FormalSeries, b: FormalSeries, cap: int) -> FormalSeries:
    """Cauchy product of ``a`` and ``b`` keeping degrees 0..cap."""
    if cap > min(a.cap, b.cap):
        raise ValueError("product cap exceeds an operand's cap")
    out = [0] * (cap + 1)
    ac, bc = a.coeffs, b.coeffs
    for i in range(cap + 1):
        ai = ac[i]
        if not ai:
            continue
        for j in range(cap + 1 - i):
            bj = bc[j]
            if bj:
                out[i + j] += ai * bj
    da, db = a.degree, b.degree
    exact = a.exact and b.exact and (da < 0 or db < 0 or da + db <= cap)
    return FormalSeries(out, cap, exact)


def series_pow_truncated(a: FormalSeries, n: int, cap: int) -> FormalSeries:
    """a**n (n >= 0) truncated at ``cap``, by repeated squaring."""
    if n < 0:
        raise ValueError("only non-negative powers are supported")
    result = FormalSeries.one(cap)
    base = a.truncate(cap) if cap < a.cap else a
    while n:
        if n & 1:
            result = series_mul_truncated(result, base, cap)
        n >>= 1
        if n:
            base = series_mul_truncated(base, base, cap)
    return result


def series_coeff(a: FormalSeries, d: int) -> Fraction:
    return a.coeff(d)


def poly_integrate_01(p: FormalSeries | Sequence[Number]) -> Fraction:
    """Exact integral over [0, 1] of a polynomial: sum of coeff_m / (m + 1)."""
    if not isinstance(p, FormalSeries):
        p = FormalSeries(p)
    if not p.exact:
        raise ValueError("cannot integrate a truncated series; build it with a cap >= its degree")
    return sum((v / (m + 1) for m, v in enumerate(p.coeffs) if v), Fraction(0))
