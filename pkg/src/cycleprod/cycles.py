"""Cycle statistics of the product of k uniform maximal cycles.

All functions return exact :class:`~fractions.Fraction` values.  Several
quantities have two independent closed forms; where that is the case the
function evaluates both and raises :class:`FormulaMismatch` if they ever
disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import CycleType
from .exact import FormalSeries, binomial, factorial, falling, neg_one_pow, stirling1

__all__ = [
    "FormulaMismatch",
    "ProductSpec",
    "p_num_cycles",
    "num_cycles_distribution",
    "p_identity",
    "p_is_cycle",
    "pgf_num_cycles",
    "pgf_k2_closed",
    "zagier_prob",
    "p3_is_cycle",
    "p_cycle_type_k2",
    "p_all_same_length",
    "p_same_length_2",
    "p_same_length_3",
    "p_involution_k2",
]


class FormulaMismatch(ArithmeticError):
    """Two routes to the same exact quantity disagreed."""


def _agree(name: str, *values: Fraction) -> Fraction:
    first = values[0]
    for v in values[1:]:
        if v != first:
            raise FormulaMismatch(f"{name}: {first} != {v}")
    return first


@dataclass(frozen=True)
class ProductSpec:
    """sigma = p_1 ... p_k with each p_i a uniform N-cycle."""

    N: int
    k: int

    def __post_init__(self) -> None:
        if self.N < 1 or self.k < 1:
            raise ValueError(f"need N >= 1 and k >= 1, got N={self.N}, k={self.k}")


def _check(N: int, k: int) -> None:
    ProductSpec(N, k)


def _inv_binom_pow(n: int, r: int, e: int) -> Fraction:
    # binomial(n, r) ** e for a possibly negative integer exponent
    return Fraction(binomial(n, r)) ** e


def p_num_cycles(N: int, k: int, nu: int) -> Fraction:
    """P(sigma has exactly nu cycles), from the Stirling-number double sum."""
    _check(N, k)
    if not 1 <= nu <= N:
        return Fraction(0)
    total = Fraction(0)
    for arm in range(1, N + 1):
        inner = Fraction(0)
        for j in range(nu, N + 1):
            b = binomial(N - arm, N - j)
            if b:
                inner += Fraction(neg_one_pow(j) * stirling1(j, nu) * b, factorial(j))
        if inner:
            total += neg_one_pow(k * (N - arm)) * _inv_binom_pow(N - 1, N - arm, 2 - k) * inner
    return neg_one_pow(N) * total


def num_cycles_distribution(N: int, k: int) -> dict[int, Fraction]:
    return {nu: p_num_cycles(N, k, nu) for nu in range(1, N + 1)}


def p_identity(N: int, k: int) -> Fraction:
    """P(sigma = id) = (1/N!) sum_r (-1)**(k r) binomial(N-1, r)**(2-k)."""
    _check(N, k)
    s = sum((neg_one_pow(k * r) * _inv_binom_pow(N - 1, r, 2 - k) for r in range(N)), Fraction(0))
    return s / factorial(N)


def p_is_cycle(N: int, k: int) -> Fraction:
    """P(sigma is an N-cycle); also checked against (N-1)! P(product of k+1 cycles = id)."""
    _check(N, k)
    s = sum((neg_one_pow((k + 1) * r) * _inv_binom_pow(N - 1, r, 1 - k) for r in range(N)), Fraction(0))
    direct = s / N
    return _agree("p_is_cycle", direct, factorial(N - 1) * p_identity(N, k + 1))


def pgf_num_cycles(N: int, k: int, x: Fraction | int) -> Fraction:
    """E[x**nu(sigma)] for rational x."""
    _check(N, k)
    x = Fraction(x)
    nf = factorial(N)
    total = Fraction(0)
    for r in range(N):
        total += neg_one_pow(k * r) * _inv_binom_pow(N - 1, r, 2 - k) * falling(r - x, N) / nf
    return neg_one_pow(N) * total


def _binom_rational(a: Fraction, n: int) -> Fraction:
    return Fraction(falling(a, n)) / factorial(n)


def pgf_k2_closed(N: int, x: Fraction | int) -> Fraction:
    """binomial(N+x, N+1) - binomial(x, N+1), the k = 2 generating function."""
    x = Fraction(x)
    return _binom_rational(N + x, N + 1) - _binom_rational(x, N + 1)


def zagier_prob(N: int, nu: int) -> Fraction:
    """P(product of two N-cycles has nu cycles) = (1 + (-1)**(N-nu)) [x**nu] binomial(N+x, N+1)."""
    if N < 1:
        raise ValueError("N must be positive")
    if (N - nu) & 1 or not 1 <= nu <= N:
        return Fraction(0)
    poly = FormalSeries.one(N + 1)
    for i in range(N + 1):
        poly = poly * FormalSeries([N - i, 1], N + 1)
    return 2 * poly.coeff(nu) / factorial(N + 1)


def p3_is_cycle(N: int) -> Fraction:
    """P(product of three N-cycles is an N-cycle), single-sum form."""
    if N < 1:
        raise ValueError("N must be positive")
    s = sum(
        (Fraction(1, (N - h) * (N + h + 1) * binomial(N + h, h)) for h in range(N)),
        Fraction(0),
    )
    return 2 * N * s


def p_cycle_type_k2(ctype: CycleType) -> Fraction:
    """P(product of two N-cycles has cycle type ``ctype``), via an exact integral over [0, 1]."""
    N = ctype.N
    integrand = FormalSeries.one(N)
    for r, m in ctype.counts:
        # t**r + (-1)**(r+1) (1-t)**r
        factor = FormalSeries.monomial(r, N) + neg_one_pow(r + 1) * FormalSeries.binomial_power(r, N, c=-1)
        integrand = integrand * factor**m
    return Fraction(N, ctype.centralizer_order) * integrand.integrate_01()


def p_all_same_length(N: int, r: int) -> Fraction:
    """P(every cycle of the product of two N-cycles has length r).

    Evaluates the integral form and the binomial-sum form and requires equality.
    """
    if r < 1:
        raise ValueError("cycle length r must be positive")
    if N % r:
        raise ValueError(f"N={N} is not divisible by r={r}")
    m = N // r
    integral = p_cycle_type_k2(CycleType(N, ((r, m),)))
    s = Fraction(0)
    for i in range(m + 1):
        s += Fraction(neg_one_pow(i * (r + 1)) * binomial(m, i), binomial(N, i * r))
    binsum = Fraction(N, (N + 1) * r**m * factorial(m)) * s
    value = _agree("p_all_same_length", integral, binsum)
    if r % 2 == 0 and N % (2 * r):
        _agree("p_all_same_length parity", value, Fraction(0))
    return value


def p_same_length_2(N: int) -> Fraction:
    """Closed form for all cycles being transpositions (zero unless 4 | N)."""
    if N % 4:
        return Fraction(0)
    return Fraction(N, 2 ** (N // 2) * factorial(N // 2 + 1))


def p_same_length_3(N: int) -> Fraction:
    if N % 3:
        raise ValueError(f"N={N} is not divisible by 3")
    m = N // 3
    s = sum((Fraction(binomial(m, j) * 3**j, 2 * j + 1) for j in range(m + 1)), Fraction(0))
    return Fraction(N, factorial(m) * 12**m) * s


def p_involution_k2(N: int) -> Fraction:
    """P(product of two N-cycles is an involution)."""
    if N < 1:
        raise ValueError("N must be positive")
    s = Fraction(0)
    for nu2 in range(0, N // 2 + 1, 2):
        nu1 = N - 2 * nu2
        s += Fraction(1, factorial(nu1) * 2**nu2 * factorial(nu2 + 1))
    return N * s
