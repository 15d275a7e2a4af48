"""Hook characters of S_N and the class distribution of a product of maximal cycles.

Only one-hook irreducibles have a non-zero value on the class of N-cycles, so
the Fourier inversion of the law of ``sigma = p_1 ... p_k`` runs over the N hook
shapes alone.  Hook character values come from the coefficient-extraction
form ``(-1)**(leg + nu) [xi**arm] xi/(1-xi) * prod_r (1 - xi**r)**nu_r``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Mapping

from .exact import FormalSeries, binomial, factorial, neg_one_pow, stirling1

__all__ = [
    "CycleType",
    "HookShape",
    "partitions",
    "cycle_types",
    "hook_character",
    "hook_character_table",
    "class_character_sum",
    "class_character_sum_by_types",
    "per_permutation_probability",
    "product_class_distribution",
    "frobenius_identity_count",
]


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples, in lexicographically decreasing order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class CycleType:
    """Cycle counts of a permutation of [N]: ``counts`` holds (r, nu_r) pairs with nu_r > 0."""

    N: int
    counts: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        total = 0
        last = 0
        for r, m in self.counts:
            if r <= last or m <= 0:
                raise ValueError(f"malformed cycle counts {self.counts!r}")
            last = r
            total += r * m
        if total != self.N:
            raise ValueError(f"cycle lengths sum to {total}, expected N={self.N}")

    @classmethod
    def from_counts(cls, N: int, counts: Mapping[int, int]) -> "CycleType":
        return cls(N, tuple(sorted((r, m) for r, m in counts.items() if m)))

    @classmethod
    def from_parts(cls, parts: tuple[int, ...] | list[int]) -> "CycleType":
        c: dict[int, int] = {}
        for p in parts:
            if p <= 0:
                raise ValueError("cycle lengths must be positive")
            c[p] = c.get(p, 0) + 1
        return cls.from_counts(sum(parts), c)

    @classmethod
    def identity(cls, N: int) -> "CycleType":
        return cls(N, ((1, N),))

    @classmethod
    def full_cycle(cls, N: int) -> "CycleType":
        return cls(N, ((N, 1),))

    @classmethod
    def parse(cls, text: str, N: int | None = None) -> "CycleType":
        """Read ``"1^2 3"`` style text, or a comma list of cycle lengths such as ``"3,1,1"``."""
        text = text.strip()
        c: dict[int, int] = {}
        if "^" in text or (" " in text and "," not in text):
            for tok in text.split():
                m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
                if not m:
                    raise ValueError(f"bad cycle-type token {tok!r}")
                r, e = int(m.group(1)), int(m.group(2) or 1)
                c[r] = c.get(r, 0) + e
        else:
            for tok in text.split(","):
                r = int(tok)
                c[r] = c.get(r, 0) + 1
        ct = cls.from_counts(sum(r * m for r, m in c.items()), c)
        if N is not None and ct.N != N:
            raise ValueError(f"cycle type {text!r} is not a type of S_{N}")
        return ct

    def __str__(self) -> str:
        return " ".join(f"{r}^{m}" for r, m in self.counts)

    def count(self, r: int) -> int:
        return dict(self.counts).get(r, 0)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(r for r, m in reversed(self.counts) for _ in range(m))

    @property
    def num_cycles(self) -> int:
        return sum(m for _, m in self.counts)

    @cached_property
    def centralizer_order(self) -> int:
        out = 1
        for r, m in self.counts:
            out *= r**m * factorial(m)
        return out

    @cached_property
    def class_size(self) -> int:
        return factorial(self.N) // self.centralizer_order

    @property
    def sign(self) -> int:
        return neg_one_pow(self.N - self.num_cycles)


def cycle_types(N: int) -> list[CycleType]:
    """All cycle types of S_N in lexicographically decreasing part order."""
    return [CycleType.from_parts(p) for p in partitions(N)]


@dataclass(frozen=True)
class HookShape:
    N: int
    arm: int

    def __post_init__(self) -> None:
        if not 1 <= self.arm <= self.N:
            raise ValueError(f"hook arm {self.arm} outside [1, {self.N}]")

    @property
    def leg(self) -> int:
        return self.N + 1 - self.arm

    @property
    def dimension(self) -> int:
        return binomial(self.N - 1, self.arm - 1)


@lru_cache(maxsize=4096)
def hook_character_table(ctype: CycleType) -> tuple[int, ...]:
    """Character values at ``ctype`` for every hook, indexed by arm - 1."""
    N = ctype.N
    cap = N - 1
    prod = FormalSeries.one(cap)
    for r, m in ctype.counts:
        prod = prod * FormalSeries.binomial_power(m, cap, c=-1, step=r)
    # [xi**arm] xi/(1-xi) * P  ==  sum_{i < arm} P_i
    out = []
    partial = Fraction(0)
    nu = ctype.num_cycles
    for arm in range(1, N + 1):
        partial += prod.coeff(arm - 1)
        leg = N + 1 - arm
        val = neg_one_pow(leg + nu) * partial
        if val.denominator != 1:
            raise ArithmeticError("non-integral character value")
        out.append(int(val))
    return tuple(out)


def hook_character(shape: HookShape, ctype: CycleType) -> int:
    if shape.N != ctype.N:
        raise ValueError(f"hook of S_{shape.N} evaluated on a type of S_{ctype.N}")
    return hook_character_table(ctype)[shape.arm - 1]


def class_character_sum(N: int, nu: int, arm: int) -> int:
    """Sum of the hook character over all permutations of [N] with exactly ``nu`` cycles.

    Closed form ``(-1)**N * N! * A(N, nu, arm)`` with the Stirling double sum.
    """
    if not 1 <= arm <= N:
        raise ValueError("arm must lie in [1, N]")
    inner = Fraction(0)
    for j in range(max(nu, 1), N + 1):
        s = stirling1(j, nu)
        if s:
            inner += Fraction(neg_one_pow(j) * s * binomial(N - arm, N - j), factorial(j))
    total = neg_one_pow(N) * factorial(N) * binomial(N - 1, N - arm) * inner
    if total.denominator != 1:
        raise ArithmeticError("non-integral class character sum")
    return int(total)


def class_character_sum_by_types(N: int, nu: int, arm: int) -> int:
    shape = HookShape(N, arm)
    return sum(ct.class_size * hook_character(shape, ct) for ct in cycle_types(N) if ct.num_cycles == nu)


@lru_cache(maxsize=4096)
def _weights(N: int, k: int) -> tuple[Fraction, ...]:
    # (-1)**(k*(leg-1)) * dim**(1-k), indexed by arm - 1
    out = []
    for arm in range(1, N + 1):
        dim = binomial(N - 1, arm - 1)
        out.append(neg_one_pow(k * (N - arm)) * Fraction(1, dim) ** (k - 1))
    return tuple(out)


def per_permutation_probability(N: int, k: int, ctype: CycleType) -> Fraction:
    """P(sigma = s) for any single permutation s of type ``ctype``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if ctype.N != N:
        raise ValueError("cycle type does not match N")
    chi = hook_character_table(ctype)
    w = _weights(N, k)
    return sum((wi * c for wi, c in zip(w, chi)), Fraction(0)) / factorial(N)


def product_class_distribution(N: int, k: int) -> dict[CycleType, Fraction]:
    """Probability that the product of k uniform N-cycles lies in each conjugacy class."""
    return {ct: per_permutation_probability(N, k, ct) * ct.class_size for ct in cycle_types(N)}


def frobenius_identity_count(N: int, k: int) -> int:
    """Number of k-tuples of N-cycles whose product is the identity."""
    val = factorial(N - 1) ** k * per_permutation_probability(N, k, CycleType.identity(N))
    if val.denominator != 1 or val < 0:
        raise ArithmeticError(f"Frobenius count is not a non-negative integer: {val}")
    return int(val)
