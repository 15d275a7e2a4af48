"""Brute-force ground truth for products of uniform maximal cycles.

The class distribution of ``sigma = p_1 ... p_k`` is obtained by plain
enumeration.  Two routes are offered:

``tuples``
    Fix ``p_1`` to the canonical cycle and run over every (k-1)-tuple of
    N-cycles for the remaining factors.

``chain``
    Walk one factor at a time.  If ``sigma`` is uniform within its class and
    independent of the next factor, the class of ``sigma * p`` has the same law
    as ``c * p`` for any fixed representative ``c``; enumerating all N-cycles
    ``p`` for each representative gives an exact class-to-class transition
    table, applied k-1 times.

Both rest only on conjugation invariance and counting.  Element-dependent
events (occupancy, separation, blocking) are then evaluated by running through
S_N once, weighting each permutation by its class probability divided by the
class size.

Elements are labelled 1..N throughout the public API.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Container, Iterable, Iterator, Sequence

import numpy as np

from .characters import CycleType, cycle_types

__all__ = [
    "Permutation",
    "ExactDistribution",
    "OracleRefused",
    "ORACLE_HARD_LIMIT",
    "class_view_cap",
    "element_view_cap",
    "all_maximal_cycles",
    "exact_product_distribution",
    "event_probability",
    "cycle_type",
    "occupancy_ok",
    "separates",
    "blocks",
    "prefix_sets",
    "batch_cycle_types",
]

ORACLE_HARD_LIMIT = 10
CAP_ENV = "CYCLEPROD_ORACLE_CAP"


class OracleRefused(ValueError):
    """Raised when an enumeration would exceed the configured size cap."""


def _env_cap() -> int | None:
    raw = os.environ.get(CAP_ENV)
    if not raw:
        return None
    try:
        cap = int(raw)
    except ValueError:
        raise OracleRefused(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    return min(cap, ORACLE_HARD_LIMIT)


def class_view_cap() -> int:
    env = _env_cap()
    return 9 if env is None else env


def element_view_cap(k: int) -> int:
    env = _env_cap()
    if env is not None:
        return env
    return 7 if k <= 2 else 5


def _check_cap(N: int, cap: int, what: str) -> None:
    if N < 1:
        raise ValueError("N must be positive")
    if N > cap or N > ORACLE_HARD_LIMIT:
        raise OracleRefused(
            f"refusing to enumerate {what} for N={N}: cap is {min(cap, ORACLE_HARD_LIMIT)} "
            f"(set {CAP_ENV} to raise it, at most {ORACLE_HARD_LIMIT})"
        )


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..N} in one-line form: ``image[i-1]`` is the image of i."""

    image: tuple[int, ...]
    _img0: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        img = tuple(self.image)
        if sorted(img) != list(range(1, len(img) + 1)):
            raise ValueError(f"{img!r} is not a permutation of 1..{len(img)}")
        object.__setattr__(self, "image", img)
        object.__setattr__(self, "_img0", tuple(v - 1 for v in img))

    @classmethod
    def identity(cls, N: int) -> "Permutation":
        return cls(tuple(range(1, N + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], N: int) -> "Permutation":
        img = list(range(1, N + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b
        return cls(tuple(img))

    @classmethod
    def _from0(cls, img0: Sequence[int]) -> "Permutation":
        return cls(tuple(v + 1 for v in img0))

    @property
    def N(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (p * q)(i) = p(q(i))."""
        a = self._img0
        return Permutation._from0([a[j] for j in other._img0])

    def inverse(self) -> "Permutation":
        inv = [0] * self.N
        for i, v in enumerate(self._img0):
            inv[v] = i
        return Permutation._from0(inv)

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles in order of their smallest element, each starting at that element."""
        seen = [False] * self.N
        out = []
        img = self._img0
        for start in range(self.N):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = img[j]
            out.append(tuple(cyc))
        return out

    def cycle_labels(self) -> list[int]:
        """Index of the cycle containing each element (0-based list over elements 1..N)."""
        lab = [-1] * self.N
        img = self._img0
        c = 0
        for start in range(self.N):
            if lab[start] >= 0:
                continue
            j = start
            while lab[j] < 0:
                lab[j] = c
                j = img[j]
            c += 1
        return lab

    def is_full_cycle(self) -> bool:
        return len(self.cycles()) == 1

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


# -- predicates ---------------------------------------------------------------


def cycle_type(p: Permutation) -> CycleType:
    return CycleType.from_parts([len(c) for c in p.cycles()])


def occupancy_ok(p: Permutation, ell: int, allowed: Container[int]) -> bool:
    """Every cycle holds a number of elements of {1..ell} lying in ``allowed``."""
    for cyc in p.cycles():
        if sum(1 for x in cyc if x <= ell) not in allowed:
            return False
    return True


def separates(p: Permutation, sets: Sequence[Iterable[int]]) -> bool:
    """No cycle of p meets two different sets."""
    lab = p.cycle_labels()
    owner: dict[int, int] = {}
    for idx, s in enumerate(sets):
        for x in s:
            c = lab[x - 1]
            if owner.setdefault(c, idx) != idx:
                return False
    return True


def blocks(p: Permutation, ell: int) -> bool:
    """No two of {1..ell} are cyclic neighbours and each has a neighbour outside it.

    A marked fixed point has no neighbour at all, so it fails.
    """
    inv = p.inverse()
    for x in range(1, ell + 1):
        nxt, prv = p(x), inv(x)
        if nxt == x or nxt <= ell or prv <= ell:
            return False
    return True


def prefix_sets(sizes: Sequence[int]) -> list[range]:
    """Consecutive blocks {1..l1}, {l1+1..l1+l2}, ... of the given sizes."""
    out = []
    start = 1
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


# -- enumeration --------------------------------------------------------------


def _maximal_cycles0(N: int) -> Iterator[tuple[int, ...]]:
    # cycle (0 a_1 ... a_{N-1}) for a running over permutations of 1..N-1 in lex order
    for rest in itertools.permutations(range(1, N)):
        order = (0,) + rest
        img = [0] * N
        for i in range(N):
            img[order[i]] = order[(i + 1) % N]
        yield tuple(img)


def all_maximal_cycles(N: int, cap: int | None = None) -> list[Permutation]:
    """All (N-1)! N-cycles of {1..N} in a fixed order."""
    _check_cap(N, class_view_cap() if cap is None else cap, "maximal cycles")
    return [Permutation._from0(c) for c in _maximal_cycles0(N)]


@lru_cache(maxsize=16)
def _cycle_array(N: int) -> np.ndarray:
    return np.array(list(_maximal_cycles0(N)), dtype=np.int16).reshape(-1, N)


def batch_cycle_types(perms: np.ndarray) -> np.ndarray:
    """Cycle-count vectors of a batch of 0-based one-line permutations.

    Row i of the result holds nu_1..nu_N of ``perms[i]`` (column r-1 counts r-cycles).
    """
    M, N = perms.shape
    idx = np.broadcast_to(np.arange(N, dtype=perms.dtype), (M, N))
    cur = idx.copy()
    length = np.zeros((M, N), dtype=np.int16)
    for step in range(1, N + 1):
        cur = np.take_along_axis(perms, cur, axis=1)
        hit = (cur == idx) & (length == 0)
        length[hit] = step
    out = np.empty((M, N), dtype=np.int64)
    for r in range(1, N + 1):
        out[:, r - 1] = (length == r).sum(axis=1) // r
    return out


def _type_from_vector(N: int, vec: Sequence[int]) -> CycleType:
    return CycleType.from_counts(N, {r + 1: int(m) for r, m in enumerate(vec) if m})


def _representative0(ct: CycleType) -> tuple[int, ...]:
    img = []
    start = 0
    for part in ct.parts:
        for i in range(part):
            img.append(start + (i + 1) % part)
        start += part
    return tuple(img)


@lru_cache(maxsize=16)
def _transition_table(N: int) -> dict[CycleType, dict[CycleType, int]]:
    """For each class C: counts, over all N-cycles p, of the class of c*p (c a fixed member of C)."""
    cycles = _cycle_array(N)
    table: dict[CycleType, dict[CycleType, int]] = {}
    for ct in cycle_types(N):
        c = np.array(_representative0(ct), dtype=cycles.dtype)
        prods = c[cycles]  # (c*p)(i) = c(p(i))
        vecs, counts = np.unique(batch_cycle_types(prods), axis=0, return_counts=True)
        table[ct] = {_type_from_vector(N, v): int(n) for v, n in zip(vecs, counts)}
    return table


@dataclass
class ExactDistribution:
    """Exact law of sigma, stored per conjugacy class."""

    N: int
    k: int
    classes: dict[CycleType, Fraction]

    def __post_init__(self) -> None:
        if sum(self.classes.values()) != 1:
            raise ArithmeticError("class weights do not sum to 1")

    def class_probability(self, ct: CycleType) -> Fraction:
        return self.classes.get(ct, Fraction(0))

    def permutation_probability(self, p: Permutation) -> Fraction:
        ct = cycle_type(p)
        return self.class_probability(ct) / ct.class_size

    def permutation_weights(self) -> Iterator[tuple[Permutation, Fraction]]:
        """Full-permutation view, every element of S_N with its probability."""
        for img in itertools.permutations(range(1, self.N + 1)):
            p = Permutation(img)
            yield p, self.permutation_probability(p)


def _distribution_tuples(N: int, k: int) -> dict[CycleType, Fraction]:
    cycles = [Permutation._from0(c) for c in _maximal_cycles0(N)]
    first = cycles[0]
    tally: Counter[CycleType] = Counter()
    for rest in itertools.product(cycles, repeat=k - 1):
        s = first
        for q in rest:
            s = s * q
        tally[cycle_type(s)] += 1
    total = factorial(N - 1) ** (k - 1)
    return {ct: Fraction(tally.get(ct, 0), total) for ct in cycle_types(N)}


def _distribution_chain(N: int, k: int) -> dict[CycleType, Fraction]:
    types = cycle_types(N)
    dist = {ct: Fraction(0) for ct in types}
    dist[CycleType.full_cycle(N)] = Fraction(1)
    if k == 1:
        return dist
    table = _transition_table(N)
    n_cycles = factorial(N - 1)
    for _ in range(k - 1):
        new = {ct: Fraction(0) for ct in types}
        for ct, w in dist.items():
            if not w:
                continue
            for dst, n in table[ct].items():
                new[dst] += w * Fraction(n, n_cycles)
        dist = new
    return dist


def exact_product_distribution(N: int, k: int, method: str = "chain", cap: int | None = None) -> ExactDistribution:
    """Exact class distribution of the product of k uniform N-cycles, by enumeration."""
    if k < 1:
        raise ValueError("k must be at least 1")
    _check_cap(N, class_view_cap() if cap is None else cap, "the class distribution")
    if method not in ("chain", "tuples"):
        raise ValueError(f"unknown method {method!r}")
    if method == "tuples" and factorial(N - 1) ** (k - 1) > 5_000_000:
        raise OracleRefused(f"tuple enumeration for N={N}, k={k} is too large; use method='chain'")
    return _exact_cached(N, k, method)


@lru_cache(maxsize=256)
def _exact_cached(N: int, k: int, method: str) -> ExactDistribution:
    classes = _distribution_chain(N, k) if method == "chain" else _distribution_tuples(N, k)
    return ExactDistribution(N, k, classes)


@lru_cache(maxsize=16)
def _symmetric_group(N: int) -> tuple[tuple[Permutation, CycleType], ...]:
    out = []
    for img in itertools.permutations(range(1, N + 1)):
        p = Permutation(img)
        out.append((p, cycle_type(p)))
    return tuple(out)


def event_probability(
    N: int,
    k: int,
    predicate: Callable[[Permutation], bool],
    cap: int | None = None,
) -> Fraction:
    """Exact P(predicate(sigma)) for sigma the product of k uniform N-cycles."""
    _check_cap(N, element_view_cap(k) if cap is None else cap, "S_N for an element-level event")
    dist = exact_product_distribution(N, k, cap=max(N, class_view_cap()) if cap is None else cap)
    hits: Counter[CycleType] = Counter()
    for p, ct in _symmetric_group(N):
        if dist.classes[ct] and predicate(p):
            hits[ct] += 1
    return sum(
        (dist.classes[ct] * Fraction(n, ct.class_size) for ct, n in hits.items()),
        Fraction(0),
    )
