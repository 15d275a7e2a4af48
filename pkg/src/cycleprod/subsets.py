"""How a prefix set [l] = {1..l} is spread over the cycles of the product.

Three families of events:

* occupancy: the number of elements of [l] in every cycle lies in a set A
  (A = positive integers, A = {0, l}, or any finite set);
* separation: no cycle meets two of the disjoint sets S_1, ..., S_t, taken as
  consecutive blocks of sizes l_1, ..., l_t (by relabelling, any placement has
  the same probability);
* blocking: no two elements of [l] are cyclic neighbours and each has a
  neighbour outside [l].

Closed forms that come in several equivalent shapes are all evaluated and
compared; a disagreement raises :class:`~cycleprod.cycles.FormulaMismatch`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .characters import CycleType, cycle_types, per_permutation_probability
from .cycles import FormulaMismatch, _agree, p_identity
from .exact import FormalSeries, binomial, factorial, falling, neg_one_pow, poly_integrate_01, rising

__all__ = [
    "OccupancySet",
    "OccupancySpec",
    "SeparationSpec",
    "BlockingSpec",
    "Q_A",
    "p_occupancy",
    "p_A1",
    "p_A1_k2",
    "p_A2",
    "p_A2_k2",
    "S_nab",
    "S_nab_direct",
    "S_nab_expl",
    "S_nab_expl2",
    "inverse_binomial_tail",
    "alternating_beta_sum",
    "K_coeff",
    "K_coeff_closed",
    "K_coeff_series",
    "p_separation",
    "p_separation_k2_bernardi",
    "p_separation_k2_final",
    "p_separation_k2_smallcomp",
    "p_separation_k2_integral",
    "p_separation_k2_pre_wz",
    "p_separation_full",
    "separation_k2_agreement",
    "p_derangement_k2",
    "sigma_wz",
    "sigma_wz_sum",
    "sigma_wz_closed",
    "p_blocking",
    "p_blocking_by_classes",
    "blocked_cycle_count",
]


# -- specs --------------------------------------------------------------------


@dataclass(frozen=True)
class OccupancySet:
    """Allowed per-cycle counts of elements of [l].

    ``kind`` is ``"positive"`` (every cycle meets [l]), ``"zero_or_ell"``
    (all of [l] in one cycle) or ``"finite"`` (explicit ``values``).
    """

    kind: str
    values: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.kind not in ("positive", "zero_or_ell", "finite"):
            raise ValueError(f"unknown occupancy kind {self.kind!r}")
        if any(v < 0 for v in self.values):
            raise ValueError("occupancy counts are non-negative")

    @classmethod
    def positive(cls) -> "OccupancySet":
        return cls("positive")

    @classmethod
    def zero_or_ell(cls) -> "OccupancySet":
        return cls("zero_or_ell")

    @classmethod
    def of(cls, *values: int) -> "OccupancySet":
        return cls("finite", frozenset(values))

    @classmethod
    def parse(cls, text: str) -> "OccupancySet":
        """Accepts ``positive``, ``0,ell`` or ``{a1,a2,...}`` (an ``A=`` prefix is ignored)."""
        t = text.strip()
        if t.startswith("A="):
            t = t[2:].strip()
        if t in ("positive", "Z>0", "pos"):
            return cls.positive()
        if t.replace(" ", "") in ("0,ell", "{0,ell}"):
            return cls.zero_or_ell()
        m = re.fullmatch(r"\{?\s*(\d+(?:\s*,\s*\d+)*)?\s*\}?", t)
        if not m:
            raise ValueError(f"cannot parse occupancy set {text!r}")
        vals = [int(v) for v in (m.group(1) or "").split(",") if v.strip()]
        return cls.of(*vals)

    def contains(self, a: int, ell: int) -> bool:
        if self.kind == "positive":
            return a > 0
        if self.kind == "zero_or_ell":
            return a in (0, ell)
        return a in self.values

    def members(self, ell: int, upto: int) -> frozenset[int]:
        return frozenset(a for a in range(upto + 1) if self.contains(a, ell))

    def __str__(self) -> str:
        if self.kind == "positive":
            return "positive"
        if self.kind == "zero_or_ell":
            return "0,ell"
        return "{" + ",".join(map(str, sorted(self.values))) + "}"


@dataclass(frozen=True)
class OccupancySpec:
    N: int
    ell: int
    A: OccupancySet

    def __post_init__(self) -> None:
        if not 0 <= self.ell <= self.N:
            raise ValueError(f"need 0 <= ell <= N, got ell={self.ell}, N={self.N}")

    def allowed(self) -> frozenset[int]:
        """Resolved membership over the only counts that can occur, 0..ell."""
        return self.A.members(self.ell, self.ell)


@dataclass(frozen=True)
class SeparationSpec:
    N: int
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if not self.sizes:
            raise ValueError("need at least one set")
        if any(s < 1 for s in self.sizes):
            raise ValueError("set sizes must be positive")
        if self.ell > self.N:
            raise ValueError(f"total size {self.ell} exceeds N={self.N}")

    @property
    def ell(self) -> int:
        return sum(self.sizes)

    @property
    def t(self) -> int:
        return len(self.sizes)

    @property
    def size_factorials(self) -> int:
        out = 1
        for s in self.sizes:
            out *= factorial(s)
        return out


@dataclass(frozen=True)
class BlockingSpec:
    N: int
    ell: int

    def __post_init__(self) -> None:
        if not 0 <= self.ell <= self.N:
            raise ValueError(f"need 0 <= ell <= N, got ell={self.ell}, N={self.N}")


def _sep(spec_or_N: SeparationSpec | int, sizes: Sequence[int] | None) -> SeparationSpec:
    if isinstance(spec_or_N, SeparationSpec):
        return spec_or_N
    if sizes is None:
        raise TypeError("pass a SeparationSpec or (N, sizes)")
    return SeparationSpec(spec_or_N, tuple(sizes))


# -- occupancy ----------------------------------------------------------------


def Q_A(ctype: CycleType, spec: OccupancySpec) -> int:
    """Number of permutations of type ``ctype`` whose cycles all have an allowed [l]-count."""
    if spec.N != ctype.N:
        raise ValueError("cycle type and occupancy spec disagree on N")
    ell = spec.ell
    acc = FormalSeries.one(ell)
    for r, m in ctype.counts:
        per_cycle = FormalSeries(
            [Fraction(binomial(r, a), r) if a <= r and spec.A.contains(a, ell) else 0 for a in range(ell + 1)],
            ell,
        )
        acc = acc * (per_cycle**m) * Fraction(1, factorial(m))
    val = factorial(spec.N - ell) * factorial(ell) * acc.coeff(ell)
    if val.denominator != 1:
        raise ArithmeticError(f"Q_A is not an integer: {val}")
    return int(val)


def p_occupancy(spec: OccupancySpec, k: int) -> Fraction:
    """P(every cycle of sigma holds an allowed number of elements of [l]), summed over classes."""
    return sum(
        (per_permutation_probability(spec.N, k, ct) * Q_A(ct, spec) for ct in cycle_types(spec.N)),
        Fraction(0),
    )


def p_A1(N: int, ell: int, k: int) -> Fraction:
    """P(every cycle of sigma meets [l])."""
    if not 1 <= ell <= N:
        raise ValueError("need 1 <= ell <= N")
    s = Fraction(0)
    for arm in range(ell, N + 1):
        s += (
            neg_one_pow((k - 1) * (N - arm))
            * Fraction(binomial(N - 1, N - arm)) ** (1 - k)
            * binomial(arm - 1, ell - 1)
        )
    return s / binomial(N, ell)


def p_A1_k2(N: int, ell: int) -> Fraction:
    """k = 2 case of :func:`p_A1` through its two short sums and the S_{n,a,b} reduction."""
    if not 1 <= ell <= N:
        raise ValueError("need 1 <= ell <= N")
    bracket = Fraction(neg_one_pow(ell - 1), (N + ell) * binomial(N + ell - 1, ell - 1))
    for j in range(ell):
        bracket += Fraction(neg_one_pow(N + ell - j) * binomial(N, j), N + ell - j)
    short_ell = neg_one_pow(N - 1) * N * bracket / binomial(N, ell)

    alt = sum((Fraction(neg_one_pow(i) * binomial(N, i), i + ell) for i in range(N - ell + 1)), Fraction(0))
    short_rest = neg_one_pow(N + ell) * N * alt / binomial(N, ell)

    via_s = neg_one_pow(N - 1) * S_nab(N - 1, 0, ell - 1) / binomial(N, ell)
    return _agree("p_A1_k2", short_ell, short_rest, via_s, p_A1(N, ell, 2))


def p_A2(N: int, ell: int, k: int) -> Fraction:
    """P(all of [l] lies in a single cycle of sigma); 1 for l in {0, 1}."""
    if not 0 <= ell <= N:
        raise ValueError("need 0 <= ell <= N")
    if ell < 2:
        return Fraction(1)
    s = Fraction(0)
    for arm in range(1, N + 1):
        if arm < N:
            brace = binomial(N - 1, ell - 1) - binomial(N - arm - 1, ell - 1)
        else:
            brace = binomial(N, ell)
        s += neg_one_pow((k + 1) * (N - arm)) * Fraction(binomial(N - 1, arm - 1)) ** (1 - k) * brace
    return s / (ell * binomial(N, ell))


def p_A2_k2(N: int, ell: int) -> Fraction:
    """k = 2 case of :func:`p_A2`: the r-sum, the short-l form and the short-(N-l) form."""
    if not 0 <= ell <= N:
        raise ValueError("need 0 <= ell <= N")
    if ell < 2:
        return Fraction(1)
    rsum = Fraction(0)
    for r in range(1, N):
        rsum += Fraction(neg_one_pow(r) * (binomial(N - 1, ell - 1) - binomial(r - 1, ell - 1)), binomial(N - 1, r))
    by_r = Fraction(1, ell) + rsum / (ell * binomial(N, ell))

    head = Fraction(1, ell) - Fraction(1, (N + 1) * N)
    inner = Fraction(1, binomial(N + ell, ell))
    for j in range(ell - 1):
        inner += N * Fraction(neg_one_pow(N - j) * binomial(N - 1, j), N + ell - j)
    short_ell = head + neg_one_pow(ell + 1) * inner / (ell * binomial(N, ell))

    tail = sum(
        (Fraction(neg_one_pow(i) * binomial(N - 1, i), i + ell + 1) for i in range(N - ell + 1)),
        Fraction(0),
    )
    short_rest = head + neg_one_pow(ell + 1) * tail / binomial(N - 1, ell - 1)
    return _agree("p_A2_k2", by_r, short_ell, short_rest, p_A2(N, ell, 2))


# -- S_{n,a,b} ----------------------------------------------------------------


def _check_nab(n: int, a: int, b: int) -> None:
    if a < 0 or b < 0 or a + b > n:
        raise ValueError(f"need a, b >= 0 and a + b <= n, got n={n}, a={a}, b={b}")


def S_nab_direct(n: int, a: int, b: int) -> Fraction:
    """sum_{r=a+b}^{n} (-1)**r binomial(r-a, b) / binomial(n, r)."""
    _check_nab(n, a, b)
    return sum(
        (Fraction(neg_one_pow(r) * binomial(r - a, b), binomial(n, r)) for r in range(a + b, n + 1)),
        Fraction(0),
    )


def S_nab_expl(n: int, a: int, b: int) -> Fraction:
    """b + 2 term form, cheap when b is small."""
    _check_nab(n, a, b)
    s = Fraction(neg_one_pow(a + b), (n + 2 + b) * binomial(n + b + 1, a + b))
    for j in range(b + 1):
        s += Fraction(neg_one_pow(n + b - j) * binomial(n - a + 1, j), n + 2 + b - j)
    return (n + 1) * s


def S_nab_expl2(n: int, a: int, b: int) -> Fraction:
    """n - a - b + 1 term form, cheap when n - a - b is small."""
    _check_nab(n, a, b)
    s = sum(
        (Fraction(neg_one_pow(i) * binomial(n - a + 1, i), i + a + b + 1) for i in range(n - a - b + 1)),
        Fraction(0),
    )
    return neg_one_pow(a + b) * (n + 1) * s


def S_nab(n: int, a: int, b: int) -> Fraction:
    value = _agree("S_nab", S_nab_direct(n, a, b), S_nab_expl(n, a, b), S_nab_expl2(n, a, b))
    if a == 0 and b == 0:
        _agree("S_n00", value, Fraction((1 + neg_one_pow(n)) * (n + 1), n + 2))
    return value


def inverse_binomial_tail(n: int, a: int) -> Fraction:
    """sum_{r=a}^{n} (-1)**r / binomial(n, r), checked against its two-term closed form."""
    if not 0 <= a <= n:
        raise ValueError("need 0 <= a <= n")
    direct = sum((Fraction(neg_one_pow(r), binomial(n, r)) for r in range(a, n + 1)), Fraction(0))
    closed = Fraction(n + 1, n + 2) * (Fraction(neg_one_pow(a), binomial(n + 1, a)) + neg_one_pow(n))
    return _agree("inverse_binomial_tail", direct, closed)


def alternating_beta_sum(u: int, v: int) -> Fraction:
    """sum_{j=0}^{u} (-1)**j binomial(u, j) / (v + j + 1) = 1 / ((u+v+1) binomial(u+v, v))."""
    if u < 0 or v < 0:
        raise ValueError("need u, v >= 0")
    direct = sum((Fraction(neg_one_pow(j) * binomial(u, j), v + j + 1) for j in range(u + 1)), Fraction(0))
    closed = Fraction(1, (u + v + 1) * binomial(u + v, v))
    return _agree("alternating_beta_sum", direct, closed)


# -- separation ---------------------------------------------------------------


def K_coeff_closed(N: int, ell: int, t: int, r: int) -> int:
    """Single-sum evaluation of K(N, l, t; r)."""
    delta = ell - t
    top = r - delta
    if top < 0:
        return 0
    total = 0
    for j in range(max(0, top - (t - 1)), min(top, N - ell) + 1):
        if t >= 2:
            zc = binomial(N - delta - j - 2, t - 2)
        else:
            # (1-z)**0 contributes only its constant term
            zc = 1 if j == N - ell else 0
        total += neg_one_pow(top - j) * binomial(ell + j, j) * binomial(t - 1, top - j) * zc
    return total


def K_coeff_series(N: int, ell: int, t: int, r: int) -> int:
    """[xi**(r-l+t) z**(N-l)] (1-xi)**(t-1) (1-z)**(1-t) (1-xi z)**(-l-1) by staged extraction."""
    deg_xi = r - ell + t
    deg_z = N - ell
    if deg_xi < 0 or deg_z < 0:
        return 0
    # z-coefficients of (1 - xi z)**(-l-1), each a series in xi
    xi_cap = deg_xi
    z_coeffs = [FormalSeries.monomial(j, xi_cap, binomial(ell + j, j)) for j in range(deg_z + 1)]
    one_minus_z = FormalSeries.binomial_power(1 - t, deg_z, c=-1)
    # multiply by (1 - z)**(1 - t): convolution in z with scalar coefficients
    coeff_z = FormalSeries.zero(xi_cap)
    for j in range(deg_z + 1):
        coeff_z = coeff_z + z_coeffs[j] * one_minus_z.coeff(deg_z - j)
    val = (coeff_z * FormalSeries.binomial_power(t - 1, xi_cap, c=-1)).coeff(deg_xi)
    if val.denominator != 1:
        raise ArithmeticError("K is not an integer")
    return int(val)


def K_coeff(N: int, ell: int, t: int, r: int) -> int:
    """K(N, l, t; r), checked between the closed sum and the series extraction."""
    a, b = K_coeff_closed(N, ell, t, r), K_coeff_series(N, ell, t, r)
    if a != b:
        raise FormulaMismatch(f"K({N},{ell},{t};{r}): closed {a} != series {b}")
    return a


@lru_cache(maxsize=4096)
def _separation_core(N: int, ell: int, t: int, k: int) -> Fraction:
    # everything except prod_j l_j!
    alpha = t - 1 if k % 2 else N + t
    s = Fraction(0)
    for r in range(max(ell - t, 0), N):
        K = K_coeff(N, ell, t, r)
        if K:
            s += neg_one_pow((k + 1) * r) * Fraction(binomial(N - 1, r)) ** (1 - k) * K
    return neg_one_pow(alpha) * s / falling(N, ell)


def p_separation(spec: SeparationSpec | int, k: int | Sequence[int], k_: int | None = None) -> Fraction:
    """P(sigma separates S_1, ..., S_t) for any k >= 1.

    Call as ``p_separation(spec, k)`` or ``p_separation(N, sizes, k)``.
    """
    if isinstance(spec, SeparationSpec):
        sp, kk = spec, k
    else:
        sp, kk = SeparationSpec(spec, tuple(k)), k_
    if not isinstance(kk, int) or kk < 1:
        raise ValueError("k must be a positive integer")
    value = sp.size_factorials * _separation_core(sp.N, sp.ell, sp.t, kk)
    if sp.ell == sp.N:
        # t-term form available when the sets cover [N]
        beta = sp.N - 1 if kk % 2 else 0
        s = Fraction(0)
        for r in range(sp.N - sp.t, sp.N):
            s += (
                neg_one_pow(kk * r)
                * Fraction(binomial(sp.N - 1, r)) ** (1 - kk)
                * binomial(sp.t - 1, r - sp.N + sp.t)
            )
        full = neg_one_pow(beta) * sp.size_factorials * s / falling(sp.N, sp.ell)
        _agree("p_separation (l = N)", value, full)
    return value


def p_separation_k2_bernardi(spec: SeparationSpec | int, sizes: Sequence[int] | None = None) -> Fraction:
    """Two-cycle separation probability, alternating sum with l - t + 2 terms."""
    sp = _sep(spec, sizes)
    N, ell, t = sp.N, sp.ell, sp.t
    delta = ell - t
    inner = Fraction(neg_one_pow(N + ell) * binomial(N - 1, t - 2), binomial(N + ell, delta))
    for j in range(delta + 1):
        inner += Fraction(neg_one_pow(j) * binomial(delta, j) * binomial(N + j + 1, ell), binomial(N + t + j, j))
    return Fraction(factorial(N - ell) * sp.size_factorials, (N + t) * factorial(N - 1)) * inner


def p_separation_k2_final(spec: SeparationSpec | int, sizes: Sequence[int] | None = None) -> Fraction:
    """Two-cycle separation probability, non-alternating sum with l - t + 1 terms."""
    sp = _sep(spec, sizes)
    N, ell, t = sp.N, sp.ell, sp.t
    delta = ell - t
    first = Fraction(neg_one_pow(N + ell) * binomial(N - 1, t - 2), binomial(N + ell, delta))
    s = Fraction(0)
    for nu in range(delta + 1):
        s += Fraction(factorial(N + ell - nu - 1) * falling(N - 1, nu), factorial(delta - nu) * falling(N - t, nu))
    pref = Fraction((N + t) * falling(N + 1, ell + 1), (N - t + 1) * factorial(N + ell) * falling(ell, t))
    return Fraction(factorial(N - ell) * sp.size_factorials, factorial(N - 1) * (N + t)) * (first + pref * s)


def p_separation_k2_smallcomp(spec: SeparationSpec | int, sizes: Sequence[int] | None = None) -> Fraction:
    """Two-cycle separation probability with N - l + 1 terms."""
    sp = _sep(spec, sizes)
    N, ell, t = sp.N, sp.ell, sp.t
    s = Fraction(0)
    for m in range(N - ell + 1):
        # [z**m] (1-z)**(1-t); equals binomial(t+m-2, t-2) whenever t >= 2
        zc = binomial(t + m - 2, m)
        s += Fraction(neg_one_pow(m) * zc * binomial(N - m, ell), (N - t + 1) * binomial(N - t, m))
    return Fraction(N * sp.size_factorials, falling(N, ell)) * s


def p_separation_k2_integral(spec: SeparationSpec | int, sizes: Sequence[int] | None = None) -> Fraction:
    """Two-cycle separation probability as [z**(N-l)] (1-z)**(1-t) times a u-integral.

    Each z-coefficient of the integrand is a polynomial in u integrated exactly.
    """
    sp = _sep(spec, sizes)
    N, ell, t = sp.N, sp.ell, sp.t
    M = N - ell
    integral_coeffs = []
    for m in range(M + 1):
        # [z**m] (1-u)**(N+1) u**(l-t) (1-u+zu)**(-l-1) = C(-l-1, m) u**(l-t+m) (1-u)**(N-l-m)
        deg = N - t
        poly = FormalSeries.monomial(ell - t + m, deg) * FormalSeries.binomial_power(N - ell - m, deg, c=-1)
        integral_coeffs.append(binomial(-ell - 1, m) * poly_integrate_01(poly))
    outer = FormalSeries.binomial_power(1 - t, M, c=-1)
    extracted = sum((outer.coeff(M - m) * integral_coeffs[m] for m in range(M + 1)), Fraction(0))
    return Fraction(neg_one_pow(N + ell) * N * sp.size_factorials, falling(N, ell)) * extracted


def sigma_wz_sum(N: int, ell: int, t: int) -> Fraction:
    """The ordinary sum S(t) over j = 1 .. l-1."""
    delta = ell - t
    s = Fraction(0)
    for j in range(1, ell):
        num = rising(t + 1, j - 1) * falling(j - 1, delta) * binomial(N - j - 1, ell - j - 1)
        if num:
            s += Fraction(num, rising(t + 1, delta) * rising(N + 2, j))
    return s


def sigma_wz_closed(N: int, ell: int, t: int) -> Fraction:
    delta = ell - t
    return Fraction(falling(N - 1, t - 2) * factorial(delta), factorial(t - 2) * rising(N + t, delta + 1))


def sigma_wz(N: int, ell: int, t: int) -> Fraction:
    """S(t) = S*(t), the identity behind the short separation formula; returns the common value."""
    if not 2 <= t <= ell <= N:
        raise ValueError("need 2 <= t <= l <= N")
    return _agree("sigma_wz", sigma_wz_sum(N, ell, t), sigma_wz_closed(N, ell, t))


def p_separation_k2_pre_wz(spec: SeparationSpec | int, sizes: Sequence[int] | None = None) -> Fraction:
    """Two-cycle separation probability before the S(t) sum is collapsed.

    Uses the raw j-sum and the raw (mu, nu) double sum; also checks the
    reordered single nu-sum of the double sum.
    """
    sp = _sep(spec, sizes)
    N, ell, t = sp.N, sp.ell, sp.t
    if t < 2:
        raise ValueError("the pre-collapse form needs t >= 2")
    delta = ell - t
    double = Fraction(0)
    for mu in range(delta + 1):
        for nu in range(mu, delta + 1):
            double += Fraction(
                binomial(delta, mu) * falling(ell - 1, mu) * binomial(delta - mu, delta - nu)
                * falling(N + ell - nu - 1, 2 * ell - mu - 1),
                binomial(N - t, nu),
            )
    reordered = Fraction(factorial(delta), factorial(N - ell)) * sum(
        (
            Fraction(factorial(N + ell - nu - 1) * binomial(N - 1, nu), factorial(delta - nu) * binomial(N - t, nu))
            for nu in range(delta + 1)
        ),
        Fraction(0),
    )
    _agree("separation double sum", double, reordered)
    bracket = neg_one_pow(N + ell) * sigma_wz_sum(N, ell, t) + double / (
        factorial(ell) * rising(N + 2, ell - 1) * (N - t + 1)
    )
    return Fraction(N * sp.size_factorials, falling(N, ell)) * bracket


def p_separation_full(spec: SeparationSpec | int, sizes: Sequence[int] | None = None) -> Fraction:
    """Two-cycle separation probability when the sets cover all of [N]."""
    sp = _sep(spec, sizes)
    if sp.ell != sp.N:
        raise ValueError(f"sets cover {sp.ell} of {sp.N} elements; this form needs l = N")
    return Fraction(sp.size_factorials, factorial(sp.N - 1) * (sp.N - sp.t + 1))


def separation_k2_agreement(spec: SeparationSpec) -> dict[str, Fraction]:
    """Every applicable k = 2 separation evaluator, keyed by name (no equality enforced)."""
    out = {
        "lemma": p_separation(spec, 2),
        "bernardi": p_separation_k2_bernardi(spec),
        "final": p_separation_k2_final(spec),
        "smallcomp": p_separation_k2_smallcomp(spec),
        "integral": p_separation_k2_integral(spec),
    }
    if spec.t >= 2:
        out["pre_wz"] = p_separation_k2_pre_wz(spec)
    if spec.ell == spec.N:
        out["full"] = p_separation_full(spec)
    return out


def p_derangement_k2(N: int) -> Fraction:
    """P(product of two N-cycles has no fixed point)."""
    if N < 1:
        raise ValueError("N must be positive")
    s = sum((Fraction(neg_one_pow(tau), (N - tau) * factorial(tau)) for tau in range(N)), Fraction(0))
    value = N * s + Fraction(neg_one_pow(N), factorial(N - 1))
    if N >= 2:
        # inclusion-exclusion over fixed sets: j fixed points = separation of j singletons and the rest
        ie = Fraction(0)
        for j in range(N + 1):
            if j == N:
                fixed = p_identity(N, 2)
            elif j == 0:
                fixed = Fraction(1)
            else:
                fixed = p_separation_full(N, [1] * j + [N - j])
            ie += neg_one_pow(j) * binomial(N, j) * fixed
        _agree("p_derangement_k2", value, ie)
    return value


# -- blocking -----------------------------------------------------------------


def blocked_cycle_count(a: int, b: int) -> int:
    """Directed cycles on a marked and b unmarked elements with no two marked adjacent."""
    if a < 0 or b < 0:
        raise ValueError("counts must be non-negative")
    if b == 0:
        raise ValueError("a cycle with no unmarked element cannot block its marked elements")
    return factorial(b - 1) * factorial(a) * binomial(b, a)


def p_blocking(spec: BlockingSpec | int, ell: int | None = None, k: int | None = None) -> Fraction:
    """P(sigma blocks [l]); call as ``p_blocking(spec, k)`` or ``p_blocking(N, l, k)``."""
    if isinstance(spec, BlockingSpec):
        sp, kk = spec, ell
    else:
        sp, kk = BlockingSpec(spec, ell), k
    if not isinstance(kk, int) or kk < 1:
        raise ValueError("k must be a positive integer")
    N, l = sp.N, sp.ell
    first = Fraction(binomial(N - l, l), binomial(N, l))
    # binomial(N-l-1, l-1) read as [y**(N-2l)] (1-y)**(-l): zero once 2l > N
    second_num = binomial(N - l - 1, N - 2 * l) if l >= 1 else 0
    if not second_num:
        return first
    return first + neg_one_pow(kk + 1) * Fraction(second_num, (N - 1) ** (kk - 1) * binomial(N, l))


def _Q_blocking(ctype: CycleType, ell: int) -> int:
    N = ctype.N
    acc = FormalSeries.one(ell)
    for r, m in ctype.counts:
        per_cycle = FormalSeries(
            [Fraction(binomial(r - a, a), r - a) if r - a > 0 else 0 for a in range(ell + 1)],
            ell,
        )
        acc = acc * (per_cycle**m) * Fraction(1, factorial(m))
    val = factorial(N - ell) * factorial(ell) * acc.coeff(ell)
    if val.denominator != 1:
        raise ArithmeticError("blocking count is not an integer")
    return int(val)


def p_blocking_by_classes(N: int, ell: int, k: int) -> Fraction:
    """Blocking probability summed class by class from the admissible-permutation counts."""
    BlockingSpec(N, ell)
    return sum(
        (per_permutation_probability(N, k, ct) * _Q_blocking(ct, ell) for ct in cycle_types(N)),
        Fraction(0),
    )
