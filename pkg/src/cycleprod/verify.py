"""Cross-checks between the closed forms, the character engine, the oracle and sampling.

Each check reports ``pass``, ``fail`` or ``refused`` (the oracle declined to
enumerate at this size).  A formula routine raising
:class:`~cycleprod.cycles.FormulaMismatch` counts as a failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterator

from . import characters, cycles, subsets
from .characters import cycle_types
from .cycles import FormulaMismatch
from .montecarlo import McConfig, estimate_events
from .oracle import (
    OracleRefused,
    blocks,
    event_probability,
    exact_product_distribution,
    occupancy_ok,
    prefix_sets,
    separates,
)

SUITES = ("all", "characters", "cycles", "subsets", "identities", "oracle", "mc")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    status: str
    detail: str = ""


def compositions(n: int, max_parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of positive integers summing to n with at most ``max_parts`` entries."""
    if n == 0:
        return
    if max_parts >= 1:
        yield (n,)
    if max_parts >= 2:
        for first in range(1, n):
            for rest in compositions(n - first, max_parts - 1):
                yield (first,) + rest


def _run(suite: str, name: str, fn: Callable[[], int | str]) -> Check:
    try:
        res = fn()
    except OracleRefused as e:
        return Check(suite, name, "refused", str(e))
    except (FormulaMismatch, AssertionError) as e:
        return Check(suite, name, "fail", str(e))
    detail = f"{res} cases" if isinstance(res, int) else str(res)
    return Check(suite, name, "pass", detail)


def _expect(label: str, got: Fraction, want: Fraction) -> None:
    if got != want:
        raise AssertionError(f"{label}: {got} != {want}")


# -- suites -------------------------------------------------------------------


def _characters(N: int, k: int) -> Iterator[Check]:
    def vs_oracle() -> int:
        oracle = exact_product_distribution(N, k).classes
        formula = characters.product_class_distribution(N, k)
        for ct in cycle_types(N):
            _expect(f"class {ct}", formula[ct], oracle[ct])
        return len(formula)

    def frobenius() -> int:
        characters.frobenius_identity_count(N, k)
        return 1

    def class_sums() -> int:
        n = 0
        for nu in range(1, N + 1):
            for arm in range(1, N + 1):
                a = characters.class_character_sum(N, nu, arm)
                b = characters.class_character_sum_by_types(N, nu, arm)
                if a != b:
                    raise AssertionError(f"nu={nu}, arm={arm}: {a} != {b}")
                n += 1
        return n

    yield _run("characters", "class distribution = oracle", vs_oracle)
    yield _run("characters", "Frobenius count is integral", frobenius)
    yield _run("characters", "class character sums", class_sums)


def _cycles(N: int, k: int) -> Iterator[Check]:
    def normalised() -> int:
        _expect("sum over nu", sum(cycles.num_cycles_distribution(N, k).values(), Fraction(0)), Fraction(1))
        return 1

    def vs_oracle() -> int:
        oracle = exact_product_distribution(N, k).classes
        for nu in range(1, N + 1):
            want = sum((w for ct, w in oracle.items() if ct.num_cycles == nu), Fraction(0))
            _expect(f"nu={nu}", cycles.p_num_cycles(N, k, nu), want)
        full = characters.CycleType.full_cycle(N)
        ident = characters.CycleType.identity(N)
        _expect("is-cycle", cycles.p_is_cycle(N, k), oracle[full])
        _expect("identity", cycles.p_identity(N, k), oracle[ident])
        for x in range(-3, 8):
            want = sum((w * Fraction(x) ** ct.num_cycles for ct, w in oracle.items()), Fraction(0))
            _expect(f"pgf x={x}", cycles.pgf_num_cycles(N, k, x), want)
        if k == 2:
            for ct in cycle_types(N):
                _expect(f"type {ct}", cycles.p_cycle_type_k2(ct), oracle[ct])
        return N + 13

    def k2_closed() -> int:
        if k != 2:
            return "not applicable for k != 2"
        for x in range(-3, 8):
            _expect(f"pgf x={x}", cycles.pgf_num_cycles(N, 2, x), cycles.pgf_k2_closed(N, x))
        for nu in range(1, N + 1):
            _expect(f"nu={nu}", cycles.zagier_prob(N, nu), cycles.p_num_cycles(N, 2, nu))
        return N + 11

    def k3_cycle() -> int:
        if k != 3:
            return "not applicable for k != 3"
        _expect("k=3 cycle", cycles.p3_is_cycle(N), cycles.p_is_cycle(N, 3))
        return 1

    yield _run("cycles", "cycle-count law sums to 1", normalised)
    yield _run("cycles", "cycle statistics = oracle", vs_oracle)
    yield _run("cycles", "two-factor closed forms", k2_closed)
    yield _run("cycles", "three-factor cycle form", k3_cycle)


def _subsets(N: int, k: int) -> Iterator[Check]:
    everything = range(N + 1)

    def occupancy() -> int:
        n = 0
        for ell in range(0, N + 1):
            for A in (
                subsets.OccupancySet.positive(),
                subsets.OccupancySet.zero_or_ell(),
                subsets.OccupancySet.of(0, 1),
                subsets.OccupancySet.of(1, 2),
            ):
                allowed = A.members(ell, N)
                want = event_probability(N, k, lambda p: occupancy_ok(p, ell, allowed))
                _expect(f"A={A}, ell={ell}", subsets.p_occupancy(subsets.OccupancySpec(N, ell, A), k), want)
                n += 1
            if ell >= 1:
                want = event_probability(N, k, lambda p: occupancy_ok(p, ell, set(everything) - {0}))
                _expect(f"A1 ell={ell}", subsets.p_A1(N, ell, k), want)
                n += 1
            want = event_probability(N, k, lambda p: occupancy_ok(p, ell, {0, ell}))
            _expect(f"A2 ell={ell}", subsets.p_A2(N, ell, k), want)
            n += 1
        return n

    def separation() -> int:
        n = 0
        for ell in range(1, N + 1):
            for sizes in compositions(ell, 4):
                sets = prefix_sets(sizes)
                want = event_probability(N, k, lambda p: separates(p, sets))
                _expect(f"sets {sizes}", subsets.p_separation(N, sizes, k), want)
                n += 1
        return n

    def blocking() -> int:
        for ell in range(N + 1):
            want = event_probability(N, k, lambda p: blocks(p, ell))
            _expect(f"ell={ell}", subsets.p_blocking(N, ell, k), want)
        return N + 1

    def derangement() -> int:
        if k != 2:
            return "not applicable for k != 2"
        want = event_probability(N, 2, lambda p: all(p(i) != i for i in range(1, N + 1)))
        _expect("derangement", subsets.p_derangement_k2(N), want)
        return 1

    yield _run("subsets", "occupancy = oracle", occupancy)
    yield _run("subsets", "separation = oracle", separation)
    yield _run("subsets", "blocking = oracle", blocking)
    yield _run("subsets", "derangement = oracle", derangement)


def _identities(N: int, k: int) -> Iterator[Check]:
    def snab() -> int:
        n = 0
        for a in range(N + 1):
            for b in range(N - a + 1):
                subsets.S_nab(N, a, b)
                n += 1
        return n

    def kcoeff() -> int:
        n = 0
        for ell in range(1, N + 1):
            for t in range(1, ell + 1):
                for r in range(-1, N + 2):
                    subsets.K_coeff(N, ell, t, r)
                    n += 1
                if subsets.K_coeff(N, ell, t, N) != 0:
                    raise AssertionError(f"K({N},{ell},{t};N) != 0")
        return n

    def wz() -> int:
        n = 0
        for ell in range(2, N + 1):
            for t in range(2, ell + 1):
                subsets.sigma_wz(N, ell, t)
                n += 1
        return n

    def separation_forms() -> int:
        if k != 2:
            return "not applicable for k != 2"
        n = 0
        for ell in range(1, N + 1):
            for sizes in compositions(ell, 4):
                spec = subsets.SeparationSpec(N, sizes)
                values = subsets.separation_k2_agreement(spec)
                if len(set(values.values())) != 1:
                    raise AssertionError(f"sets {sizes}: {values}")
                n += 1
        return n

    def occupancy_forms() -> int:
        if k != 2:
            return "not applicable for k != 2"
        for ell in range(1, N + 1):
            subsets.p_A1_k2(N, ell)
            subsets.p_A2_k2(N, ell)
        return N

    yield _run("identities", "S_nab evaluators agree", snab)
    yield _run("identities", "K closed form = series", kcoeff)
    yield _run("identities", "WZ sum = closed form", wz)
    yield _run("identities", "two-factor separation forms agree", separation_forms)
    yield _run("identities", "two-factor occupancy forms agree", occupancy_forms)


def _oracle(N: int, k: int) -> Iterator[Check]:
    def routes() -> int | str:
        if factorial(N - 1) ** (k - 1) > 5_000_000:
            return "tuple route too large at this size; chain route only"
        chain = exact_product_distribution(N, k, "chain").classes
        tuples = exact_product_distribution(N, k, "tuples").classes
        for ct in cycle_types(N):
            _expect(f"class {ct}", chain[ct], tuples[ct])
        return len(chain)

    yield _run("oracle", "chain route = tuple route", routes)


def _mc(N: int, k: int, seed: int, trials: int = 20_000) -> Iterator[Check]:
    events: list[tuple[str, Fraction]] = [
        ("is-cycle", cycles.p_is_cycle(N, k)),
        ("identity", cycles.p_identity(N, k)),
    ]
    if N >= 1:
        events.append(("blocks:1", subsets.p_blocking(N, 1, k)))
    if N >= 2:
        events.append(("separates:1,1", subsets.p_separation(N, (1, 1), k)))
        events.append(("a2:2", subsets.p_A2(N, 2, k)))

    def run() -> str:
        cfg = McConfig(N, k, trials, seed, 0.99)
        results = estimate_events(cfg, [name for name, _ in events])
        for res, (name, exact) in zip(results, events):
            if not res.contains(exact):
                raise AssertionError(f"{name}: exact {float(exact)} outside [{res.low}, {res.high}]")
        return f"{len(events)} events, {trials} trials, 99% Wilson"

    yield _run("mc", "exact value inside interval", run)


def run_suite(suite: str, N: int, k: int, seed: int = 12345) -> list[Check]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if N < 1 or k < 1:
        raise ValueError("need N >= 1 and k >= 1")
    chosen = SUITES[1:] if suite == "all" else (suite,)
    out: list[Check] = []
    for s in chosen:
        if s == "characters":
            out.extend(_characters(N, k))
        elif s == "cycles":
            out.extend(_cycles(N, k))
        elif s == "subsets":
            out.extend(_subsets(N, k))
        elif s == "identities":
            out.extend(_identities(N, k))
        elif s == "oracle":
            out.extend(_oracle(N, k))
        elif s == "mc":
            out.extend(_mc(N, k, seed))
    return out
