import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cycleprod.characters import CycleType, cycle_types
from cycleprod.cycles import FormulaMismatch, p_identity, p_is_cycle
from cycleprod.exact import binomial
from cycleprod.oracle import blocks, event_probability, occupancy_ok, prefix_sets, separates
from cycleprod.subsets import (
    BlockingSpec,
    K_coeff,
    K_coeff_closed,
    K_coeff_series,
    OccupancySet,
    OccupancySpec,
    Q_A,
    S_nab,
    S_nab_direct,
    SeparationSpec,
    alternating_beta_sum,
    blocked_cycle_count,
    inverse_binomial_tail,
    p_A1,
    p_A1_k2,
    p_A2,
    p_A2_k2,
    p_blocking,
    p_blocking_by_classes,
    p_derangement_k2,
    p_occupancy,
    p_separation,
    p_separation_full,
    p_separation_k2_bernardi,
    p_separation_k2_final,
    p_separation_k2_integral,
    p_separation_k2_pre_wz,
    p_separation_k2_smallcomp,
    separation_k2_agreement,
    sigma_wz,
    sigma_wz_closed,
    sigma_wz_sum,
)
from cycleprod.verify import compositions

# -- specs and parsing --------------------------------------------------------


def test_occupancy_set_parsing():
    assert OccupancySet.parse("A=positive") == OccupancySet.positive()
    assert OccupancySet.parse("0,ell") == OccupancySet.zero_or_ell()
    assert OccupancySet.parse("A={1,2}") == OccupancySet.of(1, 2)
    assert OccupancySet.parse("{}") == OccupancySet.of()
    with pytest.raises(ValueError):
        OccupancySet.parse("{a,b}")


def test_occupancy_set_membership():
    assert OccupancySet.zero_or_ell().members(3, 5) == {0, 3}
    assert OccupancySet.positive().members(3, 4) == {1, 2, 3, 4}


def test_spec_validation():
    with pytest.raises(ValueError):
        OccupancySpec(3, 4, OccupancySet.positive())
    with pytest.raises(ValueError):
        SeparationSpec(3, (2, 2))
    with pytest.raises(ValueError):
        SeparationSpec(3, (0, 1))
    with pytest.raises(ValueError):
        SeparationSpec(3, ())
    with pytest.raises(ValueError):
        BlockingSpec(2, 3)


# -- occupancy ----------------------------------------------------------------


def test_Q_A_examples():
    everything = OccupancySet.of(*range(6))
    for ct in cycle_types(5):
        assert Q_A(ct, OccupancySpec(5, 3, everything)) == ct.class_size
    assert Q_A(CycleType.full_cycle(6), OccupancySpec(6, 6, OccupancySet.zero_or_ell())) == factorial(5)
    assert Q_A(CycleType.parse("2,1"), OccupancySpec(3, 2, OccupancySet.of(0, 1))) == 2


def test_occupancy_examples():
    assert p_occupancy(OccupancySpec(3, 2, OccupancySet.of(0, 1)), 2) == Fraction(1, 2)
    assert p_occupancy(OccupancySpec(3, 2, OccupancySet.of(0, 2)), 2) == Fraction(1, 2)


@pytest.mark.parametrize("N", range(1, 10))
@pytest.mark.parametrize("k", [2, 3])
def test_occupancy_special_sets_match_theorems(N, k):
    for ell in range(1, N + 1):
        assert p_occupancy(OccupancySpec(N, ell, OccupancySet.positive()), k) == p_A1(N, ell, k)
        assert p_occupancy(OccupancySpec(N, ell, OccupancySet.zero_or_ell()), k) == p_A2(N, ell, k)


def test_A1_examples():
    assert p_A1(5, 1, 2) == Fraction(1, 3)
    assert p_A1(4, 1, 2) == 0
    assert p_A1(3, 2, 2) == Fraction(1, 2)


@given(st.integers(1, 15), st.integers(1, 5))
def test_A1_single_element_is_cycle_probability(N, k):
    assert p_A1(N, 1, k) == p_is_cycle(N, k)


@given(st.integers(1, 15), st.integers(1, 5))
def test_A2_full_set_is_cycle_probability(N, k):
    assert p_A2(N, N, k) == p_is_cycle(N, k)


def test_A2_examples_and_conventions():
    assert p_A2(3, 2, 2) == Fraction(1, 2)
    assert p_A2(5, 0, 2) == 1
    assert p_A2(5, 1, 3) == 1
    assert p_A2_k2(5, 1) == 1


def test_A2_leading_behaviour():
    N, ell = 30, 2
    correction = p_A2_k2(N, ell) - (Fraction(1, 2) - Fraction(1, 31 * 30))
    inner = Fraction(1, binomial(N + ell, ell)) + N * Fraction((-1) ** N * binomial(N - 1, 0), N + ell)
    assert correction == (-1) ** (ell + 1) * inner / (ell * binomial(N, ell))


@pytest.mark.parametrize("N", range(1, 21))
def test_two_factor_occupancy_forms(N):
    for ell in range(1, N + 1):
        p_A1_k2(N, ell)
        p_A2_k2(N, ell)


# -- S_{n,a,b} and companions -------------------------------------------------


def test_S_nab_examples():
    assert S_nab(2, 0, 0) == Fraction(3, 2)
    assert S_nab(1, 0, 0) == 0
    assert S_nab(3, 1, 1) == Fraction(-5, 3)


@given(st.integers(0, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n), st.integers(0, min(12, n)))))
def test_S_nab_evaluators_agree(nab):
    n, a, b = nab
    assume(a + b <= n)
    assert S_nab(n, a, b) == S_nab_direct(n, a, b)


def test_S_nab_rejects_bad_parameters():
    with pytest.raises(ValueError):
        S_nab(3, 2, 2)


@given(st.integers(0, 20).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_inverse_binomial_tail(na):
    inverse_binomial_tail(*na)


@given(st.integers(0, 20), st.integers(0, 20))
def test_alternating_beta_sum(u, v):
    alternating_beta_sum(u, v)


# -- separation ---------------------------------------------------------------


def test_K_examples():
    assert K_coeff(4, 2, 2, 1) == 2
    for N in range(2, 9):
        for t in range(1, N + 1):
            for r in range(N):
                assert K_coeff(N, N, t, r) == (-1) ** (r - N + t) * binomial(t - 1, r - N + t)
            for ell in range(t, N + 1):
                assert K_coeff(N, ell, t, N) == 0


@given(st.integers(1, 14).flatmap(lambda N: st.tuples(st.just(N), st.integers(1, N))).flatmap(
    lambda p: st.tuples(st.just(p[0]), st.just(p[1]), st.integers(1, p[1]), st.integers(-2, p[0] + 2))
))
def test_K_two_routes(args):
    assert K_coeff_closed(*args) == K_coeff_series(*args)


def test_separation_examples():
    assert p_separation(SeparationSpec(3, (1, 1)), 2) == Fraction(1, 2)
    assert p_separation(SeparationSpec(3, (1, 1, 1)), 2) == Fraction(1, 2) == p_identity(3, 2)
    assert p_separation_full(SeparationSpec(3, (1, 1, 1))) == Fraction(1, 2)
    assert p_separation_k2_bernardi(SeparationSpec(5, (1, 1))) == Fraction(1, 2)
    spec = SeparationSpec(6, (2, 1))
    assert p_separation_k2_final(spec) == p_separation_k2_bernardi(spec) == p_separation(spec, 2)
    assert p_separation_k2_smallcomp(spec) == p_separation_k2_integral(spec) == p_separation(spec, 2)
    with pytest.raises(ValueError):
        p_separation_full(SeparationSpec(4, (1, 1)))


def test_separation_call_forms():
    assert p_separation(5, (2, 1), 3) == p_separation(SeparationSpec(5, (2, 1)), 3)


@pytest.mark.parametrize("N", range(1, 13))
def test_two_factor_separation_forms_agree(N):
    for ell in range(1, N + 1):
        for sizes in compositions(ell, 4):
            values = separation_k2_agreement(SeparationSpec(N, sizes))
            assert len(set(values.values())) == 1, (sizes, values)


@given(st.integers(1, 12), st.integers(1, 4), st.data())
@settings(max_examples=60)
def test_separation_depends_on_sizes_through_factorials(N, k, data):
    ell = data.draw(st.integers(1, N))
    sizes = data.draw(st.sampled_from(list(compositions(ell, 4))))
    other = data.draw(st.sampled_from([c for c in compositions(ell, 4) if len(c) == len(sizes)]))
    a = p_separation(SeparationSpec(N, sizes), k)
    b = p_separation(SeparationSpec(N, other), k)
    fa = SeparationSpec(N, sizes).size_factorials
    fb = SeparationSpec(N, other).size_factorials
    assert a * fb == b * fa


@pytest.mark.parametrize("N", range(1, 13))
def test_singletons_with_odd_complement(N):
    for ell in range(1, min(5, N) + 1):
        if (N - ell) % 2:
            assert p_separation(SeparationSpec(N, (1,) * ell), 2) == Fraction(1, factorial(ell))


def test_pre_collapse_form_needs_two_sets():
    with pytest.raises(ValueError):
        p_separation_k2_pre_wz(SeparationSpec(4, (2,)))


def test_sigma_wz_examples():
    assert sigma_wz(8, 5, 3) == sigma_wz_sum(8, 5, 3)
    assert sigma_wz(10, 6, 2) == sigma_wz_closed(10, 6, 2)
    from cycleprod.exact import falling

    for N in range(2, 10):
        for t in range(2, N + 1):
            assert sigma_wz(N, t, t) == Fraction(falling(N - 1, t - 2), factorial(t - 2) * (N + t))
    with pytest.raises(ValueError):
        sigma_wz(5, 3, 1)


@pytest.mark.parametrize("N", range(2, 17))
def test_sigma_wz_grid(N):
    for ell in range(2, min(N, 12) + 1):
        for t in range(2, ell + 1):
            assert sigma_wz_sum(N, ell, t) == sigma_wz_closed(N, ell, t)


def test_derangement_examples():
    assert p_derangement_k2(2) == 0
    assert p_derangement_k2(3) == Fraction(1, 2)
    assert p_derangement_k2(1) == 0


# -- blocking -----------------------------------------------------------------


def test_blocked_cycle_count_examples():
    assert blocked_cycle_count(0, 4) == factorial(3)
    assert blocked_cycle_count(1, 1) == 1
    assert blocked_cycle_count(2, 2) == 2
    with pytest.raises(ValueError):
        blocked_cycle_count(1, 0)


def _brute_blocked_cycles(a, b):
    # directed cycles on marked 0..a-1 and unmarked a..a+b-1, first element pinned
    n = a + b
    count = 0
    for rest in itertools.permutations(range(1, n)):
        cyc = (0,) + rest
        if all(not (cyc[i] < a and cyc[(i + 1) % n] < a) for i in range(n)):
            if n > 1 or a == 0:
                count += 1
    return count


@pytest.mark.parametrize("a, b", [(a, b) for a in range(0, 4) for b in range(1, 5)])
def test_blocked_cycle_count_by_enumeration(a, b):
    assert blocked_cycle_count(a, b) == _brute_blocked_cycles(a, b)


def test_blocking_examples():
    assert p_blocking(3, 2, 2) == 0
    assert p_blocking(4, 1, 2) == Fraction(2, 3)
    assert p_blocking(BlockingSpec(4, 1), 2) == Fraction(2, 3)
    assert p_blocking(7, 0, 3) == 1
    limit = Fraction(binomial(4, 2), binomial(6, 2))
    assert abs(p_blocking(6, 2, 10) - limit) == Fraction(binomial(3, 1), 5**9 * 15)


@pytest.mark.parametrize("N", range(1, 21))
def test_blocking_is_a_probability(N):
    for ell in range(N + 1):
        for k in range(1, 7):
            assert 0 <= p_blocking(N, ell, k) <= 1


@pytest.mark.parametrize("N", range(1, 10))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_blocking_formula_matches_class_sum(N, k):
    for ell in range(N + 1):
        assert p_blocking(N, ell, k) == p_blocking_by_classes(N, ell, k)


# -- against the oracle -------------------------------------------------------

ORACLE_GRID = [(N, 2) for N in range(1, 8)] + [(N, k) for N in range(1, 6) for k in (1, 3)]


@pytest.mark.parametrize("N, k", ORACLE_GRID)
def test_subset_events_match_oracle(N, k):
    for ell in range(N + 1):
        for A in (OccupancySet.positive(), OccupancySet.zero_or_ell(), OccupancySet.of(0, 1), OccupancySet.of(1, 2)):
            allowed = A.members(ell, N)
            want = event_probability(N, k, lambda p: occupancy_ok(p, ell, allowed))
            got = p_occupancy(OccupancySpec(N, ell, A), k)
            assert got == want
            assert 0 <= got <= 1
        assert p_blocking(N, ell, k) == event_probability(N, k, lambda p: blocks(p, ell))
        for sizes in compositions(ell, 4):
            sets = prefix_sets(sizes)
            assert p_separation(N, sizes, k) == event_probability(N, k, lambda p: separates(p, sets))
    if k == 2:
        assert p_derangement_k2(N) == event_probability(N, 2, lambda p: all(p(i) != i for i in range(1, N + 1)))


def test_mismatch_is_reported():
    from cycleprod.cycles import _agree

    with pytest.raises(FormulaMismatch):
        _agree("demo", Fraction(1), Fraction(2))
