from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cycleprod.characters import CycleType, cycle_types, product_class_distribution
from cycleprod.cycles import (
    ProductSpec,
    num_cycles_distribution,
    p3_is_cycle,
    p_all_same_length,
    p_cycle_type_k2,
    p_identity,
    p_involution_k2,
    p_is_cycle,
    p_num_cycles,
    p_same_length_2,
    p_same_length_3,
    pgf_k2_closed,
    pgf_num_cycles,
    zagier_prob,
)
from cycleprod.exact import binomial
from cycleprod.oracle import event_probability, exact_product_distribution


def test_product_spec_validation():
    with pytest.raises(ValueError):
        ProductSpec(0, 2)
    with pytest.raises(ValueError):
        ProductSpec(3, 0)


@pytest.mark.parametrize(
    "N, k, nu, expected",
    [(2, 2, 2, 1), (3, 2, 2, 0), (3, 2, 1, Fraction(1, 2)), (5, 2, 5, Fraction(1, 24))],
)
def test_num_cycles_examples(N, k, nu, expected):
    assert p_num_cycles(N, k, nu) == expected


def test_num_cycles_out_of_range_is_zero():
    assert p_num_cycles(4, 2, 0) == 0
    assert p_num_cycles(4, 2, 5) == 0


@pytest.mark.parametrize("N", range(1, 11))
@pytest.mark.parametrize("k", range(1, 5))
def test_cycle_count_law_sums_to_one(N, k):
    assert sum(num_cycles_distribution(N, k).values()) == 1


@pytest.mark.parametrize("N", range(1, 9))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_cycle_count_matches_class_distribution(N, k):
    dist = product_class_distribution(N, k)
    for nu in range(1, N + 1):
        assert p_num_cycles(N, k, nu) == sum(v for ct, v in dist.items() if ct.num_cycles == nu)


def test_identity_examples():
    assert p_identity(5, 2) == Fraction(1, 24)
    assert p_identity(4, 3) == 0
    assert p_identity(5, 3) == Fraction(1, 72)


def test_single_factor_degenerate_cases():
    assert p_identity(1, 1) == 1
    for N in range(2, 8):
        assert p_identity(N, 1) == 0
        assert p_is_cycle(N, 1) == 1


def test_is_cycle_examples():
    assert p_is_cycle(5, 2) == Fraction(1, 3)
    assert p_is_cycle(4, 2) == 0


@pytest.mark.parametrize("N", range(1, 10))
@pytest.mark.parametrize("k", range(1, 4))
def test_cycle_probability_identity_relation(N, k):
    from math import factorial

    assert p_is_cycle(N, k) == factorial(N - 1) * p_identity(N, k + 1)


def test_pgf_examples():
    assert pgf_num_cycles(5, 2, 2) == 7
    assert pgf_num_cycles(3, 2, 3) == 15
    assert pgf_k2_closed(3, 3) == 15


@given(st.integers(1, 10), st.integers(1, 5))
def test_pgf_normalised(N, k):
    assert pgf_num_cycles(N, k, 1) == 1


@given(st.integers(1, 12), st.fractions(min_value=-5, max_value=8, max_denominator=7))
def test_pgf_k2_two_routes(N, x):
    assert pgf_num_cycles(N, 2, x) == pgf_k2_closed(N, x)


@given(st.integers(1, 7), st.integers(1, 4), st.fractions(min_value=-3, max_value=4, max_denominator=5))
def test_pgf_is_expectation_over_class_law(N, k, x):
    dist = product_class_distribution(N, k)
    assert pgf_num_cycles(N, k, x) == sum(v * x**ct.num_cycles for ct, v in dist.items())


@pytest.mark.parametrize("N", range(2, 13))
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_expected_power_of_two(N, k):
    assert pgf_num_cycles(N, k, 2) == N + 1 + Fraction((-1) ** k) / Fraction(N - 1) ** (k - 2)


@pytest.mark.parametrize("N", range(3, 11))
@pytest.mark.parametrize("k", [2, 3, 4])
def test_expected_power_of_three(N, k):
    # binomial(N+2, 2) + (-1)**k (N+1)(N-1)**(2-k) + binomial(N-1, 2)**(2-k)
    want = binomial(N + 2, 2) + (-1) ** k * (N + 1) * Fraction(N - 1) ** (2 - k) + Fraction(binomial(N - 1, 2)) ** (2 - k)
    assert pgf_num_cycles(N, k, 3) == want


def test_zagier_examples():
    assert zagier_prob(3, 1) == Fraction(1, 2)
    assert zagier_prob(5, 2) == 0
    assert zagier_prob(4, 4) == Fraction(1, 6)


@pytest.mark.parametrize("N", range(1, 13))
def test_zagier_matches_cycle_count_law(N):
    for nu in range(1, N + 1):
        assert zagier_prob(N, nu) == p_num_cycles(N, 2, nu)


def test_three_factor_cycle_examples():
    assert p3_is_cycle(2) == 1
    for N in range(1, 13):
        assert p3_is_cycle(N) == p_is_cycle(N, 3)


def test_cycle_type_k2_examples():
    assert p_cycle_type_k2(CycleType.identity(3)) == Fraction(1, 2)
    assert p_cycle_type_k2(CycleType.parse("2,2")) == Fraction(1, 6)
    for N in range(1, 10):
        assert p_cycle_type_k2(CycleType.full_cycle(N)) == Fraction(1 + (-1) ** (N + 1), N + 1)


@pytest.mark.parametrize("N", range(1, 10))
def test_cycle_type_k2_is_the_class_law(N):
    dist = product_class_distribution(N, 2)
    total = Fraction(0)
    for ct in cycle_types(N):
        v = p_cycle_type_k2(ct)
        assert v == dist[ct]
        total += v
    assert total == 1


def test_same_length_examples():
    assert p_all_same_length(4, 2) == Fraction(1, 6)
    assert p_all_same_length(6, 2) == 0
    assert p_all_same_length(8, 2) == Fraction(1, 240)
    assert 5040 * p_all_same_length(8, 2) == 21
    with pytest.raises(ValueError):
        p_all_same_length(7, 2)


@pytest.mark.parametrize("N", range(2, 25, 2))
def test_transposition_closed_form(N):
    assert p_same_length_2(N) == p_all_same_length(N, 2)


@pytest.mark.parametrize("N", range(3, 25, 3))
def test_three_cycle_closed_form(N):
    assert p_same_length_3(N) == p_all_same_length(N, 3)


def test_involution_examples():
    assert p_involution_k2(2) == 1
    assert p_involution_k2(3) == Fraction(1, 2)
    assert p_involution_k2(4) == Fraction(1, 3)


@pytest.mark.parametrize("N", range(1, 8))
def test_involution_matches_oracle(N):
    want = event_probability(N, 2, lambda p: p * p == type(p).identity(N))
    assert p_involution_k2(N) == want


@pytest.mark.parametrize("N", range(1, 9))
def test_cycle_statistics_match_oracle(N):
    classes = exact_product_distribution(N, 2).classes
    assert p_is_cycle(N, 2) == classes[CycleType.full_cycle(N)]
    assert p_identity(N, 2) == classes[CycleType.identity(N)]
