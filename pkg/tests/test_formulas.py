from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from groupcensus.arith import Shape, abelian_group_count, divisibility_indicator, factorize
from groupcensus.errors import PrimeOverflowError, UnsupportedOrderError
from groupcensus.formulas import (
    MAX_FORMULA_PRIME,
    count_groups,
    count_p2q,
    count_p2q2,
    count_p2qr,
    count_p3q,
    count_prime_power,
    count_squarefree,
    _p2q2_branch_terms,
    _p2qr_branch_terms,
    _p3q_branch_terms,
)
from groupcensus.gl_oracle import predicted_subgroup_classes

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

# Spot values checked by hand against the closed forms, with the brute-force
# oracles backing the ones within reach (see the verification suites).
KNOWN_COUNTS = {
    1: 1, 2: 1, 4: 2, 8: 5, 16: 14, 32: 51, 81: 15, 243: 71, 343: 5,
    7 ** 5: 83, 11 ** 5: 87, 6: 2, 10: 2, 15: 1, 30: 4, 210: 12,
    12: 5, 18: 5, 20: 5, 28: 4, 50: 5, 63: 4, 147: 6, 325: 2,
    24: 15, 56: 13, 88: 12, 104: 14, 136: 15, 375: 7,
    36: 14, 100: 16, 225: 6, 441: 13,
    60: 13, 84: 15, 126: 16, 140: 11, 294: 23, 350: 10,
}


def test_known_counts():
    for n, want in sorted(KNOWN_COUNTS.items()):
        assert count_groups(n).count == want, n


def test_terms_sum_to_count():
    for n in sorted(KNOWN_COUNTS):
        gc = count_groups(n)
        assert sum((v for _, v in gc.terms), Fraction(0)) == gc.count, n


def test_prime_powers():
    assert count_prime_power(5, 1).count == 1
    assert count_prime_power(13, 2).count == 2
    assert count_prime_power(3, 3).count == 5
    assert count_prime_power(2, 4).count == 14
    assert count_prime_power(5, 4).count == 15
    assert count_prime_power(2, 5).count == 51
    assert count_prime_power(3, 5).count == 71
    assert count_prime_power(5, 5).count == 2 * 5 + 61 + 2 * 1 + 4 == 77
    assert count_prime_power(7, 5).count == 83


def test_prime_power_special_case_flags():
    assert count_prime_power(2, 4).special_case
    assert count_prime_power(2, 5).special_case
    assert count_prime_power(3, 5).special_case
    assert not count_prime_power(3, 4).special_case
    assert not count_prime_power(7, 5).special_case
    assert not count_prime_power(2, 3).special_case


def test_prime_power_rejects():
    with pytest.raises(ValueError):
        count_prime_power(4, 2)
    with pytest.raises(ValueError):
        count_prime_power(3, 6)
    with pytest.raises(ValueError):
        count_prime_power(3, 0)


def test_squarefree_any_length():
    assert count_squarefree(factorize(2 * 3 * 5 * 7 * 11)).count == 36
    assert count_squarefree(factorize(1)).count == 1
    assert count_squarefree(factorize(7)).count == 1
    with pytest.raises(ValueError):
        count_squarefree(factorize(12))


def test_squarefree_term_per_divisor():
    gc = count_squarefree(factorize(30))
    assert len(gc.terms) == 8
    labels = [label for label, _ in gc.terms]
    assert "m=30" in labels and "m=15" in labels
    by_label = dict(gc.terms)
    assert by_label["m=30"] == 1
    assert by_label["m=15"] == 3


def test_overrides_flagged_and_diverging():
    for n, want in ((24, 15), (56, 13), (36, 14), (60, 13)):
        gc = count_groups(n)
        assert gc.count == want
        assert gc.special_case
    assert sum(v for _, v in _p3q_branch_terms(2, 3)) == 12
    assert sum(v for _, v in _p3q_branch_terms(2, 7)) == 12
    assert sum(v for _, v in _p2q2_branch_terms(2, 3)) == 12
    assert sum(v for _, v in _p2qr_branch_terms(2, 3, 5)) == 12


def test_p2q2_normalizes_arguments():
    assert count_p2q2(7, 3).count == count_p2q2(3, 7).count == 13
    assert count_p2q2(5, 2).n == 100
    assert count_p2q2(2, 5).count == count_p2q2(5, 2).count == 16


def test_p2qr_normalizes_arguments():
    a = count_p2qr(2, 7, 5)
    b = count_p2qr(2, 5, 7)
    assert a.count == b.count == 11
    assert a.n == b.n == 140
    with pytest.raises(ValueError):
        count_p2qr(2, 5, 5)


def test_p2qr_line_values():
    by_value = [v for _, v in count_p2qr(2, 5, 7).terms]
    assert by_value == [2, 3, 0, 0, 0, 0, 0, 5, 1]
    by_value = [v for _, v in count_p2qr(2, 3, 7).terms]
    assert by_value == [2, 2, 0, 1, 0, 0, 2, 5, 3]
    by_value = [v for _, v in count_p2qr(3, 2, 7).terms]
    assert sum(by_value) == 16


def test_p2q_q2_is_constant_five():
    for p in (3, 5, 7, 11, 13, 101):
        gc = count_p2q(p, 2)
        assert gc.count == 5
        assert not gc.special_case


def test_p3q_even_branches():
    assert count_p3q(2, 11).count == 12
    assert count_p3q(2, 13).count == 14
    assert count_p3q(2, 17).count == 15
    assert count_p3q(3, 2).count == 15
    assert count_p3q(5, 2).count == 15


def test_p3q_q3_simplification():
    """For odd p, the q=3 case collapses to a two-indicator form."""
    for p in (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 97):
        want = (
            5
            + 14 * divisibility_indicator(p - 1, 3)
            + 2 * divisibility_indicator(p + 1, 3)
        )
        assert count_p3q(p, 3).count == want, p


def test_gl_term_consistency():
    """The subgroup-class term inside the p^2*q formula is the GL(2,p)
    class count plus one extra diagonalisable class."""
    for p in (2, 3, 5, 7, 11, 13):
        for q in (3, 5, 7, 11, 13):
            if p == q:
                continue
            lhs = Fraction(q + 5, 2) * divisibility_indicator(p - 1, q) \
                + divisibility_indicator(p + 1, q)
            rhs = predicted_subgroup_classes(2, p, q) \
                + divisibility_indicator(p - 1, q)
            assert lhs == rhs, (p, q)


def test_dispatcher_unsupported():
    for n in (360, 64, 2 ** 6, 3 ** 7, 2 * 3 * 5 * 7 * 11):
        with pytest.raises(UnsupportedOrderError):
            count_groups(n)
    try:
        count_groups(360)
    except UnsupportedOrderError as exc:
        assert "unsupported: 6 prime factors" in str(exc)
        assert exc.n == 360
        assert exc.exponents == (3, 2, 1)


def test_prime_overflow():
    big = 2 ** 31 + 11
    with pytest.raises(PrimeOverflowError):
        count_p2q(big, 2)
    with pytest.raises(PrimeOverflowError):
        count_p3q(2, big)
    boundary = 2 ** 31 - 1
    assert boundary <= MAX_FORMULA_PRIME
    assert count_p2q(boundary, 2).count == 5
    gc = count_groups(2 * boundary * boundary)
    assert gc.shape is Shape.P2Q
    assert gc.count == 5


def test_squarefree_exempt_from_prime_cap():
    p = 2 ** 61 - 1
    gc = count_groups(2 * p)
    assert gc.shape is Shape.PQ
    assert gc.count == 2


def test_rejects_non_prime_arguments():
    with pytest.raises(ValueError):
        count_p2q(6, 5)
    with pytest.raises(ValueError):
        count_p2q(5, 5)
    with pytest.raises(TypeError):
        count_p2q(5.0, 3)
    with pytest.raises(TypeError):
        count_p2q(True, 3)


@given(st.sampled_from(SMALL_PRIMES), st.sampled_from(SMALL_PRIMES))
def test_p2q_floor_and_integrality(p, q):
    assume(p != q)
    gc = count_p2q(p, q)
    assert isinstance(gc.count, int)
    assert gc.count >= 2
    assert sum((v for _, v in gc.terms), Fraction(0)) == gc.count


@given(st.sampled_from(SMALL_PRIMES), st.sampled_from(SMALL_PRIMES))
def test_p3q_floor_and_integrality(p, q):
    assume(p != q)
    gc = count_p3q(p, q)
    assert gc.count >= 3
    assert sum((v for _, v in gc.terms), Fraction(0)) == gc.count


@given(st.sampled_from(SMALL_PRIMES), st.sampled_from(SMALL_PRIMES))
def test_p2q2_floor_and_integrality(p, q):
    assume(p != q)
    gc = count_p2q2(p, q)
    assert gc.count >= 4
    assert sum((v for _, v in gc.terms), Fraction(0)) == gc.count


@given(st.sampled_from(SMALL_PRIMES), st.sampled_from(SMALL_PRIMES),
       st.sampled_from(SMALL_PRIMES))
@settings(max_examples=300)
def test_p2qr_floor_and_integrality(p, q, r):
    assume(len({p, q, r}) == 3)
    gc = count_p2qr(p, q, r)
    assert gc.count >= 2
    assert sum((v for _, v in gc.terms), Fraction(0)) == gc.count


@given(st.integers(min_value=2, max_value=3000))
@settings(max_examples=300, deadline=None)
def test_dispatcher_floor(n):
    f = factorize(n)
    try:
        gc = count_groups(n)
    except UnsupportedOrderError:
        return
    assert gc.count >= abelian_group_count(f)
    assert gc.count >= 1
    assert gc.n == n
