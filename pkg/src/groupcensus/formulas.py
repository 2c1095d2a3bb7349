"""Closed-form counts of isomorphism types of groups of small-shape order.

Each shape of order (prime powers up to the fifth, square-free, p^2*q,
p^3*q, p^2*q^2, p^2*q*r) gets one authoritative formula function returning
a GroupCount with a term-by-term audit trail.  Summands are carried as
exact Fractions because a few are non-integral in isolation (the p^3*q
odd-odd branch pairs a /6 coefficient with a 2/3 correction) and only the
full sum collapses to an integer; integrality and the abelian lower bound
are asserted on every evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    Factorization,
    Shape,
    abelian_group_count,
    classify_shape,
    divisibility_indicator as ind,
    factorize,
    is_prime,
    partition_count,
)
from .errors import PrimeOverflowError, UnsupportedOrderError

# Cap on primes fed to the mixed-shape formulas, so every intermediate
# product stays well inside 128-bit range even off-CPython.  The square-free
# sum is exempt: it takes an already-validated Factorization.
MAX_FORMULA_PRIME = 2**31 - 1


@dataclass(frozen=True)
class GroupCount:
    """Number of isomorphism types of groups of order n, with audit trail.

    ``terms`` records every summand of the applied formula as a
    (label, value) pair with an exact rational value; within labels,
    [a|b] denotes the 0/1 indicator that a divides b.  Term values sum
    to ``count``.  ``special_case`` marks the tabulated small orders that
    override their shape's generic branch.  ``shape`` is the census
    classification tag of n.
    """

    n: int
    shape: Shape
    count: int
    terms: tuple[tuple[str, Fraction], ...]
    special_case: bool = False


def _build(n, shape, raw_terms, floor, special_case=False):
    """Assemble a GroupCount, asserting integrality and the abelian bound."""
    terms = tuple((label, Fraction(value)) for label, value in raw_terms)
    total = sum((value for _, value in terms), Fraction(0))
    if total.denominator != 1:
        raise AssertionError(f"term sum {total} for order {n} is not an integer")
    count = int(total)
    if count < floor:
        raise AssertionError(
            f"count {count} for order {n} is below the abelian bound {floor}"
        )
    return GroupCount(n, shape, count, terms, special_case)


def _require_distinct_primes(**named: int) -> None:
    for name, value in named.items():
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"{name} must be an int, got {type(value).__name__}")
        if value > MAX_FORMULA_PRIME:
            raise PrimeOverflowError(
                f"{name}={value} exceeds the supported prime bound {MAX_FORMULA_PRIME}"
            )
        if not is_prime(value):
            raise ValueError(f"{name}={value} is not prime")
    if len(set(named.values())) != len(named):
        raise ValueError(f"primes must be pairwise distinct, got {named}")


def count_prime_power(p: int, m: int) -> GroupCount:
    """Groups of order p**m for 1 <= m <= 5.

    Constant per exponent up to the fourth power (p = 2 exceptional at the
    fourth); at the fifth power the count is linear in p with two gcd
    corrections, with p = 2 and p = 3 tabulated separately.
    """
    _require_distinct_primes(p=p)
    if not 1 <= m <= 5:
        raise UnsupportedOrderError(
            f"prime powers are covered up to exponent 5, got {m}", exponents=(m,)
        )
    shape = (Shape.P, Shape.P2, Shape.P3, Shape.P4, Shape.P5)[m - 1]
    n = p**m
    floor = partition_count(m)
    if m <= 3:
        return _build(n, shape, [("constant", (1, 2, 5)[m - 1])], floor)
    if m == 4:
        if p == 2:
            return _build(n, shape, [("p=2 tabulated", 14)], floor, special_case=True)
        return _build(n, shape, [("constant", 15)], floor)
    if p == 2:
        return _build(n, shape, [("p=2 tabulated", 51)], floor, special_case=True)
    if p == 3:
        return _build(n, shape, [("p=3 tabulated", 71)], floor, special_case=True)
    terms = [
        ("2p", 2 * p),
        ("61", 61),
        ("2 gcd(p-1,3)", 2 * math.gcd(p - 1, 3)),
        ("gcd(p-1,4)", math.gcd(p - 1, 4)),
    ]
    return _build(n, shape, terms, floor)


def count_squarefree(f: Factorization) -> GroupCount:
    """Groups of square-free order, by the classical divisor sum.

    N(n) = sum over divisors m of n of prod over primes p of n/m of
    (p**c - 1)/(p - 1), where c counts the prime divisors q of m with
    q = 1 mod p.  One term per divisor m, zero terms included.  Accepts
    any number of prime factors; the dispatcher routes at most four here.
    """
    if any(e != 1 for _, e in f.factors):
        raise ValueError(f"{f.n} is not square-free")
    primes = [p for p, _ in f.factors]
    terms = []
    for m in f.divisors():
        inner = [q for q in primes if m % q == 0]
        value = 1
        for p in primes:
            if m % p == 0:
                continue
            c = sum(1 for q in inner if q % p == 1)
            value *= (p**c - 1) // (p - 1)
        terms.append((f"m={m}", value))
    return _build(f.n, classify_shape(f).tag, terms, abelian_group_count(f))


def count_p2q(p: int, q: int) -> GroupCount:
    """Groups of order p**2 * q, where p is the squared prime.

    Constant 5 for q = 2; otherwise a four-indicator sum whose GL-related
    part counts conjugacy classes of order-q subgroups of GL(2,p).
    """
    _require_distinct_primes(p=p, q=q)
    n = p * p * q
    if q == 2:
        return _build(n, Shape.P2Q, [("q=2 constant", 5)], 2)
    terms = [
        ("2", 2),
        ("(q+5)/2 [q|p-1]", Fraction(q + 5, 2) * ind(p - 1, q)),
        ("[q|p+1]", ind(p + 1, q)),
        ("2 [p|q-1]", 2 * ind(q - 1, p)),
        ("[p^2|q-1]", ind(q - 1, p * p)),
    ]
    return _build(n, Shape.P2Q, terms, 2)


def count_p3q(p: int, q: int) -> GroupCount:
    """Groups of order p**3 * q, where p is the cubed prime.

    Two tabulated overrides (orders 24 and 56), a constant branch for
    q = 2, a three-term branch for p = 2, and a four-line sum for p, q
    both odd whose summands are integral only in aggregate.
    """
    _require_distinct_primes(p=p, q=q)
    n = p**3 * q
    if (p, q) == (2, 3):
        return _build(n, Shape.P3Q, [("override n=24", 15)], 3, special_case=True)
    if (p, q) == (2, 7):
        return _build(n, Shape.P3Q, [("override n=56", 13)], 3, special_case=True)
    return _build(n, Shape.P3Q, _p3q_branch_terms(p, q), 3)


def _p3q_branch_terms(p, q):
    """Generic-branch summands for p**3 * q, bypassing the overrides."""
    if q == 2:
        return [("q=2 constant", 15)]
    if p == 2:
        return [
            ("12", 12),
            ("2 [4|q-1]", 2 * ind(q - 1, 4)),
            ("[8|q-1]", ind(q - 1, 8)),
        ]
    return [
        (
            "5 + (q^2+13q+36)/6 [q|p-1]",
            5 + Fraction(q * q + 13 * q + 36, 6) * ind(p - 1, q),
        ),
        ("(p+5) [p|q-1]", (p + 5) * ind(q - 1, p)),
        (
            "2/3 [3|q-1][q|p-1] + [q|(p+1)(p^2+p+1)](1-[q|p-1])",
            Fraction(2, 3) * ind(q - 1, 3) * ind(p - 1, q)
            + ind((p + 1) * (p * p + p + 1), q) * (1 - ind(p - 1, q)),
        ),
        (
            "[q|p+1] + 2 [p^2|q-1] + [p^3|q-1]",
            ind(p + 1, q) + 2 * ind(q - 1, p * p) + ind(q - 1, p**3),
        ),
    ]


def count_p2q2(p: int, q: int) -> GroupCount:
    """Groups of order p**2 * q**2; the two primes may come in either order."""
    _require_distinct_primes(p=p, q=q)
    if p > q:
        p, q = q, p
    n = (p * q) ** 2
    if (p, q) == (2, 3):
        return _build(n, Shape.P2Q2, [("override n=36", 14)], 4, special_case=True)
    return _build(n, Shape.P2Q2, _p2q2_branch_terms(p, q), 4)


def _p2q2_branch_terms(p, q):
    """Generic-branch summands for p**2 * q**2 with p < q."""
    if p == 2:
        return [("12", 12), ("4 [4|q-1]", 4 * ind(q - 1, 4))]
    return [
        ("4", 4),
        ("(p^2+p+4)/2 [p^2|q-1]", Fraction(p * p + p + 4, 2) * ind(q - 1, p * p)),
        ("(p+6) [p|q-1]", (p + 6) * ind(q - 1, p)),
        ("2 [p|q+1]", 2 * ind(q + 1, p)),
        ("[p^2|q+1]", ind(q + 1, p * p)),
    ]


def count_p2qr(p: int, q: int, r: int) -> GroupCount:
    """Groups of order p**2 * q * r, where p is the squared prime.

    The q, r arguments may come in either order.  One tabulated override
    (order 60, where the alternating group on five points appears); a
    five-term branch for q = 2; a nine-line sum otherwise.
    """
    _require_distinct_primes(p=p, q=q, r=r)
    if q > r:
        q, r = r, q
    n = p * p * q * r
    if (p, q, r) == (2, 3, 5):
        return _build(n, Shape.P2QR, [("override n=60", 13)], 2, special_case=True)
    return _build(n, Shape.P2QR, _p2qr_branch_terms(p, q, r), 2)


def _p2qr_branch_terms(p, q, r):
    """Generic-branch summands for p**2 * q * r with q < r."""
    if q == 2:
        return [
            ("10", 10),
            ("(2r+7) [r|p-1]", (2 * r + 7) * ind(p - 1, r)),
            ("3 [r|p+1]", 3 * ind(p + 1, r)),
            ("6 [p|r-1]", 6 * ind(r - 1, p)),
            ("2 [p^2|r-1]", 2 * ind(r - 1, p * p)),
        ]
    p2 = p * p
    return [
        (
            "2 + (p^2-p)[p^2|q-1][p^2|r-1]",
            2 + (p2 - p) * ind(q - 1, p2) * ind(r - 1, p2),
        ),
        (
            "(p-1)([p^2|q-1][p|r-1] + [p^2|r-1][p|q-1] + 2[p|r-1][p|q-1])",
            (p - 1)
            * (
                ind(q - 1, p2) * ind(r - 1, p)
                + ind(r - 1, p2) * ind(q - 1, p)
                + 2 * ind(r - 1, p) * ind(q - 1, p)
            ),
        ),
        (
            "(q-1)(q+4)/2 [q|p-1][q|r-1]",
            Fraction((q - 1) * (q + 4), 2) * ind(p - 1, q) * ind(r - 1, q),
        ),
        (
            "(q-1)/2 ([q|p+1][q|r-1] + [q|p-1] + [qr|p-1] + 2[pq|r-1][q|p-1])",
            Fraction(q - 1, 2)
            * (
                ind(p + 1, q) * ind(r - 1, q)
                + ind(p - 1, q)
                + ind(p - 1, q * r)
                + 2 * ind(r - 1, p * q) * ind(p - 1, q)
            ),
        ),
        ("(qr+1)/2 [qr|p-1]", Fraction(q * r + 1, 2) * ind(p - 1, q * r)),
        (
            "(r+5)/2 [r|p-1](1 + [q|p-1])",
            Fraction(r + 5, 2) * ind(p - 1, r) * (1 + ind(p - 1, q)),
        ),
        (
            "[qr|p^2-1] + 2[pq|r-1] + [p|r-1][q|p-1] + [p^2 q|r-1]",
            ind(p2 - 1, q * r)
            + 2 * ind(r - 1, p * q)
            + ind(r - 1, p) * ind(p - 1, q)
            + ind(r - 1, p2 * q),
        ),
        (
            "[p|r-1][p|q-1] + 2[p|q-1] + 3[q|p-1] + 2[p|r-1]",
            ind(r - 1, p) * ind(q - 1, p)
            + 2 * ind(q - 1, p)
            + 3 * ind(p - 1, q)
            + 2 * ind(r - 1, p),
        ),
        (
            "2[q|r-1] + [p^2|r-1] + [p^2|q-1] + [r|p+1] + [q|p+1]",
            2 * ind(r - 1, q)
            + ind(r - 1, p2)
            + ind(q - 1, p2)
            + ind(p + 1, r)
            + ind(p + 1, q),
        ),
    ]


def count_groups(n: int) -> GroupCount:
    """Count the isomorphism types of groups of order n.

    Covers every order with at most four prime factors counted with
    multiplicity, plus prime powers up to the fifth power.  Raises
    UnsupportedOrderError beyond that, and PrimeOverflowError when a
    mixed-shape formula would receive a prime above 2**31 - 1.
    """
    f = factorize(n)
    order_shape = classify_shape(f)
    tag = order_shape.tag
    if tag is Shape.UNSUPPORTED:
        exps = f.exponents
        raise UnsupportedOrderError(
            f"unsupported: {f.big_omega} prime factors (exponent multiset "
            f"{'+'.join(map(str, exps))}); covered orders have at most four "
            "prime factors, or are prime powers up to the fifth power",
            n=n,
            exponents=exps,
        )
    if tag is Shape.ONE:
        return _build(1, Shape.ONE, [("trivial", 1)], 1)
    if tag in (Shape.P, Shape.P2, Shape.P3, Shape.P4, Shape.P5):
        return count_prime_power(order_shape.roles["p"], f.factors[0][1])
    if tag in (Shape.PQ, Shape.PQR, Shape.PQRS):
        return count_squarefree(f)
    roles = order_shape.roles
    if tag is Shape.P2Q:
        return count_p2q(roles["p"], roles["q"])
    if tag is Shape.P3Q:
        return count_p3q(roles["p"], roles["q"])
    if tag is Shape.P2Q2:
        return count_p2q2(roles["p"], roles["q"])
    return count_p2qr(roles["p"], roles["q"], roles["r"])
