"""Integer arithmetic underpinning the group census.

Deterministic factorisation, classification of an order by the shape of its
exponent multiset, the divisibility indicator that all counting formulas are
written in, and the abelian lower bound.  Everything here is exact; no floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cache

MAX_ORDER = 2**63 - 1

_TRIAL_LIMIT = 1_000_000

# Witness set proven sufficient for all n < 3.3e24, far beyond MAX_ORDER.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test, exact for n <= 2**63 - 1."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Proper factor of an odd composite n, found with Brent's cycle variant.

    Deterministic: the polynomial offset c is swept in a fixed order.
    """
    if n % 2 == 0:
        return 2
    if n % 3 == 0:
        return 3
    for c in range(1, 1000):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            y = ys
            while g == 1:
                y = (y * y + c) % n
                g = math.gcd(abs(x - y), n)
        if 1 < g < n:
            return g
    raise ArithmeticError(f"factor search exhausted for {n}")


@dataclass(frozen=True)
class Factorization:
    """Prime factorisation of an order n = prod(p**e), 1 <= n <= 2**63 - 1.

    ``factors`` is a tuple of (prime, exponent) pairs with strictly increasing
    primes.  Construction re-checks every invariant, so a Factorization in
    hand is always trustworthy.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_ORDER:
            raise ValueError(f"order must be in [1, {MAX_ORDER}], got {self.n}")
        product = 1
        prev = 1
        for p, e in self.factors:
            if p <= prev:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be positive")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prev = p
            product *= p**e
        if product != self.n:
            raise ValueError(f"factors multiply to {product}, not {self.n}")

    @property
    def big_omega(self) -> int:
        """Number of prime factors counted with multiplicity."""
        return sum(e for _, e in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(sorted((e for _, e in self.factors), reverse=True))

    def divisors(self) -> list[int]:
        """All divisors of n in ascending order."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)


def factorize(n: int) -> Factorization:
    """Factor n deterministically.

    Trial division by a 2-3-5 wheel up to 10**6, with an early primality
    certificate once trial division has passed 10**4, then Brent splitting
    for any remaining composite cofactor.  Rejects n = 0 and n > 2**63 - 1.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"order must be an int, got {type(n).__name__}")
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"order must be in [1, {MAX_ORDER}], got {n}")
    counts: dict[int, int] = {}
    remaining = n
    for d in (2, 3, 5):
        while remaining % d == 0:
            counts[d] = counts.get(d, 0) + 1
            remaining //= d
    d = 7
    wi = 0
    certified = False
    while remaining > 1 and d * d <= remaining and d <= _TRIAL_LIMIT:
        if remaining % d == 0:
            e = 0
            while remaining % d == 0:
                remaining //= d
                e += 1
            counts[d] = e
        d += _WHEEL[wi]
        wi = (wi + 1) % 8
        if not certified and d > 10_000 and remaining > 1:
            certified = True
            if is_prime(remaining):
                break
    stack = [remaining] if remaining > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        f = _pollard_brent(m)
        stack += [f, m // f]
    return Factorization(n, tuple(sorted(counts.items())))


class Shape(Enum):
    """Shape of an order's exponent multiset, e.g. p^2*q for n = 12."""

    ONE = "1"
    P = "p"
    P2 = "p^2"
    PQ = "p*q"
    P3 = "p^3"
    P2Q = "p^2*q"
    PQR = "p*q*r"
    P4 = "p^4"
    P3Q = "p^3*q"
    P2Q2 = "p^2*q^2"
    P2QR = "p^2*q*r"
    PQRS = "p*q*r*s"
    P5 = "p^5"
    UNSUPPORTED = "unsupported"


SUPPORTED_SHAPES = frozenset(Shape) - {Shape.UNSUPPORTED}

_SHAPE_BY_EXPONENTS = {
    (): Shape.ONE,
    (1,): Shape.P,
    (2,): Shape.P2,
    (1, 1): Shape.PQ,
    (3,): Shape.P3,
    (1, 2): Shape.P2Q,
    (1, 1, 1): Shape.PQR,
    (4,): Shape.P4,
    (1, 3): Shape.P3Q,
    (2, 2): Shape.P2Q2,
    (1, 1, 2): Shape.P2QR,
    (1, 1, 1, 1): Shape.PQRS,
    (5,): Shape.P5,
}


@dataclass(frozen=True)
class OrderShape:
    """Shape tag plus the named prime bindings the counting formulas expect.

    Role conventions: for p^2*q and p^3*q, ``p`` is the repeated prime; for
    p^2*q^2 the primes are bound with p < q; for p^2*q*r, ``p`` is the squared
    prime and q < r; square-free shapes bind primes in ascending order.
    """

    tag: Shape
    roles: dict[str, int]


def classify_shape(f: Factorization) -> OrderShape:
    """Shape of the order's exponent multiset, with role bindings."""
    exps = tuple(sorted(e for _, e in f.factors))
    tag = _SHAPE_BY_EXPONENTS.get(exps, Shape.UNSUPPORTED)
    roles: dict[str, int] = {}
    if tag in (Shape.P, Shape.P2, Shape.P3, Shape.P4, Shape.P5):
        roles["p"] = f.factors[0][0]
    elif tag in (Shape.PQ, Shape.PQR, Shape.PQRS):
        for name, (p, _) in zip("pqrs", f.factors):
            roles[name] = p
    elif tag in (Shape.P2Q, Shape.P3Q):
        for p, e in f.factors:
            roles["p" if e > 1 else "q"] = p
    elif tag is Shape.P2Q2:
        roles["p"], roles["q"] = (p for p, _ in f.factors)
    elif tag is Shape.P2QR:
        roles["p"] = next(p for p, e in f.factors if e == 2)
        roles["q"], roles["r"] = (p for p, e in f.factors if e == 1)
    return OrderShape(tag, roles)


def divisibility_indicator(r: int, s: int) -> int:
    """1 if s divides r, else 0.  Every s >= 1 divides 0."""
    if s < 1:
        raise ValueError(f"modulus must be positive, got {s}")
    if r < 0:
        raise ValueError(f"dividend must be nonnegative, got {r}")
    return 1 if r % s == 0 else 0


@cache
def _divisor_tuple(s: int) -> tuple[int, ...]:
    return tuple(factorize(s).divisors())


def indicator_gcd_identity(r: int, s: int) -> bool:
    """Check that prod((gcd(r,s) - d) / (s - d)) over proper divisors d of s
    equals the divisibility indicator.

    The product is evaluated as an exact integer numerator/denominator pair;
    individual factors are rationals, only the product collapses to 0 or 1.
    """
    if r < 1 or s < 1:
        raise ValueError("identity is checked for positive r and s")
    g = math.gcd(r, s)
    num = 1
    den = 1
    for d in _divisor_tuple(s)[:-1]:
        num *= g - d
        den *= s - d
    return num == divisibility_indicator(r, s) * den


@cache
def partition_count(k: int) -> int:
    """Number of partitions of k, i.e. abelian p-group types for exponent k."""
    if k < 0:
        raise ValueError("partitions are defined for k >= 0")
    return _partitions_bounded(k, k)


@cache
def _partitions_bounded(n: int, largest: int) -> int:
    if n == 0:
        return 1
    if largest == 0:
        return 0
    total = 0
    for part in range(1, largest + 1):
        if part > n:
            break
        total += _partitions_bounded(n - part, part)
    return total


def abelian_group_count(f: Factorization) -> int:
    """Number of abelian groups of order n: product of partition counts of
    the exponents.  A lower bound for the total count."""
    result = 1
    for _, e in f.factors:
        result *= partition_count(e)
    return result
