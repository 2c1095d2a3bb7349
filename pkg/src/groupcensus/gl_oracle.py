"""Brute-force oracles over fully enumerated general linear groups.

Enumerates GL(d,p) for d in {2,3} and small p as flat arrays of residue
matrices, then measures subgroup data directly: conjugacy classes of
subgroups of a prescribed order, normalizer/centralizer indices, and
irreducibility of cyclic subgroups.  The measurements never consult the
closed forms they are used to check; the only shared code is basic
integer arithmetic.  Closed-form predictions live in
predicted_subgroup_classes so verification can compare the two routes.

Matrices are int16 residue arrays; each element also carries a base-p
digit encoding of its flattened matrix, giving O(1) lookup from a product
back to its element index.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import divisibility_indicator as ind
from .arith import factorize, is_prime
from .errors import ResourceLimitError, UnsupportedOrderError

# Group orders up to the free limit enumerate without opt-in; anything up
# to the heavy limit needs allow_heavy (CLI --allow-heavy).  The heavy
# ceiling can be overridden through the environment.
FREE_ENUMERATION_LIMIT = 100_000
DEFAULT_HEAVY_LIMIT = 2_000_000
HEAVY_LIMIT_ENV = "CENSUS_HEAVY_LIMIT"

_CHUNK = 65_536


def _heavy_limit() -> int:
    raw = os.environ.get(HEAVY_LIMIT_ENV, "")
    if not raw:
        return DEFAULT_HEAVY_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{HEAVY_LIMIT_ENV} must be an integer, got {raw!r}") from None


def gl_order(d: int, p: int) -> int:
    """|GL(d,p)| by the standard product formula."""
    total = 1
    for i in range(d):
        total *= p**d - p**i
    return total


class MatrixGroup:
    """Fully enumerated GL(d,p) with O(1) product-to-index lookup.

    ``mats[i]`` is element i as a (d,d) int16 residue matrix; ``codes[i]``
    is its base-p digit encoding, and ``code_to_index`` inverts that.
    Instances are immutable after construction apart from append-only
    memo tables for powers, so they are safe to share across threads.
    """

    __slots__ = (
        "d",
        "p",
        "order",
        "mats",
        "codes",
        "code_to_index",
        "inverse",
        "identity_index",
        "_digit_weights",
        "_power_memo",
    )

    def __init__(self, d, p, mats, codes, code_to_index, inverse, identity_index):
        self.d = d
        self.p = p
        self.order = len(mats)
        self.mats = mats
        self.codes = codes
        self.code_to_index = code_to_index
        self.inverse = inverse
        self.identity_index = identity_index
        self._digit_weights = (p ** np.arange(d * d, dtype=np.int64)).astype(np.int64)
        self._power_memo = {}

    def _encode(self, mats: np.ndarray) -> np.ndarray:
        """Base-p codes for a batch of residue matrices (any leading shape)."""
        flat = mats.reshape(mats.shape[:-2] + (self.d * self.d,))
        return flat.astype(np.int64) @ self._digit_weights

    def index_of(self, mats: np.ndarray) -> np.ndarray:
        """Element indices for a batch of residue matrices; all must belong."""
        idx = self.code_to_index[self._encode(mats)]
        if np.any(idx < 0):
            raise AssertionError("matrix outside the enumerated group")
        return idx

    def multiply_indices(self, left, right) -> np.ndarray:
        """Index array of elementwise products mats[left] @ mats[right]."""
        prod = np.matmul(self.mats[left], self.mats[right]) % self.p
        return self.index_of(prod)

    def power_all(self, m: int) -> np.ndarray:
        """Index array of g**m for every element g, by binary exponentiation."""
        if m < 0:
            raise ValueError("exponent must be nonnegative")
        memo = self._power_memo
        if m not in memo:
            result = None
            base = np.arange(self.order, dtype=np.int32)
            e = m
            while e:
                if e & 1:
                    result = base if result is None else self.multiply_indices(result, base)
                e >>= 1
                if e:
                    base = self.multiply_indices(base, base)
            if result is None:
                result = np.full(self.order, self.identity_index, dtype=np.int32)
            memo[m] = result.astype(np.int32)
        return memo[m]

    def elements_of_order(self, m: int) -> np.ndarray:
        """Indices of all elements of exact order m."""
        if m < 1:
            raise ValueError("element order must be positive")
        mask = self.power_all(m) == self.identity_index
        for ell, _ in factorize(m).factors:
            mask &= self.power_all(m // ell) != self.identity_index
        return np.flatnonzero(mask).astype(np.int32)


@lru_cache(maxsize=8)
def _build_gl(d: int, p: int) -> MatrixGroup:
    dd = d * d
    total = p**dd
    codes_all = np.arange(total, dtype=np.int64)
    digits = np.empty((total, dd), dtype=np.int16)
    rem = codes_all
    for k in range(dd):
        digits[:, k] = rem % p
        rem = rem // p

    col = [digits[:, k].astype(np.int64) for k in range(dd)]
    if d == 2:
        det = col[0] * col[3] - col[1] * col[2]
    else:
        a, b, c, e, f, g, h, i, j = col
        det = (
            a * (f * j - g * i)
            - b * (e * j - g * h)
            + c * (e * i - f * h)
        )
    det %= p
    mask = det != 0

    mats = digits[mask].reshape(-1, d, d).copy()
    codes = codes_all[mask]
    n = len(codes)
    expected = gl_order(d, p)
    if n != expected:
        raise AssertionError(f"enumerated {n} matrices, group order is {expected}")

    code_to_index = np.full(total, -1, dtype=np.int32)
    code_to_index[codes] = np.arange(n, dtype=np.int32)

    group = MatrixGroup(
        d, p, mats, codes, code_to_index, None, int(code_to_index[_encode_identity(d, p)])
    )

    modinv = np.zeros(p, dtype=np.int64)
    for t in range(1, p):
        modinv[t] = pow(t, p - 2, p)
    inv_det = modinv[det[mask]]

    kept = [c[mask] for c in col]
    if d == 2:
        a, b, c2, e = kept
        adj = np.stack([e, (-b) % p, (-c2) % p, a], axis=1)
    else:
        a, b, c2, e, f, g, h, i, j = kept
        adj = np.stack(
            [
                (f * j - g * i) % p,
                (c2 * i - b * j) % p,
                (b * g - c2 * f) % p,
                (g * h - e * j) % p,
                (a * j - c2 * h) % p,
                (c2 * e - a * g) % p,
                (e * i - f * h) % p,
                (b * h - a * i) % p,
                (a * f - b * e) % p,
            ],
            axis=1,
        )
    inv_mats = ((adj * inv_det[:, None]) % p).astype(np.int16).reshape(-1, d, d)
    group.inverse = group.index_of(inv_mats)

    _spot_check(group)
    return group


def _encode_identity(d: int, p: int) -> int:
    code = 0
    for k in range(d):
        code += p ** (k * d + k)
    return code


def _spot_check(group: MatrixGroup) -> None:
    """Guard the encode/lookup plumbing with a deterministic sample.

    Closure itself is exact by construction (every invertible matrix is
    enumerated, and products of invertibles are invertible); the sample
    checks inverses and index lookups actually round-trip.
    """
    rng = np.random.default_rng(0)
    sample = rng.integers(0, group.order, size=min(1024, group.order))
    prod = group.multiply_indices(sample, group.inverse[sample])
    if not np.all(prod == group.identity_index):
        raise AssertionError("inverse table failed the identity check")
    pairs = rng.integers(0, group.order, size=(2, min(1024, group.order)))
    if np.any(group.multiply_indices(pairs[0], pairs[1]) < 0):
        raise AssertionError("closure lookup failed")


def enumerate_gl(d: int, p: int, allow_heavy: bool = False) -> MatrixGroup:
    """Enumerate GL(d,p), d in {2,3}, subject to the size caps.

    Orders above the free cap need allow_heavy; orders above the heavy
    ceiling (CENSUS_HEAVY_LIMIT, default two million elements) are refused
    outright.
    """
    if d not in (2, 3):
        raise UnsupportedOrderError(f"dimension {d} is not covered (2 or 3 only)")
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    n = gl_order(d, p)
    if n > FREE_ENUMERATION_LIMIT:
        if not allow_heavy:
            raise ResourceLimitError(
                f"|GL({d},{p})| = {n} exceeds the free cap {FREE_ENUMERATION_LIMIT}; "
                "opt in with allow_heavy (--allow-heavy)"
            )
        limit = _heavy_limit()
        if n > limit:
            raise ResourceLimitError(
                f"|GL({d},{p})| = {n} exceeds the heavy cap {limit} ({HEAVY_LIMIT_ENV})"
            )
    if d * (p - 1) ** 2 >= 2**15:
        raise ResourceLimitError(f"residue products for p={p} overflow int16 arithmetic")
    return _build_gl(d, p)


@dataclass(frozen=True)
class SubgroupClassCount:
    """Oracle output: s_r = number of conjugacy classes of order-r subgroups.

    ``witnesses`` holds one representative per class as a sorted tuple of
    element indices into the enumerated group.
    """

    d: int
    p: int
    r: int
    classes: int
    witnesses: tuple[tuple[int, ...], ...]


def _parse_subgroup_order(r: int):
    """Split a target subgroup order into its supported kind.

    Supported: a prime q, a prime square q**2, or a product q*r of two
    distinct primes, all at most 49.
    """
    if not isinstance(r, int) or isinstance(r, bool):
        raise TypeError(f"subgroup order must be an int, got {type(r).__name__}")
    if not 2 <= r <= 49:
        raise UnsupportedOrderError(f"subgroup order {r} outside the supported range 2..49")
    factors = factorize(r).factors
    if len(factors) == 1:
        q, e = factors[0]
        if e == 1:
            return "prime", (q,)
        if e == 2:
            return "prime_square", (q,)
    elif len(factors) == 2 and all(e == 1 for _, e in factors):
        return "semiprime", (factors[0][0], factors[1][0])
    raise UnsupportedOrderError(
        f"subgroup order {r} is not a prime, prime square, or product of two primes"
    )


def _power_rows(group: MatrixGroup, gens: np.ndarray, m: int) -> np.ndarray:
    """(len(gens), m) index array of powers 0..m-1 of each generator."""
    rows = np.empty((len(gens), m), dtype=np.int32)
    rows[:, 0] = group.identity_index
    current = gens
    for k in range(1, m):
        rows[:, k] = current
        if k + 1 < m:
            current = group.multiply_indices(current, gens)
    return rows


def _cyclic_subgroups(group: MatrixGroup, m: int):
    """All cyclic subgroups of order m, as (rows, generators).

    rows is an (S, m) int32 array of sorted element indices, one row per
    subgroup; generators[k] generates the subgroup in row k.
    """
    gens = group.elements_of_order(m)
    if len(gens) == 0:
        return np.empty((0, m), dtype=np.int32), gens
    rows = _power_rows(group, gens, m)
    rows.sort(axis=1)
    if not np.all(np.diff(rows, axis=1) > 0):
        raise AssertionError("repeated element inside a cyclic subgroup")
    uniq, first = np.unique(rows, axis=0, return_index=True)
    return uniq, gens[first]


def _product_sets(group, left_rows, right_rows, size):
    """Sorted element sets {x * y : x in row, y in row} per aligned row pair."""
    k, a = left_rows.shape
    b = right_rows.shape[1]
    left = np.broadcast_to(left_rows[:, :, None], (k, a, b)).reshape(k, a * b)
    right = np.broadcast_to(right_rows[:, None, :], (k, a, b)).reshape(k, a * b)
    prods = group.multiply_indices(left.ravel(), right.ravel()).reshape(k, a * b)
    prods.sort(axis=1)
    if not np.all(np.diff(prods, axis=1) > 0) or prods.shape[1] != size:
        raise AssertionError("seed pair failed to span a subgroup of the expected size")
    return prods


def _subgroups_of_order(group: MatrixGroup, r: int, kind, params) -> np.ndarray:
    """All subgroups of order r as unique sorted index rows.

    Seeds follow the classification of the supported orders: cyclic
    subgroups come from single elements; C_q x C_q from commuting pairs
    of order-q elements; order q*r' groups from an order-r' element
    (generating the normal Sylow subgroup) and a normalizing order-q
    element.
    """
    if kind == "prime":
        return _cyclic_subgroups(group, r)[0]

    if kind == "prime_square":
        (q,) = params
        pieces = [_cyclic_subgroups(group, q * q)[0]]
        x_rows, x_gens = _cyclic_subgroups(group, q)
        order_q = group.elements_of_order(q)
        for row, x in zip(x_rows, x_gens):
            xy = group.multiply_indices(np.full(len(order_q), x, dtype=np.int32), order_q)
            yx = group.multiply_indices(order_q, np.full(len(order_q), x, dtype=np.int32))
            mates = order_q[(xy == yx) & ~np.isin(order_q, row)]
            if len(mates) == 0:
                continue
            y_rows = _power_rows(group, mates, q)
            x_repeat = np.broadcast_to(row, (len(mates), q))
            pieces.append(_product_sets(group, x_repeat, y_rows, q * q))
        return np.unique(np.concatenate(pieces), axis=0)

    q, rr = params
    x_rows, x_gens = _cyclic_subgroups(group, rr)
    order_q = group.elements_of_order(q)
    if len(x_rows) == 0 or len(order_q) == 0:
        return np.empty((0, r), dtype=np.int32)
    inv_q = group.inverse[order_q]
    pieces = []
    for row, x in zip(x_rows, x_gens):
        conj = group.multiply_indices(
            group.multiply_indices(order_q, np.full(len(order_q), x, dtype=np.int32)), inv_q
        )
        mates = order_q[np.isin(conj, row)]
        if len(mates) == 0:
            continue
        y_rows = _power_rows(group, mates, q)
        x_repeat = np.broadcast_to(row, (len(mates), rr))
        pieces.append(_product_sets(group, x_repeat, y_rows, r))
    if not pieces:
        return np.empty((0, r), dtype=np.int32)
    return np.unique(np.concatenate(pieces), axis=0)


def _assert_subgroups_valid(group: MatrixGroup, subs: np.ndarray) -> None:
    """Check every discovered row is genuinely a subgroup: identity present,
    distinct elements, and closure under multiplication."""
    if len(subs) == 0:
        return
    if not np.all(np.any(subs == group.identity_index, axis=1)):
        raise AssertionError("subgroup row without the identity")
    s, r = subs.shape
    left = np.broadcast_to(subs[:, :, None], (s, r, r)).reshape(s, r * r)
    right = np.broadcast_to(subs[:, None, :], (s, r, r)).reshape(s, r * r)
    prods = group.multiply_indices(left.ravel(), right.ravel()).reshape(s, r * r)
    offset = np.int64(group.order + 1) * np.arange(s, dtype=np.int64)[:, None]
    inside = np.isin(prods.astype(np.int64) + offset, subs.astype(np.int64) + offset)
    if not inside.all():
        raise AssertionError("subgroup row not closed under multiplication")


def _orbit_of_subgroup(group: MatrixGroup, members: np.ndarray) -> np.ndarray:
    """All conjugates of one subgroup, as unique sorted index rows."""
    r = len(members)
    sub_mats = group.mats[members]
    out = np.empty((group.order, r), dtype=np.int32)
    for start in range(0, group.order, _CHUNK):
        stop = min(start + _CHUNK, group.order)
        g = group.mats[start:stop]
        g_inv = group.mats[group.inverse[start:stop]]
        t = np.einsum("kij,sjl->ksil", g, sub_mats) % group.p
        t = np.einsum("ksij,kjl->ksil", t, g_inv) % group.p
        out[start:stop] = group.code_to_index[group._encode(t)]
    out.sort(axis=1)
    return np.unique(out, axis=0)


def _partition_into_classes(group: MatrixGroup, subs: np.ndarray):
    """Partition subgroup rows into conjugacy classes.

    Returns a list of (witness_row_index, member_row_indices).  Asserts
    that orbits are disjoint and that every conjugate of a discovered
    subgroup was itself discovered (a completeness cross-check).
    """
    key_to_row = {subs[i].tobytes(): i for i in range(len(subs))}
    seen = np.zeros(len(subs), dtype=bool)
    classes = []
    for i in range(len(subs)):
        if seen[i]:
            continue
        orbit = _orbit_of_subgroup(group, subs[i])
        members = []
        for row in orbit:
            j = key_to_row.get(row.tobytes())
            if j is None:
                raise AssertionError("conjugate subgroup missing from the enumeration")
            if seen[j]:
                raise AssertionError("conjugacy orbits are not disjoint")
            seen[j] = True
            members.append(j)
        classes.append((i, members))
    return classes


def count_subgroup_classes(group: MatrixGroup, r: int) -> SubgroupClassCount:
    """Number of conjugacy classes of order-r subgroups, by brute force.

    Supported orders r: a prime, a prime square, or a product of two
    distinct primes, each at most 49.  Orders not dividing |G| yield zero
    classes.  Every discovered subgroup is validated (closure, identity,
    size) and the conjugacy partition is checked for disjointness and
    completeness before counting.
    """
    kind, params = _parse_subgroup_order(r)
    if group.order % r != 0:
        return SubgroupClassCount(group.d, group.p, r, 0, ())
    subs = _subgroups_of_order(group, r, kind, params)
    _assert_subgroups_valid(group, subs)
    if len(subs) == 0:
        return SubgroupClassCount(group.d, group.p, r, 0, ())
    classes = _partition_into_classes(group, subs)
    witnesses = tuple(tuple(int(e) for e in subs[i]) for i, _ in classes)
    return SubgroupClassCount(group.d, group.p, r, len(classes), witnesses)


def predicted_subgroup_classes(d: int, p: int, r: int) -> int:
    """Closed-form count of conjugacy classes of order-r subgroups of GL(d,p).

    The formula side of the dual-route check; count_subgroup_classes is the
    measurement side.  Covers r prime, a prime square, or a product of two
    distinct primes for d = 2, and r prime for d = 3, always with primes
    different from p.  Evaluated in exact rationals with integrality
    asserted.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    kind, params = _parse_subgroup_order(r)
    if d == 2:
        value = _predicted_gl2(p, kind, params)
    elif d == 3:
        if kind != "prime":
            raise UnsupportedOrderError(
                f"no closed form for subgroup order {r} in GL(3,p); primes only"
            )
        value = _predicted_gl3(p, params[0])
    else:
        raise UnsupportedOrderError(f"dimension {d} is not covered (2 or 3 only)")
    if value.denominator != 1:
        raise AssertionError(f"class-count formula gave non-integer {value}")
    return int(value)


def _require_distinct_from_p(p, *qs):
    if p in qs:
        raise UnsupportedOrderError(
            f"closed forms require subgroup-order primes different from p={p}"
        )


def _predicted_gl2(p: int, kind: str, params) -> Fraction:
    if kind == "prime":
        (q,) = params
        _require_distinct_from_p(p, q)
        if q == 2:
            return Fraction(2)
        return Fraction(q + 3, 2) * ind(p - 1, q) + ind(p + 1, q)
    if kind == "prime_square":
        (q,) = params
        _require_distinct_from_p(p, q)
        if q == 2:
            return Fraction(2 + 3 * ind(p - 1, 4))
        return (
            Fraction(ind(p - 1, q))
            + Fraction(q * q + q + 2, 2) * ind(p - 1, q * q)
            + ind(p + 1, q * q)
        )
    q, r = params
    _require_distinct_from_p(p, q, r)
    if q == 2:
        return Fraction(3 * r + 7, 2) * ind(p - 1, r) + 2 * ind(p + 1, r)
    return Fraction(q * r + q + r + 5, 2) * ind(p - 1, q * r) + ind(
        p * p - 1, q * r
    ) * (1 - ind(p - 1, q * r))


def _predicted_gl3(p: int, q: int) -> Fraction:
    _require_distinct_from_p(p, q)
    if q == 2:
        return Fraction(3)
    return Fraction(q * q + 4 * q + 9 + 4 * ind(q - 1, 3), 6) * ind(p - 1, q) + ind(
        (p + 1) * (p * p + p + 1), q
    ) * (1 - ind(p - 1, q))


def count_norm_twist(group: MatrixGroup, q: int) -> int:
    """Conjugacy classes of order-q subgroups H of GL(2,p) with |N(H)| = 2 |C(H)|.

    Measures normalizer and centralizer sizes for every order-q subgroup,
    asserts the index divides 2 throughout and is constant on conjugacy
    classes, then counts the classes realising index 2.  The reducible
    class realising index 2 (when present) is the one generated by a
    diagonal matrix with inverse-pair entries: the entry swap inverts the
    generator, while scalar diagonals are centralized outright.
    """
    if group.d != 2:
        raise UnsupportedOrderError("normalizer/centralizer oracle covers GL(2,p) only")
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime")
    if q == group.p:
        raise UnsupportedOrderError("normalizer twist requires q different from p")
    subs, gens = _cyclic_subgroups(group, q)
    if len(subs) == 0:
        return 0
    inv_mats = group.mats[group.inverse]
    indices = np.empty(len(subs), dtype=np.int64)
    for s in range(len(subs)):
        x = int(gens[s])
        t = np.einsum("kij,jl->kil", group.mats, group.mats[x]) % group.p
        t = np.einsum("kij,kjl->kil", t, inv_mats) % group.p
        conj = group.code_to_index[group._encode(t)]
        centralizer = int((conj == x).sum())
        normalizer = int(np.isin(conj, subs[s]).sum())
        if normalizer % centralizer != 0 or normalizer // centralizer not in (1, 2):
            raise AssertionError(
                f"normalizer/centralizer index {normalizer}/{centralizer} does not divide 2"
            )
        indices[s] = normalizer // centralizer
    twisted_classes = 0
    for witness, members in _partition_into_classes(group, subs):
        values = {int(indices[j]) for j in members}
        if len(values) != 1:
            raise AssertionError("normalizer/centralizer index varies within a class")
        if values == {2}:
            twisted_classes += 1
    return twisted_classes


def _line_representatives(d: int, p: int) -> np.ndarray:
    """One representative vector per 1-dimensional subspace of F_p^d,
    normalised so the first nonzero coordinate is 1."""
    grids = np.indices((p,) * d).reshape(d, -1).T
    keep = []
    for v in grids:
        nz = np.flatnonzero(v)
        if len(nz) and v[nz[0]] == 1:
            keep.append(v)
    return np.array(keep, dtype=np.int64)


def _has_invariant_line(p: int, mat: np.ndarray, lines: np.ndarray) -> bool:
    image = (lines @ mat.astype(np.int64).T) % p
    lead = (lines != 0).argmax(axis=1)
    scale = image[np.arange(len(lines)), lead]
    return bool(np.any(np.all((scale[:, None] * lines) % p == image, axis=1)))


def irreducible_cyclic_check(d: int, p: int, m: int, allow_heavy: bool = False):
    """Existence and conjugacy-uniqueness of irreducible cyclic subgroups.

    Predicts existence by the divisibility criterion (m divides p**d - 1
    but no smaller p**e - 1), measures it by invariant-subspace search
    over the enumerated group (lines for d = 2; lines and, via the
    transpose, planes for d = 3), asserts the two agree, and returns
    (exists, unique_class).  unique_class is vacuously true when no
    irreducible cyclic subgroup exists.
    """
    if m < 1:
        raise ValueError("subgroup order must be positive")
    if math.gcd(m, p) != 1:
        raise ValueError(f"order {m} must be coprime to p={p}")
    predicted = (p**d - 1) % m == 0 and all((p**e - 1) % m != 0 for e in range(1, d))
    group = enumerate_gl(d, p, allow_heavy=allow_heavy)
    lines = _line_representatives(d, p)
    irreducible_rows = []
    if m == 1:
        pass  # the trivial subgroup fixes every line
    else:
        rows, gens = _cyclic_subgroups(group, m)
        for row, x in zip(rows, gens):
            mat = group.mats[x]
            reducible = _has_invariant_line(p, mat, lines)
            if d == 3 and not reducible:
                reducible = _has_invariant_line(p, mat.T, lines)
            if not reducible:
                irreducible_rows.append(row)
    exists = bool(irreducible_rows)
    if exists != predicted:
        raise AssertionError(
            f"irreducibility criterion disagrees with enumeration for (d={d}, p={p}, m={m})"
        )
    unique = True
    if len(irreducible_rows) > 1:
        orbit = _orbit_of_subgroup(group, irreducible_rows[0])
        orbit_keys = {row.tobytes() for row in orbit}
        unique = all(row.tobytes() in orbit_keys for row in irreducible_rows[1:])
    return exists, unique
