"""Exhaustive enumeration of groups of tiny order via Cayley tables.

Counts isomorphism classes by completing multiplication tables cell by
cell under Latin-square and associativity constraints, then collapsing
the surviving tables with a canonical form (the lexicographically
minimal relabeling fixing the identity).

Two exact reductions keep this tractable.  First, in any lex-minimal
table the element labeled 1 has minimal order m (the smallest prime
dividing n), powers of it occupy labels 0..m-1, and the remaining labels
fall into consecutive blocks that are cosets of that cyclic subgroup;
row k for k < m is then forced to be the k-th power of the block-cycle
permutation.  The search therefore pins those rows up front, which loses
no isomorphism class.  Second, the canonical form only needs to minimise
over relabelings with that same block structure, which the minimiser
walks with branch-and-bound instead of all (n-1)! permutations.

Shares nothing with the closed-form counting code; independence is the
point of this oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ResourceLimitError

FREE_CAYLEY_LIMIT = 15
HEAVY_CAYLEY_LIMIT = 20


@dataclass(frozen=True)
class CayleyTable:
    """A complete multiplication table with identity 0."""

    n: int
    table: tuple[tuple[int, ...], ...]

    def validate(self) -> None:
        """Assert the full group axioms: identity, Latin rows and columns,
        inverses, and associativity over all triples."""
        n = self.n
        a = np.array(self.table, dtype=np.int64)
        if a.shape != (n, n):
            raise AssertionError("table shape mismatch")
        if not np.array_equal(a[0], np.arange(n)) or not np.array_equal(
            a[:, 0], np.arange(n)
        ):
            raise AssertionError("row or column 0 is not the identity")
        rows_sorted = np.broadcast_to(np.arange(n), (n, n))
        if not np.array_equal(np.sort(a, axis=1), rows_sorted):
            raise AssertionError("a row repeats a value")
        if not np.array_equal(np.sort(a, axis=0), rows_sorted.T):
            raise AssertionError("a column repeats a value")
        if not np.all(np.any(a == 0, axis=1)):
            raise AssertionError("an element has no inverse")
        if not np.array_equal(a[a], a[:, a]):
            raise AssertionError("associativity fails")


def _smallest_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def _block_cycle(n: int, m: int) -> list[int]:
    """The forced row 1: each m-block is cycled one step."""
    perm = [0] * n
    for base in range(0, n, m):
        for i in range(m):
            perm[base + i] = base + (i + 1) % m
    return perm


def _complete_tables(n: int, m: int):
    """Yield every group table with identity 0 and rows 0..m-1 pinned to
    powers of the block cycle, as row lists.

    Backtracking assigns one cell at a time; each assignment propagates
    both associativity shapes (new product as the outer pair of a triple,
    in both bracketings) through a worklist, with trailing for undo.
    Completed tables are revalidated wholesale before being yielded, so
    propagation strength affects speed only, never correctness.
    """
    size = n * n
    table = [-1] * size
    row_mask = [0] * n
    col_mask = [0] * n
    trail: list[int] = []

    def put(x, y, v):
        table[x * n + y] = v
        row_mask[x] |= 1 << v
        col_mask[y] |= 1 << v
        trail.append(x * n + y)

    def undo(mark):
        while len(trail) > mark:
            flat = trail.pop()
            v = table[flat]
            table[flat] = -1
            row_mask[flat // n] &= ~(1 << v)
            col_mask[flat % n] &= ~(1 << v)

    def assign(x, y, v) -> bool:
        pending = [(x, y, v)]
        while pending:
            x, y, v = pending.pop()
            current = table[x * n + y]
            if current >= 0:
                if current != v:
                    return False
                continue
            if (row_mask[x] >> v) & 1 or (col_mask[y] >> v) & 1:
                return False
            put(x, y, v)
            for z in range(n):
                u = table[y * n + z]
                if u >= 0:
                    xu = table[x * n + u]
                    vz = table[v * n + z]
                    if xu >= 0:
                        if vz < 0:
                            pending.append((v, z, xu))
                        elif vz != xu:
                            return False
                    elif vz >= 0:
                        pending.append((x, u, vz))
                t = table[z * n + x]
                if t >= 0:
                    zv = table[z * n + v]
                    ty = table[t * n + y]
                    if ty >= 0:
                        if zv < 0:
                            pending.append((z, v, ty))
                        elif zv != ty:
                            return False
                    elif zv >= 0:
                        pending.append((t, y, zv))
        return True

    cycle = _block_cycle(n, m)
    power = list(range(n))
    for k in range(m):
        for j in range(n):
            put(k, j, power[j])
        power = [cycle[power[j]] for j in range(n)]
    for i in range(m, n):
        put(i, 0, i)

    def dfs(cell):
        while cell < size and table[cell] >= 0:
            cell += 1
        if cell == size:
            a = np.array(table, dtype=np.int64).reshape(n, n)
            if np.array_equal(a[a], a[:, a]):
                yield [table[i * n:(i + 1) * n] for i in range(n)]
            return
        x, y = divmod(cell, n)
        taken = row_mask[x] | col_mask[y]
        for v in range(n):
            if (taken >> v) & 1:
                continue
            mark = len(trail)
            if assign(x, y, v):
                yield from dfs(cell + 1)
            undo(mark)

    yield from dfs(0)


def _element_orders(rows, n):
    orders = [0] * n
    orders[0] = 1
    for x in range(1, n):
        k = 1
        e = x
        while e != 0:
            e = rows[e][x]
            k += 1
        orders[x] = k
    return orders


def _canonical_form(rows, n: int, m: int) -> bytes:
    """Lexicographically minimal relabeling of a group table.

    Minimises over every identity-fixing relabeling; only block-structured
    ones (generator powers at labels 0..m-1, cosets as later blocks) can
    realise the minimum, so the search branches over the order-m generator
    and the block representatives, assigning blocks on demand as products
    first touch their cosets, and prunes against the best table so far.
    Rows 0..m-1 of the result are identical across candidates and are
    excluded from the comparison window.
    """
    orders = _element_orders(rows, n)
    generators = [x for x in range(1, n) if orders[x] == m]
    if not generators:
        raise AssertionError("no element of minimal prime order")
    width = n - 1
    length = (n - m) * width
    best = [n] * length
    path = [0] * length
    fwd = [-1] * n
    inv = [-1] * n
    trail: list[int] = []
    state = {"version": 0, "blocks": 0, "generator": 0}

    def assign_block(rep):
        base = state["blocks"] * m
        state["blocks"] += 1
        a = state["generator"]
        e = rep
        for k in range(m):
            if fwd[e] >= 0:
                raise AssertionError("coset overlaps an assigned block")
            fwd[e] = base + k
            inv[base + k] = e
            trail.append(e)
            e = rows[a][e]

    def undo(mark):
        while len(trail) > mark:
            e = trail.pop()
            inv[fwd[e]] = -1
            fwd[e] = -1
        state["blocks"] = len(trail) // m

    def descend(pos, tight):
        while pos < length:
            i = m + pos // width
            j = 1 + pos % width
            if inv[i] < 0 or inv[j] < 0:
                for z in range(1, n):
                    if fwd[z] >= 0:
                        continue
                    mark = len(trail)
                    assign_block(z)
                    before = state["version"]
                    descend(pos, tight)
                    undo(mark)
                    if state["version"] != before:
                        tight = True
                return
            product = rows[inv[i]][inv[j]]
            label = fwd[product]
            if label < 0:
                assign_block(product)
                label = fwd[product]
            if tight:
                current = best[pos]
                if label > current:
                    return
                if label < current:
                    tight = False
            path[pos] = label
            pos += 1
        if not tight:
            best[:] = path
            state["version"] += 1

    for a in generators:
        state["generator"] = a
        mark = len(trail)
        assign_block(0)
        descend(0, True)
        undo(mark)
    return bytes(best)


def enumerate_groups(n: int, allow_heavy: bool = False) -> int:
    """Number of isomorphism classes of groups of order n, by exhaustion.

    Free up to order 15; orders 16..20 need allow_heavy (and get slow);
    larger orders are refused outright.
    """
    return len(canonical_tables(n, allow_heavy))


def canonical_tables(n: int, allow_heavy: bool = False) -> tuple[CayleyTable, ...]:
    """One canonical representative table per isomorphism class, sorted."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"order must be a positive integer, got {n!r}")
    if n > HEAVY_CAYLEY_LIMIT:
        raise ResourceLimitError(
            f"order {n} exceeds the exhaustive-search cap {HEAVY_CAYLEY_LIMIT}"
        )
    if n > FREE_CAYLEY_LIMIT and not allow_heavy:
        raise ResourceLimitError(
            f"order {n} exceeds the free cap {FREE_CAYLEY_LIMIT}; "
            "opt in with allow_heavy (--allow-heavy)"
        )
    return _canonical_tables(n)


@lru_cache(maxsize=None)
def _canonical_tables(n: int) -> tuple[CayleyTable, ...]:
    if n == 1:
        return (CayleyTable(1, ((0,),)),)
    m = _smallest_prime_factor(n)
    forms = set()
    for rows in _complete_tables(n, m):
        CayleyTable(n, tuple(tuple(row) for row in rows)).validate()
        forms.add(_canonical_form(rows, n, m))
    tables = []
    for data in sorted(forms):
        table = _table_from_canonical(data, n, m)
        table.validate()
        tables.append(table)
    return tuple(tables)


def _table_from_canonical(data: bytes, n: int, m: int) -> CayleyTable:
    """Rebuild a full table from the comparison window of a canonical form."""
    rows = [[0] * n for _ in range(n)]
    cycle = _block_cycle(n, m)
    power = list(range(n))
    for k in range(m):
        rows[k] = power
        power = [cycle[power[j]] for j in range(n)]
    width = n - 1
    for pos, value in enumerate(data):
        i = m + pos // width
        j = 1 + pos % width
        rows[i][j] = value
    for i in range(m, n):
        rows[i][0] = i
    return CayleyTable(n, tuple(tuple(row) for row in rows))
