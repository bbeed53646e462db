"""Cokernels of large sparse integer matrices.

Dense Smith elimination suffers from entry blow-up at the size of the
q = 11 joined matrices (1596 x 3192).  This module gets the same answer in
three sparse passes:

1. elimination modulo a large prime gives the rank and a set of rows
   spanning the row space;
2. exact elimination of those rows, finished modulo a determinant bound,
   gives a finite group G into which the torsion of the cokernel embeds,
   so exp(torsion) divides exp(G);
3. elimination modulo m = exp(G) * P reads off the cyclic factors
   gcd(d_i, m) together with the images of tracked vectors.

Every pass uses column operations with invertible pivots plus row
operations that only touch the pivot column, so the cokernel is preserved.
"""

from __future__ import annotations

import heapq
import random
from math import gcd
from typing import Sequence

from ..errors import ConsistencyFailure
from .abelian import FinAbGroup, lcm
from .intmatrix import IntMatrix
from .smith import diagonal_mod

# Mersenne primes; any prime works, these are just large
PRIME_RANK = (1 << 61) - 1
PRIME_PAD = (1 << 31) - 1


def _columns(A: IntMatrix) -> list[dict[int, int]]:
    cols: list[dict[int, int]] = [{} for _ in range(A.ncols)]
    for i, j, v in A.nonzero():
        cols[j][i] = v
    return cols


class _Eliminator:
    """Markowitz-style sparse elimination on column dictionaries.

    With ``modulus`` set every nonzero residue that is a unit can pivot;
    without it only entries equal to +-1 can.  Pivot choice: shortest
    column first, then the eligible row occupied by the fewest columns,
    ties to the lowest row index.
    """

    def __init__(self, cols, nrows, modulus=None, tracked=()):
        self.mod = modulus
        self.cols = {c: d for c, d in enumerate(cols) if d}
        self.occ: list[set[int]] = [set() for _ in range(nrows)]
        for c, d in self.cols.items():
            for r in d:
                self.occ[r].add(c)
        self.tracked = [list(v) for v in tracked]
        self.pivot_rows: list[int] = []
        self.stuck: set[int] = set()

    def _inverse(self, v):
        m = self.mod
        if m is None:
            return v if v in (1, -1) else None
        if gcd(v, m) != 1:
            return None
        return pow(v, -1, m)

    def run(self):
        cols, occ, m = self.cols, self.occ, self.mod
        heap = [(len(d), c) for c, d in cols.items()]
        heapq.heapify(heap)
        while heap:
            length, c = heapq.heappop(heap)
            d = cols.get(c)
            if d is None or len(d) != length:
                continue
            best = None
            for r, v in d.items():
                inv = self._inverse(v)
                if inv is None:
                    continue
                key = (len(occ[r]), r)
                if best is None or key < best[0]:
                    best = (key, r, inv)
            if best is None:
                self.stuck.add(c)
                continue
            _, r, inv = best
            # column ops clear row r outside column c
            for k in list(occ[r]):
                if k == c:
                    continue
                dk = cols[k]
                f = dk[r] * inv
                if m is not None:
                    f %= m
                for rr, v in d.items():
                    nv = dk.get(rr, 0) - f * v
                    if m is not None:
                        nv %= m
                    if nv:
                        if rr not in dk:
                            occ[rr].add(k)
                        dk[rr] = nv
                    elif rr in dk:
                        del dk[rr]
                        occ[rr].discard(k)
                self.stuck.discard(k)
                if dk:
                    heapq.heappush(heap, (len(dk), k))
                else:
                    del cols[k]
            # row ops clear column c outside row r; only tracked vectors change
            for vec in self.tracked:
                x = vec[r]
                if x:
                    for rr, v in d.items():
                        if rr != r:
                            nv = vec[rr] - v * inv * x
                            vec[rr] = nv % m if m is not None else nv
            for rr in d:
                occ[rr].discard(c)
            del cols[c]
            self.pivot_rows.append(r)
        return self

    def residual(self, rows_alive: Sequence[int]):
        """Remaining nonzero columns as dense rows over ``rows_alive``."""
        index = {r: i for i, r in enumerate(rows_alive)}
        keys = sorted(self.cols)
        dense = [[0] * len(keys) for _ in rows_alive]
        for j, c in enumerate(keys):
            for r, v in self.cols[c].items():
                dense[index[r]][j] = v
        return dense, len(keys)


def rank_profile(A: IntMatrix, prime: int = PRIME_RANK) -> list[int]:
    """Rows of A forming a basis of its row space modulo ``prime``."""
    el = _Eliminator(_columns(A), A.nrows, prime).run()
    return sorted(el.pivot_rows)


def _independent_columns(dense, order, prime=PRIME_RANK) -> list[int] | None:
    """Greedy column basis mod ``prime`` scanning columns in ``order``."""
    k = len(dense)
    basis: list[tuple[int, list[int]]] = []
    chosen = []
    for c in order:
        v = [dense[i][c] % prime for i in range(k)]
        for piv, b in basis:
            f = v[piv]
            if f:
                v = [(x - f * y) % prime for x, y in zip(v, b)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            continue
        inv = pow(v[piv], -1, prime)
        basis.append((piv, [x * inv % prime for x in v]))
        chosen.append(c)
        if len(chosen) == k:
            return chosen
    return None


def _bareiss_det(rows) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for c in range(n - 1):
        if not a[c][c]:
            piv = next((i for i in range(c + 1, n) if a[i][c]), None)
            if piv is None:
                return 0
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        for i in range(c + 1, n):
            ai, aic = a[i], a[i][c]
            ac = a[c]
            for j in range(c + 1, n):
                ai[j] = (ai[j] * p - aic * ac[j]) // prev
        prev = p
    return sign * a[n - 1][n - 1]


def _exact_finite_exponent(A: IntMatrix, rows: Sequence[int], minors: int = 3) -> int:
    """Exponent of coker(A restricted to ``rows``), which must be finite.

    After exact unit-pivot elimination the residual R has full row rank k.
    The order of coker(R) divides the determinant of every nonsingular
    k x k column minor, so the gcd D of a few of them bounds it, and the
    Smith form modulo D is exact.  This avoids an exact Smith form of a
    wide matrix with large entries.
    """
    sub = A.submatrix(rows)
    el = _Eliminator(_columns(sub), sub.nrows).run()
    alive = sorted(set(range(sub.nrows)) - set(el.pivot_rows))
    if not alive:
        return 1
    dense, width = el.residual(alive)
    k = len(alive)
    rng = random.Random(0)
    D = 0
    for attempt in range(minors):
        order = list(range(width))
        if attempt:
            rng.shuffle(order)
        cols = _independent_columns(dense, order)
        if cols is None:
            raise ConsistencyFailure("row subset expected to have full rank")
        D = gcd(D, _bareiss_det([[r[c] for c in cols] for r in dense]))
        if D == 1:
            return 1
    # every invariant factor divides D, so gcd(d_i, D) = d_i
    orders, _ = diagonal_mod(dense, k, width, D)
    return lcm(*orders)


def coker_modular(
    A: IntMatrix, tracked: Sequence[Sequence[int]] = (), prime: int = PRIME_RANK
) -> tuple[FinAbGroup, list[int | None]]:
    """Cokernel of A and the orders of tracked vectors in it.

    A tracked order of None means the vector has infinite order.
    """
    n = A.nrows
    for v in tracked:
        if len(v) != n:
            raise ValueError("tracked vector length does not match row count")
    # pass 1: rank, and rational membership of each tracked vector
    el = _Eliminator(_columns(A), n, prime, tracked).run()
    rank = len(el.pivot_rows)
    pivots = set(el.pivot_rows)
    in_span = [all(x == 0 for i, x in enumerate(v) if i not in pivots) for v in el.tracked]

    # pass 2: exponent bound
    expo = _exact_finite_exponent(A, sorted(pivots))
    modulus = expo * PRIME_PAD

    # pass 3: cyclic factors modulo m
    el = _Eliminator(_columns(A), n, modulus, tracked).run()
    alive = sorted(set(range(n)) - set(el.pivot_rows))
    orders: list[int] = []
    images = [[v[r] for r in alive] for v in el.tracked]
    if alive:
        dense, width = el.residual(alive)
        orders, images = diagonal_mod(dense, len(alive), width, modulus, images)
    free = sum(1 for o in orders if o == modulus)
    if free != n - rank:
        raise ConsistencyFailure(
            f"modular cokernel disagrees with rank: {free} free factors, expected {n - rank}"
        )
    group = FinAbGroup.from_cyclic(free, [o for o in orders if o != modulus])

    results: list[int | None] = []
    for ok, y in zip(in_span, images):
        if not ok:
            results.append(None)
            continue
        # a torsion element may have nonzero coordinates on Z/m summands,
        # since the splitting of (Z/m)^f + T is not canonical; its order is
        # still the lcm over all positions
        order = lcm(*(o // gcd(o, yi) for o, yi in zip(orders, y)))
        if order > 1 and expo % order:
            raise ConsistencyFailure("tracked order does not divide the exponent bound")
        results.append(order)
    return group, results
