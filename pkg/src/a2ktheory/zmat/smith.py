"""Smith normal form over the integers (optionally modulo m)."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .intmatrix import IntMatrix


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors of a matrix, with optional unimodular transforms.

    ``U @ A @ V`` equals the ``shape``-sized matrix carrying
    ``invariant_factors`` on its leading diagonal.
    """

    invariant_factors: tuple[int, ...]
    shape: tuple[int, int]
    U: IntMatrix | None = None
    V: IntMatrix | None = None

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def diagonal(self) -> IntMatrix:
        n, m = self.shape
        d = self.invariant_factors
        return IntMatrix.from_entries(n, m, ((i, i, v) for i, v in enumerate(d)))


class _Engine:
    """In-place elimination on a list-of-lists matrix.

    Row operations are mirrored onto ``U`` (stored by rows) and onto every
    tracked vector; column operations onto ``Vt`` (the transpose of V,
    stored by rows so that column ops become row ops).
    """

    def __init__(self, a, nrows, ncols, want_u, want_v, modulus=None, tracked=()):
        self.a = a
        self.n = nrows
        self.m = ncols
        self.mod = modulus
        self.u = [[int(i == j) for j in range(nrows)] for i in range(nrows)] if want_u else None
        self.vt = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if want_v else None
        self.tracked = [list(v) for v in tracked]

    def _red(self, x: int) -> int:
        # symmetric residue keeps remainders from growing under reduction
        m = self.mod
        x %= m
        return x - m if 2 * x > m else x

    # elementary operations

    def swap_rows(self, i, k):
        if i == k:
            return
        a = self.a
        a[i], a[k] = a[k], a[i]
        if self.u is not None:
            self.u[i], self.u[k] = self.u[k], self.u[i]
        for v in self.tracked:
            v[i], v[k] = v[k], v[i]

    def swap_cols(self, j, k):
        if j == k:
            return
        for r in self.a:
            r[j], r[k] = r[k], r[j]
        if self.vt is not None:
            self.vt[j], self.vt[k] = self.vt[k], self.vt[j]

    def add_row(self, dst, src, f, start=0):
        """row[dst] += f * row[src]."""
        rs, rd = self.a[src], self.a[dst]
        if self.mod is None:
            for j in range(start, self.m):
                if rs[j]:
                    rd[j] += f * rs[j]
        else:
            red = self._red
            for j in range(start, self.m):
                if rs[j]:
                    rd[j] = red(rd[j] + f * rs[j])
        if self.u is not None:
            us, ud = self.u[src], self.u[dst]
            for j, x in enumerate(us):
                if x:
                    ud[j] += f * x
            if self.mod is not None:
                self.u[dst] = [self._red(x) for x in ud]
        for v in self.tracked:
            v[dst] += f * v[src]
            if self.mod is not None:
                v[dst] = self._red(v[dst])

    def add_col(self, dst, src, f, start=0):
        """col[dst] += f * col[src]."""
        a = self.a
        if self.mod is None:
            for i in range(start, self.n):
                r = a[i]
                if r[src]:
                    r[dst] += f * r[src]
        else:
            red = self._red
            for i in range(start, self.n):
                r = a[i]
                if r[src]:
                    r[dst] = red(r[dst] + f * r[src])
        if self.vt is not None:
            vs, vd = self.vt[src], self.vt[dst]
            for j, x in enumerate(vs):
                if x:
                    vd[j] += f * x
            if self.mod is not None:
                self.vt[dst] = [self._red(x) for x in vd]

    def negate_row(self, i):
        self.a[i] = [-x for x in self.a[i]]
        if self.u is not None:
            self.u[i] = [-x for x in self.u[i]]
        for v in self.tracked:
            v[i] = -v[i]

    def combine_rows(self, i, j, s, t, c, d):
        """(row_i, row_j) <- (s*row_i + t*row_j, c*row_i + d*row_j); requires s*d - t*c = +-1."""

        def mix(x, y):
            nx = [s * p + t * q for p, q in zip(x, y)]
            ny = [c * p + d * q for p, q in zip(x, y)]
            if self.mod is not None:
                nx = [self._red(z) for z in nx]
                ny = [self._red(z) for z in ny]
            return nx, ny

        self.a[i], self.a[j] = mix(self.a[i], self.a[j])
        if self.u is not None:
            self.u[i], self.u[j] = mix(self.u[i], self.u[j])
        for v in self.tracked:
            (v[i],), (v[j],) = mix([v[i]], [v[j]])

    # driver

    def _min_pivot(self, t):
        best = None
        bi = bj = -1
        for i in range(t, self.n):
            r = self.a[i]
            for j in range(t, self.m):
                x = r[j]
                if x:
                    ax = x if x > 0 else -x
                    if best is None or ax < best:
                        best, bi, bj = ax, i, j
                        if ax == 1:
                            return bi, bj
        return (bi, bj) if best is not None else None

    def diagonalize(self) -> int:
        """Reduce to diagonal form; return the number of nonzero pivots."""
        t = 0
        a = self.a
        while t < min(self.n, self.m):
            pos = self._min_pivot(t)
            if pos is None:
                break
            self.swap_rows(t, pos[0])
            self.swap_cols(t, pos[1])
            while True:
                p = a[t][t]
                dirty = False
                for i in range(t + 1, self.n):
                    x = a[i][t]
                    if x:
                        self.add_row(i, t, -(x // p), start=t)
                        if a[i][t]:
                            dirty = True
                row = a[t]
                for j in range(t + 1, self.m):
                    x = row[j]
                    if x:
                        self.add_col(j, t, -(x // p), start=t)
                        if row[j]:
                            dirty = True
                if not dirty:
                    break
                # a strictly smaller remainder now exists in the block
                pos = self._min_pivot(t)
                self.swap_rows(t, pos[0])
                self.swap_cols(t, pos[1])
            t += 1
        return t

    def fix_divisibility(self, r):
        a = self.a
        for i in range(r):
            for j in range(i + 1, r):
                x, y = a[i][i], a[j][j]
                if y % x == 0:
                    continue
                g, s, t = xgcd(x, y)
                self.add_col(i, j, 1)
                self.combine_rows(i, j, s, t, -(y // g), x // g)
                f = a[i][j] // g
                self.add_col(j, i, -f)
        for i in range(r):
            if a[i][i] < 0:
                self.negate_row(i)


def snf(A: IntMatrix, want_transforms: bool = False) -> SmithForm:
    """Smith normal form of ``A``.

    Pivots are chosen by minimal absolute value (ties: lowest row, then
    lowest column), so the output is a deterministic function of ``A``.
    """
    n, m = A.shape
    eng = _Engine(A.tolist(), n, m, want_transforms, want_transforms)
    r = eng.diagonalize()
    eng.fix_divisibility(r)
    factors = tuple(eng.a[i][i] for i in range(r))
    U = V = None
    if want_transforms:
        U = IntMatrix(eng.u, ncols=n)
        V = IntMatrix(eng.vt, ncols=m).transpose() if m else IntMatrix.zeros(0, 0)
    return SmithForm(factors, (n, m), U, V)


def diagonal_mod(
    rows: list[list[int]], nrows: int, ncols: int, modulus: int, tracked: Sequence[Sequence[int]] = ()
) -> tuple[list[int], list[list[int]]]:
    """Diagonalize over Z/modulus.

    Returns the cyclic orders ``gcd(d_i, modulus)`` for every row position
    (rows past the last pivot count as ``modulus``) and the tracked vectors
    after the same row operations.  Mutates ``rows``.
    """
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    eng = _Engine(rows, nrows, ncols, False, False, modulus, tracked)
    for r in eng.a:
        for j, x in enumerate(r):
            r[j] = eng._red(x)
    for v in eng.tracked:
        for j, x in enumerate(v):
            v[j] = eng._red(x)
    k = eng.diagonalize()
    orders = [gcd(eng.a[i][i], modulus) if i < k else modulus for i in range(nrows)]
    return orders, eng.tracked
