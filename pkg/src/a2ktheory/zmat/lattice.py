"""Kernels, cokernels, lattice solving and element orders."""

from __future__ import annotations

from math import gcd
from typing import Sequence

from ..errors import DimensionMismatch, NoIntegerSolution
from .abelian import FinAbGroup, lcm
from .intmatrix import IntMatrix
from .smith import SmithForm, snf


class _Infinite:
    """Sentinel for the order of a non-torsion element."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "Infinite"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinite, ())


Infinite = _Infinite()

# above this many entries coker computations switch to the sparse modular path
SPARSE_THRESHOLD = 20000


def coker_structure(A: IntMatrix, method: str = "auto") -> FinAbGroup:
    """Z^rows(A) modulo the column span of A.

    ``method`` is ``"dense"`` (exact Smith form), ``"sparse"`` (the modular
    three-pass elimination) or ``"auto"``.
    """
    if _use_sparse(A, method):
        from .sparse import coker_modular

        return coker_modular(A)[0]
    sf = snf(A)
    return FinAbGroup.from_diagonal(A.nrows, sf.invariant_factors)


def _use_sparse(A: IntMatrix, method: str) -> bool:
    if method not in ("auto", "dense", "sparse"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        return A.nrows * A.ncols > SPARSE_THRESHOLD
    return method == "sparse"


def hermite_columns(K: IntMatrix) -> IntMatrix:
    """Column-style Hermite normal form of a full-column-rank matrix.

    Column operations bring K to lower echelon shape with positive pivots
    and the entries left of each pivot reduced into [0, pivot).
    """
    rows = K.transpose().tolist()
    k, m = len(rows), K.nrows
    r = 0
    for c in range(m):
        if r == k:
            break
        while True:
            nz = [i for i in range(r, k) if rows[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(rows[i][c]), i))
            rows[r], rows[piv] = rows[piv], rows[r]
            p = rows[r][c]
            done = True
            for i in range(r + 1, k):
                x = rows[i][c]
                if x:
                    f = x // p
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if r < k and rows[r][c]:
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
            p = rows[r][c]
            for i in range(r):
                f = rows[i][c] // p
                if f:
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            r += 1
    if r != k:
        raise ValueError("hermite_columns needs linearly independent columns")
    return IntMatrix(rows, ncols=m).transpose() if k else IntMatrix.zeros(m, 0)


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Basis of {x : A x = 0} as the columns of a matrix, in Hermite form."""
    n, m = A.shape
    sf = snf(A, want_transforms=True)
    V = sf.V
    cols = list(range(sf.rank, m))
    if not cols:
        return IntMatrix.zeros(m, 0)
    return hermite_columns(V.submatrix(range(m), cols))


def solve_in_lattice(A: IntMatrix, B: IntMatrix, sf: SmithForm | None = None) -> IntMatrix:
    """Integer X with A X = B; raises NoIntegerSolution if none exists."""
    n, m = A.shape
    if B.nrows != n:
        raise DimensionMismatch(f"A has {n} rows but B has {B.nrows}")
    if sf is None or sf.U is None:
        sf = snf(A, want_transforms=True)
    Y = sf.U @ B
    d = sf.invariant_factors
    Z = [[0] * B.ncols for _ in range(m)]
    for j in range(B.ncols):
        for i in range(n):
            y = Y[i, j]
            if i < len(d):
                if y % d[i]:
                    raise NoIntegerSolution(f"column {j} is not in the integer span")
                Z[i][j] = y // d[i]
            elif y:
                raise NoIntegerSolution(f"column {j} is not in the rational span")
    return sf.V @ IntMatrix(Z, ncols=B.ncols)


def element_order_in_coker(A: IntMatrix, v: Sequence[int], sf: SmithForm | None = None):
    """Order of v + im(A) in Z^n / im(A): a positive int or ``Infinite``."""
    n = A.nrows
    if len(v) != n:
        raise DimensionMismatch(f"vector of length {len(v)} for {n} rows")
    if sf is None or sf.U is None:
        sf = snf(A, want_transforms=True)
    y = sf.U.apply(list(v))
    d = sf.invariant_factors
    if any(y[i] for i in range(len(d), n)):
        return Infinite
    return lcm(*(di // gcd(di, yi) for di, yi in zip(d, y)))


def coker_with_orders(A: IntMatrix, vectors: Sequence[Sequence[int]], method: str = "auto"):
    """Cokernel of A and the orders of several vectors, in one elimination."""
    if _use_sparse(A, method):
        from .sparse import coker_modular

        group, orders = coker_modular(A, vectors)
        return group, [Infinite if o is None else o for o in orders]
    sf = snf(A, want_transforms=True)
    group = FinAbGroup.from_diagonal(A.nrows, sf.invariant_factors)
    return group, [element_order_in_coker(A, v, sf) for v in vectors]
