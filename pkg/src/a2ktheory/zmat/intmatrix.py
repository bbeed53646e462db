"""Dense exact-integer matrices and their text serialization."""

from __future__ import annotations

import operator
from typing import Iterable, Iterator, Sequence

from ..errors import DimensionMismatch


def _as_int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        try:
            iv = operator.index(v)
        except TypeError:
            raise TypeError(f"matrix entries must be integers, got {v!r}") from None
        return int(iv)
    return v


class IntMatrix:
    """Immutable dense matrix of Python integers.

    Entries are arbitrary precision; no floating point is ever involved.
    Zero-row and zero-column matrices are legal.
    """

    __slots__ = ("_rows", "_nrows", "_ncols", "_hash", "_sparse")

    def __init__(self, rows: Iterable[Sequence[int]] = (), ncols: int | None = None):
        data = tuple(tuple(_as_int(v) for v in r) for r in rows)
        if data:
            widths = {len(r) for r in data}
            if len(widths) != 1:
                raise DimensionMismatch("ragged rows")
            width = widths.pop()
            if ncols is not None and ncols != width:
                raise DimensionMismatch(f"expected {ncols} columns, rows have {width}")
        else:
            width = 0 if ncols is None else ncols
        if width < 0:
            raise ValueError("negative column count")
        self._rows = data
        self._nrows = len(data)
        self._ncols = width
        self._hash = None
        self._sparse = None

    # construction helpers

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(([0] * ncols for _ in range(nrows)), ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(([1 if i == j else 0 for j in range(n)] for i in range(n)), ncols=n)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, int]]) -> IntMatrix:
        """Build from (i, j, value) triples; repeated positions are summed."""
        rows = [[0] * ncols for _ in range(nrows)]
        for i, j, v in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            rows[i][j] += _as_int(v)
        return cls(rows, ncols=ncols)

    @classmethod
    def column(cls, values: Sequence[int]) -> IntMatrix:
        return cls(([v] for v in values), ncols=1)

    @classmethod
    def hstack(cls, *blocks: IntMatrix) -> IntMatrix:
        if not blocks:
            return cls()
        n = blocks[0].nrows
        if any(b.nrows != n for b in blocks):
            raise DimensionMismatch("hstack needs equal row counts")
        width = sum(b.ncols for b in blocks)
        rows = (sum((b._rows[i] for b in blocks), ()) for i in range(n))
        return cls(rows, ncols=width)

    @classmethod
    def vstack(cls, *blocks: IntMatrix) -> IntMatrix:
        if not blocks:
            return cls()
        m = blocks[0].ncols
        if any(b.ncols != m for b in blocks):
            raise DimensionMismatch("vstack needs equal column counts")
        return cls((r for b in blocks for r in b._rows), ncols=m)

    # basic access

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._nrows, self._ncols)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self._nrows and 0 <= j < self._ncols):
            raise IndexError(f"index ({i}, {j}) outside {self._nrows}x{self._ncols}")
        return self._rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        if not 0 <= j < self._ncols:
            raise IndexError(j)
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def sparse_rows(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per row, the (column, value) pairs of nonzero entries."""
        if self._sparse is None:
            self._sparse = tuple(
                tuple((j, v) for j, v in enumerate(r) if v) for r in self._rows
            )
        return self._sparse

    def nonzero(self) -> Iterator[tuple[int, int, int]]:
        for i, r in enumerate(self.sparse_rows()):
            for j, v in r:
                yield i, j, v

    def nnz(self) -> int:
        return sum(len(r) for r in self.sparse_rows())

    def is_zero(self) -> bool:
        return all(not r for r in self.sparse_rows())

    def is_square(self) -> bool:
        return self._nrows == self._ncols

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self._rows]

    def col_sums(self) -> list[int]:
        sums = [0] * self._ncols
        for r in self._rows:
            for j, v in enumerate(r):
                sums[j] += v
        return sums

    def max_abs(self) -> int:
        return max((abs(v) for r in self._rows for v in r), default=0)

    # algebra

    @property
    def T(self) -> IntMatrix:
        return self.transpose()

    def transpose(self) -> IntMatrix:
        if self._nrows == 0:
            return IntMatrix.zeros(self._ncols, 0)
        return IntMatrix(zip(*self._rows), ncols=self._nrows)

    def _check_same_shape(self, other: IntMatrix) -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return IntMatrix(
            (tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            ncols=self._ncols,
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return IntMatrix(
            (tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            ncols=self._ncols,
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix((tuple(-a for a in r) for r in self._rows), ncols=self._ncols)

    def scale(self, c: int) -> IntMatrix:
        c = _as_int(c)
        return IntMatrix((tuple(c * a for a in r) for r in self._rows), ncols=self._ncols)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self._ncols != other._nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        m = other._ncols
        right = other.sparse_rows()
        out = []
        for r in self.sparse_rows():
            acc = [0] * m
            for k, a in r:
                for j, b in right[k]:
                    acc[j] += a * b
            out.append(acc)
        return IntMatrix(out, ncols=m)

    def apply(self, v: Sequence[int]) -> list[int]:
        """Matrix-vector product."""
        if len(v) != self._ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        return [sum(a * v[j] for j, a in r) for r in self.sparse_rows()]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> IntMatrix:
        if cols is None:
            return IntMatrix((self._rows[i] for i in rows), ncols=self._ncols)
        return IntMatrix((tuple(self._rows[i][j] for j in cols) for i in rows), ncols=len(cols))

    # comparison

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self._rows))
        return self._hash

    def __repr__(self) -> str:
        if self._nrows * self._ncols <= 64:
            return f"IntMatrix({self.tolist()!r})"
        return f"<IntMatrix {self._nrows}x{self._ncols}, nnz={self.nnz()}>"

    # text format

    def to_text(self, header: Sequence[str] = ()) -> str:
        """Serialize as ``rows cols`` followed by one ``i j v`` line per nonzero.

        ``header`` lines are emitted first as ``#`` comments.
        """
        lines = [f"# {h}" for h in header]
        lines.append(f"{self._nrows} {self._ncols}")
        lines.extend(f"{i} {j} {v}" for i, j, v in self.nonzero())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> IntMatrix:
        lines = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            s = raw.strip()
            if s and not s.startswith("#"):
                lines.append((lineno, s))
        if not lines:
            raise ValueError("empty matrix file: missing 'rows cols' header")
        lineno, head = lines[0]
        parts = head.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'rows cols', got {head!r}")
        try:
            nrows, ncols = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer dimensions {head!r}") from None
        if nrows < 0 or ncols < 0:
            raise ValueError(f"line {lineno}: negative dimensions")
        entries = {}
        for lineno, s in lines[1:]:
            parts = s.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected 'i j v', got {s!r}")
            try:
                i, j, v = (int(p) for p in parts)
            except ValueError:
                raise ValueError(f"line {lineno}: non-integer entry {s!r}") from None
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValueError(f"line {lineno}: index ({i}, {j}) outside {nrows}x{ncols}")
            if (i, j) in entries:
                raise ValueError(f"line {lineno}: duplicate entry ({i}, {j})")
            entries[(i, j)] = v
        return cls.from_entries(nrows, ncols, ((i, j, v) for (i, j), v in entries.items()))
