"""Finite projective planes given combinatorially by a point-line map."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import EqualLines, EqualPoints, PlaneAxiomViolation


class CombinatorialPlane:
    """Projective plane of order q on points 0..N-1, N = q^2 + q + 1.

    Lines are labelled by points: ``line_of[x]`` is the set of points on
    the line labelled x.  Construction validates every axiom exhaustively
    and tabulates join and meet, so queries are O(1).
    """

    __slots__ = ("q", "npoints", "_lines", "_join", "_meet", "_inc")

    def __init__(self, q: int, lines: Sequence[frozenset[int]], join, meet):
        self.q = q
        self.npoints = len(lines)
        self._lines = tuple(lines)
        self._join = join
        self._meet = meet
        self._inc = tuple(tuple(y in ln for ln in lines) for y in range(self.npoints))

    @classmethod
    def from_lambda(
        cls, q: int, line_of: Mapping[int, Iterable[int]] | Sequence[Iterable[int]]
    ) -> CombinatorialPlane:
        if q < 2:
            raise PlaneAxiomViolation("order must be at least 2", q)
        n = q * q + q + 1
        if isinstance(line_of, Mapping):
            keys = set(line_of)
            if keys != set(range(n)):
                raise PlaneAxiomViolation(f"point-line map must be defined on exactly {n} points", sorted(keys ^ set(range(n)))[:5])
            lines = [frozenset(line_of[x]) for x in range(n)]
        else:
            if len(line_of) != n:
                raise PlaneAxiomViolation(f"point-line map must be defined on exactly {n} points", len(line_of))
            lines = [frozenset(s) for s in line_of]

        for x, ln in enumerate(lines):
            bad = [p for p in ln if not (isinstance(p, int) and 0 <= p < n)]
            if bad:
                raise PlaneAxiomViolation("line contains an unknown point", (x, bad[0]))
            if len(ln) != q + 1:
                raise PlaneAxiomViolation(f"every line has q+1 = {q + 1} points", (x, len(ln)))

        # any two distinct lines meet in exactly one point
        meet = [[-1] * n for _ in range(n)]
        for x in range(n):
            for x2 in range(x + 1, n):
                common = lines[x] & lines[x2]
                if len(common) != 1:
                    raise PlaneAxiomViolation(
                        "two distinct lines meet in exactly one point", (x, x2, sorted(common))
                    )
                (p,) = common
                meet[x][x2] = meet[x2][x] = p

        # any two distinct points lie on exactly one common line
        through: list[list[int]] = [[] for _ in range(n)]
        for x, ln in enumerate(lines):
            for p in ln:
                through[p].append(x)
        join = [[-1] * n for _ in range(n)]
        for x, ln in enumerate(lines):
            pts = sorted(ln)
            for i, p in enumerate(pts):
                for p2 in pts[i + 1 :]:
                    if join[p][p2] != -1:
                        raise PlaneAxiomViolation(
                            "two distinct points lie on exactly one line", (p, p2, join[p][p2], x)
                        )
                    join[p][p2] = join[p2][p] = x
        for p in range(n):
            for p2 in range(p + 1, n):
                if join[p][p2] == -1:
                    raise PlaneAxiomViolation("two distinct points lie on exactly one line", (p, p2, None))

        for p, xs in enumerate(through):
            if len(xs) != q + 1:
                raise PlaneAxiomViolation(f"every point lies on q+1 = {q + 1} lines", (p, len(xs)))

        return cls(q, lines, tuple(map(tuple, join)), tuple(map(tuple, meet)))

    def _check(self, *pts: int) -> None:
        for p in pts:
            if not (isinstance(p, int) and 0 <= p < self.npoints):
                raise IndexError(f"point {p!r} outside 0..{self.npoints - 1}")

    def line(self, x: int) -> frozenset[int]:
        self._check(x)
        return self._lines[x]

    @property
    def lines(self) -> tuple[frozenset[int], ...]:
        return self._lines

    def incident(self, y: int, x: int) -> bool:
        """True iff point y lies on the line labelled x."""
        self._check(y, x)
        return self._inc[y][x]

    def join_points(self, p: int, p2: int) -> int:
        """Label of the line through the distinct points p and p2."""
        self._check(p, p2)
        if p == p2:
            raise EqualPoints(f"join of a point with itself ({p})")
        return self._join[p][p2]

    def meet_lines(self, x: int, x2: int) -> int:
        """Common point of the distinct lines labelled x and x2."""
        self._check(x, x2)
        if x == x2:
            raise EqualLines(f"meet of a line with itself ({x})")
        return self._meet[x][x2]

    def lines_through(self, p: int) -> list[int]:
        self._check(p)
        return [x for x in range(self.npoints) if self._inc[p][x]]

    def __repr__(self) -> str:
        return f"CombinatorialPlane(q={self.q}, points={self.npoints})"
