"""Hat and check transition matrices on the closure alphabet."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConsistencyFailure, DimensionMismatch
from .presentation import Triple, ValidatedPresentation
from .zmat import IntMatrix


class HatAlphabet:
    """The closure triples in lexicographic order, with index lookup."""

    __slots__ = ("triples", "_index")

    def __init__(self, triples):
        self.triples = tuple(sorted(Triple(*t) for t in triples))
        self._index = {t: i for i, t in enumerate(self.triples)}
        if len(self._index) != len(self.triples):
            raise ValueError("alphabet triples must be distinct")

    @classmethod
    def of(cls, vp: ValidatedPresentation) -> HatAlphabet:
        return cls(vp.closure)

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def __getitem__(self, i: int) -> Triple:
        return self.triples[i]

    def index(self, t: Sequence[int]) -> int:
        return self._index[Triple(*t)]

    def __contains__(self, t) -> bool:
        return Triple(*t) in self._index


@dataclass(frozen=True)
class TransitionPair:
    M1: IntMatrix
    M2: IntMatrix
    kind: str = "raw"
    q: int | None = None

    def __post_init__(self):
        if not (self.M1.is_square() and self.M2.is_square()) or self.M1.shape != self.M2.shape:
            raise DimensionMismatch(f"need two square matrices of equal size, got {self.M1.shape} and {self.M2.shape}")

    @property
    def n(self) -> int:
        return self.M1.nrows

    def joined(self) -> IntMatrix:
        """(I - M1 | I - M2)."""
        eye = IntMatrix.identity(self.n)
        return IntMatrix.hstack(eye - self.M1, eye - self.M2)


def _fail(msg: str):
    raise ConsistencyFailure(f"transition rule: {msg}")


def _build(vp: ValidatedPresentation, column_rules) -> tuple[IntMatrix, IntMatrix]:
    alpha = HatAlphabet.of(vp)
    n = len(alpha)
    mats = []
    for rule in column_rules:
        entries = []
        for j, a in enumerate(alpha):
            targets = {alpha.index(b) for b in rule(vp, a)}
            entries.extend((i, j, 1) for i in targets)
        mats.append(IntMatrix.from_entries(n, n, entries))
    return mats[0], mats[1]


def _lookup(vp, x, y):
    try:
        return vp.complete(x, y)
    except KeyError:
        _fail(f"no completion of ({x}, {y})")


# Each column rule lists the b with M(b, a) = 1 for a fixed a.  The forced
# inequalities hold because a2 lies on line a1, a0 on a2, a1 on a0.


def _hat1(vp, a):
    pl, (a0, a1, a2) = vp.plane, a
    for b1 in range(vp.npoints):
        if pl.incident(b1, a1):
            continue
        if b1 == a2:
            _fail(f"b1 = a2 for a = {a}")
        b0 = pl.join_points(b1, a2)
        yield (b0, b1, _lookup(vp, b0, b1))


def _hat2(vp, a):
    pl, (a0, a1, a2) = vp.plane, a
    for b2 in range(vp.npoints):
        if pl.incident(a2, b2):
            continue
        if b2 == a1:
            _fail(f"b2 = a1 for a = {a}")
        b0 = pl.meet_lines(a1, b2)
        yield (b0, _lookup(vp, b2, b0), b2)


def _check1(vp, a):
    pl, (a0, a1, a2) = vp.plane, a
    for b2 in range(vp.npoints):
        if pl.incident(b2, a2):
            continue
        if b2 == a0:
            _fail(f"b2 = a0 for a = {a}")
        b1 = pl.join_points(a0, b2)
        if b1 == a2:
            _fail(f"b1 = a2 for a = {a}")
        yield (_lookup(vp, b1, b2), b1, b2)


def _check2(vp, a):
    pl, (a0, a1, a2) = vp.plane, a
    for b1 in range(vp.npoints):
        if pl.incident(a1, b1):
            continue
        if b1 == a0:
            _fail(f"b1 = a0 for a = {a}")
        b2 = pl.meet_lines(a0, b1)
        if b2 == a1:
            _fail(f"b2 = a1 for a = {a}")
        yield (_lookup(vp, b1, b2), b1, b2)


def build_hat(vp: ValidatedPresentation) -> TransitionPair:
    """Upward-triangle matrices, indexed by the lexicographic alphabet."""
    m1, m2 = _build(vp, (_hat1, _hat2))
    return TransitionPair(m1, m2, "hat", vp.q)


def build_check(vp: ValidatedPresentation) -> TransitionPair:
    """Downward-triangle matrices on the same alphabet and indexing."""
    m1, m2 = _build(vp, (_check1, _check2))
    return TransitionPair(m1, m2, "check", vp.q)


def union_digraph(mats: Sequence[IntMatrix]) -> list[set[int]]:
    """Successor sets: a -> b whenever some M(b, a) != 0."""
    n = mats[0].nrows
    succ: list[set[int]] = [set() for _ in range(n)]
    for M in mats:
        for b, a, v in M.nonzero():
            succ[a].add(b)
    return succ


def _reach(succ: list[set[int]], start: int) -> set[int]:
    seen = {start}
    todo = deque([start])
    while todo:
        u = todo.popleft()
        for w in succ[u]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def strongly_connected(mats: Sequence[IntMatrix]) -> tuple[bool, tuple[int, int] | None]:
    """Strong connectivity of the union digraph, with a witness pair if not.

    The witness (u, v) means v is unreachable from u.
    """
    n = mats[0].nrows
    if n == 0:
        return True, None
    succ = union_digraph(mats)
    fwd = _reach(succ, 0)
    if len(fwd) < n:
        return False, (0, min(set(range(n)) - fwd))
    pred: list[set[int]] = [set() for _ in range(n)]
    for a, bs in enumerate(succ):
        for b in bs:
            pred[b].add(a)
    back = _reach(pred, 0)
    if len(back) < n:
        return False, (min(set(range(n)) - back), 0)
    return True, None


@dataclass
class StructuralChecks:
    row_col_sums: bool
    zero_one: bool
    strongly_connected: bool
    transpose_identities: bool | None = None
    failures: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            self.row_col_sums
            and self.zero_one
            and self.strongly_connected
            and self.transpose_identities is not False
        )

    def to_dict(self) -> dict:
        return {
            "row_col_sums": self.row_col_sums,
            "zero_one": self.zero_one,
            "strongly_connected": self.strongly_connected,
            "transpose_identities": self.transpose_identities,
            "failures": {k: v for k, v in sorted(self.failures.items())},
        }


def structural_report(
    tp: TransitionPair,
    vp: ValidatedPresentation | None = None,
    counterpart: TransitionPair | None = None,
) -> StructuralChecks:
    """Row/column sums, {0,1} entries, connectivity and transpose identities.

    Failures are recorded with the offending indices, never raised.
    """
    q = tp.q if tp.q is not None else (vp.q if vp is not None else None)
    failures: dict[str, list] = {}
    sums_ok = True
    if q is not None:
        want = q * q
        bad = []
        for name, M in (("M1", tp.M1), ("M2", tp.M2)):
            bad += [[name, "row", i, s] for i, s in enumerate(M.row_sums()) if s != want]
            bad += [[name, "col", j, s] for j, s in enumerate(M.col_sums()) if s != want]
        if bad:
            sums_ok = False
            failures["row_col_sums"] = bad
    zo = [[name, i, j, v] for name, M in (("M1", tp.M1), ("M2", tp.M2)) for i, j, v in M.nonzero() if v != 1]
    if zo:
        failures["zero_one"] = zo
    sc, witness = strongly_connected([tp.M1, tp.M2])
    if not sc:
        failures["strongly_connected"] = list(witness)
    tr = None
    if counterpart is not None:
        hat, chk = (tp, counterpart) if tp.kind == "hat" else (counterpart, tp)
        bad = []
        if chk.M1 != hat.M2.T:
            bad.append("check1 != hat2^T")
        if chk.M2 != hat.M1.T:
            bad.append("check2 != hat1^T")
        tr = not bad
        if bad:
            failures["transpose_identities"] = bad
    return StructuralChecks(sums_ok, not zo, sc, tr, failures)


def select(vp: ValidatedPresentation, which: str) -> IntMatrix:
    """One of hat1, hat2, check1, check2."""
    table = {
        "hat1": lambda: build_hat(vp).M1,
        "hat2": lambda: build_hat(vp).M2,
        "check1": lambda: build_check(vp).M1,
        "check2": lambda: build_check(vp).M2,
    }
    if which not in table:
        raise ValueError(f"unknown matrix {which!r}; choose from {', '.join(table)}")
    return table[which]()
