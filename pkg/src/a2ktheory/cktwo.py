"""Rank-two Cuntz-Krieger conditions, homology and K-theory."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .errors import ConditionsNotMet, ConsistencyFailure, DimensionMismatch, InfiniteOrder, NoIntegerSolution, NotCommuting, NotZeroOne
from .presentation import ValidatedPresentation
from .transition import StructuralChecks, TransitionPair, build_check, build_hat, strongly_connected, structural_report
from .zmat import FinAbGroup, Infinite, IntMatrix, coker_structure, coker_with_orders, kernel_basis, solve_in_lattice, snf

DEFAULT_H3_WINDOW = 4
DEFAULT_H3_BUDGET = 200_000


def _check_pair(M1: IntMatrix, M2: IntMatrix) -> None:
    if not (M1.is_square() and M2.is_square()) or M1.shape != M2.shape:
        raise DimensionMismatch(f"need square matrices of equal size, got {M1.shape} and {M2.shape}")
    for name, M in (("M1", M1), ("M2", M2)):
        for i, j, v in M.nonzero():
            if v != 1:
                raise NotZeroOne(f"{name}[{i},{j}] = {v}")


# conditions -----------------------------------------------------------------


@dataclass
class ConditionReport:
    h0: bool
    h1a: bool
    h1b: bool
    h2: bool
    h3: str  # "pass" or "inconclusive"
    h3_window: int
    witnesses: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "h0": self.h0,
            "h1a": self.h1a,
            "h1b": self.h1b,
            "h2": self.h2,
            "h3": self.h3,
            "h3_window": self.h3_window,
            "witnesses": self.witnesses,
        }

    @classmethod
    def from_dict(cls, d: dict) -> ConditionReport:
        return cls(d["h0"], d["h1a"], d["h1b"], d["h2"], d["h3"], d["h3_window"], d.get("witnesses", {}))


def _successors(M: IntMatrix) -> list[set[int]]:
    succ: list[set[int]] = [set() for _ in range(M.nrows)]
    for b, a, _ in M.nonzero():
        succ[a].add(b)
    return succ


class _Budget(Exception):
    pass


def _periods(window: int):
    """One representative of each +-p with |p1|, |p2| <= window, p != 0."""
    for p1 in range(0, window + 1):
        for p2 in range(-window, window + 1):
            if p1 == 0 and p2 <= 0:
                continue
            yield (p1, p2)


def find_aperiodic_word(M1: IntMatrix, M2: IntMatrix, p: tuple[int, int], budget: int = DEFAULT_H3_BUDGET):
    """Search W_m, m = (|p1|, |p2|), for a word whose two p-related corners differ.

    Any pair l, l+p sits in a translate of this rectangle, so a word of
    this shape suffices.  Returns ``(status, data)`` where status is
    ``"witness"`` (data: the word as rows w[i][j]), ``"periodic"`` (search
    was exhaustive and found none; data: nodes visited) or ``"budget"``.
    """
    s1, s2 = _successors(M1), _successors(M2)
    m1, m2 = abs(p[0]), abs(p[1])
    if p[0] * p[1] >= 0:
        c1, c2 = (0, 0), (m1, m2)
    else:
        c1, c2 = (0, m2), (m1, 0)
    cells = [(i, j) for i in range(m1 + 1) for j in range(m2 + 1)]
    n = M1.nrows
    w: dict[tuple[int, int], int] = {}
    nodes = 0

    def dfs(k):
        nonlocal nodes
        if k == len(cells):
            return True
        nodes += 1
        if nodes > budget:
            raise _Budget
        i, j = cells[k]
        cand = None
        if i:
            cand = s1[w[(i - 1, j)]]
        if j:
            left = s2[w[(i, j - 1)]]
            cand = left if cand is None else cand & left
        for x in sorted(range(n) if cand is None else cand):
            if (i, j) == c2 and x == w[c1]:
                continue
            w[(i, j)] = x
            if dfs(k + 1):
                return True
        w.pop((i, j), None)
        return False

    try:
        found = dfs(0)
    except _Budget:
        return "budget", nodes
    if found:
        return "witness", [[w[(i, j)] for j in range(m2 + 1)] for i in range(m1 + 1)]
    return "periodic", nodes


def check_conditions(
    M1: IntMatrix, M2: IntMatrix, h3_window: int = DEFAULT_H3_WINDOW, h3_budget: int = DEFAULT_H3_BUDGET
) -> ConditionReport:
    """Evaluate (H0), (H1a), (H1b), (H2) exactly and (H3) by bounded search."""
    _check_pair(M1, M2)
    if h3_window < 1:
        raise ValueError("h3_window must be positive")
    wit: dict = {}
    zero = [name for name, M in (("M1", M1), ("M2", M2)) if M.is_zero()]
    h0 = not zero
    if zero:
        wit["h0"] = zero
    P, Q = M1 @ M2, M2 @ M1
    h1a = P == Q
    if not h1a:
        i, j = next((i, j) for i in range(P.nrows) for j in range(P.ncols) if P[i, j] != Q[i, j])
        wit["h1a"] = {"entry": [i, j], "M1M2": P[i, j], "M2M1": Q[i, j]}
    big = next(((i, j, v) for i, j, v in P.nonzero() if v > 1), None)
    h1b = big is None
    if big:
        wit["h1b"] = {"entry": [big[0], big[1]], "value": big[2]}
    h2, pair = strongly_connected([M1, M2]) if M1.nrows else (False, None)
    if not h2:
        wit["h2"] = {"unreachable": list(pair) if pair else None}
    h3 = "pass"
    h3_info = {}
    if M1.nrows == 0:
        h3 = "inconclusive"
        h3_info["empty"] = "no letters"
    else:
        for p in _periods(h3_window):
            status, data = find_aperiodic_word(M1, M2, p, h3_budget)
            if status != "witness":
                h3 = "inconclusive"
                h3_info[f"{p[0]},{p[1]}"] = (
                    {"exhaustive": True, "nodes": data} if status == "periodic" else {"exhaustive": False, "nodes": data}
                )
    if h3_info:
        wit["h3"] = h3_info
    return ConditionReport(h0, h1a, h1b, h2, h3, h3_window, wit)


def count_words(M1: IntMatrix, M2: IntMatrix, m: Sequence[int]) -> int:
    """|W_m| as the entry sum of M1^m1 M2^m2; needs (H1a) and (H1b)."""
    _check_pair(M1, M2)
    m1, m2 = m
    if m1 < 0 or m2 < 0:
        raise ValueError("word shape must be non-negative")
    P = M1 @ M2
    if P != M2 @ M1 or any(v > 1 for _, _, v in P.nonzero()):
        raise ConditionsNotMet("count_words needs M1 M2 = M2 M1 with {0,1} product")
    v = [1] * M1.nrows
    # row vector times the product, right to left
    for M, k in ((M1, m1), (M2, m2)):
        for _ in range(k):
            v = M.T.apply(v)
    return sum(v)


# homology and K-theory ------------------------------------------------------


@dataclass(frozen=True)
class HomologyReport:
    h0: FinAbGroup
    h1: FinAbGroup
    h2: FinAbGroup

    def __post_init__(self):
        if self.h2.torsion:
            raise ConsistencyFailure("H2 must be free abelian")

    def to_dict(self) -> dict:
        return {k: _group_dict(getattr(self, k)) for k in ("h0", "h1", "h2")}


def _require_commuting(M1: IntMatrix, M2: IntMatrix) -> None:
    if M1 @ M2 != M2 @ M1:
        raise NotCommuting("M1 M2 != M2 M1")


def boundary_maps(M1: IntMatrix, M2: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """d1 = (I - M2 | M1 - I) and d2 = (I - M1 ; I - M2)."""
    eye = IntMatrix.identity(M1.nrows)
    d1 = IntMatrix.hstack(eye - M2, M1 - eye)
    d2 = IntMatrix.vstack(eye - M1, eye - M2)
    return d1, d2


def homology_complex(M1: IntMatrix, M2: IntMatrix) -> HomologyReport:
    """Homology of 0 -> Z^n -d2-> Z^2n -d1-> Z^n -> 0."""
    if M1.shape != M2.shape or not M1.is_square():
        raise DimensionMismatch("need square matrices of equal size")
    _require_commuting(M1, M2)
    d1, d2 = boundary_maps(M1, M2)
    h0 = coker_structure(d1, method="dense")
    r2 = snf(d2).rank
    h2 = FinAbGroup(M1.nrows - r2)
    K = kernel_basis(d1)
    X = solve_in_lattice(K, d2)
    h1 = coker_structure(X, method="dense")
    return HomologyReport(h0, h1, h2)


def k_theory_general(M1: IntMatrix, M2: IntMatrix, cross_check: bool = True) -> tuple[FinAbGroup, FinAbGroup]:
    """K0 and K1 from the two cokernels; compared with the homology route."""
    if M1.shape != M2.shape or not M1.is_square():
        raise DimensionMismatch("need square matrices of equal size")
    _require_commuting(M1, M2)
    eye = IntMatrix.identity(M1.nrows)
    c = coker_structure(IntMatrix.hstack(eye - M1, eye - M2))
    ct = coker_structure(IntMatrix.hstack(eye - M1.T, eye - M2.T))
    rank = c.free_rank + ct.free_rank
    k0 = FinAbGroup(rank, c.torsion)
    k1 = FinAbGroup(rank, ct.torsion)
    if cross_check:
        h = homology_complex(M1, M2)
        if h.h0 + h.h2 != k0 or h.h1 != k1:
            raise ConsistencyFailure(
                f"homology route gives K0 = {h.h0 + h.h2}, K1 = {h.h1}; cokernel route gives K0 = {k0}, K1 = {k1}"
            )
    return k0, k1


# identity class -------------------------------------------------------------


def conjectured_identity_order(q: int) -> int:
    return (q - 1) // 3 if q % 3 == 1 else q - 1


@dataclass(frozen=True)
class BoundReport:
    q: int
    order: int
    divides_q2_minus_1: bool
    lower_bound: int
    lower_bound_divides: bool
    psi_order: int
    psi_divides: bool

    @property
    def ok(self) -> bool:
        return self.divides_q2_minus_1 and self.lower_bound_divides and self.psi_divides

    def to_dict(self) -> dict:
        return {
            "divides_q2_minus_1": self.divides_q2_minus_1,
            "lower_bound": self.lower_bound,
            "lower_bound_divides": self.lower_bound_divides,
            "psi_order": self.psi_order,
            "psi_divides": self.psi_divides,
        }


def identity_bounds_check(q: int, order: int) -> BoundReport:
    """Upper bound (q^2-1) and the two lower bounds on the identity order."""
    top = q * q - 1
    low = (q - 1) // gcd(q - 1, 3)
    psi = top // gcd(3 * (q + 1), top)
    return BoundReport(q, order, top % order == 0, low, order % low == 0, psi, order % psi == 0)


def identity_class_order(q: int, joined: IntMatrix, sf=None) -> int:
    """Order of q times the all-ones vector in coker(joined)."""
    from .zmat import element_order_in_coker

    o = element_order_in_coker(joined, [q] * joined.nrows, sf)
    if o is Infinite:
        raise InfiniteOrder("the identity class must be torsion")
    return o


# the full pipeline ----------------------------------------------------------


@dataclass
class KTheoryReport:
    source: str
    input_digest: str
    q: int
    alphabet_size: int
    coker: FinAbGroup
    k0: FinAbGroup
    k1: FinAbGroup
    identity_order: int
    rank_one_ck: bool
    checks: dict
    conjecture_value: int
    conjecture_agreement: bool
    timing: dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return self.coker.free_rank

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.coker.torsion

    def same_groups(self, other: KTheoryReport) -> bool:
        return (self.k0, self.k1, self.identity_order) == (other.k0, other.k1, other.identity_order)


def _group_dict(g: FinAbGroup) -> dict:
    return {"free_rank": g.free_rank, "torsion": list(g.torsion), "text": g.text(), "primary": g.primary_text()}


def k_theory_a2(vp: ValidatedPresentation, method: str = "auto") -> KTheoryReport:
    """K-theory of the boundary algebra of the presented group."""
    t0 = time.perf_counter()
    q = vp.q
    hat = build_hat(vp)
    chk = build_check(vp)
    t1 = time.perf_counter()
    n = hat.n
    J = hat.joined()
    ones_q = [q] * n
    coker, (order,) = coker_with_orders(J, [ones_q], method)
    coker_check = coker_structure(chk.joined(), method)
    t2 = time.perf_counter()
    if coker_check != coker:
        raise ConsistencyFailure(f"hat cokernel {coker} differs from check cokernel {coker_check}")
    if order is Infinite:
        raise InfiniteOrder("the identity class must be torsion")

    structural: StructuralChecks = structural_report(hat, vp, chk)
    check_struct = structural_report(chk, vp)
    bounds = identity_bounds_check(q, order)
    checks = {
        "hat": structural.to_dict(),
        "check": check_struct.to_dict(),
        "hat_check_agreement": True,
        "bounds": bounds.to_dict(),
        "span_membership": _span_membership(J, q, method),
    }
    if not structural.ok or not check_struct.ok:
        raise ConsistencyFailure(f"structural checks failed: {structural.failures or check_struct.failures}")
    if not bounds.ok:
        raise ConsistencyFailure(f"identity order {order} violates the bounds for q={q}: {bounds.to_dict()}")
    if checks["span_membership"] is False:
        raise ConsistencyFailure("(q^2-1) q 1 is not in the column span of the joined matrix")

    k = FinAbGroup(2 * coker.free_rank, coker.torsion)
    conj = conjectured_identity_order(q)
    t3 = time.perf_counter()
    timing = {"build": round(t1 - t0, 6), "smith": round(t2 - t1, 6), "total": round(t3 - t0, 6)}
    p = vp.presentation
    return KTheoryReport(
        source=p.source,
        input_digest=p.digest(),
        q=q,
        alphabet_size=n,
        coker=coker,
        k0=k,
        k1=k,
        identity_order=order,
        rank_one_ck=not coker.torsion,
        checks=checks,
        conjecture_value=conj,
        conjecture_agreement=order == conj,
        timing=timing,
    )


def _span_membership(J: IntMatrix, q: int, method: str):
    """Solve J x = q(q^2-1) 1 and verify by multiplication; None when skipped."""
    from .zmat.lattice import _use_sparse

    if _use_sparse(J, method):
        return None
    b = IntMatrix.column([q * (q * q - 1)] * J.nrows)
    try:
        x = solve_in_lattice(J, b)
    except NoIntegerSolution:
        return False
    return J @ x == b
