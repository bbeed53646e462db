"""Triangle presentations: parsing, validation and bundled examples."""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    ClosureCountMismatch,
    CompletionNotUnique,
    PresentationSyntaxError,
    UnknownBuiltin,
    UnknownGenerator,
    WrongArity,
)
from .plane import CombinatorialPlane


class Triple(NamedTuple):
    a0: int
    a1: int
    a2: int

    def rotate(self) -> Triple:
        return Triple(self.a1, self.a2, self.a0)

    def rotations(self) -> tuple[Triple, Triple, Triple]:
        r1 = self.rotate()
        return (self, r1, r1.rotate())


def cyclic_closure(triples: Iterable[Sequence[int]]) -> frozenset[Triple]:
    """All cyclic rotations of the given triples, as a set."""
    out: set[Triple] = set()
    for t in triples:
        out.update(Triple(*t).rotations())
    return frozenset(out)


@dataclass(frozen=True)
class TrianglePresentation:
    """A parsed but not yet validated presentation."""

    q: int
    generators: tuple[str, ...]
    relators: tuple[Triple, ...]
    source: str = field(default="", compare=False)

    @property
    def npoints(self) -> int:
        return len(self.generators)

    @property
    def closure(self) -> frozenset[Triple]:
        return cyclic_closure(self.relators)

    def line_of(self) -> list[set[int]]:
        """lambda(x) = {y : (x, y, z) in the closure}."""
        lam: list[set[int]] = [set() for _ in self.generators]
        for x, y, _ in self.closure:
            lam[x].add(y)
        return lam

    def name(self, i: int) -> str:
        return self.generators[i]

    def word(self, t: Sequence[int]) -> str:
        return " ".join(self.generators[i] for i in t)

    def to_text(self) -> str:
        """Canonical text form; re-parsing it gives an equal presentation."""
        lines = [f"q {self.q}", "gen " + " ".join(self.generators)]
        lines.extend("rel " + self.word(r) for r in self.relators)
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()

    def relabel(self, perm: Sequence[int]) -> TrianglePresentation:
        """Rename generator i to position perm[i]; names move along."""
        n = self.npoints
        if sorted(perm) != list(range(n)):
            raise ValueError("relabel needs a permutation of the generators")
        names = [""] * n
        for i, p in enumerate(perm):
            names[p] = self.generators[i]
        rels = tuple(Triple(perm[a], perm[b], perm[c]) for a, b, c in self.relators)
        return TrianglePresentation(self.q, tuple(names), rels, self.source)


@dataclass(frozen=True)
class ValidatedPresentation:
    """A presentation whose closure and point-line map passed every axiom."""

    presentation: TrianglePresentation
    closure: tuple[Triple, ...]
    plane: CombinatorialPlane = field(compare=False)
    completion: dict = field(compare=False, repr=False)

    @property
    def q(self) -> int:
        return self.presentation.q

    @property
    def npoints(self) -> int:
        return self.presentation.npoints

    def complete(self, x: int, y: int) -> int:
        """The unique z with (x, y, z) in the closure."""
        return self.completion[(x, y)]


def parse_presentation(text: str, source: str = "") -> TrianglePresentation:
    """Parse the line-oriented ``q`` / ``gen`` / ``rel`` format."""
    q = None
    gens: tuple[str, ...] | None = None
    index: dict[str, int] = {}
    rels: list[Triple] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        head, *args = s.split()
        if q is None:
            if head != "q":
                raise PresentationSyntaxError("expected 'q <integer>' header", lineno)
            if len(args) != 1:
                raise PresentationSyntaxError("'q' takes exactly one integer", lineno)
            try:
                q = int(args[0])
            except ValueError:
                raise PresentationSyntaxError(f"order is not an integer: {args[0]!r}", lineno) from None
            if q < 2:
                raise PresentationSyntaxError(f"order must be at least 2, got {q}", lineno)
            continue
        if head == "q":
            raise PresentationSyntaxError("duplicate 'q' line", lineno)
        if head == "gen":
            if gens is not None:
                raise PresentationSyntaxError("duplicate 'gen' line", lineno)
            want = q * q + q + 1
            if len(args) != want:
                raise PresentationSyntaxError(f"expected {want} generators for q={q}, got {len(args)}", lineno)
            if len(set(args)) != len(args):
                dup = next(a for i, a in enumerate(args) if a in args[:i])
                raise PresentationSyntaxError(f"duplicate generator {dup!r}", lineno)
            gens = tuple(args)
            index = {g: i for i, g in enumerate(gens)}
            continue
        if head == "rel":
            if gens is None:
                raise PresentationSyntaxError("'rel' before 'gen'", lineno)
            if len(args) != 3:
                raise WrongArity(f"relator must have 3 generators, got {len(args)}", lineno)
            try:
                rels.append(Triple(*(index[a] for a in args)))
            except KeyError as e:
                raise UnknownGenerator(f"unknown generator {e.args[0]!r}", lineno) from None
            continue
        raise PresentationSyntaxError(f"unknown directive {head!r}", lineno)
    if q is None:
        raise PresentationSyntaxError("missing 'q <integer>' header")
    if gens is None:
        raise PresentationSyntaxError("missing 'gen' line")
    return TrianglePresentation(q, gens, tuple(rels), source)


def validate(p: TrianglePresentation) -> ValidatedPresentation:
    """Check closure size, unique completion and the plane axioms."""
    q, n = p.q, p.npoints
    closure = sorted(p.closure)
    want = (q + 1) * n
    if len(closure) != want:
        msg = f"closure has {len(closure)} triples, expected (q+1)(q^2+q+1) = {want}"
        fixed = [r for r in p.relators if r.a0 == r.a1 == r.a2]
        if fixed:
            msg += "; symmetric relator(s) contribute one triple each: " + ", ".join(
                p.word(r) for r in fixed
            )
        raise ClosureCountMismatch(msg)
    completion: dict[tuple[int, int], int] = {}
    for x, y, z in closure:
        z0 = completion.setdefault((x, y), z)
        if z0 != z:
            raise CompletionNotUnique(
                f"both ({p.word((x, y, z0))}) and ({p.word((x, y, z))}) are in the closure"
            )
    plane = CombinatorialPlane.from_lambda(q, p.line_of())
    return ValidatedPresentation(p, tuple(closure), plane, completion)


_BUILTINS = {
    "B.2": [(0, 1, 4), (0, 2, 1), (0, 4, 2), (1, 5, 5), (2, 3, 3), (3, 5, 6), (4, 6, 6)],
    "C.1": [(0, 0, 6), (0, 2, 3), (1, 2, 6), (1, 3, 5), (1, 5, 4), (2, 4, 5), (3, 4, 6)],
}


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)


def builtin(name: str) -> TrianglePresentation:
    """The two order-2 examples shipped with the package."""
    try:
        rels = _BUILTINS[name]
    except KeyError:
        raise UnknownBuiltin(f"unknown builtin {name!r}; choose from {', '.join(builtin_names())}") from None
    gens = tuple(f"x{i}" for i in range(7))
    return TrianglePresentation(2, gens, tuple(Triple(*r) for r in rels), f"builtin:{name}")


# synthetic presentations ---------------------------------------------------


def _singer_set(q: int) -> list[int]:
    """A planar difference set mod q^2+q+1 from a primitive cubic over F_q."""
    if q < 2 or any(q % d == 0 for d in range(2, int(q**0.5) + 1)):
        raise ValueError(f"synthetic presentations need a prime order, got {q}")
    n = q * q + q + 1
    for a, b, c in itertools.product(range(q), repeat=3):
        if c == 0:
            continue

        def times_x(u):
            # multiply u0 + u1 x + u2 x^2 by x, using x^3 = a x^2 + b x + c
            top = u[2]
            return ((c * top) % q, (u[0] + b * top) % q, (u[1] + a * top) % q)

        e = (1, 0, 0)
        zeros = []
        for i in range(q**3 - 1):
            if i and e == (1, 0, 0):
                break
            if e[2] == 0:
                zeros.append(i)
            e = times_x(e)
        else:
            if e == (1, 0, 0):
                return sorted({i % n for i in zeros})
    raise ValueError(f"no primitive cubic found over F_{q}")


def _cycle_partition(q: int, points: list[int], allow_fixed: bool):
    n = q * q + q + 1

    def rec(rem):
        if not rem:
            return []
        u = rem[0]
        for u1 in rem:
            u2 = (-q * q * u - q * u1) % n
            cyc = {u, u1, u2}
            if u2 not in rem or len(cyc) == 2 or (len(cyc) == 1 and not allow_fixed):
                continue
            rest = rec([w for w in rem if w not in cyc])
            if rest is not None:
                return [(u, u1, u2)] + rest
        return None

    return rec(points)


def synthetic(q: int) -> TrianglePresentation:
    """A cyclic triangle presentation of prime order q.

    Points are Z/N, N = q^2+q+1, with lines translates of a Singer
    difference set; triples are orbits of k -> (k, x + qk, v + q^2 k).
    Found constructions exist at least for q = 2, 3, 5, 7, 11.
    """
    n = q * q + q + 1
    base = _singer_set(q)
    part = None
    for allow_fixed in (False, True):
        for shift in range(n):
            part = _cycle_partition(q, sorted((d + shift) % n for d in base), allow_fixed)
            if part is not None:
                break
        if part is not None:
            break
    if part is None:
        raise ValueError(f"no cyclic triangle presentation found for q={q}")
    closure: set[Triple] = set()
    for cyc in part:
        for x, y, _ in Triple(*cyc).rotations():
            v = (y + q * x) % n
            for k in range(n):
                closure.add(Triple(k, (x + q * k) % n, (v + q * q * k) % n))
    # one relator per rotation orbit, smallest representative
    rels = sorted({min(t.rotations()) for t in closure})
    gens = tuple(f"g{i}" for i in range(n))
    return TrianglePresentation(q, gens, tuple(rels), f"synthetic:{q}")
