"""Finitely generated abelian groups in invariant-factor form."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (factors here are small)."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


@dataclass(frozen=True, order=True)
class FinAbGroup:
    """Z^free_rank + Z/t_1 + ... + Z/t_k with t_i | t_{i+1} and every t_i >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        tors = tuple(int(t) for t in self.torsion)
        if any(t < 2 for t in tors):
            raise ValueError(f"torsion factors must be >= 2: {tors}")
        if any(b % a for a, b in zip(tors, tors[1:])):
            raise ValueError(f"torsion factors do not form a divisibility chain: {tors}")
        object.__setattr__(self, "torsion", tors)

    @classmethod
    def from_cyclic(cls, free_rank: int, orders: Iterable[int]) -> FinAbGroup:
        """Normalize an arbitrary direct sum of cyclic groups Z/o (o >= 1)."""
        orders = list(orders)
        if any(o < 1 for o in orders):
            raise ValueError(f"cyclic orders must be positive: {orders}")
        nontrivial = [o for o in orders if o > 1]
        if all(b % a == 0 for a, b in zip(nontrivial, nontrivial[1:])):
            return cls(free_rank, tuple(nontrivial))
        powers: dict[int, list[int]] = {}
        for o in nontrivial:
            for p, e in factorize(o).items():
                powers.setdefault(p, []).append(p**e)
        return cls(free_rank, _chain_from_prime_powers(powers))

    @classmethod
    def from_diagonal(cls, size: int, diagonal: Iterable[int]) -> FinAbGroup:
        """Cokernel of a map into Z^size whose Smith diagonal is ``diagonal``."""
        d = [abs(x) for x in diagonal if x]
        return cls.from_cyclic(size - len(d), d)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion)

    @property
    def exponent(self) -> int:
        return self.torsion[-1] if self.torsion else 1

    def primary(self) -> list[tuple[int, int]]:
        """Primary decomposition as sorted (prime power, multiplicity) pairs."""
        c: Counter[int] = Counter()
        for t in self.torsion:
            for p, e in factorize(t).items():
                c[p**e] += 1
        return sorted(c.items())

    def __add__(self, other: FinAbGroup) -> FinAbGroup:
        if not isinstance(other, FinAbGroup):
            return NotImplemented
        return FinAbGroup.from_cyclic(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def text(self) -> str:
        """Invariant-factor notation, e.g. ``Z^2 + Z/2 + Z/6``."""
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def primary_text(self) -> str:
        """Primary notation, e.g. ``(Z/2)^2 + Z/3``."""
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        for pp, k in self.primary():
            parts.append(f"Z/{pp}" if k == 1 else f"(Z/{pp})^{k}")
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.text()


def _chain_from_prime_powers(powers: dict[int, list[int]]) -> tuple[int, ...]:
    # largest prime powers go into the last factor, and so on downwards
    cols = {p: sorted((x for x in xs if x > 1), reverse=True) for p, xs in powers.items()}
    length = max((len(v) for v in cols.values()), default=0)
    chain = [1] * length
    for xs in cols.values():
        for k, x in enumerate(xs):
            chain[length - 1 - k] *= x
    return tuple(chain)
