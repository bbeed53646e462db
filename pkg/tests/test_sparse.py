from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from a2ktheory.zmat import IntMatrix, coker_structure, coker_with_orders
from a2ktheory.zmat.sparse import _bareiss_det, _exact_finite_exponent, coker_modular, rank_profile
from a2ktheory.zmat.smith import snf

from oracles import det


def perm_joined(n, rng):
    """(I - P1 | I - P2) for random permutation matrices."""
    eye = IntMatrix.identity(n)
    mats = []
    for _ in range(2):
        p = list(range(n))
        rng.shuffle(p)
        mats.append(eye - IntMatrix.from_entries(n, n, ((p[j], j, 1) for j in range(n))))
    return IntMatrix.hstack(*mats)


@given(st.integers(1, 8), st.integers(1, 12), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_modular_matches_dense(n, m, seed):
    rng = random.Random(seed)
    A = IntMatrix([[rng.choice([0, 0, 0, 1, -1, 2, 3, -4]) for _ in range(m)] for _ in range(n)])
    vecs = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(2)]
    dense = coker_with_orders(A, vecs, "dense")
    sparse = coker_with_orders(A, vecs, "sparse")
    assert dense == sparse


def test_rank_profile_is_row_basis():
    rng = random.Random(1)
    A = perm_joined(30, rng)
    rows = rank_profile(A)
    assert len(rows) == snf(A).rank == snf(A.submatrix(rows)).rank


@pytest.mark.parametrize("n", [40, 90])
def test_permutation_pairs(n):
    rng = random.Random(n)
    A = perm_joined(n, rng)
    assert coker_structure(A, "sparse") == coker_structure(A, "dense")


def test_infinite_tracked():
    A = IntMatrix([[2, 0], [0, 0]])
    group, orders = coker_modular(A, [[1, 0], [0, 1], [2, 0]])
    assert group.free_rank == 1 and group.torsion == (2,)
    assert orders == [2, None, 1]


@given(st.lists(st.lists(st.integers(-20, 20), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_fraction_det(rows):
    assert _bareiss_det(rows) == det(rows)


@given(st.integers(1, 6), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_exponent_bound_is_exact(k, seed):
    rng = random.Random(seed)
    width = k + rng.randint(0, 4)
    while True:
        A = IntMatrix([[rng.choice([0, 2, 3, -4, 6, 9]) for _ in range(width)] for _ in range(k)])
        if snf(A).rank == k:
            break
    d = snf(A).invariant_factors
    assert _exact_finite_exponent(A, range(k)) == d[-1]
