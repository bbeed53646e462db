from __future__ import annotations

import networkx as nx
import pytest

from a2ktheory.presentation import builtin, synthetic, validate
from a2ktheory.transition import (
    HatAlphabet,
    TransitionPair,
    build_check,
    build_hat,
    select,
    strongly_connected,
    structural_report,
)
from a2ktheory.zmat import IntMatrix
from oracles import closure_of, lambda_sets, rule_matrices


def _oracle(vp):
    p = vp.presentation
    closure = closure_of(p.relators)
    return closure, rule_matrices(closure, lambda_sets(closure, p.npoints))


@pytest.fixture(scope="module", params=["B.2", "C.1", "syn3"])
def vp(request):
    if request.param == "syn3":
        return validate(synthetic(3))
    return validate(builtin(request.param))


def test_alphabet(vp):
    alpha = HatAlphabet.of(vp)
    q = vp.q
    assert len(alpha) == (q + 1) * (q * q + q + 1)
    assert list(alpha) == sorted(alpha)
    assert all(alpha.index(t) == i for i, t in enumerate(alpha))


def test_constructive_matches_rule_scan(vp):
    closure, want = _oracle(vp)
    assert list(HatAlphabet.of(vp)) == closure
    hat, chk = build_hat(vp), build_check(vp)
    assert hat.M1 == IntMatrix(want["hat1"])
    assert hat.M2 == IntMatrix(want["hat2"])
    assert chk.M1 == IntMatrix(want["check1"])
    assert chk.M2 == IntMatrix(want["check2"])


def test_counting_lemma(vp):
    q2 = vp.q**2
    for tp in (build_hat(vp), build_check(vp)):
        for M in (tp.M1, tp.M2):
            assert set(M.row_sums()) == {q2}
            assert set(M.col_sums()) == {q2}
            assert all(v == 1 for _, _, v in M.nonzero())


def test_transpose_identities(vp):
    hat, chk = build_hat(vp), build_check(vp)
    assert chk.M1 == hat.M2.T
    assert chk.M2 == hat.M1.T


def test_b2_column_x0x1x4(b2):
    alpha = HatAlphabet.of(b2)
    j = alpha.index((0, 1, 4))
    M1 = build_hat(b2).M1
    assert sum(M1[i, j] for i in range(21)) == 4


def test_structural_report_b2(b2):
    rep = structural_report(build_hat(b2), b2, build_check(b2))
    assert rep.ok and rep.transpose_identities


def test_connectivity_against_networkx(vp):
    hat = build_hat(vp)
    g = nx.DiGraph()
    g.add_nodes_from(range(hat.n))
    for M in (hat.M1, hat.M2):
        g.add_edges_from((a, b) for b, a, _ in M.nonzero())
    assert strongly_connected([hat.M1, hat.M2])[0] == nx.is_strongly_connected(g)


def test_zeroed_row_reported(b2):
    hat = build_hat(b2)
    rows = hat.M1.tolist()
    rows[5] = [0] * 21
    rep = structural_report(TransitionPair(IntMatrix(rows), hat.M2, "raw", 2))
    assert not rep.row_col_sums
    assert ["M1", "row", 5, 0] in rep.failures["row_col_sums"]


def test_entry_two_reported(b2):
    hat = build_hat(b2)
    rows = hat.M2.tolist()
    rows[0][0] = 2
    rep = structural_report(TransitionPair(hat.M1, IntMatrix(rows), "raw", 2))
    assert not rep.zero_one
    assert rep.failures["zero_one"] == [["M2", 0, 0, 2]]


def test_disconnected_reported():
    eye = IntMatrix.identity(3)
    ok, witness = strongly_connected([eye, eye])
    assert not ok and witness == (0, 1)
    rep = structural_report(TransitionPair(eye, eye))
    assert not rep.strongly_connected


def test_select(b2):
    assert select(b2, "check1") == build_hat(b2).M2.T
    with pytest.raises(ValueError):
        select(b2, "hat3")


def test_hat_pairs_need_not_satisfy_h1b(b2):
    hat = build_hat(b2)
    P = hat.M1 @ hat.M2
    assert P.max_abs() > 1
