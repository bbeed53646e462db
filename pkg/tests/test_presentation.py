from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from a2ktheory.errors import (
    ClosureCountMismatch,
    CompletionNotUnique,
    PlaneAxiomViolation,
    PresentationSyntaxError,
    UnknownBuiltin,
    UnknownGenerator,
    WrongArity,
)
from a2ktheory.presentation import Triple, builtin, cyclic_closure, parse_presentation, synthetic, validate

B2_TEXT = """# group B.2
q 2
gen x0 x1 x2 x3 x4 x5 x6
rel x0 x1 x4
rel x0 x2 x1
rel x0 x4 x2
rel x1 x5 x5
rel x2 x3 x3
rel x3 x5 x6
rel x4 x6 x6
"""


def test_parse_b2():
    p = parse_presentation(B2_TEXT)
    assert p.q == 2 and len(p.generators) == 7 and len(p.relators) == 7
    assert p.relators[0] == Triple(0, 1, 4)
    assert p == builtin("B.2")


def test_builtins_verbatim():
    c1 = builtin("C.1")
    assert [c1.word(r) for r in c1.relators] == [
        "x0 x0 x6", "x0 x2 x3", "x1 x2 x6", "x1 x3 x5", "x1 x5 x4", "x2 x4 x5", "x3 x4 x6",
    ]
    with pytest.raises(UnknownBuiltin):
        builtin("Z.9")


@pytest.mark.parametrize(
    "text, exc, line",
    [
        ("", PresentationSyntaxError, None),
        ("# only a comment\n", PresentationSyntaxError, None),
        ("gen a b c\n", PresentationSyntaxError, 1),
        ("q two\n", PresentationSyntaxError, 1),
        ("q 2\ngen x0 x1\n", PresentationSyntaxError, 2),
        ("q 2\ngen a b c d e f a\n", PresentationSyntaxError, 2),
        ("q 2\ngen a b c d e f g\nrel a b\n", WrongArity, 3),
        ("q 2\ngen a b c d e f g\nrel a b z\n", UnknownGenerator, 3),
        ("q 2\nrel a b c\n", PresentationSyntaxError, 2),
        ("q 2\ngen a b c d e f g\nfoo\n", PresentationSyntaxError, 3),
    ],
)
def test_syntax_errors(text, exc, line):
    with pytest.raises(exc) as e:
        parse_presentation(text)
    assert e.value.line == line


def test_validate_builtins():
    for name in ("B.2", "C.1"):
        vp = validate(builtin(name))
        assert len(vp.closure) == 21


def test_deleted_relator():
    p = parse_presentation(B2_TEXT.replace("rel x4 x6 x6\n", ""))
    with pytest.raises(ClosureCountMismatch):
        validate(p)


def test_symmetric_relator_named():
    text = B2_TEXT.replace("rel x4 x6 x6", "rel x6 x6 x6")
    with pytest.raises(ClosureCountMismatch) as e:
        validate(parse_presentation(text))
    assert "x6 x6 x6" in str(e.value)


def test_completion_not_unique():
    # swapping a completion keeps the count but clashes with x0 x1 x4
    text = B2_TEXT.replace("rel x0 x2 x1", "rel x0 x1 x2")
    p = parse_presentation(text)
    with pytest.raises((CompletionNotUnique, ClosureCountMismatch)):
        validate(p)


def test_plane_violation_propagates():
    # 21 closed, uniquely completed triples whose lines are too short
    rels = [(5, 6, 4), (3, 2, 3), (0, 4, 3), (5, 4, 6), (6, 6, 1), (0, 2, 4), (1, 5, 1)]
    gens = " ".join(f"x{i}" for i in range(7))
    text = "q 2\ngen " + gens + "\n" + "".join(f"rel x{a} x{b} x{c}\n" for a, b, c in rels)
    with pytest.raises(PlaneAxiomViolation) as e:
        validate(parse_presentation(text))
    assert e.value.witness == (0, 2)


def test_cyclic_difference_set_is_valid():
    # x -> (x, x+1, x+3) mod 7 is closed and gives the Fano plane
    rels = "".join(f"rel x{x} x{(x + 1) % 7} x{(x + 3) % 7}\n" for x in range(7))
    gens = " ".join(f"x{i}" for i in range(7))
    vp = validate(parse_presentation("q 2\ngen " + gens + "\n" + rels))
    assert len(vp.closure) == 21


def test_closure_idempotent():
    c = cyclic_closure(builtin("C.1").relators)
    assert cyclic_closure(c) == c
    assert all(t.rotate() in c for t in c)


def test_symmetric_triple_counts_once():
    assert len(cyclic_closure([(3, 3, 3)])) == 1
    assert len(cyclic_closure([(0, 0, 6)])) == 3


@pytest.mark.parametrize("name", ["B.2", "C.1"])
def test_q_plus_one_per_generator(name):
    vp = validate(builtin(name))
    for x in range(7):
        assert sum(t.a0 == x for t in vp.closure) == 3
        assert vp.presentation.line_of()[x] == {y for y in range(7) if vp.plane.incident(y, x)}


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_synthetic_valid(q):
    vp = validate(synthetic(q))
    assert len(vp.closure) == (q + 1) * (q * q + q + 1)


def test_synthetic_rejects_composite():
    with pytest.raises(ValueError):
        synthetic(4)


@given(st.sampled_from(["B.2", "C.1"]), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_text_round_trip_and_relabel(name, seed):
    p = builtin(name)
    perm = list(range(7))
    random.Random(seed).shuffle(perm)
    r = p.relabel(perm)
    assert parse_presentation(r.to_text(), r.source) == r
    vp = validate(r)
    assert len(vp.closure) == 21
