from __future__ import annotations

import json

from a2ktheory.cktwo import check_conditions, homology_complex, k_theory_a2, k_theory_general
from a2ktheory.report import (
    analysis_text,
    analysis_to_dict,
    dumps,
    ktheory_from_dict,
    ktheory_text,
    ktheory_to_dict,
)
from a2ktheory.zmat import FinAbGroup, IntMatrix


def test_round_trip(b2):
    r = k_theory_a2(b2)
    doc = json.loads(dumps(ktheory_to_dict(r)))
    back = ktheory_from_dict(doc)
    assert back == r
    assert ktheory_to_dict(back) == doc


def test_required_fields(c1):
    doc = ktheory_to_dict(k_theory_a2(c1))
    for key in (
        "version", "input_digest", "q", "alphabet_size", "r", "torsion_factors", "torsion_primary",
        "k0", "k1", "identity_order", "rank_one_ck", "checks", "conjecture_agreement",
    ):
        assert key in doc


def test_text_notation(b2):
    text = ktheory_text(k_theory_a2(b2))
    assert "Z/2 + Z/6" in text and "(Z/2)^2 + Z/3" in text
    assert FinAbGroup(2, (2, 6)).text() == "Z^2 + Z/2 + Z/6"


def test_analysis_doc():
    I = IntMatrix.identity(1)
    doc = analysis_to_dict(check_conditions(I, I), homology_complex(I, I), k_theory_general(I, I))
    assert json.loads(dumps(doc)) == doc
    assert "H0 = Z, H1 = Z^2, H2 = Z" in analysis_text(doc)
