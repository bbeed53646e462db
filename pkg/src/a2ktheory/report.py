"""Machine-readable and text renderings of pipeline results."""

from __future__ import annotations

import json

from . import __version__
from .cktwo import ConditionReport, HomologyReport, KTheoryReport
from .zmat import FinAbGroup


def group_to_dict(g: FinAbGroup) -> dict:
    return {
        "free_rank": g.free_rank,
        "torsion": list(g.torsion),
        "text": g.text(),
        "primary": g.primary_text(),
    }


def group_from_dict(d: dict) -> FinAbGroup:
    return FinAbGroup(d["free_rank"], tuple(d["torsion"]))


def ktheory_to_dict(r: KTheoryReport) -> dict:
    return {
        "version": __version__,
        "source": r.source,
        "input_digest": r.input_digest,
        "q": r.q,
        "alphabet_size": r.alphabet_size,
        "r": r.coker.free_rank,
        "torsion_factors": list(r.coker.torsion),
        "torsion_primary": [[pp, k] for pp, k in r.coker.primary()],
        "k0": group_to_dict(r.k0),
        "k1": group_to_dict(r.k1),
        "identity_order": r.identity_order,
        "rank_one_ck": r.rank_one_ck,
        "checks": r.checks,
        "conjecture_value": r.conjecture_value,
        "conjecture_agreement": r.conjecture_agreement,
        "timing": r.timing,
    }


def ktheory_from_dict(d: dict) -> KTheoryReport:
    return KTheoryReport(
        source=d["source"],
        input_digest=d["input_digest"],
        q=d["q"],
        alphabet_size=d["alphabet_size"],
        coker=FinAbGroup(d["r"], tuple(d["torsion_factors"])),
        k0=group_from_dict(d["k0"]),
        k1=group_from_dict(d["k1"]),
        identity_order=d["identity_order"],
        rank_one_ck=d["rank_one_ck"],
        checks=d["checks"],
        conjecture_value=d["conjecture_value"],
        conjecture_agreement=d["conjecture_agreement"],
        timing=d.get("timing", {}),
    )


def dumps(doc: dict) -> str:
    """Stable JSON: sorted keys, fixed separators."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def ktheory_text(r: KTheoryReport) -> str:
    k = r.k0
    lines = [
        f"source: {r.source or '-'}",
        f"q = {r.q}, |alphabet| = {r.alphabet_size}",
        f"coker(I - M1 | I - M2) = {r.coker.text()}   [{r.coker.primary_text()}]",
        f"r = {r.coker.free_rank}, torsion = {list(r.coker.torsion)}",
        f"K0 = K1 = {k.text()}   [{k.primary_text()}]",
        f"order of [id] = {r.identity_order}",
        f"rank one Cuntz-Krieger: {'yes' if r.rank_one_ck else 'no'}",
        f"hat/check agreement: {'ok' if r.checks.get('hat_check_agreement') else 'FAILED'}",
        f"identity bounds: {'ok' if _bounds_ok(r.checks.get('bounds', {})) else 'FAILED'}",
        f"conjecture ({r.conjecture_value}): {'agrees' if r.conjecture_agreement else 'disagrees'}",
    ]
    return "\n".join(lines) + "\n"


def _bounds_ok(b: dict) -> bool:
    return bool(b) and all(b[k] for k in ("divides_q2_minus_1", "lower_bound_divides", "psi_divides"))


def analysis_to_dict(
    conditions: ConditionReport,
    homology: HomologyReport | None,
    k: tuple[FinAbGroup, FinAbGroup] | None,
    notice: str | None = None,
    input_digest: str = "",
    timing: dict | None = None,
) -> dict:
    doc = {
        "version": __version__,
        "input_digest": input_digest,
        "conditions": conditions.to_dict(),
        "homology": None if homology is None else {
            name: group_to_dict(getattr(homology, name)) for name in ("h0", "h1", "h2")
        },
        "k0": None if k is None else group_to_dict(k[0]),
        "k1": None if k is None else group_to_dict(k[1]),
        "notice": notice,
        "timing": timing or {},
    }
    return doc


def analysis_text(doc: dict) -> str:
    c = doc["conditions"]
    lines = [
        "conditions: "
        + ", ".join(f"{k.upper()} {'pass' if c[k] else 'fail'}" for k in ("h0", "h1a", "h1b", "h2"))
        + f", H3 {c['h3']} (window {c['h3_window']})"
    ]
    for key, val in sorted(c["witnesses"].items()):
        if key != "h3":
            lines.append(f"  {key.upper()} witness: {val}")
    if doc["homology"]:
        h = doc["homology"]
        lines.append(f"H0 = {h['h0']['text']}, H1 = {h['h1']['text']}, H2 = {h['h2']['text']}")
    if doc["k0"]:
        lines.append(f"K0 = {doc['k0']['text']}, K1 = {doc['k1']['text']}")
    if doc["notice"]:
        lines.append(f"note: {doc['notice']}")
    return "\n".join(lines) + "\n"
