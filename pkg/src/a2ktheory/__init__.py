"""K-theory of boundary algebras of Ã₂ groups from triangle presentations."""

__version__ = "0.1.0"

from .cktwo import (  # noqa: E402
    ConditionReport,
    HomologyReport,
    KTheoryReport,
    check_conditions,
    count_words,
    homology_complex,
    identity_bounds_check,
    k_theory_a2,
    k_theory_general,
)
from .plane import CombinatorialPlane  # noqa: E402
from .presentation import (  # noqa: E402
    TrianglePresentation,
    Triple,
    ValidatedPresentation,
    builtin,
    parse_presentation,
    synthetic,
    validate,
)
from .transition import HatAlphabet, TransitionPair, build_check, build_hat, structural_report  # noqa: E402
from .zmat import FinAbGroup, IntMatrix, snf  # noqa: E402

__all__ = [
    "CombinatorialPlane",
    "ConditionReport",
    "FinAbGroup",
    "HatAlphabet",
    "HomologyReport",
    "IntMatrix",
    "KTheoryReport",
    "TransitionPair",
    "TrianglePresentation",
    "Triple",
    "ValidatedPresentation",
    "build_check",
    "build_hat",
    "builtin",
    "check_conditions",
    "count_words",
    "homology_complex",
    "identity_bounds_check",
    "k_theory_a2",
    "k_theory_general",
    "parse_presentation",
    "snf",
    "structural_report",
    "synthetic",
    "validate",
]
