"""Exact integer linear algebra."""

from .abelian import FinAbGroup
from .intmatrix import IntMatrix
from .lattice import (
    Infinite,
    coker_structure,
    coker_with_orders,
    element_order_in_coker,
    hermite_columns,
    kernel_basis,
    solve_in_lattice,
)
from .smith import SmithForm, snf

__all__ = [
    "FinAbGroup",
    "Infinite",
    "IntMatrix",
    "SmithForm",
    "coker_structure",
    "coker_with_orders",
    "element_order_in_coker",
    "hermite_columns",
    "kernel_basis",
    "snf",
    "solve_in_lattice",
]
