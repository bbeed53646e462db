"""Exception types shared across the package."""

from __future__ import annotations


class A2KError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(A2KError, ValueError):
    pass


class NotZeroOne(A2KError, ValueError):
    """A transition matrix has an entry outside {0, 1}."""


class NoIntegerSolution(A2KError):
    """Some right-hand side column is not in the integer column span."""


class EqualPoints(A2KError, ValueError):
    pass


class EqualLines(A2KError, ValueError):
    pass


class PresentationSyntaxError(A2KError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownGenerator(PresentationSyntaxError):
    pass


class WrongArity(PresentationSyntaxError):
    pass


class ValidationError(A2KError):
    """A parsed presentation violates a triangle-presentation axiom."""


class PlaneAxiomViolation(ValidationError):
    def __init__(self, axiom: str, witness: object = None):
        self.axiom = axiom
        self.witness = witness
        msg = axiom if witness is None else f"{axiom} (witness: {witness})"
        super().__init__(msg)


class ClosureCountMismatch(ValidationError):
    pass


class CompletionNotUnique(ValidationError):
    pass


class UnknownBuiltin(A2KError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class NotCommuting(A2KError):
    pass


class ConditionsNotMet(A2KError):
    pass


class ConsistencyFailure(A2KError):
    """An internal cross-check disagreed; results must not be trusted."""


class InfiniteOrder(ConsistencyFailure):
    pass
