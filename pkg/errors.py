"""
Error taxonomy
Every failure the toolkit reports carries the CLI exit code it maps to
"""

from config import (
    EXIT_INPUT_ERROR,
    EXIT_UNSUPPORTED,
    EXIT_POINT_INVALID,
    EXIT_INVARIANT,
)


class TangentSpaceError(Exception):
    """Base class for all reported failures"""
    exit_code = EXIT_INVARIANT


# --- input problems (exit 1) ---

class ParseError(TangentSpaceError):
    """Syntax error with a 1-based line/column position"""
    exit_code = EXIT_INPUT_ERROR

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(f"{where}{message}")


class SemanticError(TangentSpaceError):
    exit_code = EXIT_INPUT_ERROR


class UnknownVariable(SemanticError):
    def __init__(self, name, variables=()):
        self.name = name
        known = ", ".join(variables) if variables else "none"
        super().__init__(f"unknown variable '{name}' (known: {known})")


class MorphismRelationError(SemanticError):
    """A pullback does not send a relation of S into the ideal of X"""


class PointNotOnScheme(SemanticError):
    pass


class PointImageMismatch(SemanticError):
    """f(x) differs from the declared point s"""


# --- unsupported inputs (exit 2) ---

class UnsupportedPoint(TangentSpaceError):
    exit_code = EXIT_UNSUPPORTED


class NotZeroDimensional(UnsupportedPoint):
    """A quotient expected to be finite-dimensional has an infinite staircase"""


class UnsupportedExtension(UnsupportedPoint):
    pass


# --- point validity certificates (exit 3) ---

class PointInvalidity(TangentSpaceError):
    exit_code = EXIT_POINT_INVALID


class ZeroDivisorWitness(PointInvalidity):
    """A nonzero w with element * w = 0 in an alleged field"""

    def __init__(self, element, witness, context=""):
        self.element = element
        self.witness = witness
        prefix = f"{context}: " if context else ""
        super().__init__(
            f"{prefix}ZeroDivisorWitness: ({element}) * ({witness}) = 0, "
            f"so the point ideal is not maximal / the ideal is not prime"
        )


class ReducibleTowerStep(ZeroDivisorWitness):
    """A tower step factors; factor * cofactor vanishes in the tower"""

    def __init__(self, step, factor, cofactor):
        self.step = step
        self.factor = factor
        self.cofactor = cofactor
        super().__init__(factor, cofactor, context=f"tower step '{step}' is reducible")


# --- implementation bugs (exit 4) ---

class InvariantViolation(TangentSpaceError):
    exit_code = EXIT_INVARIANT


class IncompatibleContext(TangentSpaceError):
    exit_code = EXIT_INVARIANT


# --- internal value errors, normally caught by the caller ---

class NotFiniteOverBase(TangentSpaceError):
    exit_code = EXIT_UNSUPPORTED


class UnitIdeal(TangentSpaceError):
    exit_code = EXIT_INPUT_ERROR


class ThetaNotInvertible(TangentSpaceError):
    exit_code = EXIT_INVARIANT
