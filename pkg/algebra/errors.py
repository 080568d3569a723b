# algebra/errors.py
"""
Exception hierarchy for the conformal algebra toolkit.

Every error raised on purpose by the library derives from ConfextError, so the
CLI can turn any of them into a clean message and exit code 2. Identity checks
never raise on a failed identity; those failures are reported as data.
"""

from __future__ import annotations
from typing import Optional


class ConfextError(Exception):
    """Base class for all library errors."""


# -------------------------------------------------------------------
# Expressions and polynomials
# -------------------------------------------------------------------
class ExpressionSyntaxError(ConfextError):
    """Raised when an expression string does not follow the grammar."""

    def __init__(self, text: str, position: int, expected: str):
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(f"syntax error at position {position} in {text!r}: expected {expected}")


class VariableOutOfRange(ConfextError):
    def __init__(self, index: int, arity: int):
        self.index = index
        self.arity = arity
        super().__init__(f"variable L{index} is outside the lambda context of arity {arity}")


class ArityMismatch(ConfextError):
    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"lambda arity mismatch: {left} vs {right}")


class IndexCollision(ConfextError):
    def __init__(self, target: int):
        self.target = target
        super().__init__(f"two lambda variables renamed onto L{target}")


# -------------------------------------------------------------------
# Modules and linear algebra
# -------------------------------------------------------------------
class ModuleMismatch(ConfextError):
    """Raised when an element or map is used with the wrong module."""


class NotAffine(ConfextError):
    """Raised when a system with products of unknowns reaches the linear solver."""


class NotInvertible(ConfextError):
    """Raised when a k[∂]-linear map has no inverse over k[∂]."""


class DegreeMismatch(ConfextError):
    """Raised when a cochain receives the wrong number of arguments."""


class SlotOutOfRange(ConfextError):
    def __init__(self, slot: int, degree: int):
        self.slot = slot
        self.degree = degree
        super().__init__(f"insertion slot {slot} is outside 0..{degree - 1}")


# -------------------------------------------------------------------
# Algebraic structures
# -------------------------------------------------------------------
class NotAssociativeBase(ConfextError):
    """Raised when the multiplication table given to cur_of is not associative."""


class InvalidBimodule(ConfextError):
    """Raised when bimodule axioms fail where a valid bimodule is required."""


class InvalidCocycle(ConfextError):
    """Raised when a triple that must be a non-abelian 2-cocycle is not one."""


class InvalidWitness(ConfextError):
    """Raised when a supplied witness map fails its defining identities."""

    def __init__(self, message: str, identity: Optional[str] = None):
        self.identity = identity
        super().__init__(message)


class DoesNotPreserveA(ConfextError):
    """Raised when a map of an extension does not send A into A."""


class NotAbelian(ConfextError):
    """Raised when an abelian extension is required but A has a nonzero product."""


class NotSplit(ConfextError):
    """Raised when a split extension is required."""


class NotStrict(ConfextError):
    """Raised when a 2-term structure with nonzero ternary map is used as strict."""


class NotSkeletal(ConfextError):
    """Raised when a 2-term structure with nonzero differential is used as skeletal."""


class NotACocycle(ConfextError):
    """Raised when a cochain that must be closed is not."""


# -------------------------------------------------------------------
# Solvers
# -------------------------------------------------------------------
class UndecidedWithinBounds(ConfextError):
    def __init__(self, what: str, bound: int):
        self.what = what
        self.bound = bound
        super().__init__(f"no {what} found with ∂-degree at most {bound}")


class NoRationalWitness(ConfextError):
    """Raised when a system is consistent over the closure but no rational point was found."""


# -------------------------------------------------------------------
# Sessions
# -------------------------------------------------------------------
class SessionError(ConfextError):
    """Raised when a session file refers to an unknown or mistyped object."""
