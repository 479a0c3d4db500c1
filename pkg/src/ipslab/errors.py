"""Exception hierarchy shared by every ipslab module."""

from typing import Any


class IpslabError(Exception):
    """Base class for all errors raised deliberately by ipslab."""


class FieldMismatchError(IpslabError, TypeError):
    """Operands belong to different fields."""


class FieldDivisionError(IpslabError, ZeroDivisionError):
    """Division by (or inversion of) the zero element."""


class VariableMismatchError(IpslabError, ValueError):
    """Polynomials are defined over different variable tables."""


class MissingVariableError(IpslabError, KeyError):
    """An evaluation point does not assign a variable the polynomial depends on."""


class ZeroPolynomialError(IpslabError, ValueError):
    """The operation is undefined on the zero polynomial."""


class SizeGuardError(IpslabError, ValueError):
    """A desk-scale size guard would be exceeded."""


class InvalidParameterError(IpslabError, ValueError):
    """A generator or experiment received parameters outside its domain."""

    def __init__(self, message: str, valid: list[Any] | None = None) -> None:
        super().__init__(message)
        self.valid = valid


class CubeSatisfiableError(IpslabError, ValueError):
    """The axiom vanishes at a Boolean point, so no cube inverse exists."""

    def __init__(self, message: str, witness: dict[str, int]) -> None:
        super().__init__(message)
        self.witness = witness


class IncomparabilityError(IpslabError, ValueError):
    """Two monomials of the axiom have nested supports."""

    def __init__(self, message: str, pair: tuple[str, str]) -> None:
        super().__init__(message)
        self.pair = pair


class UnsupportedShapeError(IpslabError, ValueError):
    """The input polynomial does not have the shape the construction requires."""


class InternalInvariantError(IpslabError, AssertionError):
    """A result failed its own exact re-verification."""


class UsageError(IpslabError, ValueError):
    """Command-line arguments are missing or contradict each other."""
