"""Exception hierarchy.

Every user-facing error carries a short machine-readable ``code`` that the
command-line front end prints on stderr.
"""

from __future__ import annotations


class QuantityError(Exception):
    code = "E_QUANTITY"


class SystemMismatchError(QuantityError, TypeError):
    code = "E_SYSTEM_MISMATCH"


class DomainError(QuantityError, ValueError):
    """A value lies outside the scalar system it was declared in."""

    code = "E_DOMAIN"


class ZeroInverseError(QuantityError, ZeroDivisionError):
    code = "E_ZERO_INVERSE"


class UnsupportedNegationError(QuantityError, ArithmeticError):
    code = "E_UNSUPPORTED_NEGATION"


class UnsupportedZeroError(QuantityError, ArithmeticError):
    code = "E_UNSUPPORTED_ZERO"


class ExponentOverflowError(QuantityError, OverflowError):
    code = "E_EXPONENT_OVERFLOW"


class NonInvertibleError(QuantityError, ArithmeticError):
    code = "E_NON_INVERTIBLE"


class NonInvertibleUnitError(NonInvertibleError):
    code = "E_NON_INVERTIBLE_UNIT"


class IncommensurableError(QuantityError, ArithmeticError):
    code = "E_INCOMMENSURABLE"


class DuplicateSymbolError(QuantityError, ValueError):
    code = "E_DUPLICATE_SYMBOL"


class EmptyBasisError(QuantityError, ValueError):
    code = "E_EMPTY_BASIS"


class NonSquareError(QuantityError, ValueError):
    code = "E_NON_SQUARE"


class RankMismatchError(QuantityError, ValueError):
    code = "E_RANK_MISMATCH"


class NonUnimodularError(QuantityError, ValueError):
    code = "E_NON_UNIMODULAR"

    def __init__(self, determinant: int, message: str | None = None):
        self.determinant = determinant
        super().__init__(
            message or f"exponent matrix has determinant {determinant}, expected +1 or -1"
        )


class EmptyTermsError(QuantityError, ValueError):
    code = "E_EMPTY"


class UnknownSymbolError(QuantityError, KeyError):
    code = "E_UNKNOWN_SYMBOL"

    def __str__(self) -> str:
        # KeyError would otherwise repr() the message
        return str(self.args[0]) if self.args else ""


class SchemaError(QuantityError, ValueError):
    code = "E_SCHEMA"


class ParseError(QuantityError, ValueError):
    code = "E_SYNTAX"

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


class InternalInvariantError(QuantityError, AssertionError):
    """Raised when a guaranteed internal property fails; always a bug."""

    code = "E_INTERNAL"
