"""Scalar systems and scalar values.

A scalar system is a subset of a field that is closed under addition and
whose non-zero elements form a group under multiplication.  Six systems are
supported, three cones (field, non-negative, positive) over two backends:

* ``*-Rational``: exact ``fractions.Fraction`` values
* ``*-Real``: binary64 ``float`` values

Mixing scalars from different systems is an error, never a promotion.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import (
    DomainError,
    SystemMismatchError,
    UnsupportedNegationError,
    UnsupportedZeroError,
    ZeroInverseError,
)

Number = Union[int, Fraction, float, str]

__all__ = [
    "ScalarSystem",
    "Scalar",
    "s_add",
    "s_mul",
    "s_inv",
    "s_neg",
    "s_pow",
    "parse_number",
]


class ScalarSystem(enum.Enum):
    """Descriptor for one of the supported scalar systems."""

    FIELD_RATIONAL = ("Field-Rational", True, True, True)
    NONNEGATIVE_RATIONAL = ("NonNegative-Rational", True, True, False)
    POSITIVE_RATIONAL = ("Positive-Rational", True, False, False)
    FIELD_REAL = ("Field-Real", False, True, True)
    NONNEGATIVE_REAL = ("NonNegative-Real", False, True, False)
    POSITIVE_REAL = ("Positive-Real", False, False, False)

    def __init__(self, ident: str, exact: bool, has_zero: bool, has_negation: bool):
        self.ident = ident
        self.exact = exact
        self.has_zero = has_zero
        self.has_negation = has_negation

    def __str__(self) -> str:
        return self.ident

    @classmethod
    def from_id(cls, ident: str) -> ScalarSystem:
        for member in cls:
            if member.ident == ident:
                return member
        raise DomainError(f"unknown scalar system {ident!r}")

    @property
    def exact_variant(self) -> ScalarSystem:
        """The system with the same sign cone on the exact backend."""
        return ScalarSystem.from_id(self.ident.replace("-Real", "-Rational"))

    @property
    def float_variant(self) -> ScalarSystem:
        return ScalarSystem.from_id(self.ident.replace("-Rational", "-Real"))

    def contains(self, value: Fraction | float) -> bool:
        if not self.exact and not math.isfinite(value):
            return False
        if self.has_negation:
            return True
        if self.has_zero:
            return value >= 0
        return value > 0

    def __call__(self, value: Number) -> Scalar:
        """Shorthand constructor: ``ScalarSystem.FIELD_RATIONAL("2/3")``."""
        return Scalar(value, self)

    def zero(self) -> Scalar:
        if not self.has_zero:
            raise UnsupportedZeroError(f"{self} has no zero")
        return Scalar(0, self)

    def one(self) -> Scalar:
        return Scalar(1, self)


def parse_number(text: str) -> Fraction:
    """Parse ``"p"``, ``"p/q"`` or a decimal string to an exact fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a number: {text!r}") from exc


def _coerce(value: Number, system: ScalarSystem) -> Fraction | float:
    if isinstance(value, str):
        value = parse_number(value)
    if system.exact:
        if isinstance(value, float):
            if not math.isfinite(value):
                raise DomainError(f"{value!r} is not a rational number")
            return Fraction(value)
        if isinstance(value, Rational):
            return Fraction(value)
        raise DomainError(f"cannot represent {value!r} exactly")
    return float(value)


@dataclass(frozen=True)
class Scalar:
    """An immutable scalar tagged with its scalar system."""

    value: Fraction | float
    system: ScalarSystem

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _coerce(self.value, self.system))
        if self.system.exact or __debug__:
            if not self.system.contains(self.value):
                raise DomainError(f"{self.value} is not a member of {self.system}")

    def __str__(self) -> str:
        if self.system.exact:
            return str(self.value)
        return repr(self.value)

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r}, {self.system.ident})"

    def __bool__(self) -> bool:
        return self.value != 0

    def is_zero(self) -> bool:
        return self.value == 0

    def __add__(self, other: Scalar) -> Scalar:
        return s_add(self, other)

    def __mul__(self, other: Scalar) -> Scalar:
        return s_mul(self, other)

    def __neg__(self) -> Scalar:
        return s_neg(self)

    def __sub__(self, other: Scalar) -> Scalar:
        return s_add(self, s_neg(other))

    def __truediv__(self, other: Scalar) -> Scalar:
        return s_mul(self, s_inv(other))

    def __pow__(self, k: int) -> Scalar:
        return s_pow(self, k)


def _check_same(a: Scalar, b: Scalar) -> ScalarSystem:
    if a.system is not b.system:
        raise SystemMismatchError(f"scalar systems differ: {a.system} vs {b.system}")
    return a.system


def s_add(a: Scalar, b: Scalar) -> Scalar:
    return Scalar(a.value + b.value, _check_same(a, b))


def s_mul(a: Scalar, b: Scalar) -> Scalar:
    return Scalar(a.value * b.value, _check_same(a, b))


def s_inv(a: Scalar) -> Scalar:
    if a.value == 0:
        raise ZeroInverseError("zero has no multiplicative inverse")
    if a.system.exact:
        return Scalar(1 / a.value, a.system)
    return Scalar(1.0 / a.value, a.system)


def s_neg(a: Scalar) -> Scalar:
    if not a.system.has_negation:
        raise UnsupportedNegationError(f"{a.system} has no negatives")
    return Scalar(-a.value, a.system)


def s_pow(a: Scalar, k: int) -> Scalar:
    """Integer power; negative exponents go through ``s_inv``."""
    if k < 0:
        a = s_inv(a)
        k = -k
    if a.system.exact:
        return Scalar(a.value**k, a.system)
    return Scalar(math.pow(a.value, k), a.system)
