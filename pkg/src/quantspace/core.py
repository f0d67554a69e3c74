"""Quantity-space algebra.

A quantity is stored in canonical form: a measure (a scalar) together with
the integer exponent vector of its expansion over the basis of its space.
Equality is component-wise equality of that pair, which is exactly what
uniqueness of the expansion licenses.

Commensurability classes (dimensions) are the exponent vectors; they form a
free abelian group under component-wise addition.  Addition is defined only
inside one dimension, through the measure-1 pivot of that dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Protocol, Sequence, TypeVar

from .errors import (
    ExponentOverflowError,
    IncommensurableError,
    NonInvertibleError,
    SystemMismatchError,
)
from .scalar import Scalar, ScalarSystem, s_add, s_inv, s_mul, s_neg, s_pow

__all__ = [
    "QuantitySpace",
    "ScalarMonoid",
    "ScaloidContract",
    "Dimension",
    "Quantity",
    "one",
    "mul",
    "scale",
    "pow",
    "invert",
    "is_invertible",
    "commensurable",
    "add",
    "sub",
    "neg",
    "zero_of",
    "canonical_pivot",
    "dimension",
    "measure",
    "dim_mul",
    "dim_inv",
    "dim_pow",
    "dim_identity",
    "product",
]

EXPONENT_MIN = -(2**63)
EXPONENT_MAX = 2**63 - 1

T = TypeVar("T")


class ScaloidContract(Protocol[T]):
    """A commutative monoid with a scalar action.

    Instances must satisfy ``scale(1, x) == x``,
    ``scale(a, scale(b, x)) == scale(a*b, x)`` and
    ``scale(a, mul(x, y)) == mul(scale(a, x), y) == mul(x, scale(a, y))``.
    """

    scalars: ScalarSystem

    def one(self) -> T: ...

    def mul(self, x: T, y: T) -> T: ...

    def scale(self, alpha: Scalar, x: T) -> T: ...


@dataclass(frozen=True)
class QuantitySpace:
    """Identity of a quantity space: a name, its rank and its scalar system."""

    id: str
    rank: int
    scalars: ScalarSystem

    def one(self) -> Quantity:
        return one(self)

    def mul(self, x: Quantity, y: Quantity) -> Quantity:
        return mul(x, y)

    def scale(self, alpha: Scalar, x: Quantity) -> Quantity:
        return scale(alpha, x)

    def dimension(self, exponents: Iterable[int]) -> Dimension:
        return Dimension(tuple(exponents), self)

    def quantity(self, value: Any, exponents: Iterable[int] | None = None) -> Quantity:
        if exponents is None:
            exponents = (0,) * self.rank
        m = value if isinstance(value, Scalar) else Scalar(value, self.scalars)
        return Quantity(m, self.dimension(exponents))


@dataclass(frozen=True)
class ScalarMonoid:
    """The scalar system acting on its own multiplicative monoid."""

    scalars: ScalarSystem

    def one(self) -> Scalar:
        return self.scalars.one()

    def mul(self, x: Scalar, y: Scalar) -> Scalar:
        return s_mul(x, y)

    def scale(self, alpha: Scalar, x: Scalar) -> Scalar:
        return s_mul(alpha, x)


def _check_exponent(k: int) -> int:
    if not EXPONENT_MIN <= k <= EXPONENT_MAX:
        raise ExponentOverflowError(f"exponent {k} does not fit in 64 bits")
    return k


@dataclass(frozen=True)
class Dimension:
    """A commensurability class, represented by its exponent vector."""

    exponents: tuple[int, ...]
    space: QuantitySpace

    def __post_init__(self) -> None:
        exps = tuple(self.exponents)
        if len(exps) != self.space.rank:
            raise SystemMismatchError(
                f"expected {self.space.rank} exponents for {self.space.id!r}, got {len(exps)}"
            )
        for k in exps:
            if isinstance(k, bool) or not isinstance(k, int):
                raise TypeError(f"exponents must be integers, got {k!r}")
            _check_exponent(k)
        object.__setattr__(self, "exponents", exps)

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def __mul__(self, other: Dimension) -> Dimension:
        return dim_mul(self, other)

    def __truediv__(self, other: Dimension) -> Dimension:
        return dim_mul(self, dim_inv(other))

    def __pow__(self, k: int) -> Dimension:
        return dim_pow(self, k)

    def __repr__(self) -> str:
        return f"Dimension({self.exponents}, {self.space.id!r})"


@dataclass(frozen=True)
class Quantity:
    """Canonical expansion ``measure * prod(b_i ** k_i)``."""

    measure: Scalar
    dim: Dimension

    def __post_init__(self) -> None:
        if self.measure.system is not self.dim.space.scalars:
            raise SystemMismatchError(
                f"measure in {self.measure.system}, space {self.dim.space.id!r} "
                f"uses {self.dim.space.scalars}"
            )

    @property
    def space(self) -> QuantitySpace:
        return self.dim.space

    @property
    def exponents(self) -> tuple[int, ...]:
        return self.dim.exponents

    def __repr__(self) -> str:
        return f"Quantity({self.measure}, {self.dim.exponents}, {self.space.id!r})"

    def __mul__(self, other: Quantity | Scalar) -> Quantity:
        if isinstance(other, Scalar):
            return scale(other, self)
        return mul(self, other)

    def __rmul__(self, other: Scalar) -> Quantity:
        if isinstance(other, Scalar):
            return scale(other, self)
        return NotImplemented

    def __truediv__(self, other: Quantity) -> Quantity:
        return mul(self, invert(other))

    def __pow__(self, k: int) -> Quantity:
        return pow(self, k)

    def __add__(self, other: Quantity) -> Quantity:
        return add(self, other)

    def __sub__(self, other: Quantity) -> Quantity:
        return sub(self, other)

    def __neg__(self) -> Quantity:
        return neg(self)


def _same_space(a: QuantitySpace, b: QuantitySpace) -> QuantitySpace:
    if a != b:
        raise SystemMismatchError(f"quantities from different spaces: {a.id!r} vs {b.id!r}")
    return a


def dim_identity(space: QuantitySpace) -> Dimension:
    return Dimension((0,) * space.rank, space)


def dim_mul(d1: Dimension, d2: Dimension) -> Dimension:
    space = _same_space(d1.space, d2.space)
    return Dimension(tuple(a + b for a, b in zip(d1.exponents, d2.exponents)), space)


def dim_inv(d: Dimension) -> Dimension:
    return Dimension(tuple(-a for a in d.exponents), d.space)


def dim_pow(d: Dimension, k: int) -> Dimension:
    return Dimension(tuple(a * k for a in d.exponents), d.space)


def one(space: QuantitySpace) -> Quantity:
    return Quantity(space.scalars.one(), dim_identity(space))


def dimension(x: Quantity) -> Dimension:
    return x.dim


def measure(x: Quantity) -> Scalar:
    return x.measure


def mul(x: Quantity, y: Quantity) -> Quantity:
    return Quantity(s_mul(x.measure, y.measure), dim_mul(x.dim, y.dim))


def scale(alpha: Scalar, x: Quantity) -> Quantity:
    return Quantity(s_mul(alpha, x.measure), x.dim)


def is_invertible(x: Quantity) -> bool:
    return not x.measure.is_zero()


def invert(x: Quantity) -> Quantity:
    if not is_invertible(x):
        raise NonInvertibleError(f"{x!r} has measure 0 and no inverse")
    return Quantity(s_inv(x.measure), dim_inv(x.dim))


def pow(x: Quantity, k: int) -> Quantity:
    """``x ** k`` for any integer ``k``; ``x ** 0`` is the unit quantity."""
    if k < 0 and not is_invertible(x):
        raise NonInvertibleError(f"negative power of non-invertible {x!r}")
    if k == 0:
        return one(x.space)
    return Quantity(s_pow(x.measure, k), dim_pow(x.dim, k))


def commensurable(x: Quantity, y: Quantity) -> bool:
    _same_space(x.space, y.space)
    return x.dim == y.dim


def canonical_pivot(dim: Dimension) -> Quantity:
    """The measure-1 representative of a dimension; always invertible."""
    return Quantity(dim.space.scalars.one(), dim)


def zero_of(dim: Dimension) -> Quantity:
    return Quantity(dim.space.scalars.zero(), dim)


def add(x: Quantity, y: Quantity) -> Quantity:
    if not commensurable(x, y):
        raise IncommensurableError(
            f"cannot add quantities of dimensions {x.exponents} and {y.exponents}"
        )
    # x = a*p, y = b*p with p the measure-1 pivot, so x + y = (a + b)*p
    return scale(s_add(x.measure, y.measure), canonical_pivot(x.dim))


def neg(x: Quantity) -> Quantity:
    return scale(s_neg(x.space.scalars.one()), x)


def sub(x: Quantity, y: Quantity) -> Quantity:
    if not commensurable(x, y):
        raise IncommensurableError(
            f"cannot subtract quantities of dimensions {x.exponents} and {y.exponents}"
        )
    return add(x, neg(y))


def product(factors: Sequence[Quantity], exponents: Sequence[int]) -> Quantity:
    """``prod(factors[i] ** exponents[i])``; the sequences must not be empty."""
    result = one(factors[0].space)
    for q, e in zip(factors, exponents, strict=True):
        result = mul(result, pow(q, e))
    return result
