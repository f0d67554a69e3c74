"""Executable algebraic laws.

Each function checks one law on concrete inhabitants and returns ``True`` when
it holds.  They are written against :class:`~quantspace.core.ScaloidContract`
so the same suite runs on a quantity space and on a bare scalar monoid.
"""

from __future__ import annotations

from typing import Any

from . import core
from .core import Quantity, ScaloidContract
from .scalar import Scalar, s_add, s_mul


def unit_action(S: ScaloidContract, x: Any) -> bool:
    return S.scale(S.scalars.one(), x) == x


def compatible_action(S: ScaloidContract, a: Scalar, b: Scalar, x: Any) -> bool:
    return S.scale(a, S.scale(b, x)) == S.scale(s_mul(a, b), x)


def bilinear_action(S: ScaloidContract, a: Scalar, x: Any, y: Any) -> bool:
    lhs = S.scale(a, S.mul(x, y))
    return lhs == S.mul(S.scale(a, x), y) and lhs == S.mul(x, S.scale(a, y))


def scaled_product(S: ScaloidContract, a: Scalar, b: Scalar, x: Any, y: Any) -> bool:
    return S.mul(S.scale(a, x), S.scale(b, y)) == S.scale(s_mul(a, b), S.mul(x, y))


def scalars_commute(S: ScaloidContract, a: Scalar, b: Scalar, x: Any) -> bool:
    return S.scale(a, S.scale(b, x)) == S.scale(b, S.scale(a, x))


def monoid_identity(S: ScaloidContract, x: Any) -> bool:
    return S.mul(S.one(), x) == x and S.mul(x, S.one()) == x


def monoid_associative(S: ScaloidContract, x: Any, y: Any, z: Any) -> bool:
    return S.mul(S.mul(x, y), z) == S.mul(x, S.mul(y, z))


def monoid_commutative(S: ScaloidContract, x: Any, y: Any) -> bool:
    return S.mul(x, y) == S.mul(y, x)


# Commensurability


def commensurable_reflexive(x: Quantity) -> bool:
    return core.commensurable(x, x)


def commensurable_symmetric(x: Quantity, y: Quantity) -> bool:
    return core.commensurable(x, y) == core.commensurable(y, x)


def commensurable_transitive(x: Quantity, y: Quantity, z: Quantity) -> bool:
    if core.commensurable(x, y) and core.commensurable(y, z):
        return core.commensurable(x, z)
    return True


def commensurable_congruence(x: Quantity, x2: Quantity, y: Quantity, y2: Quantity) -> bool:
    if core.commensurable(x, x2) and core.commensurable(y, y2):
        return core.commensurable(core.mul(x, y), core.mul(x2, y2))
    return True


def commensurable_conditions_agree(x: Quantity, y: Quantity) -> bool:
    """The three equivalent characterisations of ``x ~ y`` give one answer."""
    by_relation = core.commensurable(x, y)
    by_exponents = x.exponents == y.exponents
    by_cross_scaling = core.scale(y.measure, x) == core.scale(x.measure, y)
    return by_relation == by_exponents == by_cross_scaling


# Measures


def measure_multiplicative(x: Quantity, y: Quantity) -> bool:
    return core.mul(x, y).measure == s_mul(x.measure, y.measure)


def measure_homogeneous(a: Scalar, x: Quantity) -> bool:
    return core.scale(a, x).measure == s_mul(a, x.measure)


def measure_additive(x: Quantity, y: Quantity) -> bool:
    return core.add(x, y).measure == s_add(x.measure, y.measure)


def pivot_independent(x: Quantity, y: Quantity, p: Quantity) -> bool:
    """Adding via an arbitrary invertible pivot ``p`` agrees with ``add``."""
    alpha = x.measure / p.measure
    beta = y.measure / p.measure
    if core.scale(alpha, p) != x or core.scale(beta, p) != y:
        return False
    return core.scale(s_add(alpha, beta), p) == core.add(x, y)
