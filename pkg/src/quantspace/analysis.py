"""Dimensional-analysis helpers: homogeneity, conversion, dimensionless products."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import core
from .core import Dimension, Quantity
from .errors import (
    EmptyTermsError,
    IncommensurableError,
    NonInvertibleError,
    SystemMismatchError,
)
from .scalar import Scalar, s_inv, s_mul

__all__ = [
    "HomogeneityReport",
    "check_homogeneous",
    "convert",
    "dimensionless_products",
    "integer_left_kernel",
    "hermite_normal_form",
]


@dataclass(frozen=True)
class HomogeneityReport:
    homogeneous: bool
    dimensions: tuple[Dimension, ...]
    first_mismatch: tuple[int, int] | None = None


def _one_space(items: Sequence[Dimension]) -> None:
    space = items[0].space
    for d in items[1:]:
        if d.space != space:
            raise SystemMismatchError(f"mixed systems {space.id!r} and {d.space.id!r}")


def check_homogeneous(terms: Sequence[Quantity]) -> HomogeneityReport:
    if not terms:
        raise EmptyTermsError("no terms to check")
    dims = tuple(q.dim for q in terms)
    _one_space(dims)
    for j, d in enumerate(dims):
        if d != dims[0]:
            return HomogeneityReport(False, dims, (0, j))
    return HomogeneityReport(True, dims)


def convert(x: Quantity, target: Quantity) -> Scalar:
    """The scalar ``k`` with ``scale(k, target) == x``."""
    if not core.is_invertible(target):
        raise NonInvertibleError("conversion target has measure 0")
    if not core.commensurable(x, target):
        raise IncommensurableError(
            f"cannot convert dimension {x.exponents} to dimension {target.exponents}"
        )
    return s_mul(x.measure, s_inv(target.measure))


def _echelon(rows: list[list[int]], ncols: int) -> int:
    """Unimodular row reduction of ``rows`` on their first ``ncols`` columns, in place.

    Uses only swaps, negations and integer row additions (Euclid on each
    column).  Returns the number of non-zero rows, which come first.
    """
    r = 0
    for c in range(ncols):
        while True:
            live = [i for i in range(r, len(rows)) if rows[i][c] != 0]
            if not live:
                break
            p = min(live, key=lambda i: abs(rows[i][c]))
            rows[r], rows[p] = rows[p], rows[r]
            if rows[r][c] < 0:
                rows[r] = [-v for v in rows[r]]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    done = done and rows[i][c] == 0
            if done:
                r += 1
                break
        if r == len(rows):
            break
    return r


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows are dropped."""
    work = [list(map(int, row)) for row in rows]
    if not work:
        return []
    ncols = len(work[0])
    rank = _echelon(work, ncols)
    work = work[:rank]
    for i, row in enumerate(work):
        pc = next(c for c, v in enumerate(row) if v)
        for j in range(i):
            q = work[j][pc] // row[pc]
            if q:
                work[j] = [a - q * b for a, b in zip(work[j], row)]
    return work


def integer_left_kernel(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """A Z-basis of ``{e : sum_i e_i * rows[i] == 0}``, in Hermite normal form."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    aug = [list(map(int, row)) + [int(i == j) for j in range(m)] for i, row in enumerate(rows)]
    rank = _echelon(aug, n)
    kernel = [row[n:] for row in aug[rank:]]
    return hermite_normal_form(kernel)


def dimensionless_products(dims: Sequence[Dimension]) -> list[tuple[int, ...]]:
    """Integer exponent vectors ``e`` with ``prod(dims[i] ** e[i])`` dimensionless.

    The result is a basis of the lattice of all such vectors, so every
    dimensionless product of the inputs is an integer combination of it.
    Vectors are primitive and their first non-zero entry is positive.
    """
    if not dims:
        raise EmptyTermsError("no dimensions given")
    _one_space(dims)
    return [tuple(e) for e in integer_left_kernel([d.exponents for d in dims])]
