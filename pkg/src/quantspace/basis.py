"""Unit systems and change of basis.

A :class:`UnitSystem` names the basis of a quantity space (its base units)
and keeps a table of derived units.  A :class:`BasisChange` re-expresses
quantities over a new set of base units.  A proposed set of ``n`` invertible
units is a basis exactly when the integer matrix of their exponents over the
old basis is unimodular; scale factors are the units' measures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from types import MappingProxyType
from typing import Any, Iterable, Mapping, Sequence

from . import core
from .core import Quantity, QuantitySpace
from .errors import (
    DuplicateSymbolError,
    EmptyBasisError,
    InternalInvariantError,
    NonInvertibleUnitError,
    NonSquareError,
    NonUnimodularError,
    RankMismatchError,
    SchemaError,
    SystemMismatchError,
    UnknownSymbolError,
)
from .scalar import Scalar, ScalarSystem, s_inv, s_mul, s_pow

__all__ = [
    "UnitSystem",
    "BasisChange",
    "define_system",
    "define_derived",
    "int_det",
    "solve_integer",
    "propose_basis_change",
    "rebase",
    "system_from_dict",
    "system_to_dict",
    "load_system",
    "save_system",
]

Matrix = Sequence[Sequence[int]]

DIMENSIONLESS_SYMBOL = "[1]"


def _check_symbol(symbol: str) -> str:
    if not isinstance(symbol, str) or not symbol.isidentifier():
        raise SchemaError(f"invalid unit symbol {symbol!r}")
    return symbol


@dataclass(frozen=True, eq=False)
class UnitSystem:
    """Ordered base units over a scalar system, plus named derived units."""

    id: str
    scalars: ScalarSystem
    base_units: tuple[str, ...]
    derived_units: Mapping[str, Quantity] = field(default_factory=dict)
    space: QuantitySpace = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "base_units", tuple(self.base_units))
        object.__setattr__(self, "derived_units", MappingProxyType(dict(self.derived_units)))
        object.__setattr__(
            self, "space", QuantitySpace(self.id, len(self.base_units), self.scalars)
        )

    @property
    def rank(self) -> int:
        return len(self.base_units)

    def base(self, symbol: str) -> Quantity:
        i = self.base_units.index(symbol)
        exps = [0] * self.rank
        exps[i] = 1
        return Quantity(self.scalars.one(), self.space.dimension(exps))

    def symbols(self) -> list[str]:
        return [*self.base_units, *self.derived_units]

    def __contains__(self, symbol: str) -> bool:
        return symbol in self.base_units or symbol in self.derived_units

    def resolve(self, symbol: str) -> Quantity:
        if symbol in self.base_units:
            return self.base(symbol)
        if symbol in self.derived_units:
            return self.derived_units[symbol]
        if symbol == DIMENSIONLESS_SYMBOL:
            return core.one(self.space)
        raise UnknownSymbolError(f"unknown unit {symbol!r} in system {self.id!r}")

    def quantity(self, value: Any, exponents: Iterable[int] | None = None) -> Quantity:
        return self.space.quantity(value, exponents)

    def with_scalars(self, scalars: ScalarSystem) -> UnitSystem:
        """Same units over another scalar system (used for ``--exact``/``--float``)."""
        if scalars is self.scalars:
            return self
        out = UnitSystem(self.id, scalars, self.base_units)
        derived = {
            sym: out.quantity(Scalar(q.measure.value, scalars), q.exponents)
            for sym, q in self.derived_units.items()
        }
        return UnitSystem(self.id, scalars, self.base_units, derived)


def define_system(
    id: str,
    base_units: Sequence[str],
    scalars: ScalarSystem = ScalarSystem.FIELD_RATIONAL,
) -> UnitSystem:
    if not base_units:
        raise EmptyBasisError("a unit system needs at least one base unit")
    seen: set[str] = set()
    for sym in base_units:
        _check_symbol(sym)
        if sym in seen:
            raise DuplicateSymbolError(f"base unit {sym!r} declared twice")
        seen.add(sym)
    return UnitSystem(id, scalars, tuple(base_units))


def define_derived(system: UnitSystem, symbol: str, q: Quantity) -> UnitSystem:
    """Return a new system in which ``symbol`` names the invertible quantity ``q``."""
    _check_symbol(symbol)
    if symbol in system:
        raise DuplicateSymbolError(f"unit {symbol!r} already defined in {system.id!r}")
    if q.space != system.space:
        raise SystemMismatchError(f"{q!r} does not belong to system {system.id!r}")
    if not core.is_invertible(q):
        raise NonInvertibleUnitError(f"unit {symbol!r} would have measure 0")
    return UnitSystem(
        system.id, system.scalars, system.base_units, {**system.derived_units, symbol: q}
    )


# Exact integer linear algebra


def _check_square(M: Matrix) -> int:
    n = len(M)
    if any(len(row) != n for row in M):
        raise NonSquareError(f"matrix is not square: {n} rows of lengths {[len(r) for r in M]}")
    return n


def int_det(M: Matrix) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = _check_square(M)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is the Bareiss invariant
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def solve_integer(A: Matrix, B: Matrix) -> list[list[int]]:
    """Solve ``A X = B`` for square non-singular integer ``A``; ``X`` must be integral.

    Forward elimination is fraction-free; back substitution divides exactly
    and a non-integral entry raises :class:`InternalInvariantError`.
    """
    n = _check_square(A)
    m = len(B[0]) if B else 0
    aug = [list(map(int, A[i])) + list(map(int, B[i])) for i in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise InternalInvariantError("singular matrix in integer solve")
        aug[k], aug[piv] = aug[piv], aug[k]
        for i in range(k + 1, n):
            f, p = aug[i][k], aug[k][k]
            if f:
                aug[i] = [p * a - f * b for a, b in zip(aug[i], aug[k])]
    X: list[list[Fraction]] = [[Fraction(0)] * m for _ in range(n)]
    for i in reversed(range(n)):
        for c in range(m):
            acc = Fraction(aug[i][n + c])
            for j in range(i + 1, n):
                acc -= aug[i][j] * X[j][c]
            X[i][c] = acc / aug[i][i]
    out = []
    for row in X:
        if any(v.denominator != 1 for v in row):
            raise InternalInvariantError(f"non-integral solution {row} of a unimodular system")
        out.append([int(v) for v in row])
    return out


def _transpose(M: Matrix) -> list[list[int]]:
    return [list(col) for col in zip(*M)]


@dataclass(frozen=True, eq=False)
class BasisChange:
    """Change from ``source`` to ``target`` base units.

    ``matrix[j]`` holds the exponents of the ``j``-th new base unit over the
    source basis and ``nu[j]`` its measure, i.e. ``new_j = nu_j * prod(b_i ** matrix[j][i])``.
    """

    source: UnitSystem
    target: UnitSystem
    matrix: tuple[tuple[int, ...], ...]
    nu: tuple[Scalar, ...]
    _solver: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        n = self.source.rank
        if self.target.rank != n or len(self.matrix) != n or len(self.nu) != n:
            raise RankMismatchError(f"basis change must be {n}x{n}")
        if self.target.scalars is not self.source.scalars:
            raise SystemMismatchError("basis change across different scalar systems")
        det = int_det(self.matrix)
        if abs(det) != 1:
            raise NonUnimodularError(det)
        if any(v.is_zero() for v in self.nu):
            raise NonInvertibleUnitError("basis change scale factors must be non-zero")
        identity = [[int(i == j) for j in range(n)] for i in range(n)]
        solver = solve_integer(_transpose(self.matrix), identity)
        object.__setattr__(self, "_solver", tuple(map(tuple, solver)))

    @property
    def determinant(self) -> int:
        return int_det(self.matrix)

    def new_exponents(self, k: Sequence[int]) -> tuple[int, ...]:
        """The integer solution ``l`` of ``matrix^T l = k``."""
        return tuple(sum(a * b for a, b in zip(row, k)) for row in self._solver)

    def inverse(self) -> BasisChange:
        rows, nus = [], []
        for sym in self.source.base_units:
            q = rebase(self.source.base(sym), self)
            rows.append(q.exponents)
            nus.append(q.measure)
        return BasisChange(self.target, self.source, tuple(rows), tuple(nus))


def propose_basis_change(
    source: UnitSystem,
    new_units: Sequence[tuple[str, Quantity]],
    target: UnitSystem | str | None = None,
) -> BasisChange:
    """Validate ``new_units`` as a basis of ``source``'s space and build the change.

    ``target`` may be an existing system whose base units are the new symbols,
    a name for a freshly built target system, or ``None``.  A freshly built
    target also knows the old base units and derived units under their old
    names, re-expressed over the new basis.
    """
    n = source.rank
    if len(new_units) != n:
        raise RankMismatchError(f"system {source.id!r} has rank {n}, got {len(new_units)} units")
    symbols = [sym for sym, _ in new_units]
    if len(set(symbols)) != n:
        raise DuplicateSymbolError(f"repeated symbol among {symbols}")
    for sym, q in new_units:
        _check_symbol(sym)
        if q.space != source.space:
            raise SystemMismatchError(f"unit {sym!r} is not a quantity of {source.id!r}")
        if not core.is_invertible(q):
            raise NonInvertibleUnitError(f"unit {sym!r} has measure 0")
    matrix = tuple(q.exponents for _, q in new_units)
    nu = tuple(q.measure for _, q in new_units)

    fresh = not isinstance(target, UnitSystem)
    if fresh:
        target = UnitSystem(target or f"{source.id}'", source.scalars, tuple(symbols))
    elif tuple(target.base_units) != tuple(symbols):
        raise SchemaError(
            f"target base units {list(target.base_units)} differ from proposed {symbols}"
        )
    change = BasisChange(source, target, matrix, nu)
    if fresh:
        carried = {}
        for sym in [*source.base_units, *source.derived_units]:
            if sym not in symbols:
                carried[sym] = rebase(source.resolve(sym), change)
        target = UnitSystem(target.id, target.scalars, target.base_units, carried)
        change = BasisChange(source, target, matrix, nu)
    return change


def rebase(x: Quantity, change: BasisChange) -> Quantity:
    """Expand ``x`` over the target basis of ``change``."""
    if x.space != change.source.space:
        raise SystemMismatchError(f"{x!r} is not in the source system {change.source.id!r}")
    ell = change.new_exponents(x.exponents)
    scale_factor = change.source.scalars.one()
    for v, e in zip(change.nu, ell):
        if e:
            scale_factor = s_mul(scale_factor, s_pow(v, e))
    return Quantity(s_mul(x.measure, s_inv(scale_factor)), change.target.space.dimension(ell))


# JSON unit-system files


def system_to_dict(system: UnitSystem) -> dict[str, Any]:
    return {
        "id": system.id,
        "scalar_system": system.scalars.ident,
        "base_units": list(system.base_units),
        "derived_units": {
            sym: {"measure": str(q.measure), "exponents": list(q.exponents)}
            for sym, q in system.derived_units.items()
        },
    }


def system_from_dict(data: Mapping[str, Any]) -> UnitSystem:
    try:
        ident = data["id"]
        scalars = ScalarSystem.from_id(data.get("scalar_system", "Field-Rational"))
        base_units = data["base_units"]
        derived = data.get("derived_units", {})
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed unit-system document: missing {exc}") from exc
    if not isinstance(ident, str) or not isinstance(base_units, list):
        raise SchemaError("'id' must be a string and 'base_units' a list")
    system = define_system(ident, base_units, scalars)
    if not isinstance(derived, Mapping):
        raise SchemaError("'derived_units' must be an object")
    for sym, entry in derived.items():
        try:
            exps = entry["exponents"]
            value = entry["measure"]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"derived unit {sym!r} needs 'measure' and 'exponents'") from exc
        if not isinstance(value, str):
            raise SchemaError(f"measure of {sym!r} must be a string")
        if not isinstance(exps, list) or len(exps) != system.rank:
            raise SchemaError(f"derived unit {sym!r} needs {system.rank} exponents")
        system = define_derived(system, sym, system.quantity(value, exps))
    return system


def load_system(path: str | Path) -> UnitSystem:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON: {exc}") from exc
    return system_from_dict(data)


def save_system(system: UnitSystem, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(system_to_dict(system), fh, indent=2, ensure_ascii=False)
        fh.write("\n")
