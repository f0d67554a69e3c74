import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quantspace import core
from quantspace.basis import (
    define_derived,
    define_system,
    int_det,
    load_system,
    propose_basis_change,
    rebase,
    save_system,
    solve_integer,
    system_from_dict,
    system_to_dict,
)
from quantspace.errors import (
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
from quantspace.scalar import ScalarSystem

from conftest import FR, PR, make_si, quantities, scalars


def leibniz_det(M):
    """Permutation-expansion determinant; independent of Bareiss."""
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i in range(n):
            prod *= M[i][perm[i]]
        total += -prod if inversions % 2 else prod
    return total


def test_define_system():
    si = define_system("SI", ["m", "kg", "s"])
    assert si.rank == 3 and si.scalars is FR
    assert si.resolve("kg") == si.quantity(1, (0, 1, 0))
    with pytest.raises(DuplicateSymbolError):
        define_system("bad", ["m", "m", "s"])
    with pytest.raises(EmptyBasisError):
        define_system("empty", [])
    with pytest.raises(SchemaError):
        define_system("bad", ["m s"])


def test_define_derived():
    si = define_system("SI", ["m", "kg", "s"])
    si2 = define_derived(si, "N", si.quantity(1, (1, 1, -2)))
    assert si2.resolve("N").exponents == (1, 1, -2)
    assert "N" not in si  # snapshots are immutable
    with pytest.raises(NonInvertibleUnitError):
        define_derived(si, "X", si.quantity(0, (1, 0, 0)))
    with pytest.raises(DuplicateSymbolError):
        define_derived(si, "m", si.quantity(2, (1, 0, 0)))
    with pytest.raises(UnknownSymbolError):
        si.resolve("furlong")


def test_int_det_examples():
    assert int_det([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert int_det([[2, 0], [0, 1]]) == 2
    # cofactor expansion by hand: 1*4 - 2*3
    assert int_det([[1, 2], [3, 4]]) == 1 * 4 - 2 * 3 == -2
    assert int_det([[0, 1], [1, 0]]) == -1
    assert int_det([[1, 2], [2, 4]]) == 0
    with pytest.raises(NonSquareError):
        int_det([[1, 2, 3], [4, 5, 6]])


@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_int_det_matches_leibniz(M):
    assert int_det(M) == leibniz_det(M)


def test_solve_integer():
    A = [[2, 1], [1, 1]]
    X = solve_integer(A, [[1, 0], [0, 1]])
    assert X == [[1, -1], [-1, 2]]
    with pytest.raises(InternalInvariantError):
        solve_integer([[2, 0], [0, 1]], [[1], [0]])


SI2 = define_system("SI2", ["m", "s"])


def test_diagonal_change():
    km, h = SI2.quantity(1000, (1, 0)), SI2.quantity(3600, (0, 1))
    ch = propose_basis_change(SI2, [("km", km), ("h", h)])
    assert ch.matrix == ((1, 0), (0, 1))
    assert ch.nu == (FR(1000), FR(3600))


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        propose_basis_change(SI2, [("m2", SI2.quantity(1, (2, 0)))])


def test_non_unimodular():
    with pytest.raises(NonUnimodularError) as err:
        propose_basis_change(SI2, [("u", SI2.quantity(1, (2, 0))), ("v", SI2.quantity(1, (0, 1)))])
    # by hand: det [[2,0],[0,1]] = 2
    assert err.value.determinant == 2


def test_non_invertible_new_unit():
    with pytest.raises(NonInvertibleUnitError):
        propose_basis_change(SI2, [("u", SI2.quantity(0, (1, 0))), ("v", SI2.quantity(1, (0, 1)))])


def test_rebase_worked_example():
    ch = propose_basis_change(
        SI2, [("km", SI2.quantity(1000, (1, 0))), ("h", SI2.quantity(3600, (0, 1)))]
    )
    x = SI2.quantity(10, (1, -1))
    # oracle: substitute m = km/1000 and s = h/3600 symbolically
    expected = Fraction(10) * Fraction(1, 1000) / Fraction(1, 3600)
    y = rebase(x, ch)
    assert y.measure.value == expected == 36
    assert y.exponents == (1, -1)
    assert y.space == ch.target.space
    assert rebase(core.one(SI2.space), ch) == core.one(ch.target.space)


def test_rebase_identity_change():
    ch = propose_basis_change(SI2, [("m", SI2.resolve("m")), ("s", SI2.resolve("s"))], "same")
    x = SI2.quantity("7/2", (3, -2))
    y = rebase(x, ch)
    assert (y.measure, y.exponents) == (x.measure, x.exponents)


def test_rebase_system_mismatch():
    ch = propose_basis_change(SI2, [("m", SI2.resolve("m")), ("s", SI2.resolve("s"))])
    with pytest.raises(SystemMismatchError):
        rebase(make_si().resolve("m"), ch)


def test_fresh_target_carries_old_units():
    si = make_si()
    ch = propose_basis_change(
        si,
        [
            ("N", si.resolve("N")),
            ("m", si.resolve("m")),
            ("s", si.resolve("s")),
        ],
        "NMS",
    )
    assert ch.target.base_units == ("N", "m", "s")
    kg = ch.target.resolve("kg")
    # kg = N * m^-1 * s^2
    assert kg.exponents == (1, -1, 2) and kg.measure == FR(1)


def test_target_must_match_symbols():
    other = define_system("KH", ["km", "h"])
    with pytest.raises(SchemaError):
        propose_basis_change(SI2, [("h", SI2.resolve("s")), ("km", SI2.resolve("m"))], other)
    with pytest.raises(SystemMismatchError):
        propose_basis_change(
            SI2,
            [("km", SI2.resolve("m")), ("h", SI2.resolve("s"))],
            define_system("KH", ["km", "h"], PR),
        )


def unimodular(draw_ops, n):
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, j, k, swap in draw_ops:
        if i == j:
            continue
        if swap:
            M[i], M[j] = M[j], M[i]
        else:
            M[i] = [a + k * b for a, b in zip(M[i], M[j])]
    return M


unimodular3 = st.lists(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3), st.booleans()),
    max_size=8,
).map(lambda ops: unimodular(ops, 3))


def change_for(system, M, nus):
    units = [(f"u{j}", system.quantity(nus[j], M[j])) for j in range(len(M))]
    return propose_basis_change(system, units)


@settings(max_examples=60)
@given(unimodular3, st.lists(scalars(FR, nonzero=True), min_size=3, max_size=3),
       quantities(make_si()), quantities(make_si()), scalars(FR))
def test_rebase_is_isomorphism(M, nus, x, y, a):
    si = x.space
    system = make_si()
    ch = change_for(system, M, nus)
    assert abs(leibniz_det(M)) == 1
    r = lambda v: rebase(v, ch)  # noqa: E731
    assert r(core.mul(x, y)) == core.mul(r(x), r(y))
    assert r(core.scale(a, x)) == core.scale(a, r(x))
    assert r(core.one(si)) == core.one(ch.target.space)
    inv = ch.inverse()
    assert rebase(r(x), inv) == x
    d = system.quantity(x.measure, (0, 0, 0))
    assert r(d).measure == d.measure


@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=3, max_size=3))
def test_acceptance_iff_unimodular(M):
    system = make_si()
    units = [(f"u{j}", system.quantity(1, M[j])) for j in range(3)]
    if abs(leibniz_det(M)) == 1:
        propose_basis_change(system, units)
    else:
        with pytest.raises(NonUnimodularError):
            propose_basis_change(system, units)


def test_json_round_trip(tmp_path):
    si = make_si()
    si = define_derived(si, "km", si.quantity(1000, (1, 0, 0)))
    path = tmp_path / "si.json"
    save_system(si, path)
    doc = json.loads(path.read_text())
    assert doc["derived_units"]["N"] == {"measure": "1", "exponents": [1, 1, -2]}
    back = load_system(path)
    assert back.base_units == si.base_units
    assert back.resolve("km") == si.resolve("km")


def test_json_schema_errors():
    with pytest.raises(SchemaError):
        system_from_dict({"base_units": ["m"]})
    with pytest.raises(SchemaError):
        system_from_dict({"id": "x", "base_units": ["m"], "derived_units": {"k": {"measure": "2"}}})
    with pytest.raises(SchemaError):
        system_from_dict(
            {"id": "x", "base_units": ["m"], "derived_units": {"k": {"measure": 2, "exponents": [1]}}}
        )
    float_doc = system_to_dict(make_si(ScalarSystem.FIELD_REAL))
    assert float_doc["scalar_system"] == "Field-Real"
    assert system_from_dict(float_doc).resolve("N").measure.value == 1.0
