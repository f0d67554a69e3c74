from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from quantspace import ScalarSystem, define_derived, define_system
from quantspace.core import Quantity

settings.register_profile("quantspace", deadline=None)
settings.load_profile("quantspace")

FR = ScalarSystem.FIELD_RATIONAL
PR = ScalarSystem.POSITIVE_RATIONAL


def make_si(scalars: ScalarSystem = FR):
    si = define_system("SI", ["m", "kg", "s"], scalars)
    return define_derived(si, "N", si.quantity(1, (1, 1, -2)))


@pytest.fixture
def si():
    return make_si()


@pytest.fixture
def si_pos():
    return make_si(PR)


# hypothesis strategies


def fractions(positive: bool = False, nonzero: bool = False, nonnegative: bool = False):
    if positive:
        num = st.integers(1, 500)
    else:
        num = st.integers(0 if nonnegative else -500, 500)
    frac = st.builds(Fraction, num, st.integers(1, 60))
    if nonzero and not positive:
        frac = frac.filter(bool)
    return frac


def scalars(system: ScalarSystem, nonzero: bool = False):
    return fractions(
        positive=not system.has_zero, nonzero=nonzero, nonnegative=not system.has_negation
    ).map(system)


def quantities(system, nonzero: bool = False):
    exps = st.tuples(*[st.integers(-4, 4)] * system.rank)
    return st.builds(
        lambda m, e: system.quantity(m, e), scalars(system.scalars, nonzero), exps
    )


# seeded generators for the fixed-count acceptance loops


def rand_fraction(rng: random.Random, positive: bool = False, nonzero: bool = False) -> Fraction:
    while True:
        num = rng.randint(1, 60) if positive else rng.randint(-60, 60)
        if num or not nonzero:
            return Fraction(num, rng.randint(1, 30))


def rand_scalar(rng, system: ScalarSystem, nonzero=False):
    return system(rand_fraction(rng, positive=not system.has_zero, nonzero=nonzero))


def rand_quantity(rng, system, nonzero=False, dimensionless=False) -> Quantity:
    exps = (0,) * system.rank if dimensionless else [rng.randint(-3, 3) for _ in range(system.rank)]
    return system.quantity(rand_scalar(rng, system.scalars, nonzero), exps)


# acceptance reporting: one line per criterion in the terminal summary

_CRITERIA: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.failed):
        ok = report.passed and _CRITERIA.get(label, "PASS") == "PASS"
        _CRITERIA[label] = "PASS" if ok else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in sorted(_CRITERIA.items(), key=lambda kv: int(kv[0].split()[0])):
        terminalreporter.write_line(f"{status}  criterion {label}")
