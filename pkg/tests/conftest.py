from __future__ import annotations

from pathlib import Path

import pytest

from hsmult import MonomialOrder, SparsePoly
from hsmult.instance import parse_instance
from hsmult.reduction import clear_multiplicity_cache

FIXTURES = Path(__file__).parent / "fixtures"


def make_poly(field, nvars, coeffs):
    """{exponent: int-or-scalar} -> SparsePoly."""
    return SparsePoly(
        field,
        nvars,
        {e: (field.from_int(c) if isinstance(c, int) else c) for e, c in coeffs.items()},
    )


@pytest.fixture
def P():
    return make_poly


@pytest.fixture
def glex():
    return MonomialOrder("glex")


def load_instance(name):
    inst, options = parse_instance((FIXTURES / name).read_text())
    return inst, options


@pytest.fixture
def example1():
    return load_instance("example1.json")[0]


@pytest.fixture
def example2():
    return load_instance("example2.json")[0]


@pytest.fixture
def example3():
    return load_instance("example3.json")[0]


@pytest.fixture
def example4():
    return load_instance("example4.json")[0]


@pytest.fixture
def example4_perturbed():
    return load_instance("example4_perturbed.json")[0]


@pytest.fixture
def example1_gf():
    return load_instance("example1_gf32003.json")[0]


@pytest.fixture(autouse=True)
def _fresh_cache():
    clear_multiplicity_cache()
    yield
