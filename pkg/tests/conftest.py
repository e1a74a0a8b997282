from __future__ import annotations

import pytest

from floerbridge.complex import Arrow, FilteredComplex, Generator


def make_trefoil(symmetric: bool = True) -> FilteredComplex:
    gens = (Generator("a", 1, 0), Generator("b", 0, -1), Generator("c", -1, -2))
    return FilteredComplex(gens, (Arrow("b", "a", 1), Arrow("b", "c", 0)), symmetric, "trefoil")


def make_unknot() -> FilteredComplex:
    return FilteredComplex((Generator("x", 0, 0),), (), True, "unknot")


@pytest.fixture
def trefoil() -> FilteredComplex:
    return make_trefoil()


@pytest.fixture
def unknot() -> FilteredComplex:
    return make_unknot()
