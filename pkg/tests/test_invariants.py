from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from conftest import make_trefoil, make_unknot
from hypothesis import given, settings
from hypothesis import strategies as st

from floerbridge.complex import Arrow, FilteredComplex, Generator
from floerbridge.constructors import bundled_labels, load_bundled, tensor_product
from floerbridge.invariants import (
    NotAKnotComplex,
    WindowUnstable,
    hfk_hat,
    tau,
    torsion_order,
    upsilon_at,
    upsilon_pl,
)
from floerbridge.oracles import MAX_GENERATORS, brute_tau, brute_torsion_order, brute_upsilon
from floerbridge.pl import PLFunction, from_values

GRID = [F(k, 8) for k in range(17)]
SMALL = [label for label in bundled_labels() if len(load_bundled(label)) <= MAX_GENERATORS]


def test_tau_examples(trefoil, unknot):
    assert tau(unknot) == 0
    assert tau(trefoil) == 1
    assert tau(load_bundled("T(3,4)")) == 3


def test_not_a_knot_complex():
    two = FilteredComplex((Generator("x", 0, 0), Generator("y", 1, 0)))
    with pytest.raises(NotAKnotComplex) as info:
        tau(two)
    assert info.value.code == "not_a_knot_complex"
    with pytest.raises(NotAKnotComplex):
        upsilon_at(two, F(1))


def test_upsilon_examples(trefoil, unknot):
    assert all(upsilon_at(unknot, t) == 0 for t in GRID)
    assert upsilon_at(trefoil, F(1, 2)) == F(-1, 2)
    assert upsilon_at(load_bundled("T(3,4)"), F(2, 3)) == -2


def test_upsilon_pl_examples(trefoil, unknot):
    assert upsilon_pl(unknot) == PLFunction.zero()
    assert upsilon_pl(trefoil) == from_values([(0, 0), (1, -1), (2, 0)])
    assert upsilon_pl(load_bundled("T(3,4)")) == from_values([(0, 0), (F(2, 3), -2), (F(4, 3), -2), (2, 0)])


def test_upsilon_outside_range(trefoil):
    with pytest.raises(ValueError):
        upsilon_at(trefoil, F(3))


def test_window_too_small_is_detected():
    c = load_bundled("T(2,7)")
    with pytest.raises(WindowUnstable) as info:
        for w in range(0, 3):
            upsilon_pl(c, w)
    assert info.value.code == "window_unstable"


def test_tensor_of_trefoils(trefoil):
    tt = tensor_product(trefoil, trefoil)
    assert len(tt) == 9 and tau(tt) == 2
    ups = upsilon_pl(tt)
    assert ups == upsilon_pl(trefoil) + upsilon_pl(trefoil)
    for t in GRID:
        assert brute_upsilon(tt, t, limit=9) == ups(t)


@pytest.mark.parametrize("first, second", [("T(2,3)", "T(2,5)"), ("T(2,3)", "T(3,4)"), ("T(2,5)", "unknot")])
def test_tensor_additivity(first, second):
    a, b = load_bundled(first), load_bundled(second)
    ab = tensor_product(a, b)
    assert tau(ab) == tau(a) + tau(b)
    assert upsilon_pl(ab) == upsilon_pl(a) + upsilon_pl(b)


def test_hfk_hat(trefoil, unknot):
    assert hfk_hat(unknot) == {(0, 0): 1}
    assert hfk_hat(trefoil) == {(1, 0): 1, (0, -1): 1, (-1, -2): 1}
    for label in bundled_labels():
        assert sum(hfk_hat(load_bundled(label)).values()) % 2 == 1


def test_hfk_hat_non_reduced():
    # a grading-preserving pair x -> y cancels in ĤFK
    gens = (Generator("z", 0, 0), Generator("x", 0, 1), Generator("y", 0, 0))
    c = FilteredComplex(gens, (Arrow("x", "y", 0),))
    assert hfk_hat(c) == {(0, 0): 1}


def test_torsion_order_examples(trefoil, unknot):
    order, module = torsion_order(unknot)
    assert order == 0 and module.free_rank == 1 and module.torsion_orders == ()
    order, module = torsion_order(trefoil)
    assert order == 1 and module.torsion_orders == (1,)
    assert torsion_order(load_bundled("T(3,4)"))[0] == 2
    assert torsion_order(load_bundled("T(4,5)"))[0] == 3


# --- properties on the bundled library ------------------------------------------


@pytest.mark.parametrize("label", bundled_labels())
def test_upsilon_properties(label):
    c = load_bundled(label)
    ups = upsilon_pl(c)
    assert ups(0) == 0 and ups(2) == 0
    for t in set(ups.breakpoints) | set(GRID):
        assert ups(t) == ups(2 - t)
    first = ups.breakpoints[1]
    assert all(ups(t) == -tau(c) * t for t in GRID if t <= first)
    w = c.default_window()
    assert upsilon_pl(c, w + 1) == ups
    assert all(upsilon_at(c, t, w, check_window=False) == upsilon_at(c, t, w + 1, check_window=False)
               for t in GRID)


@pytest.mark.parametrize("label", SMALL)
def test_brute_force_equivalence(label):
    c = load_bundled(label)
    assert brute_tau(c) == tau(c)
    assert brute_torsion_order(c) == torsion_order(c)[0]
    for t in GRID:
        assert brute_upsilon(c, t) == upsilon_at(c, t)


def test_brute_force_on_hand_complexes():
    for c in (make_trefoil(), make_unknot()):
        assert brute_tau(c) == tau(c)
        assert brute_torsion_order(c) == torsion_order(c)[0]
        assert all(brute_upsilon(c, t) == upsilon_at(c, t) for t in GRID)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(bundled_labels()), st.integers(0, 2**32 - 1))
def test_torsion_order_relabel_invariant(label, seed):
    c = load_bundled(label)
    rng = random.Random(seed)
    ids = [g.id for g in c.generators]
    fresh = [f"g{k}" for k in range(len(ids))]
    rng.shuffle(fresh)
    relabeled = c.relabeled(dict(zip(ids, fresh)))
    gens = list(relabeled.generators)
    arrows = list(relabeled.arrows)
    rng.shuffle(gens)
    rng.shuffle(arrows)
    shuffled = FilteredComplex(tuple(gens), tuple(arrows), c.symmetric)
    assert torsion_order(shuffled) == torsion_order(c)
    assert tau(shuffled) == tau(c)
