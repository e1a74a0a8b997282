from __future__ import annotations

import random
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floerbridge.braids import (
    BraidError,
    BraidParseError,
    BraidWord,
    closure_is_knot,
    delta,
    full_twist,
    garside_normal_form,
    is_twist_positive,
    parse_braid,
    perm_word,
    positive_genus_tau,
    twisted_torus_braid,
)
from floerbridge.constructors import bundled_index, load_bundled
from floerbridge.invariants import tau
from floerbridge.selftest import rewrite_once


def test_parse_examples():
    b = parse_braid("B3: 1 2 1 2 1 2 1 2")
    assert b == BraidWord(3, (1, 2) * 4)
    assert parse_braid("B2: 1 1 1").letters == (1, 1, 1)
    assert parse_braid("B4:") == BraidWord(4, ())
    assert parse_braid("  B3:  -1 +2 ").letters == (-1, 2)
    assert str(parse_braid("B3: 1 -2")) == "B3: 1 -2"


@pytest.mark.parametrize("text, position, fragment", [
    ("B3: 3", 4, "out of range"),
    ("B3: 1 0", 6, "out of range"),
    ("B3: 1 x", 6, "non-integer"),
    ("3: 1 2", 0, "header"),
    ("B0: ", 1, "positive"),
])
def test_parse_errors(text, position, fragment):
    with pytest.raises(BraidParseError) as info:
        parse_braid(text)
    assert info.value.position == position
    assert fragment in info.value.reason


def test_braid_word_range_checked():
    with pytest.raises(BraidError):
        BraidWord(2, (2,))
    with pytest.raises(BraidError):
        BraidWord(0)


def test_closure_examples():
    assert closure_is_knot(BraidWord(3, (1, 2) * 4))
    assert not closure_is_knot(BraidWord(2, ()))
    assert not closure_is_knot(BraidWord(2, (1, 1)))
    assert closure_is_knot(BraidWord(1, ()))


def test_normal_form_examples():
    nf = garside_normal_form(BraidWord(3, (1, 2) * 3))
    assert (nf.inf, nf.factors) == (2, ())
    nf = garside_normal_form(BraidWord(2, (1, 1, 1)))
    # Δ = σ1 on two strands, so σ1³ = Δ³ with nothing left over
    assert (nf.inf, nf.factors) == (3, ())
    nf = garside_normal_form(BraidWord(3, (1, 2)))
    assert nf.inf == 0 and len(nf.factors) == 1 and nf.factors[0] != delta(3)
    with pytest.raises(BraidError):
        garside_normal_form(BraidWord(3, (1, -2)))


def test_twist_positive_examples():
    flag, gamma = is_twist_positive(BraidWord(3, (1, 2) * 4))
    assert flag and garside_normal_form(gamma) == garside_normal_form(BraidWord(3, (1, 2)))
    flag, gamma = is_twist_positive(BraidWord(2, (1, 1, 1)))
    assert flag and gamma == BraidWord(2, (1,))
    flag, gamma = is_twist_positive(BraidWord(3, (1, 2, 1, 2)))
    assert not flag and gamma is None
    assert garside_normal_form(BraidWord(3, (1, 2, 1, 2))).inf == 1


def test_genus_examples():
    assert positive_genus_tau(BraidWord(2, (1, 1, 1))) == (1, 1)
    assert positive_genus_tau(BraidWord(3, (1, 2) * 4)) == (3, 3)
    assert positive_genus_tau(BraidWord(4, (1, 2, 3) * 5)) == (6, 6)
    with pytest.raises(BraidError):
        positive_genus_tau(BraidWord(2, (1, 1)))


def test_genus_matches_bundled_tau():
    for label, entry in bundled_index().items():
        b = parse_braid(entry.braid)
        assert positive_genus_tau(b)[1] == tau(load_bundled(label)), label


def test_twisted_torus_examples():
    assert twisted_torus_braid(3, 4, 2, 1) == BraidWord(3, (1, 2) * 4 + (1, 1))
    assert twisted_torus_braid(3, 7, 2, 0) == BraidWord(3, (1, 2) * 7)
    b = twisted_torus_braid(5, 7, 3, 2)
    assert b.strands == 5 and len(b) == 28 + 12 and closure_is_knot(b)
    for bad in ((3, 4, 0, 1), (3, 4, 3, 1), (4, 3, 2, 1), (3, 4, 2, -1)):
        with pytest.raises(BraidError):
            twisted_torus_braid(*bad)


def test_full_twist():
    assert garside_normal_form(full_twist(4)).inf == 2
    assert garside_normal_form(full_twist(4)).factors == ()


# --- independent oracle: equivalence classes under the braid relations ------------


@lru_cache(maxsize=None)
def word_class(letters: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """All positive words equal to ``letters`` in the positive braid monoid (finite, same length)."""
    seen = {letters}
    todo = [letters]
    while todo:
        w = todo.pop()
        for k in range(len(w) - 1):
            a, b = w[k], w[k + 1]
            nxt = []
            if abs(a - b) >= 2:
                nxt.append(w[:k] + (b, a) + w[k + 2:])
            if k + 2 < len(w) and abs(a - b) == 1 and w[k + 2] == a:
                nxt.append(w[:k] + (b, a, b) + w[k + 3:])
            for v in nxt:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
    return frozenset(seen)


def brute_inf(b: BraidWord) -> int:
    dword = tuple(perm_word(delta(b.strands)))
    k = 0
    while True:
        prefixes = word_class(dword * (k + 1))
        size = len(dword) * (k + 1)
        if size > len(b) or not any(w[:size] in prefixes for w in word_class(b.letters)):
            return k
        k += 1


@settings(max_examples=120, deadline=None)
@given(st.integers(2, 4).flatmap(
    lambda n: st.lists(st.integers(1, n - 1), max_size=8 if n < 4 else 7).map(lambda ls: BraidWord(n, tuple(ls)))))
def test_inf_matches_brute_force(b):
    assert garside_normal_form(b).inf == brute_inf(b)


def test_normal_form_decides_equality():
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(3, 4)
        length = rng.randint(2, 6)
        u = BraidWord(n, tuple(rng.randint(1, n - 1) for _ in range(length)))
        v = BraidWord(n, tuple(rng.randint(1, n - 1) for _ in range(length)))
        if rng.random() < 0.5:
            v = BraidWord(n, sorted(word_class(u.letters))[rng.randrange(len(word_class(u.letters)))])
        same = v.letters in word_class(u.letters)
        assert (garside_normal_form(u) == garside_normal_form(v)) == same


positive_words = st.integers(2, 5).flatmap(
    lambda n: st.lists(st.integers(1, n - 1), max_size=30).map(lambda ls: BraidWord(n, tuple(ls))))


@settings(max_examples=200, deadline=None)
@given(positive_words)
def test_normal_form_idempotent_and_left_weighted(b):
    nf = garside_normal_form(b)
    assert nf.is_left_weighted()
    assert all(f != delta(b.strands) and any(f) for f in nf.factors)
    assert garside_normal_form(nf.to_word()) == nf
    assert len(nf.to_word()) == len(b)


@settings(max_examples=100, deadline=None)
@given(positive_words, st.integers(0, 2**32 - 1), st.booleans())
def test_rewriting_preserves_twist_positivity(b, seed, twist):
    if twist:
        b = full_twist(b.strands) * b
    rng = random.Random(seed)
    letters = b.letters
    for _ in range(30):
        letters = rewrite_once(letters, rng)
    moved = BraidWord(b.strands, letters)
    assert is_twist_positive(moved)[0] == is_twist_positive(b)[0]
    assert garside_normal_form(moved) == garside_normal_form(b)


@pytest.mark.parametrize("p", range(2, 6))
def test_torus_words(p):
    base = BraidWord(p, tuple(range(1, p)))
    for q in range(1, 3 * p):
        flag, gamma = is_twist_positive(base**q)
        assert flag == (q >= p)
        if flag:
            assert garside_normal_form(gamma) == garside_normal_form(base ** (q - p))
