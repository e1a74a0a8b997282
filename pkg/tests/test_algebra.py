from __future__ import annotations

import itertools
import random

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from floerbridge.algebra import (
    ONE,
    U,
    ZERO,
    F2Basis,
    MatU,
    PolyU,
    ZeroDivisorError,
    f2_kernel,
    f2_rank,
    poly_divmod,
    smith_normal_form,
)

polys = st.frozensets(st.integers(0, 12), max_size=6).map(PolyU)
nonzero_polys = polys.filter(bool)
X = sp.Symbol("U")


def to_sympy(p: PolyU) -> sp.Poly:
    return sp.Poly(sum((X**e for e in p.terms), sp.Integer(0)), X, modulus=2)


def from_sympy(p: sp.Poly) -> PolyU:
    return PolyU(m[0] for m, c in zip(p.monoms(), p.coeffs()) if int(c) % 2)


# --- PolyU -------------------------------------------------------------------


def test_divmod_examples():
    assert poly_divmod(U**2 + ONE, U + ONE) == (U + ONE, ZERO)
    assert poly_divmod(U, U**2) == (ZERO, U)
    p = PolyU({0, 3, 5})
    assert poly_divmod(p, ONE) == (p, ZERO)


def test_zero_divisor():
    with pytest.raises(ZeroDivisorError, match="zero divisor"):
        poly_divmod(U, ZERO)


def test_rendering_and_degrees():
    p = U**2 + ONE
    assert str(p) == "U^2 + 1"
    assert (p.degree(), p.valuation()) == (2, 0)
    assert (U**3).is_monomial() and not p.is_monomial()


@given(polys)
def test_self_inverse_addition(p):
    assert p + p == ZERO


@given(polys, nonzero_polys)
def test_divmod_law(a, b):
    q, r = poly_divmod(a, b)
    assert a + q * b + r == ZERO
    assert not r or r.degree() < b.degree()


@given(polys, polys)
def test_multiplication_matches_sympy(a, b):
    assert from_sympy(to_sympy(a) * to_sympy(b)) == a * b


# --- Smith normal form ---------------------------------------------------------

ENTRIES = [ZERO, ONE, U, U + ONE, U**2]


def random_matrix(rng: random.Random, rows: int, cols: int, pool=ENTRIES) -> MatU:
    return MatU.from_dense([[rng.choice(pool) for _ in range(cols)] for _ in range(rows)])


def sympy_matrix(m: MatU) -> sp.Matrix:
    return sp.Matrix([[to_sympy(x).as_expr() for x in row] for row in m.to_dense()])


def gf2_poly(expr) -> sp.Poly:
    return sp.Poly(sp.expand(expr), X, modulus=2)


def determinantal_divisors(m: MatU) -> list[sp.Poly]:
    """gcd of all k×k minors over F_2[U], for k = 1..min(rows, cols)."""
    a = sympy_matrix(m)
    out = []
    for k in range(1, min(a.rows, a.cols) + 1):
        g = sp.Poly(0, X, modulus=2)
        for rs in itertools.combinations(range(a.rows), k):
            for cs in itertools.combinations(range(a.cols), k):
                g = sp.gcd(g, gf2_poly(a.extract(list(rs), list(cs)).det()))
        out.append(g)
    return out


def monic(p: sp.Poly) -> sp.Poly:
    return p.monic() if not p.is_zero else p


def check_snf(m: MatU) -> None:
    diag, left, right = smith_normal_form(m)
    product = left @ m @ right
    assert product.is_diagonal()
    assert [product[k, k] for k in range(len(diag))] == diag
    nonzero = [d for d in diag if d]
    assert diag[: len(nonzero)] == nonzero, "zeros must trail"
    for a, b in zip(nonzero, nonzero[1:]):
        assert not (b % a), f"{a} does not divide {b}"
    for side in (left, right):
        det = gf2_poly(sympy_matrix(side).det())
        assert det == sp.Poly(1, X, modulus=2), "transform not invertible over F_2[U]"
    running = sp.Poly(1, X, modulus=2)
    for d, dk in zip(diag, determinantal_divisors(m)):
        running = running * to_sympy(d)
        assert monic(running) == monic(dk)


def test_snf_small_examples():
    diag, _, _ = smith_normal_form(MatU.from_dense([[U]]))
    assert diag == [U]
    diag, _, _ = smith_normal_form(MatU.identity(2))
    assert diag == [ONE, ONE]


@pytest.mark.parametrize("shape", [(3, 3), (2, 4), (4, 2), (4, 4)])
def test_snf_against_determinantal_divisors(shape):
    rng = random.Random(hash(shape) & 0xFFFF)
    for _ in range(25):
        check_snf(random_matrix(rng, *shape))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.sampled_from(ENTRIES), min_size=3, max_size=3), min_size=3, max_size=3))
def test_snf_property(rows):
    check_snf(MatU.from_dense(rows))


def test_snf_of_zero_and_empty():
    diag, _, _ = smith_normal_form(MatU(2, 3, {}))
    assert diag == [ZERO, ZERO]


def test_matu_rejects_bad_entries():
    with pytest.raises(IndexError):
        MatU(1, 1, {(1, 0): ONE})


# --- F_2 linear algebra ---------------------------------------------------------


@settings(max_examples=60)
@given(st.lists(st.integers(0, 2**6 - 1), max_size=7))
def test_kernel_and_rank(columns):
    kernel = f2_kernel(columns)
    for combo in kernel:
        acc = 0
        for n, col in enumerate(columns):
            if combo >> n & 1:
                acc ^= col
        assert acc == 0 and combo
    assert f2_rank(kernel) == len(kernel)
    assert f2_rank(columns) + len(kernel) == len(columns)


def test_basis_tracking():
    basis = F2Basis()
    assert basis.add(0b011, tag=0b01)
    assert basis.add(0b110, tag=0b10)
    assert not basis.add(0b101)
    residue, used = basis.reduce_tracked(0b101)
    assert residue == 0 and used == 0b11
    assert basis.contains(0b101) and not basis.contains(0b1000)
