"""
τ, Υ, ĤFK and the torsion order of a filtered complex.

CFK^∞ is infinite dimensional over F_2, but each Maslov grading is finite:
generator x contributes exactly one translate ``U^k x`` to grading m, namely
``k = (M(x) - m) / 2`` when that is an integer. H_0 therefore only involves
the finite pieces in gradings 1, 0 and -1. The window ``|k| <= W`` is kept as
an explicit truncation so that computations can be repeated at W + 1 and
compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .algebra import F2Basis, MatU, PolyU, f2_kernel, f2_rank, smith_normal_form
from .complex import FilteredComplex, horizontal_differential
from .pl import PLFunction, Rational


class NotAKnotComplex(ValueError):
    code = "not_a_knot_complex"


class WindowUnstable(RuntimeError):
    code = "window_unstable"


# A point of CFK^∞ over F_2: the translate U^k x of generator x.
Element = tuple[str, int]


def position(c: FilteredComplex, e: Element) -> tuple[int, int]:
    """Lattice point (i, j) of U^k x."""
    gid, k = e
    return (-k, c.gen(gid).alexander - k)


def _piece(c: FilteredComplex, maslov: int, window: int) -> list[Element]:
    out = []
    for g in c.generators:
        diff = g.maslov - maslov
        if diff % 2 == 0 and abs(diff // 2) <= window:
            out.append((g.id, diff // 2))
    return out


def boundary(c: FilteredComplex, e: Element) -> list[Element]:
    gid, k = e
    return [(a.target, k + a.u_power) for a in c.outgoing[gid]]


class InfinityModel:
    """Maslov gradings 1, 0, -1 of CFK^∞ restricted to a window, as F_2 matrices."""

    def __init__(self, c: FilteredComplex, window: int) -> None:
        self.complex = c
        self.window = window
        self.e1 = _piece(c, 1, window)
        self.e0 = _piece(c, 0, window)
        self.em1 = _piece(c, -1, window)
        idx0 = {e: n for n, e in enumerate(self.e0)}
        idxm1 = {e: n for n, e in enumerate(self.em1)}
        self.pos0 = [position(c, e) for e in self.e0]
        self.d0 = [self._column(e, idxm1) for e in self.e0]
        self.d1 = [self._column(e, idx0) for e in self.e1]
        self.boundaries = F2Basis(self.d1)
        cycles = f2_kernel(self.d0)
        self.h0_dim = len(cycles) - len(self.boundaries)

    def _column(self, e: Element, index: dict[Element, int]) -> int:
        col = 0
        for t in boundary(self.complex, e):
            if t in index:
                col ^= 1 << index[t]
        return col

    def nontrivial_cycle(self, members: Iterable[int]) -> int | None:
        """A cycle supported on ``members`` (indices into e0) that is not a boundary."""
        members = list(members)
        for kv in f2_kernel([self.d0[m] for m in members]):
            vec = 0
            for bit, m in enumerate(members):
                if kv >> bit & 1:
                    vec |= 1 << m
            if self.boundaries.reduce(vec):
                return vec
        return None

    def region_cycle(self, inside: Callable[[int, int], bool]) -> int | None:
        return self.nontrivial_cycle(n for n, (i, j) in enumerate(self.pos0) if inside(i, j))

    def support(self, vec: int) -> list[Element]:
        return [e for n, e in enumerate(self.e0) if vec >> n & 1]


@lru_cache(maxsize=256)
def infinity_model(c: FilteredComplex, window: int | None = None) -> InfinityModel:
    model = InfinityModel(c, c.default_window() if window is None else window)
    if model.h0_dim != 1:
        raise NotAKnotComplex(f"H_0(CFK^∞) has dimension {model.h0_dim}, expected 1")
    return model


# --- τ and ĤFK ----------------------------------------------------------------


def _vertical_columns(c: FilteredComplex) -> list[int]:
    cols = [0] * len(c)
    for a in c.arrows:
        if a.u_power == 0:
            cols[c.index[a.source]] ^= 1 << c.index[a.target]
    return cols


def vertical_homology_dims(c: FilteredComplex) -> dict[int, int]:
    """Dimension of H_*(ĈFK, ∂_V) by Maslov grading."""
    cols = _vertical_columns(c)
    dims = {}
    for m in sorted({g.maslov for g in c.generators}):
        here = [n for n, g in enumerate(c.generators) if g.maslov == m]
        above = [n for n, g in enumerate(c.generators) if g.maslov == m + 1]
        dim = len(here) - f2_rank(cols[n] for n in here) - f2_rank(cols[n] for n in above)
        if dim:
            dims[m] = dim
    return dims


def tau(c: FilteredComplex) -> int:
    """Lowest Alexander level whose sublevel set of (ĈFK, ∂_V) carries the homology generator."""
    dims = vertical_homology_dims(c)
    if dims != {0: 1}:
        raise NotAKnotComplex(f"vertical homology {dims} is not F_2 in Maslov grading 0")
    cols = _vertical_columns(c)
    m0 = [n for n, g in enumerate(c.generators) if g.maslov == 0]
    bounds = F2Basis(cols[n] for n, g in enumerate(c.generators) if g.maslov == 1)
    for level in sorted({c.generators[n].alexander for n in m0}):
        members = [n for n in m0 if c.generators[n].alexander <= level]
        for kv in f2_kernel([cols[n] for n in members]):
            vec = 0
            for bit, n in enumerate(members):
                if kv >> bit & 1:
                    vec |= 1 << n
            if bounds.reduce(vec):
                return level
    raise AssertionError("vertical homology generator not found")


def hfk_hat(c: FilteredComplex) -> dict[tuple[int, int], int]:
    """Bigraded dimensions {(alexander, maslov): count} of ĤFK."""
    cols = [0] * len(c)
    for a in c.arrows:
        if a.u_power == 0 and c.gen(a.target).alexander == c.gen(a.source).alexander:
            cols[c.index[a.source]] ^= 1 << c.index[a.target]
    blocks: dict[tuple[int, int], list[int]] = {}
    for n, g in enumerate(c.generators):
        blocks.setdefault((g.alexander, g.maslov), []).append(n)
    table = {}
    for (a, m), here in sorted(blocks.items(), reverse=True):
        above = blocks.get((a, m + 1), [])
        dim = len(here) - f2_rank(cols[n] for n in here) - f2_rank(cols[n] for n in above)
        if dim:
            table[(a, m)] = dim
    return table


# --- Υ ------------------------------------------------------------------------


def filtration_value(t: Fraction, i: int, j: int) -> Fraction:
    """The level j·t/2 + i·(1 - t/2) cutting out C_{t,s}."""
    return j * t / 2 + i * (1 - t / 2)


def _min_surjective_level(model: InfinityModel, t: Fraction) -> Fraction:
    values = [filtration_value(t, i, j) for i, j in model.pos0]
    levels = sorted(set(values))
    lo, hi = 0, len(levels) - 1
    if model.nontrivial_cycle(range(len(values))) is None:
        raise AssertionError("no nontrivial cycle in the window")
    while lo < hi:
        mid = (lo + hi) // 2
        s = levels[mid]
        if model.nontrivial_cycle(n for n, v in enumerate(values) if v <= s) is None:
            lo = mid + 1
        else:
            hi = mid
    return levels[lo]


def upsilon_at(
    c: FilteredComplex, t: Rational, window: int | None = None, check_window: bool = True
) -> Fraction:
    """Υ(t) = -2 · min{s : H_0(C_{t,s}) → H_0(CFK^∞) is onto}, evaluated exactly."""
    t = Fraction(t)
    if not 0 <= t <= 2:
        raise ValueError(f"t = {t} outside [0, 2]")
    w = c.default_window() if window is None else window
    value = -2 * _min_surjective_level(infinity_model(c, w), t)
    if check_window:
        wider = -2 * _min_surjective_level(infinity_model(c, w + 1), t)
        if wider != value:
            raise WindowUnstable(f"Υ({t}) is {value} at window {w} but {wider} at {w + 1}")
    return value


def candidate_breakpoints(c: FilteredComplex, window: int | None = None) -> list[Fraction]:
    """All t in [0, 2] where two lattice points of grading 0 have equal filtration value."""
    pts = sorted(set(infinity_model(c, window).pos0))
    cands = {Fraction(0), Fraction(2)}
    for n, (i, j) in enumerate(pts):
        for i2, j2 in pts[n + 1:]:
            denom = (j - i) - (j2 - i2)
            if denom:
                t = Fraction(2 * (i2 - i), denom)
                if 0 < t < 2:
                    cands.add(t)
    return sorted(cands)


def upsilon_pl(c: FilteredComplex, window: int | None = None, check_window: bool = True) -> PLFunction:
    """Υ as an exact PL function on [0, 2]."""
    cands = candidate_breakpoints(c, window)
    samples = {t: upsilon_at(c, t, window, check_window) for t in cands}
    raw = PLFunction(tuple(sorted(samples.items())))
    for t0, t1 in zip(cands, cands[1:]):
        mid = (t0 + t1) / 2
        if upsilon_at(c, mid, window, check_window) != raw(mid):
            raise AssertionError(f"Υ is not affine on [{t0}, {t1}]")
    return raw.simplified()


# --- HFK^- and the torsion order ---------------------------------------------


@dataclass(frozen=True)
class TorsionModule:
    free_rank: int
    torsion_orders: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(d < 1 for d in self.torsion_orders):
            raise ValueError("torsion orders must be positive")

    @property
    def order(self) -> int:
        return max(self.torsion_orders, default=0)


def horizontal_matrix(c: FilteredComplex) -> MatU:
    """∂_H on the free F_2[U]-module spanned by the generators (column = source)."""
    acc: dict[tuple[int, int], PolyU] = {}
    for a in horizontal_differential(c):
        key = (c.index[a.target], c.index[a.source])
        acc[key] = acc.get(key, PolyU()) + PolyU.monomial(a.u_power)
    return MatU(len(c), len(c), acc)


def torsion_order(c: FilteredComplex) -> tuple[int, TorsionModule]:
    """
    Ord = min{k : U^k · Tor(HFK^-) = 0}, with HFK^- the homology of (CFK^-, ∂_H).

    Because ∂_H² = 0 the kernel is a direct summand, so the torsion of the
    homology is read off the nonunit Smith invariants of the ∂_H matrix; only
    their U-adic part contributes U-torsion.
    """
    diag, _, _ = smith_normal_form(horizontal_matrix(c))
    nonzero = [d for d in diag if d]
    orders = tuple(sorted(d.valuation() for d in nonzero if not d.is_one() and d.valuation() > 0))
    module = TorsionModule(len(c) - 2 * len(nonzero), orders)
    return module.order, module
