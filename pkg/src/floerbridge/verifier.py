"""
Instance-level certification of the torsion-order bound.

Given a complex and a strand count n, the verifier checks the two Υ
conditions, runs the region tests on CFK^∞ that underlie the bound, looks
for a long vertical differential, and finally compares the torsion order
with n - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import F2Basis
from .complex import FilteredComplex
from .invariants import (
    InfinityModel,
    NotAKnotComplex,
    TorsionModule,
    WindowUnstable,
    infinity_model,
    tau,
    torsion_order,
    upsilon_at,
    upsilon_pl,
)
from .pl import PLFunction


@dataclass(frozen=True)
class ConditionReport:
    n: int
    tau: int
    upsilon: PLFunction
    cond1: bool
    cond1_points: tuple[Fraction, ...]
    cond2: bool
    cond2_points: tuple[tuple[Fraction, Fraction], ...]

    @property
    def both(self) -> bool:
        return self.cond1 and self.cond2


def check_conditions(c: FilteredComplex, n: int, window: int | None = None) -> ConditionReport:
    """
    Condition (1): Υ(t) = -τt on [0, 2/n]; condition (2): Υ(t) > -τt on (2/n, 1].

    Both sides are affine between breakpoints, so each condition is decided
    on breakpoints and interval endpoints. Condition (2) always samples t = 1,
    which makes it false for n = 2.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    k = tau(c)
    ups = upsilon_pl(c, window)
    cut = Fraction(2, n)
    bps = ups.breakpoints
    pts1 = tuple(sorted({t for t in bps if t <= cut} | {Fraction(0), cut}))
    cond1 = all(ups(t) == -k * t for t in pts1)
    pts2 = tuple(sorted({t for t in bps if cut < t <= 1} | {Fraction(1)}))
    margins = tuple((t, ups(t) + k * t) for t in pts2)
    cond2 = all(m > 0 for _, m in margins)
    return ConditionReport(n, k, ups, cond1, pts1, cond2, margins)


# --- region tests -----------------------------------------------------------------


@dataclass(frozen=True)
class CycleWitness:
    """A nontrivial cycle of CFK^∞ listed by lattice point."""

    chain: tuple[tuple[str, int, int], ...]  # (generator, i, j); the element is U^{-i} x
    tau: int
    n: int

    def line_value(self, i: int) -> int:
        return self.tau - i * (self.n - 1)

    @property
    def below_line(self) -> bool:
        return all(j <= self.line_value(i) for _, i, j in self.chain)

    @property
    def touches_line(self) -> bool:
        return any(j == self.line_value(i) and i >= 1 for _, i, j in self.chain)

    @property
    def max_i(self) -> int:
        return max(i for _, i, _ in self.chain)


@dataclass(frozen=True)
class LemmaReport:
    n: int
    tau: int
    region: bool            # R = {j <= τ - i(n-1)} carries the H_0 generator
    strict_region: bool     # {j < τ - i(n-1)} carries it
    line_restricted: bool   # R minus line points with i >= 1 carries it
    tilted_region: bool     # strict region plus line points with i >= 1 carries it
    witness: CycleWitness | None
    window: int

    @property
    def existence_certified(self) -> bool:
        if not self.region:
            return False
        if not self.line_restricted:
            return True
        return self.tilted_region and not self.strict_region

    @property
    def nonexistence_certified(self) -> bool:
        return not self.strict_region

    @property
    def holds(self) -> bool:
        return self.existence_certified and self.nonexistence_certified

    @property
    def status(self) -> str:
        return "witness" if self.holds else "conditions of Lemma not met"


def _region_tests(model: InfinityModel, k: int, n: int) -> dict[str, int | None]:
    line = lambda i: k - i * (n - 1)  # noqa: E731
    tests = {
        "region": lambda i, j: j <= line(i),
        "strict_region": lambda i, j: j < line(i),
        "line_restricted": lambda i, j: j < line(i) or (j == line(i) and i <= 0),
        "tilted_region": lambda i, j: j < line(i) or (j == line(i) and i >= 1),
    }
    return {name: model.region_cycle(pred) for name, pred in tests.items()}


def lemma_cycle_witness(c: FilteredComplex, n: int, window: int | None = None) -> LemmaReport:
    """Subcomplex surjectivity tests for the regions cut out by the line j = τ - i(n-1)."""
    k = tau(c)
    w = c.default_window() if window is None else window
    found = _region_tests(infinity_model(c, w), k, n)
    wider = _region_tests(infinity_model(c, w + 1), k, n)
    flags = {name: vec is not None for name, vec in found.items()}
    if flags != {name: vec is not None for name, vec in wider.items()}:
        raise WindowUnstable(f"region tests differ between windows {w} and {w + 1}")
    model = infinity_model(c, w)
    vec = found["tilted_region"] if found["tilted_region"] is not None else found["region"]
    witness = None
    if vec is not None:
        chain = tuple((gid, -kk, c.gen(gid).alexander - kk) for gid, kk in model.support(vec))
        witness = CycleWitness(chain, k, n)
    return LemmaReport(n, k, flags["region"], flags["strict_region"],
                       flags["line_restricted"], flags["tilted_region"], witness, w)


def upsilon_region_agrees(c: FilteredComplex, n: int, window: int | None = None) -> bool:
    """Compare region test (a) with the reformulation Υ(2/n) >= -2τ/n."""
    k = tau(c)
    by_upsilon = upsilon_at(c, Fraction(2, n), window) >= Fraction(-2 * k, n)
    return by_upsilon == lemma_cycle_witness(c, n, window).region


# --- long vertical differentials --------------------------------------------------


@dataclass(frozen=True)
class DiagnosticWitness:
    y: str
    x: tuple[str, ...]
    vertical_length: int
    m: int | None
    route: str


def _vertical_columns(c: FilteredComplex) -> list[int]:
    cols = [0] * len(c)
    for a in c.arrows:
        if a.u_power == 0:
            cols[c.index[a.source]] ^= 1 << c.index[a.target]
    return cols


def _ids(c: FilteredComplex, vec: int) -> tuple[str, ...]:
    return tuple(g.id for n, g in enumerate(c.generators) if vec >> n & 1)


def vertical_bars(c: FilteredComplex) -> list[tuple[str, tuple[str, ...], int]]:
    """
    Pairs (y, ∂_V y, length) after filtered base change of (ĈFK, ∂_V).

    This is the standard column reduction of the Alexander-filtered vertical
    complex: adding lower-or-equal columns to a column is exactly a filtered
    base change, and the reduced columns are the arrows of a reduced model.
    """
    order = sorted(range(len(c)), key=lambda n: (c.generators[n].alexander, n))
    rank = {n: r for r, n in enumerate(order)}
    cols = _vertical_columns(c)
    # rows re-indexed by filtration order: the pivot is the term of largest Alexander grading
    reduced: dict[int, int] = {}
    owner: dict[int, int] = {}
    bars = []
    for n in order:
        col = 0
        for t in range(len(c)):
            if cols[n] >> t & 1:
                col |= 1 << rank[t]
        while col:
            low = col.bit_length() - 1
            if low not in owner:
                break
            col ^= reduced[owner[low]]
        if col:
            low = col.bit_length() - 1
            owner[low] = n
            reduced[n] = col
            chain = 0
            for r in range(len(c)):
                if col >> r & 1:
                    chain |= 1 << order[r]
            target_alex = c.generators[order[low]].alexander
            bars.append((c.generators[n].id, _ids(c, chain), c.generators[n].alexander - target_alex))
    return bars


def _preimage_length(c: FilteredComplex, xs: tuple[str, ...]) -> tuple[str, int] | None:
    """Least Alexander level reaching x under ∂_V, as (top generator of the preimage, length)."""
    cols = _vertical_columns(c)
    x = 0
    for gid in xs:
        x |= 1 << c.index[gid]
    top_x = max(c.gen(g).alexander for g in xs)
    for level in sorted({g.alexander for g in c.generators}):
        members = [n for n, g in enumerate(c.generators) if g.alexander <= level]
        basis = F2Basis()
        for n in members:
            basis.add(cols[n], tag=1 << n)
        r, used = basis.reduce_tracked(x)
        if r == 0:
            top = max((n for n in range(len(c)) if used >> n & 1),
                      key=lambda n: c.generators[n].alexander)
            return c.generators[top].id, level - top_x
    return None


def long_vertical_differential(
    c: FilteredComplex, n: int, window: int | None = None
) -> DiagnosticWitness | None:
    """
    Find y with ∂_V(y) of length at least n - 1.

    First follow the argument through the region cycle: take its part x in
    the largest column m and measure how far up one must go to bound x
    vertically. If that does not produce a long enough differential, fall
    back to the longest bar of the reduced vertical complex.
    """
    lemma = lemma_cycle_witness(c, n, window)
    if lemma.holds and lemma.witness is not None:
        m = lemma.witness.max_i
        xs = tuple(sorted(g for g, i, _ in lemma.witness.chain if i == m))
        found = _preimage_length(c, xs)
        if found is not None and found[1] >= n - 1:
            return DiagnosticWitness(found[0], xs, found[1], m, "region-cycle")
    bars = [b for b in vertical_bars(c) if b[2] >= n - 1]
    if not bars:
        return None
    y, xs, length = max(bars, key=lambda b: b[2])
    return DiagnosticWitness(y, xs, length, None, "reduced-vertical")


def simplest_case(c: FilteredComplex, n: int) -> bool:
    """Whether some b has ∂b = U·a + c with A(a) = τ, A(b) = τ - 1, A(c) = τ - n."""
    k = tau(c)
    for g in c.generators:
        out = c.outgoing[g.id]
        if g.alexander != k - 1 or len(out) != 2:
            continue
        shape = sorted((a.u_power, c.gen(a.target).alexander) for a in out)
        if shape == [(0, k - n), (1, k)]:
            return True
    return False


# --- verdict ------------------------------------------------------------------------


@dataclass(frozen=True)
class PropositionVerdict:
    n: int
    status: str  # "PASS", "not applicable" or "FAIL"
    conditions: ConditionReport
    lemma: LemmaReport | None = None
    ord: int | None = None
    module: TorsionModule | None = None
    vertical: DiagnosticWitness | None = None
    simplest_case: bool | None = None
    problems: tuple[str, ...] = field(default=())

    @property
    def failed(self) -> bool:
        return self.status == "FAIL"


def verify_proposition(c: FilteredComplex, n: int, window: int | None = None) -> PropositionVerdict:
    """When both Υ conditions hold, check Ord >= n - 1 and the supporting witnesses."""
    cond = check_conditions(c, n, window)
    if not cond.both:
        return PropositionVerdict(n, "not applicable", cond)
    lemma = lemma_cycle_witness(c, n, window)
    ord_, module = torsion_order(c)
    vertical = long_vertical_differential(c, n, window)
    problems = []
    if ord_ < n - 1:
        problems.append(f"torsion order {ord_} < n - 1 = {n - 1}")
    if vertical is None:
        problems.append(f"no vertical differential of length >= {n - 1}")
    if not lemma.region or lemma.strict_region or not lemma.tilted_region:
        problems.append("region tests disagree with the Υ conditions")
    status = "FAIL" if problems else "PASS"
    return PropositionVerdict(n, status, cond, lemma, ord_, module, vertical,
                              simplest_case(c, n), tuple(problems))


__all__ = [
    "ConditionReport", "CycleWitness", "DiagnosticWitness", "LemmaReport", "NotAKnotComplex",
    "PropositionVerdict", "check_conditions", "lemma_cycle_witness", "long_vertical_differential",
    "simplest_case", "upsilon_region_agrees", "verify_proposition", "vertical_bars",
]
