"""
Filtered knot Floer complexes over F_2[U, U^-1].

A complex is described by finitely many generators, each placed at its
minimal representative ``[x, 0, A(x)]``, and a list of arrows. The arrow
``(x, y, n)`` means that ``∂x`` contains the term ``U^n y``, which sits at
lattice point ``(-n, A(y) - n)``. Multiplication by ``U^k`` shifts a point by
``(-k, -k)`` and lowers the Maslov grading by ``2k``; the arrow list therefore
determines the differential on the whole module.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple


class Generator(NamedTuple):
    id: str
    alexander: int
    maslov: int


class Arrow(NamedTuple):
    source: str
    target: str
    u_power: int


def _cancel_mod2(arrows: Iterable[Arrow]) -> tuple[Arrow, ...]:
    arrows = list(arrows)
    counts = Counter(arrows)
    seen: set[Arrow] = set()
    out = []
    for a in arrows:
        if a not in seen and counts[a] % 2:
            out.append(a)
        seen.add(a)
    return tuple(out)


@dataclass(frozen=True)
class FilteredComplex:
    """
    Generators with Alexander/Maslov gradings plus a U-power differential.

    Duplicate arrows cancel in pairs (coefficients live in F_2). Structural
    problems (repeated ids, arrows naming unknown generators, negative U
    powers) raise ``ValueError`` immediately; the algebraic laws are checked
    by :func:`validate`.
    """

    generators: tuple[Generator, ...]
    arrows: tuple[Arrow, ...] = ()
    symmetric: bool = False
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        gens = tuple(Generator(*g) for g in self.generators)
        arrows = _cancel_mod2([Arrow(*a) for a in self.arrows])
        ids = [g.id for g in gens]
        dup = [k for k, v in Counter(ids).items() if v > 1]
        if dup:
            raise ValueError(f"duplicate generator ids: {dup}")
        known = set(ids)
        for a in arrows:
            if a.source not in known or a.target not in known:
                raise ValueError(f"arrow {a} refers to an unknown generator")
            if a.u_power < 0:
                raise ValueError(f"arrow {a} has a negative U power")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "arrows", arrows)

    def __len__(self) -> int:
        return len(self.generators)

    @cached_property
    def index(self) -> dict[str, int]:
        return {g.id: k for k, g in enumerate(self.generators)}

    def gen(self, gid: str) -> Generator:
        try:
            return self.generators[self.index[gid]]
        except KeyError:
            raise KeyError(f"unknown generator {gid!r}") from None

    @cached_property
    def outgoing(self) -> dict[str, tuple[Arrow, ...]]:
        out: dict[str, list[Arrow]] = defaultdict(list)
        for a in self.arrows:
            out[a.source].append(a)
        return {g.id: tuple(out.get(g.id, ())) for g in self.generators}

    @property
    def alexander_spread(self) -> int:
        if not self.generators:
            return 0
        values = [g.alexander for g in self.generators]
        return max(values) - min(values)

    def default_window(self) -> int:
        """Number of U-translates kept on either side in CFK^∞ computations."""
        return self.alexander_spread + 2

    def with_arrows(self, arrows: Iterable[Arrow]) -> FilteredComplex:
        return FilteredComplex(self.generators, tuple(arrows), self.symmetric, self.name)

    def relabeled(self, mapping: dict[str, str]) -> FilteredComplex:
        gens = tuple(Generator(mapping[g.id], g.alexander, g.maslov) for g in self.generators)
        arrows = tuple(Arrow(mapping[a.source], mapping[a.target], a.u_power) for a in self.arrows)
        return FilteredComplex(gens, arrows, self.symmetric, self.name)


# --- validation -------------------------------------------------------------

LAWS = ("d_squared_nonzero", "filtration_violated", "maslov_violated", "symmetry_missing")


@dataclass(frozen=True)
class Violation:
    law: str
    detail: str
    arrows: tuple[Arrow, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def laws(self) -> set[str]:
        return {v.law for v in self.violations}

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "pass"
        return "; ".join(f"{v.law}: {v.detail}" for v in self.violations)


class ValidationError(ValueError):
    def __init__(self, report: ValidationReport) -> None:
        super().__init__(report.summary())
        self.report = report


def d_squared(c: FilteredComplex) -> dict[str, dict[tuple[str, int], int]]:
    """Nonzero terms of ∂²(x) for each source x, as {x: {(z, power): 1}}."""
    out = {}
    for g in c.generators:
        acc: Counter = Counter()
        for a in c.outgoing[g.id]:
            for b in c.outgoing[a.target]:
                acc[(b.target, a.u_power + b.u_power)] += 1
        odd = {k: 1 for k, v in acc.items() if v % 2}
        if odd:
            out[g.id] = odd
    return out


def validate(c: FilteredComplex) -> ValidationReport:
    """Check ∂² = 0, the filtration, the Maslov law and (if flagged) symmetry."""
    violations = []
    for x, terms in d_squared(c).items():
        path = tuple(a for a in c.outgoing[x])
        shown = ", ".join(f"U^{n} {z}" for z, n in sorted(terms))
        violations.append(Violation("d_squared_nonzero", f"∂²({x}) = {shown}", path))
    for a in c.arrows:
        src, tgt = c.gen(a.source), c.gen(a.target)
        if tgt.alexander - a.u_power > src.alexander:
            violations.append(Violation(
                "filtration_violated",
                f"{a.source} -> U^{a.u_power} {a.target} raises the j-filtration", (a,)))
        if tgt.maslov - 2 * a.u_power != src.maslov - 1:
            violations.append(Violation(
                "maslov_violated",
                f"{a.source} -> U^{a.u_power} {a.target}: "
                f"M = {tgt.maslov - 2 * a.u_power}, expected {src.maslov - 1}", (a,)))
    if c.symmetric and find_symmetry(c) is None:
        violations.append(Violation("symmetry_missing", "no (i,j) -> (j,i) isomorphism found"))
    return ValidationReport(tuple(violations))


def require_valid(c: FilteredComplex) -> FilteredComplex:
    report = validate(c)
    if not report.ok:
        raise ValidationError(report)
    return c


def flip_arrow(c: FilteredComplex, a: Arrow, sigma: dict[str, str]) -> Arrow:
    """Image of an arrow under the bijection realizing (i, j) -> (j, i)."""
    shift = c.gen(a.source).alexander - c.gen(a.target).alexander
    return Arrow(sigma[a.source], sigma[a.target], a.u_power + shift)


def find_symmetry(c: FilteredComplex) -> dict[str, str] | None:
    """
    Search for a generator bijection σ inducing the flip isomorphism.

    Under the flip, ``[x, 0, A]`` lands at ``(A, 0)``, i.e. on ``U^{-A} σ(x)``,
    so σ must satisfy ``A(σx) = -A(x)`` and ``M(σx) = M(x) - 2A(x)``, and
    every arrow ``(x, y, n)`` must map to ``(σx, σy, n + A(x) - A(y))``.
    The search is exhaustive backtracking within these grading classes.
    """
    arrows = set(c.arrows)
    by_class: dict[tuple[int, int], list[str]] = defaultdict(list)
    for g in c.generators:
        by_class[(g.alexander, g.maslov)].append(g.id)

    incoming: dict[str, list[Arrow]] = defaultdict(list)
    for a in c.arrows:
        incoming[a.target].append(a)

    order = sorted((g.id for g in c.generators),
                   key=lambda gid: len(by_class[(c.gen(gid).alexander, c.gen(gid).maslov)]))
    sigma: dict[str, str] = {}
    used: set[str] = set()

    def consistent(x: str) -> bool:
        for a in c.outgoing[x] + tuple(incoming[x]):
            if a.source in sigma and a.target in sigma:
                if flip_arrow(c, a, sigma) not in arrows:
                    return False
        return True

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        x = c.gen(order[k])
        target_class = (-x.alexander, x.maslov - 2 * x.alexander)
        for cand in by_class.get(target_class, ()):
            if cand in used or len(c.outgoing[cand]) != len(c.outgoing[x.id]):
                continue
            if len(incoming[cand]) != len(incoming[x.id]):
                continue
            sigma[x.id] = cand
            used.add(cand)
            if consistent(x.id) and extend(k + 1):
                return True
            del sigma[x.id]
            used.discard(cand)
        return False

    return dict(sigma) if extend(0) else None


# --- restrictions of the differential ---------------------------------------


def vertical_differential(c: FilteredComplex) -> list[Arrow]:
    """Arrows preserving the i-coordinate: exactly those with U-power 0."""
    return [a for a in c.arrows if a.u_power == 0]


def horizontal_differential(c: FilteredComplex) -> list[Arrow]:
    """Arrows preserving the j-coordinate: A(target) - n = A(source)."""
    return [a for a in c.arrows
            if c.gen(a.target).alexander - a.u_power == c.gen(a.source).alexander]


def vertical_length(c: FilteredComplex, gid: str) -> int | None:
    """A(gen) minus the largest Alexander grading hit by ∂_V(gen); None when ∂_V(gen) = 0."""
    g = c.gen(gid)
    hits = [c.gen(a.target).alexander for a in c.outgoing[gid] if a.u_power == 0]
    if not hits:
        return None
    return g.alexander - max(hits)
