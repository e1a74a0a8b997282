"""
Brute-force reference computations used by the self test.

Nothing here shares code with the linear-algebra routes in
``invariants``/``verifier``: chains are enumerated as explicit subsets and
boundaries are composed term by term. Only practical for complexes with a
handful of generators.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import chain, combinations, permutations, product

from .complex import FilteredComplex

MAX_GENERATORS = 6


def _subsets(items: list) -> list[frozenset]:
    return [frozenset(s) for s in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))]


def _apply(arrows: list[tuple[str, str, int]], chain_: frozenset) -> frozenset:
    """∂ of a chain of (gen, k) elements, using only the given arrows."""
    acc: Counter = Counter()
    for gid, k in chain_:
        for s, t, u in arrows:
            if s == gid:
                acc[(t, k + u)] += 1
    return frozenset(e for e, v in acc.items() if v % 2)


def _check_size(c: FilteredComplex, limit: int = MAX_GENERATORS) -> None:
    if len(c.generators) > limit:
        raise ValueError(f"brute force limited to {limit} generators")


def _arrow_list(c: FilteredComplex) -> list[tuple[str, str, int]]:
    return [(a.source, a.target, a.u_power) for a in c.arrows]


def _gens(c: FilteredComplex) -> dict[str, tuple[int, int]]:
    return {g.id: (g.alexander, g.maslov) for g in c.generators}


def brute_upsilon(
    c: FilteredComplex, t: Fraction, window: int | None = None, limit: int = MAX_GENERATORS
) -> Fraction:
    _check_size(c, limit)
    gens = _gens(c)
    w = c.default_window() if window is None else window
    arrows = _arrow_list(c)

    def piece(m: int) -> list[tuple[str, int]]:
        return [(g, (M - m) // 2) for g, (A, M) in gens.items()
                if (M - m) % 2 == 0 and abs((M - m) // 2) <= w]

    e0, e1 = piece(0), piece(1)
    boundaries = {_apply(arrows, s) & frozenset(e0) for s in _subsets(e1)}
    best = None
    for s in _subsets(e0):
        if not s or _apply(arrows, s):
            continue
        if s in boundaries:
            continue
        # lattice point of U^k x is (-k, A - k)
        level = max((gens[g][0] - k) * t / 2 + (-k) * (1 - t / 2) for g, k in s)
        if best is None or level < best:
            best = level
    if best is None:
        raise ValueError("no nontrivial cycle")
    return -2 * best


def brute_tau(c: FilteredComplex) -> int:
    _check_size(c)
    gens = _gens(c)
    vertical = [(s, t, u) for s, t, u in _arrow_list(c) if u == 0]
    m0 = [(g, 0) for g, (A, M) in gens.items() if M == 0]
    m1 = [(g, 0) for g, (A, M) in gens.items() if M == 1]
    boundaries = {_apply(vertical, s) for s in _subsets(m1)}
    levels = [max(gens[g][0] for g, _ in s) for s in _subsets(m0)
              if s and not _apply(vertical, s) and s not in boundaries]
    if not levels:
        raise ValueError("no vertical homology in Maslov grading 0")
    return min(levels)


def brute_torsion_order(c: FilteredComplex) -> int:
    """Largest U-order of a homogeneous torsion class of H_*(CFK^-, ∂_H)."""
    _check_size(c)
    gens = _gens(c)
    horizontal = [(s, t, u) for s, t, u in _arrow_list(c) if gens[t][0] - u == gens[s][0]]
    kmax = c.alexander_spread + 2

    def piece(m: int, a: int) -> list[tuple[str, int]]:
        out = []
        for g, (A, M) in gens.items():
            k = A - a
            if k >= 0 and M - 2 * k == m:
                out.append((g, k))
        return out

    def is_boundary(z: frozenset, m: int, a: int) -> bool:
        return any(_apply(horizontal, s) == z for s in _subsets(piece(m + 1, a)))

    best = 0
    seen = set()
    for g, (A, M) in gens.items():
        for k in range(kmax + 1):
            m, a = M - 2 * k, A - k
            if (m, a) in seen:
                continue
            seen.add((m, a))
            for z in _subsets(piece(m, a)):
                if not z or _apply(horizontal, z):
                    continue
                for e in range(kmax + c.alexander_spread + 1):
                    shifted = frozenset((x, kk + e) for x, kk in z)
                    if is_boundary(shifted, m - 2 * e, a - e):
                        best = max(best, e)
                        break
    return best


def expected_violations(c: FilteredComplex) -> set[str]:
    """Laws broken by c, recomputed from scratch (symmetry by exhaustive bijection search)."""
    gens = _gens(c)
    arrows = _arrow_list(c)
    laws = set()
    for gid in gens:
        if _apply(arrows, _apply(arrows, frozenset({(gid, 0)}))):
            laws.add("d_squared_nonzero")
    for s, t, u in arrows:
        if gens[t][0] - u > gens[s][0]:
            laws.add("filtration_violated")
        if gens[t][1] - 2 * u != gens[s][1] - 1:
            laws.add("maslov_violated")
    if c.symmetric and not _has_flip(c):
        laws.add("symmetry_missing")
    return laws


def _has_flip(c: FilteredComplex) -> bool:
    gens = _gens(c)
    arrows = set(_arrow_list(c))
    classes: dict[tuple[int, int], list[str]] = {}
    for g, key in gens.items():
        classes.setdefault(key, []).append(g)
    keys = list(classes)
    targets = []
    for key in keys:
        A, M = key
        image = classes.get((-A, M - 2 * A), [])
        if len(image) != len(classes[key]):
            return False
        targets.append(image)
    for choice in product(*(permutations(img) for img in targets)):
        sigma = {}
        for key, img in zip(keys, choice):
            sigma.update(zip(classes[key], img))
        mapped = {(sigma[s], sigma[t], u + gens[s][0] - gens[t][0]) for s, t, u in arrows}
        if mapped == arrows:
            return True
    return False
