"""
Braid words, the left Garside normal form of positive braids, and twist
positivity.

A simple (permutation) braid on n strands is stored as a tuple ``p`` of
length n: start from ``(0, 1, ..., n-1)`` and for each letter σ_i swap the
entries in positions i-1 and i. Appending σ_i keeps the braid simple exactly
when ``p[i-1] < p[i]``; prepending σ_i corresponds to swapping the *values*
i-1 and i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

Perm = tuple[int, ...]


class BraidError(ValueError):
    pass


class BraidParseError(BraidError):
    def __init__(self, position: int, reason: str) -> None:
        super().__init__(f"position {position}: {reason}")
        self.position = position
        self.reason = reason


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        letters = tuple(int(e) for e in self.letters)
        for k, e in enumerate(letters):
            if e == 0 or abs(e) > self.strands - 1:
                raise BraidError(f"letter {e} at index {k} out of range for {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    @property
    def is_positive(self) -> bool:
        return all(e > 0 for e in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.strands != other.strands:
            raise BraidError("cannot multiply braids on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k: int) -> BraidWord:
        return BraidWord(self.strands, self.letters * k)

    def __str__(self) -> str:
        body = " ".join(str(e) for e in self.letters)
        return f"B{self.strands}: {body}".rstrip()

    @cached_property
    def permutation(self) -> Perm:
        p = list(range(self.strands))
        for e in self.letters:
            i = abs(e)
            p[i - 1], p[i] = p[i], p[i - 1]
        return tuple(p)


_HEADER = re.compile(r"\s*B(\d+)\s*:")


def parse_braid(text: str) -> BraidWord:
    """Parse ``B<n>: e1 e2 ... ek`` (signed integers, whitespace separated)."""
    m = _HEADER.match(text)
    if not m:
        raise BraidParseError(0, "expected header 'B<n>:'")
    n = int(m.group(1))
    if n < 1:
        raise BraidParseError(m.start(1), "strand count must be positive")
    letters = []
    for tok in re.finditer(r"\S+", text[m.end():]):
        pos = m.end() + tok.start()
        word = tok.group()
        if not re.fullmatch(r"[+-]?\d+", word):
            raise BraidParseError(pos, f"non-integer token {word!r}")
        e = int(word)
        if e == 0 or abs(e) > n - 1:
            raise BraidParseError(pos, f"letter {e} out of range for {n} strands")
        letters.append(e)
    return BraidWord(n, tuple(letters))


def closure_is_knot(b: BraidWord) -> bool:
    """True when the braid permutation is a single n-cycle."""
    p = b.permutation
    seen, x = 0, 0
    while True:
        x = p[x]
        seen += 1
        if x == 0:
            return seen == b.strands


# --- permutation braids ----------------------------------------------------------


def identity(n: int) -> Perm:
    return tuple(range(n))


def delta(n: int) -> Perm:
    return tuple(reversed(range(n)))


def finishing_set(p: Perm) -> frozenset[int]:
    """Generators σ_i that can end a positive word for p (right descents)."""
    return frozenset(i for i in range(1, len(p)) if p[i - 1] > p[i])


def starting_set(p: Perm) -> frozenset[int]:
    """Generators σ_i that can start a positive word for p (left descents)."""
    where = {v: k for k, v in enumerate(p)}
    return frozenset(i for i in range(1, len(p)) if where[i] < where[i - 1])


def _append(p: Perm, i: int) -> Perm:
    q = list(p)
    q[i - 1], q[i] = q[i], q[i - 1]
    return tuple(q)


def _strip_left(p: Perm, i: int) -> Perm:
    return tuple(i if v == i - 1 else i - 1 if v == i else v for v in p)


def perm_word(p: Perm) -> list[int]:
    """A reduced positive word for the permutation braid p."""
    q = list(p)
    out = []
    while True:
        i = next((i for i in range(1, len(q)) if q[i - 1] > q[i]), None)
        if i is None:
            break
        q[i - 1], q[i] = q[i], q[i - 1]
        out.append(i)
    return out[::-1]


def make_left_weighted(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    """Move generators from the front of b to the back of a until S(b) ⊆ F(a)."""
    while True:
        spare = starting_set(b) - finishing_set(a)
        if not spare:
            return a, b
        i = min(spare)
        a, b = _append(a, i), _strip_left(b, i)


@dataclass(frozen=True)
class GarsideNF:
    strands: int
    inf: int
    factors: tuple[Perm, ...]

    def is_left_weighted(self) -> bool:
        return all(starting_set(b) <= finishing_set(a) for a, b in zip(self.factors, self.factors[1:]))

    def to_word(self) -> BraidWord:
        letters = perm_word(delta(self.strands)) * self.inf
        for f in self.factors:
            letters += perm_word(f)
        return BraidWord(self.strands, tuple(letters))

    def __str__(self) -> str:
        parts = [f"Δ^{self.inf}"] + ["[" + " ".join(map(str, perm_word(f))) + "]" for f in self.factors]
        return " ".join(parts)


def garside_normal_form(b: BraidWord) -> GarsideNF:
    """Left normal form Δ^inf · A_1 ⋯ A_k of a positive braid word."""
    if not b.is_positive:
        raise BraidError("Garside normal form requires a positive word")
    n = b.strands
    if n == 1:
        return GarsideNF(1, 0, ())
    # pack letters greedily into simple factors, then left-weight adjacent pairs
    factors: list[Perm] = []
    cur = identity(n)
    for i in b.letters:
        if i in finishing_set(cur):
            factors.append(cur)
            cur = identity(n)
        cur = _append(cur, i)
    if b.letters:
        factors.append(cur)
    changed = True
    while changed:
        changed = False
        for k in range(len(factors) - 1):
            pair = make_left_weighted(factors[k], factors[k + 1])
            if pair != (factors[k], factors[k + 1]):
                factors[k], factors[k + 1] = pair
                changed = True
        factors = [f for f in factors if f != identity(n)]
    top = delta(n)
    inf = 0
    while inf < len(factors) and factors[inf] == top:
        inf += 1
    return GarsideNF(n, inf, tuple(factors[inf:]))


def is_twist_positive(b: BraidWord) -> tuple[bool, BraidWord | None]:
    """
    Decide whether the positive braid b equals Δ²γ with γ positive.

    Returns ``(flag, gamma)``; gamma is None when the flag is false. On one
    strand Δ² is trivial and every braid qualifies.
    """
    nf = garside_normal_form(b)
    if b.strands == 1:
        return True, BraidWord(1)
    if nf.inf < 2:
        return False, None
    rest = GarsideNF(b.strands, nf.inf - 2, nf.factors)
    return True, rest.to_word()


def full_twist(n: int) -> BraidWord:
    return BraidWord(n, tuple(range(1, n))) ** n


def positive_genus_tau(b: BraidWord) -> tuple[int, int]:
    """Genus of a positive braid knot, g = (c - n + 1) / 2; τ equals g for these knots."""
    if not b.is_positive:
        raise BraidError("positive word required")
    if not closure_is_knot(b):
        raise BraidError("braid closure is not a knot")
    g, rem = divmod(len(b) - b.strands + 1, 2)
    if rem:
        raise AssertionError("odd Euler characteristic for a knot closure")
    return g, g


def twisted_torus_braid(p: int, q: int, r: int, s: int) -> BraidWord:
    """(σ1⋯σ_{p-1})^q · (σ1⋯σ_{r-1})^{r·s} on p strands: T(p, q) with s full twists on r strands."""
    if not 0 < r < p < q:
        raise BraidError(f"need 0 < r < p < q, got r={r}, p={p}, q={q}")
    if s < 0:
        raise BraidError(f"need s >= 0, got s={s}")
    torus = BraidWord(p, tuple(range(1, p))) ** q
    twist = BraidWord(p, tuple(range(1, r))) ** (r * s)
    return torus * twist
