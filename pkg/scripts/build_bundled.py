"""Regenerate the bundled .cfk library under src/floerbridge/data.

Torus knots use the exact Alexander polynomial division; the twisted torus
knots (all in L-space families) use the reduced Burau representation of
their braid words, computed with sympy.
"""

from __future__ import annotations

import json
from pathlib import Path

import sympy as sp

from floerbridge.braids import BraidWord, twisted_torus_braid
from floerbridge.cfkio import dumps_cfk
from floerbridge.constructors import AlexPoly, staircase_from_alexander, torus_alexander

DATA = Path(__file__).resolve().parents[1] / "src" / "floerbridge" / "data"
t = sp.Symbol("t")

TORUS = [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5)]
TWISTED = [(3, 4, 2, 1), (3, 5, 2, 2), (4, 5, 3, 1)]


def burau_alexander(b: BraidWord) -> AlexPoly:
    n = b.strands
    mat = sp.eye(n - 1)
    for e in b.letters:
        i = e - 1
        g = sp.eye(n - 1)
        g[i, i] = -t
        if i > 0:
            g[i, i - 1] = t
        if i < n - 2:
            g[i, i + 1] = 1
        mat = mat * g
    det = sp.expand((sp.eye(n - 1) - mat).det())
    quotient, rem = sp.div(det, sum(t**k for k in range(n)), t)
    assert rem == 0
    poly = sp.Poly(quotient, t)
    coeffs = dict((m[0], int(c)) for m, c in zip(poly.monoms(), poly.coeffs()))
    low, high = min(coeffs), max(coeffs)
    shift = (low + high) // 2
    sign = 1 if coeffs[high] > 0 else -1
    terms = sorted(((k - shift, sign * c) for k, c in coeffs.items()), reverse=True)
    return AlexPoly(tuple(terms))


def torus_word(p: int, q: int) -> BraidWord:
    return BraidWord(p, tuple(range(1, p))) ** q


def main() -> None:
    entries = [{"label": "unknot", "file": "unknot.cfk", "braid": "B1:", "strands": 1}]
    DATA.mkdir(parents=True, exist_ok=True)
    (DATA / "unknot.cfk").write_text(
        dumps_cfk(staircase_from_alexander(AlexPoly(((0, 1),))), "unknot"), encoding="utf-8")
    for p, q in TORUS:
        label = f"T({p},{q})"
        fname = f"t{p}{q}.cfk"
        c = staircase_from_alexander(torus_alexander(p, q))
        (DATA / fname).write_text(dumps_cfk(c, f"{label} staircase"), encoding="utf-8")
        entries.append({"label": label, "file": fname, "braid": str(torus_word(p, q)), "strands": p})
    for p, q, r, s in TWISTED:
        label = f"T({p},{q};{r},{s})"
        fname = f"t{p}{q}_{r}{s}.cfk"
        word = twisted_torus_braid(p, q, r, s)
        alex = burau_alexander(word)
        c = staircase_from_alexander(alex)
        (DATA / fname).write_text(
            dumps_cfk(c, f"{label} staircase; L-space twisted torus knot (r = p - 1)"),
            encoding="utf-8")
        entries.append({"label": label, "file": fname, "braid": str(word), "strands": p,
                        "note": "L-space twisted torus knot T(p, kp±1; p-1, s)"})
    (DATA / "index.json").write_text(json.dumps({"knots": entries}, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
