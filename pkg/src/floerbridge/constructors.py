"""
Ground-truth complexes: staircases of L-space knots, torus-knot Alexander
polynomials, tensor products, and the bundled library.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import gcd

from .cfkio import loads_cfk
from .complex import Arrow, FilteredComplex, Generator, ValidationError, validate


@dataclass(frozen=True)
class AlexPoly:
    """Symmetrized Alexander polynomial with alternating ±1 coefficients."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        terms = tuple((int(e), int(s)) for e, s in self.terms)
        object.__setattr__(self, "terms", terms)
        problems = self.problems()
        if problems:
            raise ValueError("malformed Alexander polynomial: " + "; ".join(problems))

    def problems(self) -> list[str]:
        out = []
        exps = [e for e, _ in self.terms]
        signs = [s for _, s in self.terms]
        if not self.terms:
            return ["no terms"]
        if any(a <= b for a, b in zip(exps, exps[1:])):
            out.append("exponents must strictly decrease")
        if signs[0] != 1 or signs[-1] != 1 or any(a != -b for a, b in zip(signs, signs[1:])):
            out.append("signs must alternate starting and ending with +1")
        if any(s not in (1, -1) for s in signs):
            out.append("coefficients must be ±1")
        if exps != [-e for e in reversed(exps)]:
            out.append("not symmetric under t -> 1/t")
        return out

    @property
    def exponents(self) -> list[int]:
        return [e for e, _ in self.terms]

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)


def _int_poly_divide(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (coefficient lists, index = degree)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        coeff, rem = divmod(num[k + len(den) - 1], lead)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[k] = coeff
        for n, d in enumerate(den):
            num[k + n] -= coeff * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _t_power_minus_one(k: int) -> list[int]:
    return [-1] + [0] * (k - 1) + [1]


def torus_alexander(p: int, q: int) -> AlexPoly:
    """Symmetrized Alexander polynomial of T(p, q) by exact integer division."""
    if p < 2 or q < 2:
        raise ValueError("torus knot parameters must be at least 2")
    if gcd(p, q) != 1:
        raise ValueError(f"T({p},{q}) is not a knot: gcd = {gcd(p, q)}")
    num = _poly_mul(_t_power_minus_one(p * q), _t_power_minus_one(1))
    den = _poly_mul(_t_power_minus_one(p), _t_power_minus_one(q))
    coeffs = _int_poly_divide(num, den)
    shift = (len(coeffs) - 1) // 2
    return AlexPoly(tuple((k - shift, c) for k, c in reversed(list(enumerate(coeffs))) if c))


def staircase_from_alexander(a: AlexPoly, name: str | None = None) -> FilteredComplex:
    """
    Staircase complex with one generator per term of ``a``.

    Generators x0, x1, ... follow the terms from the top exponent down. Each
    odd-indexed x has a horizontal arrow to the previous generator (U-power
    equal to the exponent gap) and a vertical arrow to the next one.
    """
    exps = a.exponents
    gens = [Generator("x0", exps[0], 0)]
    arrows = []
    for k in range(1, len(exps), 2):
        h = exps[k - 1] - exps[k]
        m = gens[-1].maslov - 2 * h + 1
        gens.append(Generator(f"x{k}", exps[k], m))
        gens.append(Generator(f"x{k + 1}", exps[k + 1], m - 1))
        arrows.append(Arrow(f"x{k}", f"x{k - 1}", h))
        arrows.append(Arrow(f"x{k}", f"x{k + 1}", 0))
    return FilteredComplex(tuple(gens), tuple(arrows), symmetric=True, name=name)


def tensor_product(c1: FilteredComplex, c2: FilteredComplex, name: str | None = None) -> FilteredComplex:
    """Tensor product over F_2[U, U^-1]; ∂(x ⊗ y) = ∂x ⊗ y + x ⊗ ∂y."""

    def pair(x: str, y: str) -> str:
        return f"({x},{y})"

    gens = tuple(
        Generator(pair(x.id, y.id), x.alexander + y.alexander, x.maslov + y.maslov)
        for x in c1.generators for y in c2.generators
    )
    arrows = []
    for x in c1.generators:
        for y in c2.generators:
            src = pair(x.id, y.id)
            arrows.extend(Arrow(src, pair(a.target, y.id), a.u_power) for a in c1.outgoing[x.id])
            arrows.extend(Arrow(src, pair(x.id, b.target), b.u_power) for b in c2.outgoing[y.id])
    return FilteredComplex(gens, tuple(arrows), c1.symmetric and c2.symmetric, name)


# --- bundled library ----------------------------------------------------------


@dataclass(frozen=True)
class BundledKnot:
    label: str
    file: str
    braid: str
    strands: int
    note: str = ""


@lru_cache(maxsize=1)
def bundled_index() -> dict[str, BundledKnot]:
    raw = json.loads(resources.files(__package__).joinpath("data/index.json").read_text("utf-8"))
    return {entry["label"]: BundledKnot(**entry) for entry in raw["knots"]}


def bundled_labels() -> list[str]:
    return list(bundled_index())


@lru_cache(maxsize=None)
def load_bundled(label: str) -> FilteredComplex:
    index = bundled_index()
    if label not in index:
        raise KeyError(f"unknown bundled knot {label!r}; known: {', '.join(index)}")
    entry = index[label]
    text = resources.files(__package__).joinpath("data", entry.file).read_text("utf-8")
    c = loads_cfk(text, name=label)
    report = validate(c)
    if not report.ok:
        raise ValidationError(report)
    return c
