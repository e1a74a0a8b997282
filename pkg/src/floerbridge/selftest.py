"""
The bundled acceptance suite.

Each criterion is a function returning a :class:`CriterionResult`; all
randomness comes from fixed seeds so repeated runs print identical output.
Criterion 4 is split into its four region checks.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .braids import (
    BraidWord,
    full_twist,
    garside_normal_form,
    is_twist_positive,
    parse_braid,
    twisted_torus_braid,
)
from .certificate import bridge_certificate
from .complex import Arrow, FilteredComplex, ValidationError, require_valid, validate
from .constructors import bundled_labels, load_bundled, staircase_from_alexander, torus_alexander
from .invariants import tau, torsion_order, upsilon_at, upsilon_pl
from .oracles import MAX_GENERATORS, brute_tau, brute_torsion_order, brute_upsilon, expected_violations
from .verifier import check_conditions, lemma_cycle_witness, upsilon_region_agrees, verify_proposition

SEED = 20170604
TORUS_PAIRS = ((2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5))
N_RANGE = range(2, 6)


@dataclass(frozen=True)
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.key}: {self.title} ({self.detail})"


def _result(key: str, title: str, failures: list[str], checked: int) -> CriterionResult:
    if failures:
        shown = "; ".join(failures[:3]) + (f"; +{len(failures) - 3} more" if len(failures) > 3 else "")
        return CriterionResult(key, title, False, f"{len(failures)}/{checked} failed: {shown}")
    return CriterionResult(key, title, True, f"{checked} checks")


def criterion_1() -> CriterionResult:
    failures, checked = [], 0
    for p, q in TORUS_PAIRS:
        start = time.perf_counter()
        c = staircase_from_alexander(torus_alexander(p, q), f"T({p},{q})")
        k = tau(c)
        order, _ = torsion_order(c)
        elapsed = time.perf_counter() - start
        checked += 1
        if k != (p - 1) * (q - 1) // 2:
            failures.append(f"T({p},{q}) tau {k}")
        if order != min(p, q) - 1:
            failures.append(f"T({p},{q}) ord {order}")
        if elapsed >= 1:
            failures.append(f"T({p},{q}) took {elapsed:.2f}s")
        if len(c) <= MAX_GENERATORS:
            if brute_tau(c) != k or brute_torsion_order(c) != order:
                failures.append(f"T({p},{q}) disagrees with brute force")
    return _result("1", "torus-knot tau and Ord", failures, checked)


def criterion_2() -> CriterionResult:
    failures, checked = [], 0
    grid = [Fraction(k, 8) for k in range(17)]
    for label in bundled_labels():
        c = load_bundled(label)
        checked += 1
        w = c.default_window()
        ups = upsilon_pl(c, w)
        if ups(0) != 0 or ups(2) != 0:
            failures.append(f"{label}: endpoints")
        if any(ups(t) != ups(2 - t) for t in ups.breakpoints):
            failures.append(f"{label}: not symmetric")
        if ups.slopes()[0] != -tau(c):
            failures.append(f"{label}: initial slope {ups.slopes()[0]}")
        if upsilon_pl(c, w + 1) != ups:
            failures.append(f"{label}: window {w} vs {w + 1}")
        if len(c) <= MAX_GENERATORS:
            bad = [t for t in grid if brute_upsilon(c, t, w) != upsilon_at(c, t, w)]
            if bad:
                failures.append(f"{label}: brute force differs at t = {bad[0]}")
    return _result("2", "Upsilon properties", failures, checked)


def passing_pairs() -> list[tuple[str, int]]:
    """(label, n) with both Υ conditions holding, n in 2..5."""
    out = []
    for label in bundled_labels():
        c = load_bundled(label)
        out += [(label, n) for n in N_RANGE if check_conditions(c, n).both]
    return out


def criterion_3() -> CriterionResult:
    failures, pairs = [], passing_pairs()
    for label, n in pairs:
        v = verify_proposition(load_bundled(label), n)
        if v.ord is None or v.ord < n - 1:
            failures.append(f"{label}, n={n}: Ord {v.ord}")
        if v.vertical is None or v.vertical.vertical_length < n - 1:
            failures.append(f"{label}, n={n}: no long vertical differential")
    return _result("3", "torsion-order bound on passing pairs", failures, len(pairs))


def _region_criterion(key: str, title: str, check: Callable[[FilteredComplex, int], bool]) -> CriterionResult:
    failures, pairs = [], passing_pairs()
    for label, n in pairs:
        if not check(load_bundled(label), n):
            failures.append(f"{label}, n={n}")
    return _result(key, title, failures, len(pairs))


def criterion_4a() -> CriterionResult:
    return _region_criterion("4a", "region (a) surjective",
                             lambda c, n: lemma_cycle_witness(c, n).region)


def criterion_4b() -> CriterionResult:
    return _region_criterion("4b", "strict region (b) not surjective",
                             lambda c, n: not lemma_cycle_witness(c, n).strict_region)


def criterion_4c() -> CriterionResult:
    return _region_criterion("4c", "line-restricted region (c) not surjective",
                             lambda c, n: not lemma_cycle_witness(c, n).line_restricted)


def criterion_4d() -> CriterionResult:
    return _region_criterion("4d", "region (a) agrees with Upsilon(2/n) >= -2tau/n",
                             upsilon_region_agrees)


def random_positive_word(rng: random.Random, n: int, length: int) -> BraidWord:
    return BraidWord(n, tuple(rng.randint(1, n - 1) for _ in range(length)))


def rewrite_once(letters: tuple[int, ...], rng: random.Random) -> tuple[int, ...]:
    """Apply one randomly chosen braid relation somewhere in the word, if any applies."""
    moves = []
    for k in range(len(letters) - 1):
        a, b = letters[k], letters[k + 1]
        if abs(a - b) >= 2:
            moves.append((k, 2, (b, a)))
        if k + 2 < len(letters) and abs(a - b) == 1 and letters[k + 2] == a:
            moves.append((k, 3, (b, a, b)))
    if not moves:
        return letters
    k, width, repl = rng.choice(moves)
    return letters[:k] + repl + letters[k + width:]


def criterion_6() -> CriterionResult:
    rng = random.Random(SEED)
    failures, checked = [], 0
    for _ in range(1000):
        n = rng.randint(2, 5)
        b = random_positive_word(rng, n, rng.randint(0, 30))
        nf = garside_normal_form(b)
        checked += 1
        if garside_normal_form(nf.to_word()) != nf or not nf.is_left_weighted():
            failures.append(f"not idempotent on {b}")
    for _ in range(200):
        n = rng.randint(2, 5)
        b = random_positive_word(rng, n, rng.randint(0, 20))
        if rng.random() < 0.5:
            b = full_twist(n) * b if rng.random() < 0.5 else b * full_twist(n)
        letters = b.letters
        for _ in range(rng.randint(1, 40)):
            letters = rewrite_once(letters, rng)
        moved = BraidWord(n, letters)
        checked += 1
        if is_twist_positive(moved)[0] != is_twist_positive(b)[0]:
            failures.append(f"twist positivity changed by rewriting {b}")
        if garside_normal_form(moved) != garside_normal_form(b):
            failures.append(f"normal form changed by rewriting {b}")
    for p in range(2, 6):
        for q in range(1, 3 * p + 1):
            word = BraidWord(p, tuple(range(1, p))) ** q
            flag, gamma = is_twist_positive(word)
            checked += 1
            if flag != (q >= p):
                failures.append(f"torus word p={p}, q={q}: flag {flag}")
            elif flag:
                expected = BraidWord(p, tuple(range(1, p))) ** (q - p)
                if garside_normal_form(gamma) != garside_normal_form(expected):
                    failures.append(f"torus word p={p}, q={q}: gamma {gamma}")
    return _result("6", "Garside normal form and twist positivity", failures, checked)


def criterion_5() -> CriterionResult:
    failures, checked = [], 0
    for p, q, r, s in ((3, 4, 2, 1), (3, 5, 2, 2), (5, 7, 3, 2)):
        cert = bridge_certificate(twisted_torus_braid(p, q, r, s))
        checked += 1
        if not (cert.issued and cert.bridge_index.value == p and cert.braid_index.value == p
                and cert.bridge_index.relation == "=" and cert.braid_index.relation == "="):
            failures.append(f"T({p},{q};{r},{s}): bridge {cert.bridge_index}, braid {cert.braid_index}")
        if any(v != p for _, v in cert.chain):
            failures.append(f"T({p},{q};{r},{s}): chain {cert.chain_text()}")
    cert = bridge_certificate(parse_braid("B2: 1 1 1"))
    checked += 1
    if not (cert.issued and cert.bridge_index.value == 2 and cert.braid_index.value == 2):
        failures.append(f"trefoil: bridge {cert.bridge_index}")
    return _result("5", "bridge certificates for twisted torus knots", failures, checked)


def mutate(c: FilteredComplex, rng: random.Random) -> FilteredComplex:
    """Add, remove, or re-weight one arrow."""
    arrows = list(c.arrows)
    kinds = ["add"] + (["remove", "reweight"] if arrows else [])
    kind = rng.choice(kinds)
    if kind == "add":
        src, tgt = rng.choice(c.generators), rng.choice(c.generators)
        half, odd = divmod(tgt.maslov - src.maslov + 1, 2)
        # half of the additions respect the Maslov law so the other laws get exercised too
        if not odd and half >= 0 and rng.random() < 0.5:
            u = half
        else:
            u = rng.randint(0, 3)
        arrows.append(Arrow(src.id, tgt.id, u))
    elif kind == "remove":
        arrows.pop(rng.randrange(len(arrows)))
    else:
        k = rng.randrange(len(arrows))
        a = arrows[k]
        arrows[k] = a._replace(u_power=rng.choice([u for u in range(4) if u != a.u_power]))
    return c.with_arrows(arrows)


def criterion_7() -> CriterionResult:
    rng = random.Random(SEED + 7)
    labels = bundled_labels()
    failures, rejected = [], 0
    for _ in range(500):
        m = mutate(load_bundled(rng.choice(labels)), rng)
        expected = expected_violations(m)
        got = validate(m).laws
        if got != expected:
            failures.append(f"laws {sorted(got)} != {sorted(expected)}")
            continue
        try:
            require_valid(m)
        except ValidationError as err:
            rejected += 1
            if err.report.laws != expected:
                failures.append("rejection carries the wrong laws")
        else:
            if expected:
                failures.append("invalid mutation accepted")
    result = _result("7", "validator fuzzing", failures, 500)
    if result.passed:
        return CriterionResult("7", result.title, True, f"500 mutations, {rejected} rejected")
    return result


CRITERIA: dict[str, Callable[[], CriterionResult]] = {
    "1": criterion_1,
    "2": criterion_2,
    "3": criterion_3,
    "4a": criterion_4a,
    "4b": criterion_4b,
    "4c": criterion_4c,
    "4d": criterion_4d,
    "5": criterion_5,
    "6": criterion_6,
    "7": criterion_7,
}


def run_all() -> list[CriterionResult]:
    return [fn() for fn in CRITERIA.values()]
