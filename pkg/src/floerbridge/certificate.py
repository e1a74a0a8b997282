"""
Bridge-index certificates for positive braid knots.

For a twist positive braid on n strands the certificate instantiates

    n <= Ord(K) + 1 <= bridge(K) <= braid(K) <= n

and records, entry by entry, whether a value was computed here or taken from
the literature. Cited premises:

* FW87, Mor86: the braid index of a twist positive knot on n strands is n.
* FK17: twist positive knots on n strands satisfy the two Υ conditions.
* JMZ20: Ord(K) <= bridge(K) - 1.
* the torsion-order bound: the Υ conditions imply Ord(K) >= n - 1.

When the bundled library holds a complex for the same braid, the Υ
conditions and Ord are recomputed on it and the verdict is attached.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braids import (
    BraidError,
    BraidWord,
    closure_is_knot,
    garside_normal_form,
    is_twist_positive,
    parse_braid,
    positive_genus_tau,
)
from .constructors import bundled_index, load_bundled
from .invariants import tau as complex_tau
from .verifier import PropositionVerdict, verify_proposition

CITE_BRAID = "cited(FW87;Mor86)"
CITE_ORD = "cited(FK17+ord-bound)"
CITE_BRIDGE = "cited(JMZ20)"


class InternalInconsistency(RuntimeError):
    """Computed and cited facts disagree; this would contradict the theory."""


@dataclass(frozen=True)
class Bound:
    value: int | None
    provenance: str
    relation: str = "="   # "=" for a determined value, "<=" / ">=" for one-sided bounds

    def __str__(self) -> str:
        shown = "?" if self.value is None else str(self.value)
        return f"{self.relation} {shown}" if self.relation != "=" else shown


@dataclass(frozen=True)
class BridgeCertificate:
    word: BraidWord
    strands: int
    genus: int
    tau: int
    twist_positive: bool
    gamma: BraidWord | None
    braid_index: Bound
    bridge_index: Bound
    ord_lower_bound: Bound
    chain: tuple[tuple[str, int | None], ...]
    issued: bool
    bundled: str | None = None
    verdict: PropositionVerdict | None = None

    def chain_text(self) -> str:
        return " <= ".join(f"{name}={'?' if v is None else v}" for name, v in self.chain)


def find_bundled(b: BraidWord) -> str | None:
    """Label of a bundled complex whose braid has the same Garside normal form as b."""
    nf = garside_normal_form(b)
    for label, entry in bundled_index().items():
        if entry.strands != b.strands:
            continue
        if garside_normal_form(parse_braid(entry.braid)) == nf:
            return label
    return None


def bridge_certificate(b: BraidWord) -> BridgeCertificate:
    if not b.is_positive:
        raise BraidError("bridge certificates need a positive braid word")
    if not closure_is_knot(b):
        raise BraidError("braid closure is not a knot")
    n = b.strands
    g, t = positive_genus_tau(b)
    twist, gamma = is_twist_positive(b)
    label = find_bundled(b)
    verdict = None
    computed_ord = None
    if label is not None:
        c = load_bundled(label)
        if complex_tau(c) != t:
            raise InternalInconsistency(f"τ of bundled {label} differs from the braid genus {t}")
        if n >= 2:
            verdict = verify_proposition(c, n)
            if verdict.failed:
                raise InternalInconsistency(f"verification failed on {label}: {verdict.problems}")
            if twist and n >= 3 and verdict.status != "PASS":
                raise InternalInconsistency(f"Υ conditions fail on twist positive {label}")
            computed_ord = verdict.ord

    if not twist:
        # genus 0 means the closure is the unknot
        if g == 0:
            one = Bound(1, "trivial")
            return BridgeCertificate(b, n, g, t, twist, gamma, one, one, Bound(0, "trivial"),
                                     (("n", n), ("Ord(K)+1", 1), ("bridge(K)", 1), ("braid(K)", 1)),
                                     issued=False, bundled=label, verdict=verdict)
        return BridgeCertificate(
            b, n, g, t, twist, gamma,
            braid_index=Bound(n, "trivial", "<="),
            bridge_index=Bound(n, "trivial", "<="),
            ord_lower_bound=Bound(None, CITE_BRIDGE, "<="),
            chain=(("Ord(K)+1", None), ("bridge(K)", None), ("braid(K)", None), ("n", n)),
            issued=False, bundled=label, verdict=verdict)

    if n <= 2:
        # bridge(K) = 1 only for the unknot, and any 2-braid has braid index <= 2
        braid = Bound(n, "trivial")
        bridge = Bound(n, "trivial")
    else:
        braid = Bound(n, CITE_BRAID)
        bridge = Bound(n, "cited+computed" if computed_ord is not None else CITE_ORD)
    if computed_ord is not None:
        ord_bound = Bound(computed_ord, "computed")
        if computed_ord + 1 != n:
            raise InternalInconsistency(f"computed Ord = {computed_ord} but n = {n}")
    else:
        ord_bound = Bound(n - 1, "trivial" if n <= 2 else CITE_ORD, ">=")
    chain = (("n", n), ("Ord(K)+1", n), ("bridge(K)", n), ("braid(K)", n), ("n", n))
    return BridgeCertificate(b, n, g, t, twist, gamma, braid, bridge, ord_bound, chain,
                             issued=True, bundled=label, verdict=verdict)
