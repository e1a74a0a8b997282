"""Command-line entry point: ``floerbridge <command> [options]``."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .braids import (
    BraidError,
    BraidWord,
    closure_is_knot,
    garside_normal_form,
    is_twist_positive,
    parse_braid,
    twisted_torus_braid,
)
from .certificate import InternalInconsistency, bridge_certificate
from .cfkio import CfkParseError, load_cfk
from .complex import FilteredComplex, validate
from .invariants import NotAKnotComplex, WindowUnstable, hfk_hat, tau, torsion_order, upsilon_pl
from .report import Report
from .verifier import check_conditions, lemma_cycle_witness, verify_proposition

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _load(path: str) -> FilteredComplex:
    try:
        c = load_cfk(path)
    except OSError as err:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {err.strerror or err}") from err
    except CfkParseError as err:
        raise CliError(EXIT_INPUT, f"{path}: {err}") from err
    except ValueError as err:
        raise CliError(EXIT_INPUT, f"{path}: {err}") from err
    report = validate(c)
    if not report.ok:
        raise CliError(EXIT_INVALID, f"{path}: invalid complex: {report.summary()}")
    return c


def _window(args: argparse.Namespace) -> int | None:
    if args.window is not None and args.window < 0:
        raise CliError(EXIT_INPUT, "--window must be non-negative")
    return args.window


# --- commands -----------------------------------------------------------------


def cmd_invariants(args: argparse.Namespace) -> Report:
    rep = Report("invariants")
    rep.add_input("complex", args.complex)
    c = _load(args.complex)
    w = _window(args)
    rep.add("generators", len(c), "trivial")
    rep.add("window", c.default_window() if w is None else w, "trivial")
    rep.add("tau", tau(c), "computed")
    ups = upsilon_pl(c, w)
    rep.add("upsilon", ups, "computed")
    rep.add("upsilon.breakpoints", " ".join(str(t) for t in ups.breakpoints) or "none", "computed")
    order, module = torsion_order(c)
    rep.add("ord", order, "computed")
    rep.add("hfk_minus.free_rank", module.free_rank, "computed")
    rep.add("hfk_minus.torsion", " ".join(f"U^{d}" for d in module.torsion_orders) or "none", "computed")
    for (a, m), count in sorted(hfk_hat(c).items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
        rep.add(f"hfk_hat[A={a},M={m}]", count, "computed")
    return rep


def _braid_lines(rep: Report, b: BraidWord) -> None:
    rep.add("strands", b.strands, "trivial")
    rep.add("length", len(b), "trivial")
    rep.add("knot", closure_is_knot(b), "computed")
    if not b.is_positive:
        raise CliError(EXIT_INPUT, "the normal form and certificates need a positive braid word")
    nf = garside_normal_form(b)
    rep.add("normal_form", nf, "computed")
    rep.add("inf", nf.inf, "computed")
    twist, gamma = is_twist_positive(b)
    rep.add("twist_positive", twist, "computed")
    rep.add("gamma", gamma if gamma is not None else "none", "computed")
    if not closure_is_knot(b):
        rep.add("certificate", "not issued (closure is not a knot)", "trivial")
        return
    cert = bridge_certificate(b)
    rep.add("genus", cert.genus, "computed")
    rep.add("tau", cert.tau, "computed")
    rep.add("braid", cert.braid_index, cert.braid_index.provenance)
    rep.add("bridge", cert.bridge_index, cert.bridge_index.provenance)
    rep.add("ord_lower_bound", cert.ord_lower_bound, cert.ord_lower_bound.provenance)
    rep.add("chain", cert.chain_text(), cert.bridge_index.provenance)
    rep.add("certificate", "issued" if cert.issued else "not issued", "computed")
    rep.add("bundled", cert.bundled or "none", "trivial")
    if cert.verdict is not None:
        rep.add("verdict", cert.verdict.status, "computed")


def cmd_braid(args: argparse.Namespace) -> Report:
    rep = Report("braid")
    rep.add_input("word", args.word)
    try:
        b = parse_braid(args.word)
    except BraidError as err:
        raise CliError(EXIT_INPUT, f"bad braid word: {err}") from err
    _braid_lines(rep, b)
    return rep


def cmd_ttk(args: argparse.Namespace) -> Report:
    rep = Report("ttk")
    for key in ("p", "q", "r", "s"):
        rep.add_input(key, getattr(args, key))
    try:
        b = twisted_torus_braid(args.p, args.q, args.r, args.s)
    except BraidError as err:
        raise CliError(EXIT_INPUT, str(err)) from err
    if not closure_is_knot(b):
        raise CliError(EXIT_INPUT, f"T({args.p},{args.q};{args.r},{args.s}) is a link, not a knot")
    rep.add("word", b, "trivial")
    _braid_lines(rep, b)
    return rep


def cmd_verify(args: argparse.Namespace) -> Report:
    rep = Report("verify")
    rep.add_input("complex", args.complex)
    rep.add_input("n", args.n)
    if args.n < 2:
        raise CliError(EXIT_INPUT, "--n must be at least 2")
    c = _load(args.complex)
    w = _window(args)
    cond = check_conditions(c, args.n, w)
    rep.add("tau", cond.tau, "computed")
    rep.add("upsilon", cond.upsilon, "computed")
    rep.add("condition1", cond.cond1, "computed")
    rep.add("condition2", cond.cond2, "computed")
    rep.add("condition2.margins", " ".join(f"{t}:{m}" for t, m in cond.cond2_points), "computed")
    lemma = lemma_cycle_witness(c, args.n, w)
    rep.add("lemma.region", lemma.region, "computed")
    rep.add("lemma.strict_region", lemma.strict_region, "computed")
    rep.add("lemma.line_restricted", lemma.line_restricted, "computed")
    rep.add("lemma.tilted_region", lemma.tilted_region, "computed")
    rep.add("lemma.status", lemma.status, "computed")
    if lemma.witness is not None:
        chain = " + ".join(f"{g}@({i},{j})" for g, i, j in lemma.witness.chain)
        rep.add("lemma.witness", chain, "computed")
    verdict = verify_proposition(c, args.n, w)
    rep.add("verdict", verdict.status, "computed")
    if verdict.ord is not None:
        rep.add("ord", verdict.ord, "computed")
    if verdict.vertical is not None:
        v = verdict.vertical
        rep.add("vertical.y", v.y, "computed")
        rep.add("vertical.target", " + ".join(v.x), "computed")
        rep.add("vertical.length", v.vertical_length, "computed")
        rep.add("vertical.route", v.route, "computed")
    if verdict.simplest_case is not None:
        rep.add("simplest_case", verdict.simplest_case, "computed")
    if verdict.failed:
        # report first, then fail: the output documents the contradiction
        args._failure = "; ".join(verdict.problems)
    return rep


def cmd_selftest(args: argparse.Namespace) -> Report:
    from .selftest import run_all

    rep = Report("selftest")
    failed = []
    for res in run_all():
        rep.add(f"criterion.{res.key}", "pass" if res.passed else "fail", "computed")
        rep.add(f"criterion.{res.key}.detail", res.detail, "computed")
        if not res.passed:
            failed.append(res.key)
    if failed:
        args._failure = "acceptance criteria failed: " + ", ".join(failed)
    return rep


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--window", type=int, default=None, help="override the U-translate window")
    common.add_argument("--quiet", action="store_true", help="suppress the report on stdout")

    parser = argparse.ArgumentParser(prog="floerbridge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="τ, Υ, Ord and ĤFK of a .cfk complex")
    p.add_argument("--complex", required=True)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("braid", parents=[common], help="normal form and bridge certificate of a braid")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("ttk", parents=[common], help="certify the twisted torus knot T(p,q;r,s)")
    for key in ("p", "q", "r", "s"):
        p.add_argument(f"--{key}", type=int, required=True)
    p.set_defaults(func=cmd_ttk)

    p = sub.add_parser("verify", parents=[common], help="check the Υ conditions and the Ord bound")
    p.add_argument("--complex", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", parents=[common], help="run the bundled acceptance suite")
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    args._failure = None
    try:
        rep = args.func(args)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except NotAKnotComplex as err:
        print(f"error: not a knot complex: {err}", file=sys.stderr)
        return EXIT_INVALID
    except (WindowUnstable, InternalInconsistency) as err:
        print(f"internal inconsistency: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    if not args.quiet:
        sys.stdout.write(rep.render(args.format))
    if args._failure:
        print(f"failure: {args._failure}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
