"""
Acceptance criteria 1-7, one printed PASS/FAIL line each.

Thresholds are exact: all comparisons are between integers or Fractions.
Criterion 4 bundles four region checks; its literal check (c) is expected to
fail, see the decisions ledger.
"""

from __future__ import annotations

import json
from importlib import resources

from floerbridge import cli, selftest
from floerbridge.constructors import bundled_index


def report(capsys, key: str, title: str, results) -> None:
    passed = all(r.passed for r in results)
    detail = "; ".join(f"{r.key}: {r.detail}" for r in results)
    with capsys.disabled():
        print(f"\n[{'PASS' if passed else 'FAIL'}] criterion {key}: {title} ({detail})")
    failing = [r.line() for r in results if not r.passed]
    assert not failing, "\n".join(failing)


def test_criterion_1_torus_invariants(capsys):
    report(capsys, "1", "torus-knot tau and Ord", [selftest.criterion_1()])


def test_criterion_2_upsilon_properties(capsys):
    report(capsys, "2", "Upsilon properties", [selftest.criterion_2()])


def test_criterion_3_torsion_bound(capsys):
    res = selftest.criterion_3()
    data = resources.files("floerbridge") / "data"
    exits = []
    for label, n in selftest.passing_pairs():
        code = cli.run(["verify", "--complex", str(data / bundled_index()[label].file), "--n", str(n), "--quiet"])
        exits.append(code)
    capsys.readouterr()
    cli_ok = selftest.CriterionResult("3-cli", "verify exits 0 on passing pairs", all(c == 0 for c in exits),
                                      f"exit codes {exits}")
    report(capsys, "3", "torsion-order bound", [res, cli_ok])


def test_criterion_4_region_suite(capsys):
    results = [selftest.criterion_4a(), selftest.criterion_4b(), selftest.criterion_4c(), selftest.criterion_4d()]
    report(capsys, "4", "region suite", results)


def test_criterion_5_certificates(capsys):
    res = selftest.criterion_5()
    lines = []
    for p, q, r, s in ((3, 4, 2, 1), (3, 5, 2, 2), (5, 7, 3, 2)):
        cli.run(["ttk", "--p", str(p), "--q", str(q), "--r", str(r), "--s", str(s), "--format", "json"])
        flat = json.loads(capsys.readouterr().out)
        lines.append(flat["bridge"] == flat["braid"] == str(p) and flat["certificate"] == "issued")
    cli.run(["braid", "--word", "B2: 1 1 1", "--format", "json"])
    flat = json.loads(capsys.readouterr().out)
    lines.append(flat["bridge"] == "2")
    cli_ok = selftest.CriterionResult("5-cli", "CLI certificates", all(lines), f"{sum(lines)}/{len(lines)} reports")
    report(capsys, "5", "bridge certificates", [res, cli_ok])


def test_criterion_6_garside(capsys):
    report(capsys, "6", "Garside suite", [selftest.criterion_6()])


def test_criterion_7_validator_fuzzing(capsys):
    report(capsys, "7", "validator fuzzing", [selftest.criterion_7()])
