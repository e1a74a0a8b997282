"""Reading and writing the line-oriented ``.cfk`` complex format."""

from __future__ import annotations

import re
from pathlib import Path

from .complex import Arrow, FilteredComplex, Generator


class CfkParseError(ValueError):
    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


_ID = r"[^\s=+#]+"
_TERM = re.compile(rf"^(?:U\^(\d+)\s+)?({_ID})$")


def loads_cfk(text: str, name: str | None = None) -> FilteredComplex:
    gens: list[Generator] = []
    arrows: list[Arrow] = []
    seen: dict[str, int] = {}
    symmetric = False
    pending: list[tuple[int, Arrow]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "gen":
            parts = rest.split()
            if len(parts) != 3:
                raise CfkParseError(lineno, "expected 'gen <id> <alexander> <maslov>'")
            gid, a, m = parts
            if not re.fullmatch(_ID, gid):
                raise CfkParseError(lineno, f"bad generator id {gid!r}")
            if gid in seen:
                raise CfkParseError(lineno, f"generator {gid!r} already declared on line {seen[gid]}")
            try:
                gens.append(Generator(gid, int(a), int(m)))
            except ValueError:
                raise CfkParseError(lineno, "gradings must be integers") from None
            seen[gid] = lineno
        elif head == "d":
            src, eq, rhs = rest.partition("=")
            src = src.strip()
            if not eq or not re.fullmatch(_ID, src):
                raise CfkParseError(lineno, "expected 'd <source> = <terms>'")
            terms = [t.strip() for t in rhs.split("+")]
            if terms == [""]:
                raise CfkParseError(lineno, "empty right-hand side")
            for term in terms:
                m = _TERM.match(term)
                if not m:
                    raise CfkParseError(lineno, f"cannot parse term {term!r}")
                power = int(m.group(1)) if m.group(1) is not None else 0
                pending.append((lineno, Arrow(src, m.group(2), power)))
        elif line == "symmetric":
            symmetric = True
        else:
            raise CfkParseError(lineno, f"unknown directive {head!r}")
    for lineno, a in pending:
        for gid in (a.source, a.target):
            if gid not in seen:
                raise CfkParseError(lineno, f"unknown generator {gid!r}")
        arrows.append(a)
    return FilteredComplex(tuple(gens), tuple(arrows), symmetric, name)


def load_cfk(path: str | Path) -> FilteredComplex:
    path = Path(path)
    return loads_cfk(path.read_text(encoding="utf-8"), name=path.stem)


def dumps_cfk(c: FilteredComplex, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {row}" for row in comment.splitlines())
    for g in c.generators:
        lines.append(f"gen {g.id} {g.alexander} {g.maslov}")
    for g in c.generators:
        out = c.outgoing[g.id]
        if out:
            rhs = " + ".join(a.target if a.u_power == 0 else f"U^{a.u_power} {a.target}" for a in out)
            lines.append(f"d {g.id} = {rhs}")
    if c.symmetric:
        lines.append("symmetric")
    return "\n".join(lines) + "\n"
