"""
Line-oriented reports with a provenance tag on every result line.

Text form::

    command: ttk
    input.p = 3
    bridge = 3 [cited+computed]

The JSON form is a flat object with the same content: ``command``, one
``input.<name>`` key per input, and for each result both ``<key>`` and
``<key>.provenance``. All values are strings so that the two forms compare
equal after parsing.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

TAGS = ("computed", "trivial", "cited+computed")
_CITED = re.compile(r"cited\([^\[\]]+\)")


def valid_tag(tag: str) -> bool:
    return tag in TAGS or bool(_CITED.fullmatch(tag))


@dataclass
class Report:
    command: str
    inputs: list[tuple[str, str]] = field(default_factory=list)
    lines: list[tuple[str, str, str]] = field(default_factory=list)

    def add_input(self, key: str, value: object) -> None:
        self.inputs.append((key, str(value)))

    def add(self, key: str, value: object, tag: str) -> None:
        if not valid_tag(tag):
            raise ValueError(f"unknown provenance tag {tag!r}")
        if any(k == key for k, _, _ in self.lines):
            raise ValueError(f"duplicate report key {key!r}")
        self.lines.append((key, _show(value), tag))

    def get(self, key: str) -> str:
        for k, v, _ in self.lines:
            if k == key:
                return v
        raise KeyError(key)

    def tag(self, key: str) -> str:
        for k, _, t in self.lines:
            if k == key:
                return t
        raise KeyError(key)

    def to_text(self) -> str:
        out = [f"command: {self.command}"]
        out += [f"input.{k} = {v}" for k, v in self.inputs]
        out += [f"{k} = {v} [{t}]" for k, v, t in self.lines]
        return "\n".join(out) + "\n"

    def to_flat(self) -> dict[str, str]:
        flat = {"command": self.command}
        for k, v in self.inputs:
            flat[f"input.{k}"] = v
        for k, v, t in self.lines:
            flat[k] = v
            flat[f"{k}.provenance"] = t
        return flat

    def to_json(self) -> str:
        return json.dumps(self.to_flat(), indent=2, ensure_ascii=False) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()


def _show(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    text = str(value)
    if "\n" in text:
        raise ValueError("report values must be single-line")
    return text


_LINE = re.compile(r"(?P<key>\S+) = (?P<value>.*?) \[(?P<tag>[^\[\]]+)\]")


def parse_text(text: str) -> dict[str, str]:
    """Invert ``Report.to_text`` into the flat mapping produced by ``to_flat``."""
    flat: dict[str, str] = {}
    rows = text.splitlines()
    if not rows or not rows[0].startswith("command: "):
        raise ValueError("report must start with 'command: '")
    flat["command"] = rows[0][len("command: "):]
    for row in rows[1:]:
        if row.startswith("input."):
            key, _, value = row.partition(" = ")
            flat[key] = value
            continue
        m = _LINE.fullmatch(row)
        if not m:
            raise ValueError(f"unparseable report line {row!r}")
        flat[m["key"]] = m["value"]
        flat[f"{m['key']}.provenance"] = m["tag"]
    return flat
