"""Exact piecewise-linear functions on [0, 2] with rational breakpoints."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

Rational = Fraction | int


@dataclass(frozen=True)
class PLFunction:
    """
    Continuous PL function given by its values at sorted sample points.

    ``samples`` must start at t = 0 and end at t = 2 with value 0 at both ends.
    Between samples the function is affine.
    """

    samples: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        pts = tuple((Fraction(t), Fraction(v)) for t, v in self.samples)
        if len(pts) < 2 or pts[0][0] != 0 or pts[-1][0] != 2:
            raise ValueError("samples must cover t = 0 and t = 2")
        if any(b[0] <= a[0] for a, b in zip(pts, pts[1:])):
            raise ValueError("sample t values must be strictly increasing")
        if pts[0][1] != 0 or pts[-1][1] != 0:
            raise ValueError("value must vanish at t = 0 and t = 2")
        object.__setattr__(self, "samples", pts)

    @classmethod
    def zero(cls) -> PLFunction:
        return cls(((Fraction(0), Fraction(0)), (Fraction(2), Fraction(0))))

    def __call__(self, t: Rational) -> Fraction:
        t = Fraction(t)
        if not 0 <= t <= 2:
            raise ValueError(f"t = {t} outside [0, 2]")
        ts = [p[0] for p in self.samples]
        k = bisect_right(ts, t)
        if k == len(ts):
            return self.samples[-1][1]
        (t0, v0), (t1, v1) = self.samples[k - 1], self.samples[k]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    def simplified(self) -> PLFunction:
        """Drop sample points that lie on the segment through their neighbours."""
        pts = list(self.samples)
        out = [pts[0]]
        for k in range(1, len(pts) - 1):
            (t0, v0), (t1, v1), (t2, v2) = out[-1], pts[k], pts[k + 1]
            if (v1 - v0) * (t2 - t1) != (v2 - v1) * (t1 - t0):
                out.append(pts[k])
        out.append(pts[-1])
        return PLFunction(tuple(out))

    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        """Sample points of the simplified function, endpoints included."""
        return tuple(t for t, _ in self.simplified().samples)

    def slopes(self) -> list[Fraction]:
        pts = self.simplified().samples
        return [(v1 - v0) / (t1 - t0) for (t0, v0), (t1, v1) in zip(pts, pts[1:])]

    def __add__(self, other: PLFunction) -> PLFunction:
        ts = sorted({t for t, _ in self.samples} | {t for t, _ in other.samples})
        return PLFunction(tuple((t, self(t) + other(t)) for t in ts)).simplified()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PLFunction):
            return NotImplemented
        return self.simplified().samples == other.simplified().samples

    def __hash__(self) -> int:
        return hash(self.simplified().samples)

    def __str__(self) -> str:
        return ", ".join(f"({t}, {v})" for t, v in self.simplified().samples)


def from_values(points: Iterable[tuple[Rational, Rational]]) -> PLFunction:
    return PLFunction(tuple(sorted((Fraction(t), Fraction(v)) for t, v in points))).simplified()
