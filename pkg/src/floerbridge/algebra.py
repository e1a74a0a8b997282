"""
Exact arithmetic over F_2 and the polynomial ring F_2[U].

A polynomial is stored as a Python int whose bit k is the coefficient of U^k,
so addition is XOR and multiplication is carry-less. Matrices over F_2[U] are
sparse maps (row, col) -> PolyU. The Smith normal form routine works on a
dense copy and tracks the unimodular row and column transforms.

The F_2 helpers at the bottom (``F2Basis``, ``f2_kernel``) treat vectors as
int bitmasks as well; they carry all of the graded linear algebra used for
the knot Floer invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping


class ZeroDivisorError(ZeroDivisionError):
    """Raised when dividing by the zero polynomial."""

    def __init__(self) -> None:
        super().__init__("zero divisor")


def _clmul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


class PolyU:
    """A polynomial in U with coefficients in F_2."""

    __slots__ = ("_bits",)

    def __init__(self, terms: Iterable[int] = ()) -> None:
        bits = 0
        for e in terms:
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            bits ^= 1 << e
        self._bits = bits

    @classmethod
    def from_bits(cls, bits: int) -> PolyU:
        if bits < 0:
            raise ValueError("bitmask must be nonnegative")
        p = cls.__new__(cls)
        p._bits = bits
        return p

    @classmethod
    def monomial(cls, k: int) -> PolyU:
        return cls.from_bits(1 << k)

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def terms(self) -> frozenset[int]:
        return frozenset(self._exponents())

    def _exponents(self) -> Iterator[int]:
        b = self._bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return self._bits.bit_length() - 1

    def valuation(self) -> int:
        """Largest k with U^k dividing self; the zero polynomial raises."""
        if not self._bits:
            raise ValueError("valuation of zero polynomial")
        return (self._bits & -self._bits).bit_length() - 1

    def is_zero(self) -> bool:
        return self._bits == 0

    def is_one(self) -> bool:
        return self._bits == 1

    def is_monomial(self) -> bool:
        return self._bits != 0 and self._bits & (self._bits - 1) == 0

    def __bool__(self) -> bool:
        return self._bits != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolyU):
            return self._bits == other._bits
        if isinstance(other, int) and other in (0, 1):
            return self._bits == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("PolyU", self._bits))

    def __add__(self, other: PolyU) -> PolyU:
        return PolyU.from_bits(self._bits ^ _as_poly(other)._bits)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other: PolyU) -> PolyU:
        return PolyU.from_bits(_clmul(self._bits, _as_poly(other)._bits))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> PolyU:
        out = PolyU.from_bits(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: PolyU) -> tuple[PolyU, PolyU]:
        return poly_divmod(self, other)

    def __floordiv__(self, other: PolyU) -> PolyU:
        return poly_divmod(self, other)[0]

    def __mod__(self, other: PolyU) -> PolyU:
        return poly_divmod(self, other)[1]

    def __repr__(self) -> str:
        return f"PolyU({str(self)!r})"

    def __str__(self) -> str:
        if not self._bits:
            return "0"
        parts = []
        for e in sorted(self._exponents(), reverse=True):
            parts.append("1" if e == 0 else "U" if e == 1 else f"U^{e}")
        return " + ".join(parts)


def _as_poly(x: PolyU | int) -> PolyU:
    if isinstance(x, PolyU):
        return x
    if isinstance(x, int) and x in (0, 1):
        return PolyU.from_bits(x)
    raise TypeError(f"cannot interpret {x!r} as an element of F2[U]")


ZERO = PolyU.from_bits(0)
ONE = PolyU.from_bits(1)
U = PolyU.from_bits(2)


def poly_divmod(a: PolyU, b: PolyU) -> tuple[PolyU, PolyU]:
    """Euclidean division in F_2[U]: returns (q, r) with a = q*b + r, deg r < deg b."""
    if not b:
        raise ZeroDivisorError()
    db = b.bits.bit_length()
    r = a.bits
    q = 0
    while r.bit_length() >= db:
        shift = r.bit_length() - db
        q ^= 1 << shift
        r ^= b.bits << shift
    return PolyU.from_bits(q), PolyU.from_bits(r)


def poly_gcd(a: PolyU, b: PolyU) -> PolyU:
    x, y = a.bits, b.bits
    while y:
        x, y = y, poly_divmod(PolyU.from_bits(x), PolyU.from_bits(y))[1].bits
    return PolyU.from_bits(x)


@dataclass(frozen=True)
class MatU:
    """Sparse matrix over F_2[U]; absent entries are zero."""

    rows: int
    cols: int
    entries: Mapping[tuple[int, int], PolyU] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (r, c), p in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            p = _as_poly(p)
            if p:
                clean[(r, c)] = p
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: list[list[PolyU | int]]) -> MatU:
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        entries = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for c, p in enumerate(row):
                entries[(r, c)] = _as_poly(p)
        return cls(nrows, ncols, entries)

    @classmethod
    def identity(cls, n: int) -> MatU:
        return cls(n, n, {(i, i): ONE for i in range(n)})

    def __getitem__(self, key: tuple[int, int]) -> PolyU:
        return self.entries.get(key, ZERO)

    def to_dense(self) -> list[list[PolyU]]:
        return [[self[(r, c)] for c in range(self.cols)] for r in range(self.rows)]

    def __matmul__(self, other: MatU) -> MatU:
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        by_row: dict[int, list[tuple[int, PolyU]]] = {}
        for (k, c), p in other.entries.items():
            by_row.setdefault(k, []).append((c, p))
        acc: dict[tuple[int, int], int] = {}
        for (r, k), p in self.entries.items():
            for c, q in by_row.get(k, ()):
                acc[(r, c)] = acc.get((r, c), 0) ^ _clmul(p.bits, q.bits)
        return MatU(self.rows, other.cols, {k: PolyU.from_bits(v) for k, v in acc.items()})

    def is_diagonal(self) -> bool:
        return all(r == c for r, c in self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatU):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self.entries.items())))


def smith_normal_form(m: MatU) -> tuple[list[PolyU], MatU, MatU]:
    """
    Smith normal form over F_2[U].

    Returns ``(diagonal, left, right)`` with ``left @ m @ right`` diagonal,
    entries ``diagonal[0] | diagonal[1] | ...`` (trailing zeros included, length
    ``min(rows, cols)``), and ``left``, ``right`` invertible over F_2[U].
    Pivots are the lowest-degree nonzero entry, ties broken by (row, col).
    """
    nr, nc = m.rows, m.cols
    a = [[m[(r, c)].bits for c in range(nc)] for r in range(nr)]
    left = [[int(r == c) for c in range(nr)] for r in range(nr)]
    right = [[int(r == c) for c in range(nc)] for r in range(nc)]

    def add_row(dst: int, src: int, q: int) -> None:
        if not q:
            return
        ra, rs = a[dst], a[src]
        for j in range(nc):
            if rs[j]:
                ra[j] ^= _clmul(q, rs[j])
        la, ls = left[dst], left[src]
        for j in range(nr):
            if ls[j]:
                la[j] ^= _clmul(q, ls[j])

    def add_col(dst: int, src: int, q: int) -> None:
        if not q:
            return
        for i in range(nr):
            if a[i][src]:
                a[i][dst] ^= _clmul(q, a[i][src])
        for i in range(nc):
            if right[i][src]:
                right[i][dst] ^= _clmul(q, right[i][src])

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            a[i], a[j] = a[j], a[i]
            left[i], left[j] = left[j], left[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in right:
                row[i], row[j] = row[j], row[i]

    def divide(x: int, y: int) -> tuple[int, int]:
        q, r = poly_divmod(PolyU.from_bits(x), PolyU.from_bits(y))
        return q.bits, r.bits

    for t in range(min(nr, nc)):
        while True:
            pivot = None
            for i in range(t, nr):
                for j in range(t, nc):
                    v = a[i][j]
                    if v and (pivot is None or v.bit_length() < pivot[0]):
                        pivot = (v.bit_length(), i, j)
            if pivot is None:
                break
            _, pi, pj = pivot
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q, r = divide(a[i][t], p)
                    add_row(i, t, q)
                    dirty |= bool(r)
            for j in range(t + 1, nc):
                if a[t][j]:
                    q, r = divide(a[t][j], p)
                    add_col(j, t, q)
                    dirty |= bool(r)
            if dirty:
                continue
            # divisibility of the remaining block by the pivot
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc)
                 if a[i][j] and divide(a[i][j], p)[1]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)

    diagonal = [PolyU.from_bits(a[i][i]) for i in range(min(nr, nc))]
    to_mat = lambda rows: MatU.from_dense([[PolyU.from_bits(v) for v in row] for row in rows])  # noqa: E731
    return diagonal, to_mat(left), to_mat(right)


# --- F_2 vector spaces as int bitmasks -------------------------------------


class F2Basis:
    """
    Incremental row-echelon basis of a subspace of F_2^n (vectors are ints).

    Each added vector carries a tag bitmask (default: its insertion index);
    ``reduce_tracked`` reports the XOR of tags of the basis vectors used.
    """

    def __init__(self, vectors: Iterable[int] = ()) -> None:
        self._pivots: dict[int, int] = {}
        self._combo: dict[int, int] = {}
        self._count = 0
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self._pivots)

    def reduce(self, v: int) -> int:
        while v:
            row = self._pivots.get(v.bit_length() - 1)
            if row is None:
                return v
            v ^= row
        return 0

    def reduce_tracked(self, v: int) -> tuple[int, int]:
        used = 0
        while v:
            top = v.bit_length() - 1
            row = self._pivots.get(top)
            if row is None:
                break
            v ^= row
            used ^= self._combo[top]
        return v, used

    def add(self, v: int, tag: int | None = None) -> bool:
        """Add v; returns True when it enlarged the span."""
        if tag is None:
            tag = 1 << self._count
        self._count += 1
        r, used = self.reduce_tracked(v)
        if not r:
            return False
        top = r.bit_length() - 1
        self._pivots[top] = r
        self._combo[top] = used ^ tag
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0


def f2_kernel(columns: list[int]) -> list[int]:
    """
    Kernel of the F_2 linear map whose j-th column is ``columns[j]``,
    as a list of bitmasks over column indices.
    """
    basis = F2Basis()
    kernel = []
    for j, col in enumerate(columns):
        r, used = basis.reduce_tracked(col)
        if r:
            basis.add(col, tag=1 << j)
        else:
            kernel.append(used ^ (1 << j))
    return kernel


def f2_rank(vectors: Iterable[int]) -> int:
    return len(F2Basis(vectors))
