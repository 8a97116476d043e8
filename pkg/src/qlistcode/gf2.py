"""Bit-packed GF(2) linear algebra.

Vectors and matrix rows are stored as Python ints used as bitsets: bit i of
the int is coordinate i (column i).  All elimination uses a fixed pivot rule,
lowest column index first, so every derived object (solutions, kernel bases,
reduced row forms) is reproducible byte-for-byte across runs and platforms.

Nothing here mutates its inputs; elimination always works on copies.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class BitVec:
    """Length-tagged bit vector; bits beyond ``n`` are always zero."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("bits outside declared length")

    @classmethod
    def zeros(cls, n: int) -> "BitVec":
        return cls(n, 0)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVec":
        value = 0
        n = 0
        for b in bits:
            if b & 1:
                value |= 1 << n
            n += 1
        return cls(n, value)

    @classmethod
    def from_string(cls, s: str) -> "BitVec":
        if any(c not in "01" for c in s):
            raise ValueError(f"not a bit string: {s!r}")
        return cls.from_bits(int(c) for c in s)

    def get(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def xor(self, other: "BitVec") -> "BitVec":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVec(self.n, self.bits ^ other.bits)

    def dot(self, other: "BitVec") -> int:
        """Inner product over GF(2)."""
        if self.n != other.n:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def to_string(self) -> str:
        return "".join(str((self.bits >> i) & 1) for i in range(self.n))

    def __str__(self) -> str:
        return self.to_string()


@dataclass(frozen=True)
class BitMatrix:
    """Row-major bit matrix; ``row_bits[i]`` packs row i."""

    rows: int
    cols: int
    row_bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows != len(self.row_bits):
            raise ValueError("row count mismatch")
        for r in self.row_bits:
            if r < 0 or r >> self.cols:
                raise ValueError("row bits outside declared width")

    @classmethod
    def from_rows(cls, rows: Sequence[BitVec]) -> "BitMatrix":
        if not rows:
            raise ValueError("cannot infer width from empty row list; use empty()")
        cols = rows[0].n
        if any(r.n != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(r.bits for r in rows))

    @classmethod
    def from_row_ints(cls, row_bits: Sequence[int], cols: int) -> "BitMatrix":
        return cls(len(row_bits), cols, tuple(row_bits))

    @classmethod
    def empty(cls, cols: int) -> "BitMatrix":
        return cls(0, cols, ())

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def row(self, i: int) -> BitVec:
        return BitVec(self.cols, self.row_bits[i])

    def mul_vec(self, x: BitVec) -> BitVec:
        if x.n != self.cols:
            raise ValueError("dimension mismatch")
        out = 0
        for i, r in enumerate(self.row_bits):
            if (r & x.bits).bit_count() & 1:
                out |= 1 << i
        return BitVec(self.rows, out)


def _rref(row_bits: Sequence[int], cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot column per row)."""
    work = list(row_bits)
    pivots: list[int] = []
    rank = 0
    for col in range(cols):
        mask = 1 << col
        pivot_row = None
        for i in range(rank, len(work)):
            if work[i] & mask:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        for i in range(len(work)):
            if i != rank and work[i] & mask:
                work[i] ^= work[rank]
        pivots.append(col)
        rank += 1
    return work[:rank], pivots


def rank(m: BitMatrix) -> int:
    """GF(2) row rank."""
    reduced, _ = _rref(m.row_bits, m.cols)
    return len(reduced)


def row_reduce(m: BitMatrix) -> tuple[BitMatrix, tuple[int, ...]]:
    """RREF of ``m`` (zero rows dropped) plus the pivot columns."""
    reduced, pivots = _rref(m.row_bits, m.cols)
    return BitMatrix.from_row_ints(reduced, m.cols), tuple(pivots)


def solve(a: BitMatrix, b: BitVec) -> Optional[BitVec]:
    """One solution of a.x = b, or None if inconsistent.

    Deterministic: free variables are set to zero under lowest-column-first
    pivoting.
    """
    if a.rows != b.n:
        raise ValueError("dimension mismatch between matrix rows and rhs")
    # Augment with the rhs as an extra column.
    aug = [r | (((b.bits >> i) & 1) << a.cols) for i, r in enumerate(a.row_bits)]
    reduced, pivots = _rref(aug, a.cols + 1)
    x = 0
    for row, col in zip(reduced, pivots):
        if col == a.cols:
            return None  # row of the form 0 = 1
        if row >> a.cols:
            x |= 1 << col
    return BitVec(a.cols, x)


def kernel_basis(a: BitMatrix) -> BitMatrix:
    """Basis of {x : a.x = 0}; row count is cols - rank(a).

    Basis vectors are indexed by the free columns in ascending order.
    """
    reduced, pivots = _rref(a.row_bits, a.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(a.cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for row, col in zip(reduced, pivots):
            if (row >> free) & 1:
                v |= 1 << col
        basis.append(v)
    return BitMatrix.from_row_ints(basis, a.cols)


class RowSpan:
    """Incremental GF(2) row span with membership queries.

    Keeps rows reduced against each other with lowest-bit pivots, matching the
    module-wide pivot rule.
    """

    def __init__(self, cols: int):
        self.cols = cols
        self._rows: dict[int, int] = {}  # pivot column -> reduced row

    def _reduce(self, v: int) -> int:
        for pivot, row in self._rows.items():
            if (v >> pivot) & 1:
                v ^= row
        return v

    def contains(self, v: int) -> bool:
        return self._reduce(v) == 0

    def add(self, v: int) -> bool:
        """Insert ``v``; returns True iff it enlarged the span."""
        v = self._reduce(v)
        if v == 0:
            return False
        pivot = (v & -v).bit_length() - 1
        for p in list(self._rows):
            if (self._rows[p] >> pivot) & 1:
                self._rows[p] ^= v
        self._rows[pivot] = v
        return True

    @property
    def rank(self) -> int:
        return len(self._rows)

    def basis(self) -> tuple[int, ...]:
        """Reduced basis rows, ordered by pivot column ascending."""
        return tuple(self._rows[p] for p in sorted(self._rows))
