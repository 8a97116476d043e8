"""Phase-tracked n-qubit Pauli algebra.

Every operator is kept in the normal form i^t X^u Z^v, where t is an integer
mod 4 and u, v are length-n bit vectors (bit j acts on qubit j).  Y appears as
t=1, u=v=1 (Y = iXZ).  Two operators (anti)commute according to the symplectic
form

    omega(P1, P2) = u1.v2 + u2.v1   (mod 2),

which is 0 for commuting pairs and 1 for anticommuting pairs.

Text format: an optional leading phase token ("+", "i", "-", "-i") followed by
one letter per qubit from {I, X, Y, Z}; the leftmost letter is qubit 0.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf2 import BitMatrix, BitVec, rank

DEFAULT_ENUMERATION_CAP = 2**24

_PHASE_TOKENS = {0: "", 1: "i", 2: "-", 3: "-i"}
_TOKEN_PHASES = {"": 0, "+": 0, "i": 1, "-": 2, "-i": 3}
# letter -> (x bit, z bit, i-exponent contributed in normal form)
_LETTERS = {"I": (0, 0, 0), "X": (1, 0, 0), "Y": (1, 1, 1), "Z": (0, 1, 0)}


class EnumerationCapError(ValueError):
    """Raised when an error-set enumeration would exceed the configured cap."""

    def __init__(self, n: int, t: int, count: int, cap: int):
        self.count = count
        super().__init__(
            f"error set for n={n}, t={t} has {count} elements, above cap {cap}"
        )


@dataclass(frozen=True)
class PauliOp:
    n: int
    phase: int
    x: BitVec
    z: BitVec

    def __post_init__(self):
        if self.x.n != self.n or self.z.n != self.n:
            raise ValueError("x/z length must equal qubit count")
        if not 0 <= self.phase < 4:
            raise ValueError("phase exponent must be in 0..3")

    @classmethod
    def identity(cls, n: int) -> "PauliOp":
        return cls(n, 0, BitVec.zeros(n), BitVec.zeros(n))

    @classmethod
    def from_xz(cls, n: int, xbits: int, zbits: int, phase: int = 0) -> "PauliOp":
        return cls(n, phase & 3, BitVec(n, xbits), BitVec(n, zbits))

    @classmethod
    def from_string(cls, s: str) -> "PauliOp":
        s = s.strip()
        token = ""
        for cand in ("-i", "-", "+", "i"):
            if s.startswith(cand):
                token = cand
                s = s[len(cand):]
                break
        phase = _TOKEN_PHASES[token]
        xbits = zbits = 0
        for j, c in enumerate(s):
            if c not in _LETTERS:
                raise ValueError(f"bad Pauli letter {c!r}")
            xb, zb, ph = _LETTERS[c]
            xbits |= xb << j
            zbits |= zb << j
            phase += ph
        return cls(len(s), phase & 3, BitVec(len(s), xbits), BitVec(len(s), zbits))

    def to_string(self) -> str:
        letters = []
        n_y = 0
        for j in range(self.n):
            xb = self.x.get(j)
            zb = self.z.get(j)
            if xb and zb:
                letters.append("Y")
                n_y += 1
            elif xb:
                letters.append("X")
            elif zb:
                letters.append("Z")
            else:
                letters.append("I")
        # displayed phase is relative to the letters' own i-exponents
        return _PHASE_TOKENS[(self.phase - n_y) & 3] + "".join(letters)

    def __str__(self) -> str:
        return self.to_string()

    def weight(self) -> int:
        return (self.x.bits | self.z.bits).bit_count()

    def is_identity(self) -> bool:
        return self.x.bits == 0 and self.z.bits == 0 and self.phase == 0

    def adjoint(self) -> "PauliOp":
        # (i^t X^u Z^v)^dag = i^{-t} (-1)^{u.v} X^u Z^v
        t = (-self.phase + 2 * ((self.x.bits & self.z.bits).bit_count() & 1)) & 3
        return PauliOp(self.n, t, self.x, self.z)

    def symplectic_row(self) -> int:
        """(x|z) packed as a 2n-bit int, x in the low half."""
        return self.x.bits | (self.z.bits << self.n)


def from_symplectic_row(n: int, row: int, phase: int = 0) -> PauliOp:
    mask = (1 << n) - 1
    return PauliOp.from_xz(n, row & mask, row >> n, phase)


def sym_omega(n: int, r1: int, r2: int) -> int:
    """Symplectic form on packed (x|z) rows."""
    mask = (1 << n) - 1
    x1, z1 = r1 & mask, r1 >> n
    x2, z2 = r2 & mask, r2 >> n
    return ((x1 & z2).bit_count() + (x2 & z1).bit_count()) & 1


def omega(p: PauliOp, q: PauliOp) -> int:
    """0 if p and q commute, 1 if they anticommute."""
    if p.n != q.n:
        raise ValueError("dimension mismatch")
    return (p.x.dot(q.z) + q.x.dot(p.z)) & 1


def mul(p: PauliOp, q: PauliOp) -> PauliOp:
    """Normal-form product p.q.

    Moving Z^{v_p} past X^{u_q} contributes (-1)^{v_p.u_q}, i.e. adds
    2(v_p.u_q) to the i-exponent.
    """
    if p.n != q.n:
        raise ValueError("dimension mismatch")
    t = (p.phase + q.phase + 2 * p.z.dot(q.x)) & 3
    return PauliOp(p.n, t, p.x.xor(q.x), p.z.xor(q.z))


def weight(p: PauliOp) -> int:
    return p.weight()


def symplectic_rank(ps: Sequence[PauliOp]) -> int:
    """GF(2) rank of the stacked (x|z) rows; phases are ignored."""
    if not ps:
        return 0
    n = ps[0].n
    if any(p.n != n for p in ps):
        raise ValueError("mixed qubit counts")
    m = BitMatrix.from_row_ints([p.symplectic_row() for p in ps], 2 * n)
    return rank(m)


def n_errors(n: int, t: int) -> int:
    """Number of Paulis (mod phase) of weight <= t: sum_r 3^r C(n,r)."""
    if t < 0 or n < 0:
        raise ValueError("negative parameters")
    return sum(3**r * math.comb(n, r) for r in range(min(t, n) + 1))


@dataclass(frozen=True)
class ErrorSet:
    n: int
    t: int
    elements: tuple[PauliOp, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def enumerate_errors(n: int, t: int, cap: int = DEFAULT_ENUMERATION_CAP) -> ErrorSet:
    """All phase-0 Paulis of weight <= t in canonical order.

    Canonical order: weight ascending, then support lexicographic, then
    per-qubit letter order X < Y < Z.  The identity comes first.
    """
    if t > n:
        raise ValueError("t must not exceed n")
    count = n_errors(n, t)
    if count > cap:
        raise EnumerationCapError(n, t, count, cap)
    letters = ((1, 0), (1, 1), (0, 1))  # X < Y < Z as (x, z) bits
    out = [PauliOp.identity(n)]
    for r in range(1, t + 1):
        for support in itertools.combinations(range(n), r):
            for combo in itertools.product(letters, repeat=r):
                xbits = zbits = 0
                for q, (xb, zb) in zip(support, combo):
                    xbits |= xb << q
                    zbits |= zb << q
                out.append(PauliOp.from_xz(n, xbits, zbits))
    return ErrorSet(n, t, tuple(out))
