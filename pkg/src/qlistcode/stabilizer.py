"""Stabilizer codes: validation, syndromes, logical structure, random sampling.

A code is held as its ordered generator list; phases are irrelevant to every
operation here (syndromes and logical classes only consult the symplectic
form), so membership in the stabilizer is tested modulo phase and all codes
are taken in the +1 sector.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .gf2 import BitMatrix, BitVec, RowSpan, kernel_basis
from .pauli import PauliOp, from_symplectic_row, omega, sym_omega, symplectic_rank


@dataclass(frozen=True)
class Syndrome:
    bits: BitVec

    def is_zero(self) -> bool:
        return self.bits.is_zero()

    def to_string(self) -> str:
        return self.bits.to_string()

    def to_hex(self) -> str:
        # bit 0 (first generator) is the most significant hex bit
        width = max(1, -(-self.bits.n // 4))
        value = int(self.bits.to_string(), 2) if self.bits.n else 0
        return format(value, f"0{width}x")

    def __str__(self) -> str:
        return self.to_string()


@dataclass(frozen=True)
class StabilizerCode:
    n: int
    k: int
    gens: tuple[PauliOp, ...]

    @cached_property
    def logicals(self) -> tuple[tuple[PauliOp, PauliOp], ...]:
        """k pairs (Xbar_j, Zbar_j), deterministic given the generators."""
        return _logical_pairs(self)

    @cached_property
    def _gen_span(self) -> RowSpan:
        span = RowSpan(2 * self.n)
        for g in self.gens:
            span.add(g.symplectic_row())
        return span


def validate(gens: Sequence[PauliOp], n: Optional[int] = None,
             k: Optional[int] = None) -> StabilizerCode:
    """Check pairwise commutation and independence; nothing else is computed."""
    gens = tuple(gens)
    if n is None:
        if not gens:
            raise ValueError("cannot infer qubit count from an empty generator list")
        n = gens[0].n
    if any(g.n != n for g in gens):
        raise ValueError("generator qubit count mismatch")
    if k is None:
        k = n - len(gens)
    if len(gens) != n - k:
        raise ValueError(f"expected {n - k} generators, got {len(gens)}")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if omega(gens[i], gens[j]):
                raise ValueError(f"generators {i} and {j} do not commute")
    span = RowSpan(2 * n)
    for i, g in enumerate(gens):
        if not span.add(g.symplectic_row()):
            raise ValueError(f"dependent generator {i}")
    return StabilizerCode(n, k, gens)


def syndrome(c: StabilizerCode, e: PauliOp) -> Syndrome:
    """Bit i is omega(e, gens[i])."""
    if e.n != c.n:
        raise ValueError("dimension mismatch")
    bits = 0
    for i, g in enumerate(c.gens):
        bits |= omega(e, g) << i
    return Syndrome(BitVec(len(c.gens), bits))


def in_normalizer(c: StabilizerCode, p: PauliOp) -> bool:
    return syndrome(c, p).is_zero()


def in_stabilizer(c: StabilizerCode, p: PauliOp) -> bool:
    """Membership modulo phase: zero syndrome and (x|z) in the generator span."""
    return in_normalizer(c, p) and c._gen_span.contains(p.symplectic_row())


def _logical_pairs(c: StabilizerCode) -> tuple[tuple[PauliOp, PauliOp], ...]:
    """Symplectic Gram-Schmidt completion of the generator rows.

    Works inside the commutant of the generators: repeatedly take the first
    kernel vector outside the current span, pair it with the first vector it
    anticommutes with, then correct the rest of the pool to commute with the
    new pair.  Fixed ordering everywhere makes the output deterministic.
    """
    n, k = c.n, c.k
    # Constraint row for generator g: parity(row & w) == omega(g, w).
    constraints = [(g.z.bits) | (g.x.bits << n) for g in c.gens]
    kb = kernel_basis(BitMatrix.from_row_ints(constraints, 2 * n))
    pool = list(kb.row_bits)
    span = RowSpan(2 * n)
    for g in c.gens:
        span.add(g.symplectic_row())
    pairs = []
    while len(pairs) < k:
        a = next(v for v in pool if not span.contains(v))
        b = next(v for v in pool if sym_omega(n, a, v) == 1)
        pool = [
            v ^ (a if sym_omega(n, v, b) else 0) ^ (b if sym_omega(n, v, a) else 0)
            for v in pool
            if v not in (a, b)
        ]
        span.add(a)
        span.add(b)
        pairs.append((from_symplectic_row(n, a), from_symplectic_row(n, b)))
    return tuple(pairs)


def logical_basis(c: StabilizerCode) -> tuple[tuple[PauliOp, PauliOp], ...]:
    return c.logicals


def logical_class(c: StabilizerCode, p: PauliOp) -> BitVec:
    """2k-bit class of a normalizer element: omega with Zbar_1..Zbar_k, then
    with Xbar_1..Xbar_k.  Zero exactly for stabilizer elements."""
    if not in_normalizer(c, p):
        raise ValueError("operator is not in the normalizer")
    k = c.k
    bits = 0
    for j, (xbar, zbar) in enumerate(c.logicals):
        bits |= omega(p, zbar) << j
        bits |= omega(p, xbar) << (k + j)
    return BitVec(2 * k, bits)


def lift_logical(c: StabilizerCode, v: BitVec) -> PauliOp:
    """Phase-0 Pauli whose logical class is ``v`` (the coordinate inverse of
    logical_class)."""
    if v.n != 2 * c.k:
        raise ValueError("class vector must have 2k bits")
    row = 0
    for j, (xbar, zbar) in enumerate(c.logicals):
        if v.get(j):
            row ^= xbar.symplectic_row()
        if v.get(c.k + j):
            row ^= zbar.symplectic_row()
    return from_symplectic_row(c.n, row)


def generating_set_count(n: int, k: int) -> int:
    """Number of ordered generating sets of an [n,k] stabilizer:
    prod_{a=0}^{n-k-1} (2^{2n-a} - 2^a)."""
    total = 1
    for a in range(n - k):
        total *= (1 << (2 * n - a)) - (1 << a)
    return total


def random_code(n: int, k: int, rng: random.Random) -> StabilizerCode:
    """Uniform over ordered generating sets.

    Each generator is a uniform solution of the commutation constraints of the
    previous ones (sampled through a kernel basis), rejected if it lies in
    their span; this realizes the (2^{2n-a} - 2^a) sequential counting exactly.
    """
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    gens_rows: list[int] = []
    span = RowSpan(2 * n)
    constraints: list[int] = []
    for _ in range(n - k):
        kb = kernel_basis(BitMatrix.from_row_ints(constraints, 2 * n))
        dim = kb.rows
        while True:
            coeffs = rng.getrandbits(dim) if dim else 0
            row = 0
            for i in range(dim):
                if (coeffs >> i) & 1:
                    row ^= kb.row_bits[i]
            if not span.contains(row):
                break
        gens_rows.append(row)
        span.add(row)
        constraints.append(((row >> n) & ((1 << n) - 1)) | ((row & ((1 << n) - 1)) << n))
    gens = tuple(from_symplectic_row(n, r) for r in gens_rows)
    return StabilizerCode(n, k, gens)


def to_text(code: StabilizerCode, include_logicals: bool = False) -> str:
    """Line-oriented format: header "n k", generator strings, then optionally
    the 2k logical strings (Xbar_1, Zbar_1, ...)."""
    lines = [f"{code.n} {code.k}"]
    lines.extend(g.to_string() for g in code.gens)
    if include_logicals:
        for xbar, zbar in code.logicals:
            lines.append(xbar.to_string())
            lines.append(zbar.to_string())
    return "\n".join(lines) + "\n"


def from_text(text: str) -> StabilizerCode:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty code file")
    try:
        n, k = (int(tok) for tok in lines[0].split())
    except Exception as exc:
        raise ValueError(f"bad header line {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) not in (n - k, n - k + 2 * k):
        raise ValueError(
            f"expected {n - k} generators (optionally plus {2 * k} logicals), "
            f"got {len(body)} operator lines"
        )
    gens = [PauliOp.from_string(s) for s in body[: n - k]]
    code = validate(gens, n, k)
    if len(body) == n - k + 2 * k:
        ops = [PauliOp.from_string(s) for s in body[n - k:]]
        pairs = tuple((ops[2 * j], ops[2 * j + 1]) for j in range(k))
        _check_logical_relations(code, pairs)
        code.__dict__["logicals"] = pairs
    return code


def _check_logical_relations(code: StabilizerCode,
                             pairs: Sequence[tuple[PauliOp, PauliOp]]) -> None:
    flat = [op for pair in pairs for op in pair]
    for op in flat:
        if op.n != code.n:
            raise ValueError("logical operator qubit count mismatch")
        if not in_normalizer(code, op):
            raise ValueError("logical operator does not commute with the stabilizer")
    for i, (xi, zi) in enumerate(pairs):
        for j, (xj, zj) in enumerate(pairs):
            want = 1 if i == j else 0
            if omega(xi, zj) != want or omega(xi, xj) != 0 or omega(zi, zj) != 0:
                raise ValueError(f"logical pairs {i},{j} violate symplectic relations")
    if symplectic_rank(list(code.gens) + flat) != code.n - code.k + 2 * code.k:
        raise ValueError("logical operators not independent of the stabilizer")
