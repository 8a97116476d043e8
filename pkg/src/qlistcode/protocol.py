"""Keyed subcodes: secret stabilizer generators drawn through biased sets.

``augment`` progressively adds K generators to a base list code.  At step j
(0-based) the current code has k-j logical qubits; a length-2(k-j) element is
drawn from a biased set using secret key bits, read as symplectic coordinates
over the current logical basis, and lifted to a physical Pauli T_{j+1}.  The
logical basis is then shrunk in place.  An all-zero draw is replaced by the
set's first nonzero element at no extra key cost (a zero draw always collides,
so any fixed substitute only helps the collision bound).

``decode`` combines the public list syndrome with the K secret bits in a
single pass: candidates are the list-group elements over the syndrome's class
basis, filtered by their secret bits.  Matches are compared modulo the
augmented stabilizer, so candidates that act identically on the payload qubits
never count as an ambiguity.

``distinguish_experiment`` isolates the core collision question with no
physical code: plant a random independent list of L logical Paulis, draw K
biased probes with the same progressive shrinking, and measure how often some
pair of list elements receives identical probe-commutation bits.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional, Sequence

from .biased import BiasedSet, build_for_bias, draw
from .bounds import failure_bound
from .gf2 import BitVec, RowSpan
from .listcode import ListTable
from .pauli import PauliOp, from_symplectic_row, mul, sym_omega
from .stabilizer import (StabilizerCode, Syndrome, logical_class, syndrome)


def wilson_interval(successes: int, trials: int, z: float = 3.0) -> tuple[float, float]:
    if trials == 0:
        return (0.0, 1.0)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


class _SymplecticFrame:
    """Mutable logical-pair bookkeeping for progressive stabilizer addition.

    Pairs are packed (x|z) rows.  Adding a stabilizer T removes one pair and
    corrects the rest by the discarded destabilizer, preserving all symplectic
    relations; cost is linear in the number of pairs.
    """

    def __init__(self, n: int, pairs: list[tuple[int, int]]):
        self.n = n
        self.pairs = pairs

    @classmethod
    def from_code(cls, code: StabilizerCode) -> "_SymplecticFrame":
        return cls(code.n, [(x.symplectic_row(), z.symplectic_row())
                            for x, z in code.logicals])

    @classmethod
    def trivial(cls, k: int) -> "_SymplecticFrame":
        return cls(k, [(1 << j, 1 << (k + j)) for j in range(k)])

    def lift(self, v: int) -> int:
        """Packed row of the logical Pauli with coordinates v (low half over
        the Xbar rows, high half over the Zbar rows)."""
        kk = len(self.pairs)
        row = 0
        for j, (xr, zr) in enumerate(self.pairs):
            if (v >> j) & 1:
                row ^= xr
            if (v >> (kk + j)) & 1:
                row ^= zr
        return row

    def add_stabilizer(self, row: int) -> None:
        n = self.n
        flat = [m for pair in self.pairs for m in pair]
        d_idx = next(i for i, m in enumerate(flat) if sym_omega(n, m, row) == 1)
        d = flat[d_idx]
        drop = d_idx // 2
        self.pairs = [
            (a ^ (d if sym_omega(n, a, row) else 0),
             b ^ (d if sym_omega(n, b, row) else 0))
            for i, (a, b) in enumerate(self.pairs) if i != drop
        ]


@lru_cache(maxsize=64)
def planned_sets(k: int, K: int, eta_target: float) -> tuple[BiasedSet, ...]:
    """The biased sets augment() will use: lengths 2k, 2(k-1), ..."""
    return tuple(build_for_bias(2 * (k - j), eta_target) for j in range(K))


@dataclass(frozen=True)
class KeyedCode:
    base: StabilizerCode
    K: int
    extra: tuple[PauliOp, ...]
    key: tuple[int, ...]
    sets: tuple[BiasedSet, ...]
    eta_eff: float

    @cached_property
    def as_code(self) -> StabilizerCode:
        """The augmented [[n, k-K]] code (payload view)."""
        return StabilizerCode(self.base.n, self.base.k - self.K,
                              self.base.gens + self.extra)

    def key_hex(self) -> str:
        if not self.key:
            return ""
        value = int("".join(str(b) for b in self.key), 2)
        return format(value, f"0{-(-len(self.key) // 4)}x")


def augment(base: StabilizerCode, K: int, key: Sequence[int], eta_target: float,
            sets: Optional[Sequence[BiasedSet]] = None) -> KeyedCode:
    if K < 0:
        raise ValueError("K must be nonnegative")
    if K >= base.k and K > 0:
        raise ValueError("K >= k: no payload qubit would remain")
    if sets is None:
        sets = planned_sets(base.k, K, eta_target)
    if len(sets) != K:
        raise ValueError("need one biased set per added generator")
    key = tuple(int(b) & 1 for b in key)
    frame = _SymplecticFrame.from_code(base)
    cursor = 0
    extra = []
    for j in range(K):
        aset = sets[j]
        if aset.m != 2 * (base.k - j):
            raise ValueError(f"set {j} has length {aset.m}, expected {2 * (base.k - j)}")
        nb = aset.key_bits_needed
        if cursor + nb > len(key):
            raise ValueError("key exhausted")
        v = draw(aset, key[cursor:cursor + nb])
        cursor += nb
        if v == 0:
            v = aset.first_nonzero()
        row = frame.lift(v)
        extra.append(from_symplectic_row(base.n, row))
        frame.add_stabilizer(row)
    eta_eff = max((s.effective_bias for s in sets), default=0.0)
    return KeyedCode(base, K, tuple(extra), key[:cursor], tuple(sets), eta_eff)


def full_syndrome(kc: KeyedCode, e: PauliOp) -> tuple[Syndrome, BitVec]:
    """Public syndrome from the base generators plus the K secret bits
    omega(e, T_j); the public part never depends on the key."""
    if e.n != kc.base.n:
        raise ValueError("dimension mismatch")
    public = syndrome(kc.base, e)
    bits = 0
    n = kc.base.n
    erow = e.symplectic_row()
    for j, t_op in enumerate(kc.extra):
        bits |= sym_omega(n, erow, t_op.symplectic_row()) << j
    return public, BitVec(kc.K, bits)


@dataclass(frozen=True)
class DecodeResult:
    status: str  # "unique" | "ambiguous" | "uncorrectable"
    correction: Optional[PauliOp]


def decode(kc: KeyedCode, table: ListTable, syn: tuple[Syndrome, BitVec]) -> DecodeResult:
    """Single-pass decoding: public lookup, then secret-bit filtering.

    Among candidates matching the secret bits, a unique payload action wins;
    several distinct payload actions is "ambiguous" (the key failed) and the
    canonically first match is still reported as the representative.
    """
    if table.code != kc.base:
        raise ValueError("table was not built from this keyed code's base")
    s, secret = syn
    if secret.n != kc.K:
        raise ValueError("secret syndrome width mismatch")
    entry = table.entries.get(s)
    if entry is None:
        return DecodeResult("uncorrectable", None)
    base = kc.base
    n = base.n
    t_rows = [t.symplectic_row() for t in kc.extra]

    def secret_bits(row: int) -> int:
        bits = 0
        for j, tr in enumerate(t_rows):
            bits |= sym_omega(n, row, tr) << j
        return bits

    rep_row = entry.rep.symplectic_row()
    basis_rows = [_lift_row(base, b) for b in entry.class_basis]
    rep_bits = secret_bits(rep_row)
    basis_bits = [secret_bits(r) for r in basis_rows]
    target = secret.bits ^ rep_bits
    r = len(entry.class_basis)
    matches = []
    for lam in range(1 << r):
        acc = 0
        ll = lam
        while ll:
            i = (ll & -ll).bit_length() - 1
            acc ^= basis_bits[i]
            ll &= ll - 1
        if acc == target:
            matches.append(lam)
    if not matches:
        return DecodeResult("uncorrectable", None)
    lam0 = matches[0]
    correction = mul(entry.rep,
                     from_symplectic_row(n, _combo_row(basis_rows, lam0)))
    aug = kc.as_code
    for lam in matches[1:]:
        d_op = from_symplectic_row(n, _combo_row(basis_rows, lam0 ^ lam))
        if not logical_class(aug, d_op).is_zero():
            return DecodeResult("ambiguous", correction)
    return DecodeResult("unique", correction)


def _lift_row(code: StabilizerCode, v: BitVec) -> int:
    row = 0
    k = code.k
    for j, (xbar, zbar) in enumerate(code.logicals):
        if v.get(j):
            row ^= xbar.symplectic_row()
        if v.get(k + j):
            row ^= zbar.symplectic_row()
    return row


def _combo_row(rows: Sequence[int], lam: int) -> int:
    out = 0
    ll = lam
    while ll:
        i = (ll & -ll).bit_length() - 1
        out ^= rows[i]
        ll &= ll - 1
    return out


@dataclass(frozen=True)
class TrialOutcome:
    success: bool
    syndrome_public: Syndrome
    syndrome_secret: BitVec
    decoded_class: BitVec
    truth_class: BitVec


def run_trial(kc: KeyedCode, table: ListTable, e: PauliOp) -> TrialOutcome:
    """Decode a planted error; success means the correction acts like the
    error on the payload qubits."""
    if e.weight() > table.t:
        raise ValueError("error weight exceeds the table's weight bound")
    syn = full_syndrome(kc, e)
    res = decode(kc, table, syn)
    base = kc.base
    entry = table.entries[syn[0]]
    truth_class = logical_class(base, mul(entry.rep.adjoint(), e))
    if res.correction is None:
        return TrialOutcome(False, syn[0], syn[1], BitVec.zeros(2 * base.k),
                            truth_class)
    decoded_class = logical_class(base, mul(entry.rep.adjoint(), res.correction))
    residual = mul(res.correction.adjoint(), e)
    success = logical_class(kc.as_code, residual).is_zero()
    return TrialOutcome(success, syn[0], syn[1], decoded_class, truth_class)


@dataclass(frozen=True)
class StepStat:
    survivors: int
    held: int


@dataclass(frozen=True)
class DistinguishResult:
    k_logical: int
    L: int
    K: int
    eta_target: float
    eta_eff: float
    trials: int
    failures: int
    rate: float
    ci: tuple[float, float]
    bound: float
    steps: tuple[StepStat, ...]


def distinguish_experiment(k_logical: int, L: int, K: int, eta_target: float,
                           trials: int, seed: int) -> DistinguishResult:
    """Empirical probability that K biased probes fail to separate some pair
    in a planted 2^L-element logical list.

    Per trial: plant L independent nonzero symplectic vectors on k_logical
    qubits, draw the probes progressively (fresh random key bits), and count a
    failure when the L x K commutation matrix has rank below L.  Steps are
    instrumented for the fixed pair difference D = first planted generator:
    StepStat j counts trials still satisfying M_1..M_{j-1} and how many also
    satisfied M_j.
    """
    if not 0 <= L <= k_logical:
        raise ValueError("need 0 <= L <= k_logical")
    if not 0 <= K <= max(0, k_logical - 1):
        raise ValueError("need 0 <= K <= k_logical - 1")
    if trials < 1:
        raise ValueError("need at least one trial")
    sets = planned_sets(k_logical, K, eta_target)
    dim = 2 * k_logical
    failures = 0
    surv = [0] * K
    held = [0] * K
    for idx in range(trials):
        rng = random.Random(f"{seed}:{idx}")
        span = RowSpan(dim)
        gens: list[int] = []
        while len(gens) < L:
            v = rng.getrandbits(dim)
            if span.add(v):
                gens.append(v)
        frame = _SymplecticFrame.trivial(k_logical)
        probes: list[int] = []
        for j in range(K):
            aset = sets[j]
            nb = aset.key_bits_needed
            bits = [(rng.getrandbits(1)) for _ in range(nb)]
            v = draw(aset, bits)
            if v == 0:
                v = aset.first_nonzero()
            row = frame.lift(v)
            probes.append(row)
            frame.add_stabilizer(row)
        if L:
            d0 = gens[0]
            alive = True
            for j, p_row in enumerate(probes):
                if not alive:
                    break
                surv[j] += 1
                if sym_omega(k_logical, d0, p_row) == 0:
                    held[j] += 1
                else:
                    alive = False
        bit_span = RowSpan(max(1, K))
        rank = 0
        for g in gens:
            bits = 0
            for j, p_row in enumerate(probes):
                bits |= sym_omega(k_logical, g, p_row) << j
            if bit_span.add(bits):
                rank += 1
        if rank < L:
            failures += 1
    eta_eff = max((s.effective_bias for s in sets), default=0.0)
    rate = failures / trials
    return DistinguishResult(
        k_logical, L, K, eta_target, eta_eff, trials, failures, rate,
        wilson_interval(failures, trials), failure_bound(L, eta_eff, K),
        tuple(StepStat(s, h) for s, h in zip(surv, held)))


def iter_key_space(sets: Sequence[BiasedSet], limit: int = 1 << 16):
    """All key-bit tuples for the given sets; refuses absurd sweeps."""
    lengths = [s.key_bits_needed for s in sets]
    total = sum(lengths)
    if 1 << total > limit:
        raise ValueError(f"key space 2^{total} exceeds sweep limit {limit}")
    for value in range(1 << total):
        bits = []
        shift = total
        for nb in lengths:
            shift -= nb
            chunk = (value >> shift) & ((1 << nb) - 1)
            bits.extend((chunk >> (nb - 1 - i)) & 1 for i in range(nb))
        yield tuple(bits)
