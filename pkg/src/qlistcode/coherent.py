"""Dense statevector backend for superposed (Kraus) adversaries.

Amplitude index bit j is qubit j.  Kraus operators are stored as complex
combinations of Paulis from the bounded-weight error set and applied as index
permutations with phases; no 2^n x 2^n matrix is ever materialized.

The code's +1 sector is pinned by the Hermitian representative of each
generator: i^{u.v mod 2} X^u Z^v (each Y slot contributes one factor of i),
which squares to +I.  Incomplete Kraus sets are rejected at construction,
never repaired.
"""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .gf2 import BitVec
from .pauli import PauliOp, mul
from .protocol import KeyedCode, decode
from .listcode import ListTable
from .stabilizer import StabilizerCode, Syndrome

MAX_QUBITS = 12
HARD_MAX_QUBITS = 14
_BASIS_MEMORY_CAP = 1 << 22  # complex amplitudes across the encoded basis

COMPLETENESS_TOL = 1e-9


def _check_size(n: int, max_qubits: int = MAX_QUBITS) -> None:
    if max_qubits > HARD_MAX_QUBITS:
        raise ValueError(f"max_qubits cannot exceed {HARD_MAX_QUBITS}")
    if max_qubits > MAX_QUBITS:
        warnings.warn(f"statevector size raised to {max_qubits} qubits; "
                      "exhaustive sweeps will be slow", stacklevel=3)
    if n > max_qubits:
        raise ValueError(f"{n} qubits exceeds the statevector cap {max_qubits}")


@dataclass(frozen=True)
class StateVec:
    n: int
    amps: np.ndarray

    def __post_init__(self):
        if self.amps.shape != (1 << self.n,):
            raise ValueError("amplitude count must be 2^n")

    @classmethod
    def basis_state(cls, n: int, index: int) -> "StateVec":
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "StateVec":
        nrm = self.norm()
        if nrm < 1e-12:
            raise ValueError("cannot normalize a (numerically) zero state")
        return StateVec(self.n, self.amps / nrm)


def random_state(n: int, rng: random.Random) -> StateVec:
    amps = np.array([complex(rng.gauss(0, 1), rng.gauss(0, 1))
                     for _ in range(1 << n)])
    return StateVec(n, amps).normalized()


def _parity_of_and(indices: np.ndarray, mask: int) -> np.ndarray:
    par = np.zeros(len(indices), dtype=np.int64)
    while mask:
        b = (mask & -mask).bit_length() - 1
        par ^= (indices >> b) & 1
        mask &= mask - 1
    return par


def apply_pauli(p: PauliOp, state: StateVec) -> StateVec:
    """i^t X^u Z^v acting by index permutation and phases."""
    if p.n != state.n:
        raise ValueError("dimension mismatch")
    idx = np.arange(1 << p.n)
    signs = 1 - 2 * _parity_of_and(idx, p.z.bits)
    out = np.empty_like(state.amps)
    out[idx ^ p.x.bits] = (1j ** p.phase) * signs * state.amps
    return StateVec(p.n, out)


def hermitian_rep(p: PauliOp) -> PauliOp:
    """The +1-sector representative i^{u.v mod 2} X^u Z^v of p's phase class."""
    return PauliOp(p.n, (p.x.bits & p.z.bits).bit_count() & 1, p.x, p.z)


@lru_cache(maxsize=8)
def _encoded_basis(code: StabilizerCode, max_qubits: int = MAX_QUBITS) -> np.ndarray:
    """Rows are the encoded computational basis states |b-bar>.

    The logical-zero state is the first computational basis state with a
    nonzero projection under all (I+S_i)/2 and (I+Zbar_j)/2; logical basis
    states follow by applying the Hermitian Xbar operators.
    """
    n, k = code.n, code.k
    _check_size(n, max_qubits)
    if (1 << (n + k)) > _BASIS_MEMORY_CAP:
        raise ValueError("encoded basis too large to materialize")
    stabilizing = [hermitian_rep(g) for g in code.gens]
    stabilizing += [hermitian_rep(zbar) for _, zbar in code.logicals]
    zero = None
    for b_star in range(1 << n):
        psi = StateVec.basis_state(n, b_star)
        for g in stabilizing:
            psi = StateVec(n, (psi.amps + apply_pauli(g, psi).amps) / 2)
        if psi.norm() > 1e-9:
            zero = psi.normalized()
            break
    if zero is None:
        raise RuntimeError("projector annihilated every basis state")
    xbars = [hermitian_rep(xbar) for xbar, _ in code.logicals]
    rows = []
    for b in range(1 << k):
        v = zero
        for j in range(k):
            if (b >> j) & 1:
                v = apply_pauli(xbars[j], v)
        rows.append(v.amps)
    return np.array(rows)


def encode(code: StabilizerCode, logical: StateVec,
           max_qubits: int = MAX_QUBITS) -> StateVec:
    """Isometry onto the joint +1 eigenspace; output is stabilized by every
    generator."""
    if logical.n != code.k:
        raise ValueError("logical state must have k qubits")
    basis = _encoded_basis(code, max_qubits)
    return StateVec(code.n, basis.T @ logical.amps)


def decode_logical(code: StabilizerCode, state: StateVec) -> StateVec:
    """Inverse of the encode isometry: logical amplitudes <b-bar|psi>.

    Not renormalized; support outside the codespace shows up as lost norm."""
    basis = _encoded_basis(code)
    return StateVec(code.k, basis.conj() @ state.amps)


@dataclass(frozen=True)
class KrausOp:
    terms: tuple[tuple[complex, PauliOp], ...]

    def apply(self, state: StateVec) -> StateVec:
        out = np.zeros_like(state.amps)
        for coeff, p in self.terms:
            out += coeff * apply_pauli(p, state).amps
        return StateVec(state.n, out)

    def max_weight(self) -> int:
        return max((p.weight() for _, p in self.terms), default=0)


@dataclass(frozen=True)
class KrausSet:
    operators: tuple[KrausOp, ...]

    def __post_init__(self):
        if not self.operators:
            raise ValueError("empty Kraus set")
        _check_completeness(self.operators)


def _check_completeness(operators: Sequence[KrausOp],
                        tol: float = COMPLETENESS_TOL) -> None:
    """Algebraic check of sum A^dag A = I in the Pauli coefficient basis."""
    acc: dict[tuple[int, int], complex] = {}
    for op in operators:
        for c1, p1 in op.terms:
            left = p1.adjoint()
            for c2, p2 in op.terms:
                prod = mul(left, p2)
                key = (prod.x.bits, prod.z.bits)
                acc[key] = acc.get(key, 0j) + np.conj(c1) * c2 * (1j ** prod.phase)
    ident = acc.pop((0, 0), 0j)
    if abs(ident - 1.0) > tol or any(abs(v) > tol for v in acc.values()):
        raise ValueError("Kraus set is not trace preserving (sum A^dag A != I)")


def kraus_from_terms(groups: Sequence[Sequence[tuple[complex, PauliOp]]]) -> KrausSet:
    return KrausSet(tuple(KrausOp(tuple(g)) for g in groups))


def apply_kraus(state: StateVec, ks: KrausSet,
                rng: random.Random) -> tuple[StateVec, int]:
    """Sample a branch by its Born weight ||A_i psi||^2."""
    branches = [op.apply(state) for op in ks.operators]
    weights = [b.norm() ** 2 for b in branches]
    total = sum(weights)
    if abs(total - 1.0) > 1e-6:
        raise ValueError("branch weights do not sum to 1; state not normalized?")
    u = rng.random() * total
    cum = 0.0
    choice = None
    for i, w in enumerate(weights):
        cum += w
        if u < cum and w > 1e-12:
            choice = i
            break
    if choice is None:
        choice = max(range(len(weights)), key=lambda i: weights[i])
    return branches[choice].normalized(), choice


def measure_syndrome(state: StateVec, kc: KeyedCode,
                     rng: random.Random) -> tuple[tuple[Syndrome, BitVec], StateVec]:
    """Sequential projective measurement of every generator (public then
    secret); bit 0 means the +1 outcome, matching the symplectic syndrome."""
    gens = list(kc.base.gens) + list(kc.extra)
    bits = []
    psi = state
    for g in gens:
        h = hermitian_rep(g)
        plus = StateVec(psi.n, (psi.amps + apply_pauli(h, psi).amps) / 2)
        p_plus = plus.norm() ** 2
        if p_plus > 1.0 - 1e-12:
            bit = 0
        elif p_plus < 1e-12:
            bit = 1
        else:
            bit = 0 if rng.random() < p_plus else 1
        if bit == 0:
            branch = plus
        else:
            branch = StateVec(psi.n, (psi.amps - apply_pauli(h, psi).amps) / 2)
        if branch.norm() < 1e-9:
            raise RuntimeError("projected onto a zero-probability branch")
        psi = branch.normalized()
        bits.append(bit)
    n_pub = len(kc.base.gens)
    public = Syndrome(BitVec.from_bits(bits[:n_pub]))
    secret = BitVec.from_bits(bits[n_pub:])
    return (public, secret), psi


def fidelity(a: StateVec, b: StateVec) -> float:
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    return float(abs(np.vdot(a.amps, b.amps)) ** 2)


def end_to_end(kc: KeyedCode, table: ListTable, ks: KrausSet,
               logical: StateVec, rng: random.Random) -> float:
    """One trajectory: encode, attack, measure, correct, un-encode.

    An ambiguous decode applies the canonical list representative, so key
    failures surface as reduced fidelity rather than exceptions."""
    aug = kc.as_code
    psi = encode(aug, logical)
    psi, _branch = apply_kraus(psi, ks, rng)
    syn, psi = measure_syndrome(psi, kc, rng)
    res = decode(kc, table, syn)
    if res.correction is not None:
        psi = apply_pauli(res.correction.adjoint(), psi)
    out = decode_logical(aug, psi)
    return fidelity(logical, StateVec(aug.k, out.amps))
