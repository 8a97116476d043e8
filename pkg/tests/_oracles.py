"""Independent reference implementations used to cross-check the package.

Everything here deliberately avoids the package's own elimination, class, and
table machinery: dense complex matrices for Pauli algebra, exhaustive span
enumeration for ranks, subset search for list decodability, and direct parity
sweeps for bias.
"""
from __future__ import annotations

import itertools

import numpy as np

from qlistcode.pauli import PauliOp, enumerate_errors

I2 = np.eye(2)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)


def pauli_matrix(p: PauliOp) -> np.ndarray:
    """Dense matrix of i^t X^u Z^v; amplitude index bit j is qubit j."""
    m = np.array([[1]], dtype=complex)
    for j in reversed(range(p.n)):
        factor = np.eye(2, dtype=complex)
        if p.x.get(j):
            factor = factor @ X2
        if p.z.get(j):
            factor = factor @ Z2
        m = np.kron(m, factor)
    return (1j ** p.phase) * m


def span_size(rows: list[int]) -> int:
    """Size of the GF(2) span by exhaustive subset XOR."""
    seen = {0}
    for r in rows:
        seen |= {s ^ r for s in seen}
    return len(seen)


def brute_rank(rows: list[int]) -> int:
    return span_size(rows).bit_length() - 1


def naive_fails_at(code, t: int, L: int) -> bool:
    """True iff some syndrome class holds L+1 independent same-syndrome
    errors: members beyond the class anchor whose differences from it are
    independent modulo the stabilizer rows.  A group fails to fit any
    2^L-element list group exactly when such a set exists."""
    gen_rows = [g.symplectic_row() for g in code.gens]
    base_rank = brute_gauss_rank(gen_rows)
    groups: dict[str, list[int]] = {}
    for e in enumerate_errors(code.n, t):
        key = _syndrome_key(code, e)
        groups.setdefault(key, []).append(e.symplectic_row())
    for members in groups.values():
        if len(members) < L + 2:
            continue
        anchor, rest = members[0], members[1:]
        for subset in itertools.combinations(rest, L + 1):
            diffs = [anchor ^ m for m in subset]
            if brute_gauss_rank(gen_rows + diffs) == base_rank + L + 1:
                return True
    return False


def naive_l_min(code, t: int, l_cap: int = 8) -> int:
    for L in range(l_cap + 1):
        if not naive_fails_at(code, t, L):
            return L
    raise AssertionError("l_cap too small")


def brute_gauss_rank(rows: list[int]) -> int:
    """Plain elimination on ints, written independently of qlistcode.gf2."""
    work = [r for r in rows if r]
    rank = 0
    while work:
        pivot_row = work.pop()
        if pivot_row == 0:
            continue
        low = pivot_row & -pivot_row
        work = [w ^ pivot_row if w & low else w for w in work]
        rank += 1
    return rank


def _syndrome_key(code, e: PauliOp) -> str:
    bits = []
    for g in code.gens:
        anti = (e.x.bits & g.z.bits).bit_count() + (g.x.bits & e.z.bits).bit_count()
        bits.append(str(anti & 1))
    return "".join(bits)


def direct_bias_sweep(m: int, elements) -> float:
    """max over nonzero e of |Pr(e.a=0) - Pr(e.a=1)| by direct counting."""
    n_el = len(elements)
    worst = 0.0
    for e in range(1, 1 << m):
        odd = sum((e & el).bit_count() & 1 for el in elements)
        worst = max(worst, abs(n_el - 2 * odd) / n_el)
    return worst


def is_irreducible(poly: int, degree: int) -> bool:
    """Trial division by every polynomial of degree 1..degree//2."""
    if poly.bit_length() - 1 != degree:
        return False
    for d in range(1, degree // 2 + 1):
        for low in range(1 << d):
            divisor = (1 << d) | low
            if _poly_mod(poly, divisor) == 0:
                return False
    return True


def _poly_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a
