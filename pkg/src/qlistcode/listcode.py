"""List-decodability tables and the random-coding union bound.

The table groups all weight-<=t errors by syndrome.  Within a group the class
rank is computed in the 2k-dimensional logical space: errors differing by a
stabilizer element are the same list element, so a group's list length is the
GF(2) rank of the logical classes of rep^dag.E over its members.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .gf2 import BitVec, RowSpan
from .pauli import (DEFAULT_ENUMERATION_CAP, PauliOp, enumerate_errors, mul,
                    n_errors)
from .stabilizer import StabilizerCode, Syndrome, logical_class, syndrome


@dataclass(frozen=True)
class ListEntry:
    rep: PauliOp
    class_basis: tuple[BitVec, ...]

    @property
    def rank(self) -> int:
        return len(self.class_basis)


@dataclass(frozen=True)
class ListTable:
    code: StabilizerCode
    t: int
    entries: dict[Syndrome, ListEntry]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ListReport:
    L_min: int
    worst_syndrome: Syndrome
    entry_count: int
    N_E: int


def build_table(c: StabilizerCode, t: int,
                cap: int = DEFAULT_ENUMERATION_CAP) -> ListTable:
    """Group the error set by syndrome; reps are the canonically first
    members, class bases the reduced span of member classes."""
    errors = enumerate_errors(c.n, t, cap=cap)
    reps: dict[Syndrome, PauliOp] = {}
    spans: dict[Syndrome, RowSpan] = {}
    for e in errors:
        s = syndrome(c, e)
        if s not in reps:
            reps[s] = e
            spans[s] = RowSpan(2 * c.k)
        else:
            cls = logical_class(c, mul(reps[s].adjoint(), e))
            spans[s].add(cls.bits)
    entries = {}
    for s, rep in reps.items():
        basis = tuple(BitVec(2 * c.k, row) for row in spans[s].basis())
        entries[s] = ListEntry(rep, basis)
    return ListTable(c, t, entries)


def min_list_length(c: StabilizerCode, t: int,
                    cap: int = DEFAULT_ENUMERATION_CAP) -> ListReport:
    """The code is an [n,k,t,L]-list code for every L >= L_min."""
    table = build_table(c, t, cap=cap)
    worst = None
    worst_rank = -1
    for s in sorted(table.entries, key=lambda s: tuple(s.bits.to_string())):
        r = table.entries[s].rank
        if r > worst_rank:
            worst, worst_rank = s, r
    return ListReport(worst_rank, worst, len(table.entries), n_errors(c.n, t))


def union_bound(n: int, k: int, t: int, L: int) -> float:
    """N_E^{L+1} . 2^{-L(n-k)}; exact integer arithmetic when it fits,
    log space otherwise."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    log2b = union_bound_log2(n, k, t, L)
    if log2b > 1020:
        return math.inf
    ne = n_errors(n, t)
    if (L + 1) * math.log2(ne) < 500:
        return ne ** (L + 1) / (1 << (L * (n - k)))
    return 2.0**log2b


def union_bound_log2(n: int, k: int, t: int, L: int) -> float:
    ne = n_errors(n, t)
    return (L + 1) * math.log2(ne) - L * (n - k)


def union_bound_binomial(n: int, k: int, t: int, L: int) -> float:
    """Tighter form C(N_E, L+1) . 2^{-L(n-k)}."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    ne = n_errors(n, t)
    if L + 1 > ne:
        return 0.0
    log2c = (math.lgamma(ne + 1) - math.lgamma(L + 2) - math.lgamma(ne - L)) / math.log(2)
    log2b = log2c - L * (n - k)
    if log2b > 1020:
        return math.inf
    return 2.0**log2b


def decode_list(table: ListTable, s: Syndrome) -> Optional[ListEntry]:
    """Entry lookup; None marks a syndrome no weight-<=t error produces
    (uncorrectable, an out-of-model input rather than an error)."""
    if s.bits.n != table.code.n - table.code.k:
        raise ValueError("syndrome width mismatch")
    return table.entries.get(s)


def table_to_text(table: ListTable) -> str:
    """Audit export: one line per syndrome - hex syndrome, representative,
    then the class-basis rows as bit strings."""
    c = table.code
    lines = [f"list-table v1 n={c.n} k={c.k} t={table.t}"]
    for s in sorted(table.entries, key=lambda s: tuple(s.bits.to_string())):
        entry = table.entries[s]
        parts = [s.to_hex(), entry.rep.to_string()]
        parts.extend(row.to_string() for row in entry.class_basis)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
