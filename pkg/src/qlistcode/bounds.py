"""Closed-form rates, thresholds, and key budgets.

All logarithms are base 2.  Rate functions return both the raw formula value
and a presentation value clamped at zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

LOG2_3 = math.log2(3)


@dataclass(frozen=True)
class RatePoint:
    p: float
    value: float   # clamped at 0
    raw: float


@dataclass(frozen=True)
class KeyBudget:
    eta: float
    K: int
    key_bits: int
    envelope: float          # K * log2(n^2 / eta)
    L: Optional[int] = None
    epsilon: Optional[float] = None


def binary_entropy(p: float) -> float:
    """H(p) with H(0) = H(1) = 0 by continuity."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("entropy argument outside [0,1]")
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def list_rate(p: float, L: float) -> RatePoint:
    """Achievable list-code rate 1 - (1 + 1/L)(H(p) + p log 3); L = inf gives
    the limiting rate 1 - H(p) - p log 3."""
    if not 0.0 <= p <= 0.5:
        raise ValueError("p must lie in [0, 1/2]")
    if L != math.inf and (L < 1 or int(L) != L):
        raise ValueError("L must be a positive integer or math.inf")
    factor = 1.0 if L == math.inf else 1.0 + 1.0 / L
    raw = 1.0 - factor * (binary_entropy(p) + p * LOG2_3)
    return RatePoint(p, max(0.0, raw), raw)


def gv_rate(p: float) -> RatePoint:
    """Quantum Gilbert-Varshamov rate 1 - H(2p) - 2p log 3 for distance
    2*ceil(np)+1 codes."""
    if not 0.0 <= p <= 0.25:
        raise ValueError("p must lie in [0, 1/4]")
    raw = 1.0 - binary_entropy(2 * p) - 2 * p * LOG2_3
    return RatePoint(p, max(0.0, raw), raw)


def rains_threshold() -> float:
    """(3 - sqrt(3))/8: no exact transmission at or above this error rate."""
    return (3.0 - math.sqrt(3.0)) / 8.0


def rains_distance(n: float) -> float:
    """n(3 - sqrt(3))/4, the maximum distance of any length-n quantum code."""
    return n * (3.0 - math.sqrt(3.0)) / 4.0


def k_of(L: int, epsilon: float) -> int:
    """ceil of (2L + log(1/eps)) / log(4/3): generators needed to push the
    pair-collision failure below eps at eta = 1/2."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    if not 0.0 < epsilon < 0.5:
        raise ValueError("epsilon must lie in (0, 1/2)")
    return math.ceil((2 * L + math.log2(1.0 / epsilon)) / math.log2(4.0 / 3.0))


def failure_bound(L: int, eta: float, K: int) -> float:
    """2^{2L} ((1 + eta)/2)^K, uncapped; values >= 1 are vacuous."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must lie in [0, 1]")
    if K < 0 or L < 0:
        raise ValueError("K and L must be nonnegative")
    return (4.0**L) * ((1.0 + eta) / 2.0) ** K


def key_bits(n: int, eta: float, K: int, set_sizes: Sequence[int],
             L: Optional[int] = None,
             epsilon: Optional[float] = None) -> KeyBudget:
    """Exact key cost sum_j ceil(log2 |A_j|), next to the asymptotic envelope
    K log2(n^2 / eta) for comparison."""
    if len(set_sizes) != K:
        raise ValueError("need one set size per added generator")
    if any(s < 1 for s in set_sizes):
        raise ValueError("set sizes must be positive")
    bits = sum(max(1, size - 1).bit_length() if size > 1 else 0
               for size in set_sizes)
    envelope = K * math.log2(n * n / eta) if (K and eta > 0) else 0.0
    return KeyBudget(eta=eta, K=K, key_bits=bits, envelope=envelope,
                     L=L, epsilon=epsilon)
