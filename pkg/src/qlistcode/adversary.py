"""Pauli-level adversary strategies against the keyed protocol.

A strategy sees the public code, the list table, and per-trial randomness; it
never receives key material or secret syndrome bits (the interface makes that
structural).  Every emitted error respects the weight cap of the table it was
built against.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .listcode import ListTable
from .pauli import PauliOp, enumerate_errors, mul
from .protocol import KeyedCode, run_trial, wilson_interval
from .stabilizer import logical_class, syndrome

MAX_EXHAUSTIVE_WORK = 1 << 22


@dataclass(frozen=True)
class Strategy:
    name: str
    params: Mapping[str, object]
    emit: Callable[[random.Random], PauliOp]
    weight_cap: int
    degenerate: bool = False


@dataclass(frozen=True)
class FailureEstimate:
    rate: float
    ci: tuple[float, float]
    failures: int
    trials: int


def uniform_strategy(code_n: int, t: int) -> Strategy:
    """Non-adversarial baseline: per-trial uniform weight-<=t error."""
    errors = enumerate_errors(code_n, t).elements

    def emit(rng: random.Random) -> PauliOp:
        return errors[rng.randrange(len(errors))]

    return Strategy("uniform", {"t": t}, emit, t)


def worst_pair_strategy(code, table: ListTable) -> Strategy:
    """Play inside the worst syndrome class: alternate between the canonical
    representative and the first same-syndrome error with a different logical
    class, forcing the decoder onto the secret bits."""
    worst_s, worst_rank = None, -1
    for s in sorted(table.entries, key=lambda s: tuple(s.bits.to_string())):
        r = table.entries[s].rank
        if r > worst_rank:
            worst_s, worst_rank = s, r
    entry = table.entries[worst_s]
    rep = entry.rep
    partner = None
    if worst_rank > 0:
        for e in enumerate_errors(code.n, table.t):
            if syndrome(code, e) != worst_s:
                continue
            if not logical_class(code, mul(rep.adjoint(), e)).is_zero():
                partner = e
                break
    degenerate = partner is None
    pair = (rep, rep if degenerate else partner)

    def emit(rng: random.Random) -> PauliOp:
        return pair[rng.getrandbits(1)]

    return Strategy("worst_pair",
                    {"syndrome": worst_s.to_string(), "rank": worst_rank,
                     "pair": (pair[0].to_string(), pair[1].to_string())},
                    emit, table.t, degenerate=degenerate)


def exhaustive_worst(code, table: ListTable,
                     keyed_codes: Sequence[KeyedCode]) -> Strategy:
    """The fixed error maximizing exact (key-averaged) failure probability.

    Only feasible for small key spaces; certifies that no single-Pauli attack
    exceeds the collision bound on this instance.
    """
    errors = enumerate_errors(code.n, table.t).elements
    if len(keyed_codes) * len(errors) > MAX_EXHAUSTIVE_WORK:
        raise ValueError("key space too large for an exhaustive sweep")
    best_e = errors[0]
    best_fail = -1.0
    per_error = {}
    for e in errors:
        fails = sum(0 if run_trial(kc, table, e).success else 1
                    for kc in keyed_codes)
        frac = fails / len(keyed_codes)
        per_error[e.to_string()] = frac
        if frac > best_fail:
            best_e, best_fail = e, frac

    def emit(rng: random.Random) -> PauliOp:
        return best_e

    return Strategy("exhaustive_worst",
                    {"error": best_e.to_string(), "exact_failure": best_fail,
                     "per_error": per_error},
                    emit, table.t)


def estimate_failure(kc_factory: Callable[[random.Random], KeyedCode],
                     table: ListTable, strategy: Strategy, trials: int,
                     seed: int, z: float = 3.0) -> FailureEstimate:
    """Monte Carlo failure rate over fresh keys, one key per trial.

    Each trial derives its randomness from (seed, trial index), so the result
    is a pure function of the arguments regardless of scheduling.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    failures = 0
    for idx in range(trials):
        rng = random.Random(f"{seed}:{idx}")
        kc = kc_factory(rng)
        e = strategy.emit(rng)
        if e.weight() > strategy.weight_cap:
            raise AssertionError("strategy emitted an overweight error")
        if not run_trial(kc, table, e).success:
            failures += 1
    rate = failures / trials
    return FailureEstimate(rate, wilson_interval(failures, trials, z),
                           failures, trials)


def keyed_factory(base, K: int, eta_target: float
                  ) -> Callable[[random.Random], KeyedCode]:
    """Factory drawing a fresh uniform key from the trial rng."""
    from .protocol import augment, planned_sets

    sets = planned_sets(base.k, K, eta_target)
    total_bits = sum(s.key_bits_needed for s in sets)

    def build(rng: random.Random) -> KeyedCode:
        key = [rng.getrandbits(1) for _ in range(total_bits)]
        return augment(base, K, key, eta_target, sets=sets)

    return build
