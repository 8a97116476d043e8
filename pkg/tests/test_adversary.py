import math
import random

import pytest

from qlistcode.adversary import (Strategy, estimate_failure, exhaustive_worst,
                                 keyed_factory, uniform_strategy,
                                 worst_pair_strategy)
from qlistcode.bounds import failure_bound
from qlistcode.listcode import build_table, min_list_length
from qlistcode.pauli import PauliOp, mul, n_errors
from qlistcode.protocol import augment, iter_key_space, planned_sets
from qlistcode.stabilizer import logical_class, random_code, syndrome, validate

P = PauliOp.from_string


@pytest.fixture(scope="module")
def det_code():
    return validate([P("XXXX"), P("ZZZZ")])


@pytest.fixture(scope="module")
def det_table(det_code):
    return build_table(det_code, 1)


@pytest.fixture(scope="module")
def five_qubit():
    return validate([P(s) for s in ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")])


def all_keyed(base, K, eta):
    sets = planned_sets(base.k, K, eta)
    return [augment(base, K, key, eta, sets=sets) for key in iter_key_space(sets)]


def test_uniform_weight_zero():
    strat = uniform_strategy(4, 0)
    rng = random.Random(1)
    for _ in range(50):
        assert strat.emit(rng).is_identity()


def test_uniform_identity_frequency():
    strat = uniform_strategy(4, 1)
    rng = random.Random(2)
    trials = 10_000
    hits = sum(strat.emit(rng).is_identity() for _ in range(trials))
    p = 1 / n_errors(4, 1)
    sigma = math.sqrt(trials * p * (1 - p))
    assert abs(hits - trials * p) <= 3 * sigma


def test_uniform_weight_cap_audit():
    strat = uniform_strategy(6, 2)
    rng = random.Random(3)
    for _ in range(500):
        assert strat.emit(rng).weight() <= 2


def test_worst_pair_degenerate_on_perfect_code(five_qubit):
    table = build_table(five_qubit, 1)
    strat = worst_pair_strategy(five_qubit, table)
    assert strat.degenerate
    rng = random.Random(5)
    assert strat.emit(rng).weight() <= 1


def test_worst_pair_det_code(det_code, det_table):
    strat = worst_pair_strategy(det_code, det_table)
    assert not strat.degenerate
    rng = random.Random(7)
    seen = {strat.emit(rng).to_string() for _ in range(100)}
    assert len(seen) == 2
    ops = [PauliOp.from_string(s) for s in seen]
    assert syndrome(det_code, ops[0]) == syndrome(det_code, ops[1])
    assert not logical_class(det_code,
                             mul(ops[0].adjoint(), ops[1])).is_zero()
    assert all(op.weight() <= 1 for op in ops)
    # the worst syndrome under the lexicographic tie-break is the X class
    assert strat.params["syndrome"] == "01"


def test_exhaustive_worst_l0_code():
    # an L_min = 0 base with K = 1 gives a nonvacuous bound and zero failure
    rng = random.Random(11)
    base = None
    for _ in range(300):
        cand = random_code(9, 2, rng)
        if min_list_length(cand, 1).L_min == 0:
            base = cand
            break
    assert base is not None
    table = build_table(base, 1)
    keyed = all_keyed(base, 1, 0.5)
    strat = exhaustive_worst(base, table, keyed)
    assert strat.params["exact_failure"] == 0.0
    bound = failure_bound(0, max(s.effective_bias for s in planned_sets(2, 1, 0.5)), 1)
    assert bound < 1.0
    assert strat.params["exact_failure"] <= bound
    rng2 = random.Random(13)
    assert strat.emit(rng2).weight() <= 1


def test_exhaustive_worst_det_code(det_code, det_table):
    keyed = all_keyed(det_code, 1, 0.5)
    strat = exhaustive_worst(det_code, det_table, keyed)
    assert 0.0 < strat.params["exact_failure"] <= 1.0
    rng = random.Random(17)
    assert strat.emit(rng).weight() <= 1
    # the chosen error really is the maximizer over the per-error sweep
    assert strat.params["exact_failure"] == max(strat.params["per_error"].values())


def test_exhaustive_worst_cap():
    rng = random.Random(19)
    base = random_code(12, 8, rng)
    table = build_table(base, 1)
    fake_keys = [augment(base, 0, [], 0.5)] * 200_000
    with pytest.raises(ValueError, match="too large"):
        exhaustive_worst(base, table, fake_keys)


def test_estimate_failure_identity_strategy(det_code, det_table):
    strat = Strategy("identity", {}, lambda rng: PauliOp.identity(4), 1)
    factory = keyed_factory(det_code, 1, 0.5)
    est = estimate_failure(factory, det_table, strat, 300, 23)
    assert est.rate == 0.0 and est.failures == 0


def test_estimate_failure_deterministic(det_code, det_table):
    strat = worst_pair_strategy(det_code, det_table)
    factory = keyed_factory(det_code, 1, 0.5)
    a = estimate_failure(factory, det_table, strat, 400, 29)
    b = estimate_failure(factory, det_table, strat, 400, 29)
    assert a == b


def test_estimate_failure_matches_exact(det_code, det_table):
    # fixed-error strategy: MC over fresh keys vs exhaustive key average
    e = P("XIII")
    keyed = all_keyed(det_code, 1, 0.5)
    from qlistcode.protocol import run_trial
    exact = sum(0 if run_trial(kc, det_table, e).success else 1
                for kc in keyed) / len(keyed)
    strat = Strategy("fixed", {}, lambda rng: e, 1)
    factory = keyed_factory(det_code, 1, 0.5)
    est = estimate_failure(factory, det_table, strat, 4000, 31)
    sigma = math.sqrt(exact * (1 - exact) / est.trials)
    assert abs(est.rate - exact) <= 3 * sigma
    assert est.ci[0] <= est.rate <= est.ci[1]


def test_failure_nonincreasing_in_k(det_code, det_table):
    strat = worst_pair_strategy(det_code, det_table)
    rates = {}
    for K in (0, 1):
        factory = keyed_factory(det_code, K, 0.5)
        rates[K] = estimate_failure(factory, det_table, strat, 3000, 37)
    r0, r1 = rates[0].rate, rates[1].rate
    sigma = math.sqrt(max(r0 * (1 - r0), 0.25) / 3000)
    assert r1 <= r0 + 3 * sigma
    assert r0 > 0.3  # with no secret bits the worst pair is truly ambiguous


def test_strategy_never_sees_key(det_code, det_table):
    # structural: strategies receive only (code, table, trial rng); building
    # one requires no key material
    strat = worst_pair_strategy(det_code, det_table)
    assert "key" not in strat.params
