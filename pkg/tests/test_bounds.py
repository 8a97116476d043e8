import math

import pytest

from qlistcode.bounds import (KeyBudget, binary_entropy, failure_bound,
                              gv_rate, k_of, key_bits, list_rate,
                              rains_distance, rains_threshold)


def _entropy_direct(p):
    return 0.0 if p in (0, 1) else -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def test_entropy_edges():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        binary_entropy(-0.1)


def test_list_rate_values():
    # direct evaluation: 1 - H(0.1) - 0.1 log2 3 = 0.3725081563...
    want = 1 - _entropy_direct(0.1) - 0.1 * math.log2(3)
    assert list_rate(0.1, math.inf).value == pytest.approx(want, abs=1e-12)
    assert list_rate(0.1, math.inf).value == pytest.approx(0.3725081563386031,
                                                           abs=1e-9)
    assert list_rate(0.0, 1).value == 1.0
    assert list_rate(0.0, math.inf).value == 1.0
    # finite-L form
    want_l2 = 1 - (1 + 0.5) * (_entropy_direct(0.1) + 0.1 * math.log2(3))
    assert list_rate(0.1, 2).value == pytest.approx(want_l2, abs=1e-12)


def test_list_rate_domain():
    with pytest.raises(ValueError):
        list_rate(0.6, 2)
    with pytest.raises(ValueError):
        list_rate(0.1, 0)
    with pytest.raises(ValueError):
        list_rate(0.1, 1.5)


def test_list_rate_zero_crossing():
    lo, hi = 0.15, 0.25
    for _ in range(60):
        mid = (lo + hi) / 2
        if list_rate(mid, math.inf).raw > 0:
            lo = mid
        else:
            hi = mid
    p_star = (lo + hi) / 2
    assert p_star == pytest.approx(0.18928962, abs=5e-4)
    assert p_star == pytest.approx(0.189, abs=5e-4)


def test_gv_rate_values():
    assert gv_rate(0.0).value == 1.0
    assert gv_rate(0.05).value == pytest.approx(0.3725081563386031, abs=1e-9)
    # substitution identity with the limiting list rate
    assert gv_rate(0.05).value == pytest.approx(list_rate(0.1, math.inf).value,
                                                abs=1e-12)
    with pytest.raises(ValueError):
        gv_rate(0.3)


def test_gv_below_list_rate_on_grid():
    p = 0.001
    while p <= rains_threshold():
        assert gv_rate(p).raw < list_rate(p, math.inf).raw
        p += 0.001


def test_rains_values():
    assert rains_threshold() == pytest.approx((3 - math.sqrt(3)) / 8, abs=0)
    assert rains_threshold() == pytest.approx(0.1585, abs=1e-4)
    assert round(rains_threshold(), 3) == 0.158
    assert rains_distance(100) == pytest.approx(31.69872981077807, abs=1e-9)
    assert rains_distance(100) == pytest.approx(0.317 * 100, abs=0.05)
    assert rains_distance(0) == 0.0


def test_k_of_values():
    assert k_of(2, 0.1) == 18
    # direct evaluation: (4 + log2(10)) / log2(4/3) = 17.6416 -> 18
    assert (2 * 2 + math.log2(10)) / math.log2(4 / 3) == pytest.approx(17.6416,
                                                                       abs=1e-3)
    # L = 0 near eps = 1/2: formula value 2.41 -> 3
    assert k_of(0, 0.4999999) == 3
    with pytest.raises(ValueError):
        k_of(2, 0.7)
    with pytest.raises(ValueError):
        k_of(2, 0.0)


def test_failure_bound_values():
    # direct evaluation of 16 (3/4)^18
    assert failure_bound(2, 0.5, 18) == pytest.approx(16 * 0.75**18, rel=1e-12)
    assert failure_bound(2, 0.5, 18) == pytest.approx(0.09020336181856692,
                                                      abs=1e-12)
    assert failure_bound(3, 0.2, 0) == 2.0**6
    assert failure_bound(0, 0.0, 1) == 0.5


def test_k_of_failure_bound_consistency():
    for L in range(5):
        for eps in (0.25, 0.1, 0.01):
            K = k_of(L, eps)
            assert failure_bound(L, 0.5, K) <= eps + 1e-12


def test_key_bits():
    b = key_bits(10, 0.5, 1, [64])
    assert b.key_bits == 6
    assert key_bits(10, 0.5, 3, [1, 1, 1]).key_bits == 0
    budget = key_bits(20, 0.5, 18, [6400] * 18)
    assert budget.key_bits == 18 * math.ceil(math.log2(6400)) == 234
    assert isinstance(b, KeyBudget)
    with pytest.raises(ValueError):
        key_bits(10, 0.5, 2, [64])


def test_rates_monotone_nonincreasing():
    for fn in (lambda p: list_rate(p, math.inf).raw,
               lambda p: list_rate(p, 3).raw):
        prev = fn(0.0)
        p = 0.001
        while p <= 0.5:
            cur = fn(p)
            assert cur <= prev + 1e-12
            prev = cur
            p += 0.001
    prev = gv_rate(0.0).raw
    p = 0.001
    while p <= 0.25:
        cur = gv_rate(p).raw
        assert cur <= prev + 1e-12
        prev = cur
        p += 0.001


def test_list_rate_increases_to_limit():
    for p in (0.05, 0.1, 0.15):
        limit = list_rate(p, math.inf).raw
        prev = -math.inf
        for L in range(1, 40):
            cur = list_rate(p, L).raw
            assert prev <= cur <= limit + 1e-12
            prev = cur
