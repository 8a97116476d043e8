import itertools
import math
import random

import numpy as np
import pytest

from qlistcode.pauli import (EnumerationCapError, PauliOp, enumerate_errors,
                             mul, n_errors, omega, symplectic_rank)

from _oracles import brute_rank, pauli_matrix

P = PauliOp.from_string


def test_omega_examples():
    assert omega(P("X"), P("Z")) == 1
    assert omega(P("XX"), P("ZZ")) == 0
    assert omega(P("Y"), P("Y")) == 0


def test_omega_dimension_mismatch():
    with pytest.raises(ValueError):
        omega(P("X"), P("XX"))


def test_mul_normal_form():
    xz = mul(P("X"), P("Z"))
    assert (xz.phase, xz.x.bits, xz.z.bits) == (0, 1, 1)  # XZ = -iY
    zx = mul(P("Z"), P("X"))
    assert (zx.phase, zx.x.bits, zx.z.bits) == (2, 1, 1)  # ZX = -XZ


def test_mul_self_adjoint_identity():
    rng = random.Random(5)
    for _ in range(1000):
        n = rng.randrange(1, 6)
        p = PauliOp.from_xz(n, rng.getrandbits(n), rng.getrandbits(n),
                            rng.getrandbits(2))
        prod = mul(p, p.adjoint())
        assert prod.is_identity()


def test_mul_matches_matrix_oracle_exhaustive_single_qubit():
    ops = [PauliOp.from_xz(1, x, z, t) for x in (0, 1) for z in (0, 1)
           for t in range(4)]
    for p, q in itertools.product(ops, ops):
        got = pauli_matrix(mul(p, q))
        want = pauli_matrix(p) @ pauli_matrix(q)
        assert np.allclose(got, want)


def test_mul_matches_matrix_oracle_random():
    rng = random.Random(7)
    for _ in range(10_000):
        n = rng.randrange(1, 4)
        p = PauliOp.from_xz(n, rng.getrandbits(n), rng.getrandbits(n),
                            rng.getrandbits(2))
        q = PauliOp.from_xz(n, rng.getrandbits(n), rng.getrandbits(n),
                            rng.getrandbits(2))
        assert np.allclose(pauli_matrix(mul(p, q)),
                           pauli_matrix(p) @ pauli_matrix(q))


def test_omega_matches_matrix_commutator():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randrange(1, 4)
        p = PauliOp.from_xz(n, rng.getrandbits(n), rng.getrandbits(n))
        q = PauliOp.from_xz(n, rng.getrandbits(n), rng.getrandbits(n))
        mp, mq = pauli_matrix(p), pauli_matrix(q)
        commutes = np.allclose(mp @ mq, mq @ mp)
        assert omega(p, q) == (0 if commutes else 1)


def test_omega_bilinear():
    rng = random.Random(13)
    for _ in range(500):
        n = rng.randrange(1, 6)
        ps = [PauliOp.from_xz(n, rng.getrandbits(n), rng.getrandbits(n))
              for _ in range(3)]
        p, q, r = ps
        assert omega(p, mul(q, r)) == omega(p, q) ^ omega(p, r)


def test_weight_examples():
    assert P("IIIII").weight() == 0
    assert P("IIYII").weight() == 1
    assert P("XIZY").weight() == 3


def test_enumerate_counts():
    assert len(enumerate_errors(5, 1)) == 16
    assert len(enumerate_errors(4, 2)) == 67
    es = enumerate_errors(7, 0)
    assert len(es) == 1 and es.elements[0].is_identity()


def test_enumerate_matches_closed_form_small_grid():
    for n in range(1, 7):
        for t in range(n + 1):
            es = enumerate_errors(n, t)
            assert len(es) == n_errors(n, t)
            assert len({(e.x.bits, e.z.bits) for e in es}) == len(es)
            assert all(e.weight() <= t and e.phase == 0 for e in es)


def test_closed_form_matches_sum_formula():
    for n in range(17):
        for t in range(n + 1):
            direct = sum(3**r * math.comb(n, r) for r in range(t + 1))
            assert n_errors(n, t) == direct


def test_enumerate_canonical_order():
    es = enumerate_errors(3, 2).elements
    # weight 1 block: qubit 0 with X, Y, Z, then qubit 1, qubit 2 (phase-0
    # representatives, so a Y slot is the operator XZ)
    head = [(e.x.bits, e.z.bits) for e in es[:10]]
    assert head == [(0, 0),
                    (1, 0), (1, 1), (0, 1),
                    (2, 0), (2, 2), (0, 2),
                    (4, 0), (4, 4), (0, 4)]
    weights = [e.weight() for e in es]
    assert weights == sorted(weights)


def test_enumerate_cap():
    with pytest.raises(EnumerationCapError) as err:
        enumerate_errors(8, 4, cap=1000)
    assert err.value.count == n_errors(8, 4)


def test_symplectic_rank_examples():
    assert symplectic_rank([P("X"), P("Z")]) == 2
    assert symplectic_rank([P("X"), P("Z"), P("Y")]) == 2


def test_symplectic_rank_matches_bruteforce():
    rng = random.Random(17)
    for _ in range(100):
        n = rng.randrange(1, 5)
        ops = [PauliOp.from_xz(n, rng.getrandbits(n), rng.getrandbits(n))
               for _ in range(rng.randrange(1, 6))]
        assert symplectic_rank(ops) == brute_rank([o.symplectic_row() for o in ops])


def test_subgroup_counting_property():
    # For the full group mod phase on n qubits and i independent elements with
    # prescribed commutation bits, exactly |G| * 2^-i elements satisfy them.
    rng = random.Random(19)
    for n in (1, 2, 3):
        group = [(x, z) for x in range(1 << n) for z in range(1 << n)]
        for _ in range(10):
            i = rng.randrange(1, min(3, 2 * n) + 1)
            chosen: list[PauliOp] = []
            while len(chosen) < i:
                cand = PauliOp.from_xz(n, rng.getrandbits(n), rng.getrandbits(n))
                rows = [c.symplectic_row() for c in chosen] + [cand.symplectic_row()]
                if brute_rank(rows) == len(chosen) + 1:
                    chosen.append(cand)
            bits = [rng.getrandbits(1) for _ in range(i)]
            count = 0
            for x, z in group:
                w = PauliOp.from_xz(n, x, z)
                if all(omega(w, s) == b for s, b in zip(chosen, bits)):
                    count += 1
            assert count == len(group) >> i


def test_text_round_trip():
    rng = random.Random(23)
    for _ in range(300):
        n = rng.randrange(1, 8)
        p = PauliOp.from_xz(n, rng.getrandbits(n), rng.getrandbits(n),
                            rng.getrandbits(2))
        assert PauliOp.from_string(p.to_string()) == p
    assert P("-iXIZY").to_string() == "-iXIZY"
    assert P("+XI") == P("XI")
    # Y carries a hidden i: the normal form of "Y" is phase 1, x=z=1
    y = P("Y")
    assert (y.phase, y.x.bits, y.z.bits) == (1, 1, 1)
    assert np.allclose(pauli_matrix(y), np.array([[0, -1j], [1j, 0]]))
