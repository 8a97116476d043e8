"""Quantum list codes over adversarial channels, at desk scale.

Subpackages: gf2 (bit-packed linear algebra), pauli (phase-tracked Pauli
algebra), stabilizer (codes, syndromes, logical structure, random sampling),
listcode (list-decodability tables and the union bound), bounds (closed-form
rates and budgets), biased (small-bias sample spaces), protocol (keyed
subcodes and the distinguishing experiment), adversary (Pauli-level attack
strategies), coherent (dense statevector backend), cli (experiment harness).
"""

__version__ = "0.1.0"
