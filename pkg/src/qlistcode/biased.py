"""Small-bias sample spaces over {0,1}^m.

Two constructions:

* ``full_space(m)`` - all 2^m vectors, bias exactly 0 (every nonzero parity
  functional splits the cube in half).
* ``aghp(m, ell)`` - the power construction over GF(2^ell): the element
  indexed by a field pair (x, y) has bit i equal to tr(x^i * y).  For a
  nonzero functional e the imbalance is (number of roots of the degree-<m
  polynomial sum_i e_i X^i) / 2^ell, so the certified bias bound is
  (m-1)/2^ell at exactly 2^{2 ell} elements.

Elements are m-bit ints (bit i is coordinate i).  Field arithmetic uses a
fixed irreducible polynomial per degree, so sets are portable constants.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

MEASURE_CAP_M = 24

# Minimal-weight irreducible polynomials over GF(2), degree -> bitmask
# (bit i is the X^i coefficient, leading term included).
IRREDUCIBLE_POLY = {
    1: 0b11,                  # x + 1
    2: 0b111,                 # x^2 + x + 1
    3: 0b1011,                # x^3 + x + 1
    4: 0b10011,               # x^4 + x + 1
    5: 0b100101,              # x^5 + x^2 + 1
    6: 0b1000011,             # x^6 + x + 1
    7: 0b10000011,            # x^7 + x + 1
    8: 0b100011101,           # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,          # x^9 + x^4 + 1
    10: 0b10000001001,        # x^10 + x^3 + 1
    11: 0b100000000101,       # x^11 + x^2 + 1
    12: 0b1000001010011,      # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,     # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,    # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,   # x^15 + x + 1
    16: 0b10001000000001011,  # x^16 + x^12 + x^3 + x + 1
}


@dataclass(frozen=True)
class BiasedSet:
    m: int
    elements: tuple[int, ...]
    bias_bound: float
    ell: Optional[int] = None
    poly: Optional[int] = None
    source: str = "explicit"
    bias_exact: Optional[float] = None

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("negative length")
        if not self.elements:
            raise ValueError("a biased set needs at least one element")
        if any(e < 0 or e >> self.m for e in self.elements):
            raise ValueError("element outside declared length")
        if self.bias_exact is not None and self.bias_exact > self.bias_bound + 1e-12:
            raise ValueError("measured bias exceeds certified bound")

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def key_bits_needed(self) -> int:
        return (len(self.elements) - 1).bit_length()

    @property
    def wrap_penalty(self) -> float:
        """Exact L1 distance between the key-wrapped draw distribution and
        uniform; zero when the size is a power of two."""
        n_el = len(self.elements)
        keys = 1 << self.key_bits_needed
        if keys % n_el == 0:
            return 0.0
        hi = keys % n_el          # elements hit ceil(keys/n) times
        q, r = divmod(keys, n_el)
        return hi * abs((q + 1) / keys - 1 / n_el) + (n_el - hi) * abs(q / keys - 1 / n_el)

    @property
    def effective_bias(self) -> float:
        """Bias bound actually honoured by key-indexed draws.

        The all-zero-draw fallback needs no extra allowance: a zero draw
        always produces a collision, so replacing it with any fixed element
        can only lower the one-sided collision probability the protocol
        bounds.
        """
        return min(1.0, self.bias_bound + self.wrap_penalty)

    def first_nonzero(self) -> int:
        for e in self.elements:
            if e:
                return e
        raise ValueError("set has no nonzero element")


def full_space(m: int) -> BiasedSet:
    """All of {0,1}^m; bias exactly 0."""
    if not 1 <= m <= MEASURE_CAP_M:
        raise ValueError(f"full-space construction limited to 1 <= m <= {MEASURE_CAP_M}")
    return BiasedSet(m, tuple(range(1 << m)), 0.0, source="full")


def _gf_mul(a: int, b: int, poly: int, ell: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> ell:
            a ^= poly
    return out


@lru_cache(maxsize=None)
def _trace_mask(ell: int) -> int:
    """Bit i set iff tr(e_i) = 1 in GF(2^ell); tr(z) is then the parity of
    z & mask."""
    poly = IRREDUCIBLE_POLY[ell]
    mask = 0
    for i in range(ell):
        z = 1 << i
        acc = z
        t = z
        for _ in range(ell - 1):
            t = _gf_mul(t, t, poly, ell)
            acc ^= t
        if acc not in (0, 1):
            raise AssertionError("trace left the prime subfield")
        mask |= acc << i
    return mask


def aghp(m: int, ell: int) -> BiasedSet:
    """Power construction; 2^{2 ell} elements with bias bound (m-1)/2^ell.

    m = 1 routes to the full space: the bound degenerates to 0 there and the
    two-element cube meets it exactly at a single key bit.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if ell < 1 or ell not in IRREDUCIBLE_POLY:
        raise ValueError(f"ell must be in 1..{max(IRREDUCIBLE_POLY)}")
    if m > (1 << ell):
        raise ValueError("need m <= 2^ell for a meaningful bias bound")
    if m == 1:
        return full_space(1)
    poly = IRREDUCIBLE_POLY[ell]
    tmask = _trace_mask(ell)
    size = 1 << ell
    elements = []
    for x in range(size):
        powers = [1]
        for _ in range(m - 1):
            powers.append(_gf_mul(powers[-1], x, poly, ell))
        # tr(p*y) is linear in y: fold it into one mask per power
        masks = []
        for p in powers:
            mask = 0
            for j in range(ell):
                prod = _gf_mul(p, 1 << j, poly, ell)
                mask |= ((prod & tmask).bit_count() & 1) << j
            masks.append(mask)
        for y in range(size):
            bits = 0
            for i, mask in enumerate(masks):
                bits |= ((mask & y).bit_count() & 1) << i
            elements.append(bits)
    return BiasedSet(m, tuple(elements), (m - 1) / size, ell=ell, poly=poly,
                     source="aghp")


def build_for_bias(m: int, eta: float) -> BiasedSet:
    """Smallest-ell power construction meeting the target bias, or the full
    space when that is at least as small (degenerate lengths)."""
    if m < 1:
        raise ValueError("m must be positive")
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    if m == 1:
        return full_space(1)
    if eta == 0:
        return full_space(m)
    ell = 1
    while (m - 1) / (1 << ell) > eta or m > (1 << ell):
        ell += 1
        if ell > max(IRREDUCIBLE_POLY):
            raise ValueError("no tabulated field large enough for this target")
    if m <= 2 * ell and m <= MEASURE_CAP_M:
        return full_space(m)
    return aghp(m, ell)


def measure_bias(a: BiasedSet, sample_functionals: Optional[int] = None,
                 rng=None) -> float:
    """max over nonzero e of |Pr(e.a = 0) - Pr(e.a = 1)|.

    Exhaustive (via a Walsh-Hadamard transform over all 2^m - 1 functionals)
    for m <= 24; beyond that pass ``sample_functionals`` and an rng for a
    sampled lower estimate.
    """
    if a.m == 0:
        return 0.0
    if a.m > MEASURE_CAP_M:
        if sample_functionals is None or rng is None:
            raise ValueError(
                f"exhaustive measurement capped at m = {MEASURE_CAP_M}; "
                "pass sample_functionals and rng for a sampled estimate")
        worst = 0.0
        for _ in range(sample_functionals):
            e = 0
            while e == 0:
                e = rng.getrandbits(a.m)
            odd = sum((e & el).bit_count() & 1 for el in a.elements)
            worst = max(worst, abs(len(a.elements) - 2 * odd) / len(a.elements))
        return worst
    counts = np.zeros(1 << a.m, dtype=np.int64)
    np.add.at(counts, np.fromiter(a.elements, dtype=np.int64), 1)
    _wht_inplace(counts)
    counts[0] = 0  # the trivial functional
    return float(np.abs(counts).max()) / len(a.elements)


def _wht_inplace(v: np.ndarray) -> None:
    n = len(v)
    h = 1
    while h < n:
        blocks = v.reshape(-1, 2 * h)
        left = blocks[:, :h].copy()
        right = blocks[:, h:]
        blocks[:, :h] = left + right
        blocks[:, h:] = left - right
        h *= 2


def measured(a: BiasedSet) -> BiasedSet:
    """Copy of ``a`` with bias_exact filled in."""
    return replace(a, bias_exact=measure_bias(a))


def draw(a: BiasedSet, key_bits: Sequence[int]) -> int:
    """Deterministic element selection from exactly ceil(log2 |A|) key bits
    (big-endian); indices past the end wrap by modular reduction."""
    need = a.key_bits_needed
    if len(key_bits) != need:
        raise ValueError(f"need exactly {need} key bits, got {len(key_bits)}")
    idx = 0
    for b in key_bits:
        idx = (idx << 1) | (b & 1)
    return a.elements[idx % len(a.elements)]


def to_text(a: BiasedSet) -> str:
    lines = [
        "biased-set v1",
        f"m {a.m}",
        f"ell {a.ell if a.ell is not None else 0}",
        f"poly {a.poly if a.poly is not None else 0}",
        f"bias_bound {a.bias_bound!r}",
        f"source {a.source}",
    ]
    width = max(1, -(-a.m // 4))
    lines.extend(format(e, f"0{width}x") for e in a.elements)
    return "\n".join(lines) + "\n"


def from_text(text: str) -> BiasedSet:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "biased-set v1":
        raise ValueError("not a v1 biased-set file")
    header = {}
    body_start = 1
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) == 2 and parts[0] in ("m", "ell", "poly", "bias_bound", "source"):
            header[parts[0]] = parts[1]
            body_start += 1
        else:
            break
    m = int(header["m"])
    ell = int(header["ell"]) or None
    poly = int(header["poly"]) or None
    elements = tuple(int(h, 16) for h in lines[body_start:])
    return BiasedSet(m, elements, float(header["bias_bound"]), ell=ell,
                     poly=poly, source=header.get("source", "explicit"))
