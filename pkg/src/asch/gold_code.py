"""GF(2^m) arithmetic and the code {Tr(ax + bx^3) + e}.

For odd m this is the extended dual of the narrow-sense BCH code of
designed distance 5, together with the all-ones word.  Its distance
classes form a 4-class scheme, and the cosets of the first-order
Reed-Muller subcode {Tr(ax) + e} partition it into tight cliques.

Codeword numbering is GF(2)-linear: word ``(b << (m+1)) | (a << 1) | e``
is c_{a,b,e}, so the XOR of two indices is the index of the sum of the
two words, and the cosets of RM(1,m) are contiguous index ranges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from .errors import (
    EvenDegree,
    UnexpectedDistance,
    UnsupportedDegree,
    WeightSpectrumViolation,
)
from .exact_linalg import RationalMatrix
from .scheme_core import RelationPartition

# degree -> modulus as an integer bitmask (bit i = coefficient of x^i)
MODULI = {
    3: 0b1011,  # x^3 + x + 1
    5: 0b100101,  # x^5 + x^2 + 1
    7: (1 << 7) | 0b11,  # x^7 + x + 1
    9: (1 << 9) | (1 << 4) | 1,  # x^9 + x^4 + 1
    11: (1 << 11) | (1 << 2) | 1,  # x^11 + x^2 + 1
    13: (1 << 13) | 0b11011,  # x^13 + x^4 + x^3 + x + 1
    15: (1 << 15) | 0b11,  # x^15 + x + 1
}

MAX_CODE_DEGREE = 9
MAX_SCHEME_DEGREE = 5


def _check_degree(m: int, cap: int):
    if m % 2 == 0:
        raise EvenDegree(m)
    if m not in MODULI or m > cap:
        raise UnsupportedDegree(f"m={m} is outside the supported odd range 3..{cap}")


class BinaryField:
    """GF(2^m) in the polynomial basis; elements are ints in [0, 2^m)."""

    def __init__(self, m: int):
        _check_degree(m, 15)
        self.m = m
        self.size = 1 << m
        self.modulus = MODULI[m]

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        m, mod = self.m, self.modulus
        acc = 0
        while b:
            if b & 1:
                acc ^= a
            b >>= 1
            a <<= 1
            if a >> m:
                a ^= mod
        return acc

    def power(self, a: int, e: int) -> int:
        acc = 1
        while e:
            if e & 1:
                acc = self.mul(acc, a)
            a = self.mul(a, a)
            e >>= 1
        return acc

    def cube(self, a: int) -> int:
        return self.mul(self.mul(a, a), a)

    def trace(self, a: int) -> int:
        acc, x = 0, a
        for _ in range(self.m):
            acc ^= x
            x = self.mul(x, x)
        if acc not in (0, 1):
            raise ArithmeticError(f"trace of {a} left the prime field")
        return acc

    def trace_forms(self) -> np.ndarray:
        """Row x is the bitmask with bit i = Tr(x^i-th basis element * x).

        Then Tr(a*x) = parity(a & forms[x]) for every a, by linearity.
        """
        basis_traces = [self.trace(1 << i) for i in range(self.m)]
        forms = np.zeros(self.size, dtype=np.int64)
        for x in range(self.size):
            mask = 0
            for i in range(self.m):
                prod = self.mul(1 << i, x)
                t = 0
                for bit in range(self.m):
                    if prod >> bit & 1:
                        t ^= basis_traces[bit]
                mask |= t << i
            forms[x] = mask
        return forms

    def cube_table(self) -> np.ndarray:
        return np.array([self.cube(x) for x in range(self.size)], dtype=np.int64)


def _parity(v: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(v.astype(np.uint64)) & 1).astype(np.uint8)


def gold_weights(m: int) -> Tuple[int, int, int, int, int]:
    half = 1 << (m - 1)
    root = 1 << ((m - 1) // 2)
    return (0, half - root, half, half + root, 1 << m)


@dataclass
class GoldCode:
    m: int
    words: np.ndarray = field(repr=False)  # (2^{2m+1}, 2^m) array of bits
    weight_counts: Dict[int, int] = field(default_factory=dict)

    @property
    def length(self) -> int:
        return 1 << self.m

    @property
    def size(self) -> int:
        return self.words.shape[0]

    @property
    def coset_of(self) -> np.ndarray:
        return np.arange(self.size) >> (self.m + 1)

    def weights(self) -> np.ndarray:
        return self.words.sum(axis=1, dtype=np.int64)

    def index_of(self, a: int, b: int, eps: int) -> int:
        return (b << (self.m + 1)) | (a << 1) | eps


def _gf2_rank(rows) -> int:
    rows = [int(r) for r in rows]
    rank = 0
    for bit in reversed(range(max(rows).bit_length() if rows else 0)):
        piv = next((i for i in range(rank, len(rows)) if rows[i] >> bit & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] >> bit & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


def build_gold_code(m: int) -> GoldCode:
    _check_degree(m, MAX_CODE_DEGREE)
    field_ = BinaryField(m)
    forms = field_.trace_forms()
    cubes = field_.cube_table()
    q = field_.size
    idx = np.arange(q, dtype=np.int64)

    # Tr(a x) and Tr(b x^3) tables, indexed [a or b, x]
    lin = _parity(idx[:, None] & forms[None, :])
    cub = _parity(idx[:, None] & forms[cubes][None, :])

    n_words = 1 << (2 * m + 1)
    words = np.empty((n_words, q), dtype=np.uint8)
    for b in range(q):
        base = b << (m + 1)
        block = lin ^ cub[b][None, :]  # rows indexed by a
        words[base:base + 2 * q:2] = block
        words[base + 1:base + 2 * q:2] = block ^ 1

    # self-checks: linear numbering, full dimension, all-ones word
    gens = [1 << t for t in range(2 * m + 1)]
    rebuilt = np.zeros_like(words)
    all_idx = np.arange(n_words)
    for t, g in enumerate(gens):
        rebuilt ^= ((all_idx >> t) & 1).astype(np.uint8)[:, None] * words[g][None, :]
    if not np.array_equal(rebuilt, words):
        raise WeightSpectrumViolation("code numbering is not GF(2)-linear")
    packed = [int("".join(map(str, words[g])), 2) for g in gens]
    if _gf2_rank(packed) != 2 * m + 1:
        raise WeightSpectrumViolation("code dimension is not 2m+1")
    if not words[1].all():
        raise WeightSpectrumViolation("all-ones word missing")

    allowed = set(gold_weights(m))
    wts = words.sum(axis=1, dtype=np.int64)
    values, counts = np.unique(wts, return_counts=True)
    weight_counts = {int(w): int(c) for w, c in zip(values, counts)}
    stray = set(weight_counts) - allowed
    if stray:
        raise WeightSpectrumViolation(f"unexpected weights {sorted(stray)}")
    return GoldCode(m, words, weight_counts)


def scheme_from_code(code: GoldCode) -> RelationPartition:
    """Distance classes of the code, labelled in increasing distance."""
    if code.m > MAX_SCHEME_DEGREE:
        raise UnsupportedDegree(
            f"m={code.m}: the {code.size}-point relation table is too large to materialize"
        )
    relation_of = {w: i for i, w in enumerate(gold_weights(code.m))}
    wts = code.weights()
    per_word = np.empty(code.size, dtype=np.uint8)
    for idx, w in enumerate(wts):
        if int(w) not in relation_of:
            raise UnexpectedDistance(0, idx, int(w))
        per_word[idx] = relation_of[int(w)]
    ar = np.arange(code.size)
    return RelationPartition(per_word[ar[:, None] ^ ar[None, :]], 4)


def rm_coset_partition(code: GoldCode) -> np.ndarray:
    """Block label of each codeword: its RM(1,m)-coset, i.e. the b of c_{a,b,e}."""
    return code.coset_of.copy()


def codeword_lines(code: GoldCode):
    labels = code.coset_of
    for row, b in zip(code.words, labels):
        yield "".join("1" if v else "0" for v in row) + f" {int(b)}\n"


def gold_degree_for(m: int, r: int, s: int, n: int):
    """The odd degree whose Gold scheme has quotient parameters (m, r, s, n), if any."""
    for mu in sorted(MODULI):
        half = 1 << (mu - 1)
        if (n, m, r, s) == (1 << (2 * mu), half * ((1 << mu) - 1), half, -half):
            return mu
    return None


def example_cover_q(m: int) -> RationalMatrix:
    """Closed-form second eigenmatrix stated for the 4-class Gold scheme."""
    q, half, root = 1 << m, 1 << (m - 1), 1 << ((m + 1) // 2)
    top = [1, half * (q - 1), (half + 1) * (q - 1)]
    mid = [1, half, -half - 1]
    return RationalMatrix([
        top + [q, q * (q - 1)],
        mid + [root, -root],
        [1, -half, half - 1, 0, 0],
        mid + [-root, root],
        top + [-q, -q * (q - 1)],
    ])


def example_fission_q(m: int) -> RationalMatrix:
    """Closed-form fission Q stated for the Gold family, taken verbatim."""
    q, half, root = 1 << m, 1 << (m - 1), 1 << ((m + 1) // 2)
    big = half * (q - 1)
    return RationalMatrix([
        [1, big, big, q, q * (q - 1), q - 1],
        [1, half, -half - 1, root, -root, -1],
        [1, -half, half - 1, 0, 0, -1],
        [1, half, -half - 1, -root, root, -1],
        [1, big, big, -q, -q * (q - 1), q - 1],
        [1, -half, -half, 0, 0, q - 1],
    ])
