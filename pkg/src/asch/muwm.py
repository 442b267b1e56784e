"""Mutually unbiased weighing matrices from the antipodal eigenspaces of a fission.

Nothing is embedded in real space.  The unit Gram matrix of the
embedding through an idempotent E_e has entry Q_{rel(x,y), e} / m_e, and
representatives of one clique form an orthonormal basis of the
eigenspace, so every product of Gram blocks is an exact rational
identity (Parseval).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .clique_fission import FissionScheme
from .errors import (
    MultiplicityMismatch,
    NonConstantAngle,
    NotWeighing,
    UnbiasednessViolation,
)
from .exact_linalg import RationalMatrix

WITHIN = 2  # within-clique part of the split relation
ANTIPODAL = 4
CROSS = (1, 3, 5)


@dataclass(frozen=True)
class MuwmBound:
    within_sum: int  # k0 + k4 + within-clique valency
    literal_sum: int  # k0 + k4 + k5
    bound: int  # min(2 m3, 2 m4)
    clique_size: int
    stated_size: Fraction  # -m / (2s) for the quotient parameters
    stated_weights: Tuple[Optional[Fraction], Optional[Fraction]]  # 1 / alpha_3, 1 / alpha_4

    @property
    def within_equality(self) -> bool:
        return self.within_sum == self.bound

    @property
    def literal_holds(self) -> bool:
        return self.literal_sum <= self.bound

    def lines(self) -> List[str]:
        def show(v):
            return "undefined" if v is None else str(v)

        return [
            f"BOUND min(2m3,2m4)={self.bound}",
            f"SUM within-clique k0+k4+k2={self.within_sum} "
            + ("EQUALITY" if self.within_equality else ("OK" if self.within_sum <= self.bound else "VIOLATED")),
            f"SUM literal k0+k4+k5={self.literal_sum} "
            + ("EQUALITY" if self.literal_sum == self.bound else ("OK" if self.literal_holds else "VIOLATED")),
            f"STATED size={show(self.stated_size)} weight3={show(self.stated_weights[0])} "
            f"weight4={show(self.stated_weights[1])}",
        ]


def muwm_bound(fs: FissionScheme) -> MuwmBound:
    k, m = fs.k, fs.m
    prof = fs.profile

    def inv(a):
        return None if a == 0 else 1 / a

    return MuwmBound(
        within_sum=k[0] + k[ANTIPODAL] + k[WITHIN],
        literal_sum=k[0] + k[ANTIPODAL] + k[5],
        bound=min(2 * m[3], 2 * m[4]),
        clique_size=int(fs.partition.bound),
        stated_size=Fraction(-prof.m, 2 * prof.s),
        stated_weights=(inv(prof.alpha3), inv(prof.alpha4)),
    )


def choose_representatives(fs: FissionScheme, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """One point of each antipodal pair, grouped by clique: shape (f, |Y|/2).

    Default is the smaller point of each pair; with ``rng`` each pair is
    resolved by a coin flip.
    """
    phi = fs.profile.phi
    reps = []
    for b in range(fs.partition.f):
        members = fs.partition.members(b)
        lows = members[members < phi[members]]
        if rng is not None:
            flip = rng.integers(0, 2, size=lows.size).astype(bool)
            lows = np.where(flip, phi[lows], lows)
        reps.append(lows)
    return np.array(reps, dtype=np.int64)


@dataclass(eq=False)
class GramBlocks:
    eigenindex: int
    multiplicity: int
    unit: Tuple[Fraction, ...]  # unit Gram value per relation
    reps: np.ndarray = field(repr=False)
    rep_rel: np.ndarray = field(repr=False)  # relation table restricted to reps

    @property
    def f(self) -> int:
        return self.reps.shape[0]

    @property
    def dim(self) -> int:
        return self.reps.shape[1]

    def block(self, a: int, b: int) -> RationalMatrix:
        D = self.dim
        sub = self.rep_rel[a * D:(a + 1) * D, b * D:(b + 1) * D]
        return RationalMatrix([[self.unit[i] for i in row] for row in sub])


def gram_blocks(fs: FissionScheme, eigenindex: int, reps: Optional[np.ndarray] = None) -> GramBlocks:
    if eigenindex not in (3, 4):
        raise ValueError("eigenindex must be 3 or 4")
    mult = fs.m[eigenindex]
    size = int(fs.partition.bound)
    if 2 * mult != size:
        raise MultiplicityMismatch(f"2*m_{eigenindex} = {2 * mult} differs from clique size {size}")
    Q = fs.spectrum5.Q
    unit = tuple(Q[i, eigenindex] / mult for i in range(6))
    if unit[0] != 1 or unit[ANTIPODAL] != -1 or unit[WITHIN] != 0:
        raise NonConstantAngle(
            f"cliques are not cross-polytopes in E_{eigenindex}: unit values {list(map(str, unit))}"
        )
    if reps is None:
        reps = choose_representatives(fs)
    flat = reps.ravel()
    rep_rel = fs.cert5.rel[np.ix_(flat, flat)]
    return GramBlocks(eigenindex, mult, unit, reps, rep_rel)


@dataclass(eq=False)
class WeighingFamily:
    dim: int
    alpha: Fraction
    weight: int
    reps: np.ndarray = field(repr=False)
    W: np.ndarray = field(repr=False)  # W[a, b] = (1/alpha) G_ab, integer entries

    @property
    def f(self) -> int:
        return self.W.shape[0]

    def matrix(self, a: int, b: int) -> np.ndarray:
        return self.W[a, b]


def extract_weighing_family(gram: GramBlocks, alpha: Optional[Fraction] = None) -> WeighingFamily:
    present = sorted({int(i) for i in np.unique(gram.rep_rel)})
    cross = [i for i in present if i in CROSS]
    magnitudes = {abs(gram.unit[i]) for i in cross} - {0}
    if alpha is None:
        if len(magnitudes) != 1:
            raise NonConstantAngle(f"cross-clique angles {sorted(map(str, magnitudes))}")
        alpha = magnitudes.pop()
    for i in cross:
        if gram.unit[i] not in (0, alpha, -alpha):
            D = gram.dim
            x, y = np.argwhere(gram.rep_rel == i)[0]
            raise NonConstantAngle(
                f"entry ({x // D},{y // D}) cell ({x % D},{y % D}) has angle {gram.unit[i]}, alpha={alpha}"
            )
    weight = 1 / alpha ** 2
    if weight.denominator != 1:
        raise NotWeighing(f"1/alpha^2 = {weight} is not an integer")
    weight = int(weight)

    scaled = np.zeros(6, dtype=np.int64)
    for i in present:
        v = gram.unit[i] if i in (0, WITHIN) else gram.unit[i] / alpha
        if v.denominator != 1:
            raise NonConstantAngle(f"relation {i} scales to {v}")
        scaled[i] = int(v)
    f, D = gram.f, gram.dim
    full = scaled[gram.rep_rel]
    W = full.reshape(f, D, f, D).transpose(0, 2, 1, 3).copy()

    eye = np.eye(D, dtype=np.int64)
    for a in range(f):
        if not np.array_equal(W[a, a], eye):
            raise NotWeighing(f"W[{a},{a}] is not the identity")
        for b in range(f):
            if a == b:
                continue
            w_ab = W[a, b]
            if not np.isin(w_ab, (-1, 0, 1)).all():
                raise NotWeighing(f"W[{a},{b}] has entries outside {{0,+-1}}")
            nz = w_ab != 0
            if not (np.all(nz.sum(axis=0) == weight) and np.all(nz.sum(axis=1) == weight)):
                raise NotWeighing(f"W[{a},{b}] rows/columns do not all have weight {weight}")
            if not (np.array_equal(w_ab @ w_ab.T, weight * eye)
                    and np.array_equal(w_ab.T @ w_ab, weight * eye)):
                raise NotWeighing(f"W[{a},{b}] W^T != {weight} I")
    return WeighingFamily(D, alpha, weight, gram.reps, W)


@dataclass
class UnbiasedCertificate:
    pairs_checked: int
    pairs_ok: int
    triples_checked: int

    @property
    def ok(self) -> bool:
        return self.pairs_ok == self.pairs_checked

    def line(self) -> str:
        return f"UNBIASED: {self.pairs_ok}/{self.pairs_checked} ordered pairs OK"


def verify_unbiased(fam: WeighingFamily) -> UnbiasedCertificate:
    """For distinct cliques a, c and every other reference b:
    W_ab W_cb^T = (1/alpha) W_ac, checked in integers."""
    f = fam.f
    num, den = fam.alpha.numerator, fam.alpha.denominator
    W = fam.W.astype(np.int64)
    triples = 0
    for b in range(f):
        M = W[:, b]
        prods = np.einsum("aij,ckj->acik", M, M)
        for a in range(f):
            if a == b:
                continue
            for c in range(f):
                if c == a or c == b:
                    continue
                lhs = num * prods[a, c]
                rhs = den * W[a, c]
                if not np.array_equal(lhs, rhs):
                    cell = tuple(int(v) for v in np.argwhere(lhs != rhs)[0])
                    raise UnbiasednessViolation(a, c, b, cell)
                triples += 1
    pairs = f * (f - 1)
    return UnbiasedCertificate(pairs, pairs, triples)


def angle_set(fs: FissionScheme, eigenindex: int) -> Tuple[Fraction, ...]:
    """Off-diagonal values of the full unit Gram matrix over all points."""
    mult = fs.m[eigenindex]
    Q = fs.spectrum5.Q
    return tuple(sorted({Q[i, eigenindex] / mult for i in range(1, 6)}))


def weighing_families(fs: FissionScheme, reps: Optional[np.ndarray] = None) -> Dict[int, WeighingFamily]:
    """Try both antipodal eigenspaces; keep those whose multiplicity fits the cliques."""
    out = {}
    for e in (3, 4):
        try:
            gram = gram_blocks(fs, e, reps)
        except MultiplicityMismatch:
            continue
        out[e] = extract_weighing_family(gram)
    return out
