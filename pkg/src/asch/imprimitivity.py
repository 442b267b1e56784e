"""Closed relation subsets, quotient schemes and two-fold covers of SRGs."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import (
    ArrangementImpossible,
    NotAFourClassCover,
    NotClosed,
    UnequalBlocks,
)
from .exact_linalg import RationalMatrix
from .scheme_core import RelationPartition, SchemeCertificate, verify_axioms
from .spectra import Spectrum, compute_spectrum


def _closure(cert: SchemeCertificate, indices) -> frozenset:
    closed = set(indices) | {0}
    p = cert.p
    while True:
        cur = sorted(closed)
        new = {
            int(k)
            for i in cur
            for j in cur
            for k in np.flatnonzero(p[i, j])
        } - closed
        if not new:
            return frozenset(closed)
        closed |= new


def is_closed(cert: SchemeCertificate, indices) -> bool:
    s = frozenset(indices)
    return 0 in s and _closure(cert, s) == s


def find_closed_subsets(cert: SchemeCertificate) -> List[Tuple[int, ...]]:
    """Every index set I containing 0 whose relations union to an equivalence relation.

    Closed sets are closed under intersection, so the lattice is generated
    by the closures of the singletons {0, i} under joins.
    """
    found = {frozenset({0})}
    frontier = {_closure(cert, {i}) for i in range(1, cert.d + 1)}
    while frontier:
        found |= frontier
        joins = {_closure(cert, a | b) for a in found for b in found}
        frontier = joins - found
    return sorted((tuple(sorted(s)) for s in found), key=lambda t: (len(t), t))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True, eq=False)
class QuotientStructure:
    index_set: Tuple[int, ...]
    classes: Tuple[Tuple[int, ...], ...]
    block_map: np.ndarray = field(repr=False)
    block_size: int
    quotient: RelationPartition
    cert: SchemeCertificate = field(repr=False)

    @property
    def class_of(self) -> Dict[int, int]:
        return {i: c for c, members in enumerate(self.classes) for i in members}


def index_classes(cert: SchemeCertificate, index_set) -> List[Tuple[int, ...]]:
    """Classes of j ~ k iff p_{i,j}^k != 0 for some i in the index set."""
    uf = _UnionFind(cert.d + 1)
    for i in index_set:
        for j in range(cert.d + 1):
            for k in np.flatnonzero(cert.p[i, j]):
                uf.union(j, int(k))
    groups: Dict[int, List[int]] = {}
    for j in range(cert.d + 1):
        groups.setdefault(uf.find(j), []).append(j)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def quotient_scheme(cert: SchemeCertificate, index_set: Sequence[int]) -> QuotientStructure:
    I = tuple(sorted(set(index_set) | {0}))
    if not is_closed(cert, I):
        raise NotClosed(f"relations {list(I)} do not form an equivalence relation")
    classes = index_classes(cert, I)
    if classes[0] != I:
        raise NotClosed(f"index class of 0 is {classes[0]}, expected {I}")
    rel = cert.rel
    in_block = np.isin(rel, I)
    block = np.full(cert.n, -1, dtype=np.int64)
    nblocks = 0
    for x in range(cert.n):
        if block[x] < 0:
            block[in_block[x]] = nblocks
            nblocks += 1
    sizes = np.bincount(block)
    if sizes.min() != sizes.max():
        raise UnequalBlocks(f"block sizes range from {sizes.min()} to {sizes.max()}")
    class_of = np.zeros(cert.d + 1, dtype=np.int64)
    for c, members in enumerate(classes):
        class_of[list(members)] = c
    reps = np.array([int(np.flatnonzero(block == b)[0]) for b in range(nblocks)])
    qrel = class_of[rel[np.ix_(reps, reps)]]
    if not np.array_equal(class_of[rel], qrel[np.ix_(block, block)]):
        raise NotClosed("relation classes are not constant on block pairs")
    quotient = RelationPartition(qrel, len(classes) - 1)
    return QuotientStructure(I, tuple(classes), block, int(sizes[0]), quotient, verify_axioms(quotient))


def permute_certificate(cert: SchemeCertificate, order: Sequence[int]) -> SchemeCertificate:
    """Relabel relations (new a = old order[a]) without recounting."""
    o = list(order)
    rp = cert.partition.relabel_relations(o)
    p = cert.p[np.ix_(o, o, o)]
    k = tuple(cert.k[i] for i in o)
    adjacency = tuple(cert.adjacency[i] for i in o)
    return SchemeCertificate(rp, p, k, adjacency)


@dataclass(frozen=True, eq=False)
class CoverProfile:
    arrangement: Tuple[int, ...]  # new relation a = old relation arrangement[a]
    phi: np.ndarray = field(repr=False)
    m: int
    r: int
    s: int
    n: int
    m3: int
    m4: int
    alpha3: Fraction
    alpha4: Fraction
    k: int
    cert: SchemeCertificate = field(repr=False)
    spectrum: Spectrum = field(repr=False)
    quotient: QuotientStructure = field(repr=False)
    quotient_spectrum: Spectrum = field(repr=False)

    def identities(self) -> Dict[str, bool]:
        return {
            "m3+m4=n": self.m3 + self.m4 == self.n,
            "m3*alpha3+m4*alpha4=0": self.m3 * self.alpha3 + self.m4 * self.alpha4 == 0,
            "k*alpha3*alpha4=-1": self.k * self.alpha3 * self.alpha4 == -1,
            "r>s": self.r > self.s,
        }

    def template_Q(self) -> RationalMatrix:
        m, r, s, n = self.m, self.r, self.s, self.n
        a3 = self.m3 * self.alpha3
        a4 = self.m4 * self.alpha4
        return RationalMatrix([
            [1, m, n - m - 1, self.m3, self.m4],
            [1, r, -r - 1, a3, a4],
            [1, s, -s - 1, 0, 0],
            [1, r, -r - 1, -a3, -a4],
            [1, m, n - m - 1, -self.m3, -self.m4],
        ])


def _read_quotient_params(qspec: Spectrum) -> Tuple[Spectrum, int, int, int]:
    Q = qspec.Q
    if Q[1, 1] > Q[2, 1]:
        ordered = qspec
    elif Q[1, 2] > Q[2, 2]:
        ordered = qspec.reordered(eigenspaces=[0, 2, 1])
    else:
        raise ArrangementImpossible("quotient has r = s")
    Q = ordered.Q
    return ordered, int(Q[0, 1]), int(Q[1, 1]), int(Q[2, 1])


def recognize_cover(cert: SchemeCertificate) -> CoverProfile:
    if cert.d != 4:
        raise NotAFourClassCover(f"scheme has {cert.d} classes, need 4")
    candidates = [j for j in range(1, 5) if cert.k[j] == 1 and is_closed(cert, (0, j))]
    if not candidates:
        raise NotAFourClassCover("no closed relation of valency 1")
    spec0 = compute_spectrum(cert)
    for j in candidates:
        classes = index_classes(cert, (0, j))
        pairs = [c for c in classes[1:] if len(c) == 2]
        singles = [c for c in classes[1:] if len(c) == 1]
        if len(classes) == 3 and len(pairs) == 1 and len(singles) == 1:
            break
    else:
        raise ArrangementImpossible(
            f"index classes {classes} do not have the shape {{0,.}},{{.,.}},{{.}}"
        )
    a, b = pairs[0]
    Q = spec0.Q
    lifted = [e for e in range(1, 5) if Q[j, e] == Q[0, e]]
    antipodal = [e for e in range(1, 5) if Q[j, e] == -Q[0, e]]
    if len(lifted) != 2 or len(antipodal) != 2:
        raise ArrangementImpossible("eigenspaces do not split 2 + 2 under the antipodal relation")
    # R_1 is the member of the swapped pair with alpha_3 > 0; this depends
    # only on the spectrum, not on how the input labels its relations
    e3 = min(antipodal, key=lambda e: Q[0, e])
    if Q[a, e3] < 0:
        a, b = b, a
    order = (0, a, singles[0][0], b, j)
    arranged = permute_certificate(cert, order)
    spec = spec0.reordered(relations=order)

    Q = spec.Q
    lifted = [e for e in range(1, 5) if Q[4, e] == Q[0, e]]
    antipodal = [e for e in range(1, 5) if Q[4, e] == -Q[0, e]]
    lifted.sort(key=lambda e: Q[1, e] <= Q[2, e])
    antipodal.sort(key=lambda e: (Q[0, e], -Q[1, e]))
    spec = spec.reordered(eigenspaces=[0] + lifted + antipodal)

    quotient = quotient_scheme(arranged, (0, 4))
    qspec, m, r, s = _read_quotient_params(compute_spectrum(quotient.cert))

    phi = np.argmax(arranged.rel == 4, axis=1)
    Q = spec.Q
    m3, m4 = int(Q[0, 3]), int(Q[0, 4])
    return CoverProfile(
        arrangement=order,
        phi=phi,
        m=m, r=r, s=s, n=quotient.quotient.n,
        m3=m3, m4=m4,
        alpha3=Q[1, 3] / m3,
        alpha4=Q[1, 4] / m4,
        k=arranged.k[1],
        cert=arranged,
        spectrum=spec,
        quotient=quotient,
        quotient_spectrum=qspec,
    )


@dataclass
class AntipodalReport:
    relation_ok: Dict[int, bool]
    involution: bool
    fixed_point_free: bool

    @property
    def ok(self) -> bool:
        return all(self.relation_ok.values()) and self.involution and self.fixed_point_free

    @property
    def failing(self) -> List[int]:
        return [i for i, good in self.relation_ok.items() if not good]

    def lines(self) -> List[str]:
        out = [f"PHI relation={i} {'OK' if good else 'FAIL'}" for i, good in self.relation_ok.items()]
        out.append(f"PHI involution {'OK' if self.involution else 'FAIL'}")
        out.append(f"PHI fixed-point-free {'OK' if self.fixed_point_free else 'FAIL'}")
        return out


def antipodal_action(profile: CoverProfile, cert: SchemeCertificate = None) -> AntipodalReport:
    """Check that rel(phi(x), y) = 4 - rel(x, y), i.e. Pi_phi A_i = A_{4-i}."""
    cert = profile.cert if cert is None else cert
    rel = cert.rel.astype(np.int64)
    phi = profile.phi
    moved = rel[phi, :]
    relation_ok = {}
    for i in range(5):
        mask = rel == i
        relation_ok[i] = bool(np.all(moved[mask] == 4 - i))
    ar = np.arange(cert.n)
    return AntipodalReport(
        relation_ok,
        involution=bool(np.array_equal(phi[phi], ar)),
        fixed_point_free=bool(np.all(phi != ar)),
    )
