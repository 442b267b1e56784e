"""Tight {0,2,4}-cliques, spreads, and the 5-class fission of a cover.

All functions expect a cover already put in canonical arrangement by
:func:`asch.imprimitivity.recognize_cover`: R_4 is the antipodal matching,
R_1/R_3 are the paired relations and R_2 is self-paired.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    ArrangementImpossible,
    BlockNotClique,
    BlockNotTight,
    DegenerateFission,
    EmptySubset,
    NonNegativeTheta,
    NotAPartition,
    NotConstant,
    NotTight,
)
from .exact_linalg import RationalMatrix
from .imprimitivity import CoverProfile
from .scheme_core import RelationPartition, SchemeCertificate, verify_axioms
from .spectra import Spectrum, compute_spectrum

CLIQUE_PROFILE = (0, 2, 4)


def clique_profile(cert: SchemeCertificate, Y: Sequence[int]) -> Tuple[int, ...]:
    Y = np.asarray(Y, dtype=np.int64)
    if Y.size == 0:
        raise EmptySubset("subset is empty")
    return tuple(int(i) for i in np.unique(cert.rel[np.ix_(Y, Y)]))


def delsarte_bound(spectrum: Spectrum) -> Tuple[int, Fraction]:
    """theta = min(P_12, P_22) and the clique bound 2(1 - P_02 / theta)."""
    P = spectrum.P
    theta = min(P[1, 2], P[2, 2])
    if theta >= 0:
        raise NonNegativeTheta(f"theta = {theta} is not negative")
    return int(theta), 2 * (1 - P[0, 2] / theta)


@dataclass(frozen=True)
class TightRegularity:
    constants: Tuple[int, int, int]
    paired_equal: bool  # c1 == c3
    quotient_halving: bool  # c1 + c3 = 2|R1bar & Ybar| and c2 = 2|R2bar & Ybar|


def verify_tight_regularity(profile: CoverProfile, Y: Sequence[int]) -> TightRegularity:
    cert = profile.cert
    Y = np.unique(np.asarray(Y, dtype=np.int64))
    _, bound = delsarte_bound(profile.spectrum)
    prof = clique_profile(cert, Y)
    if prof != CLIQUE_PROFILE or Y.size != bound:
        raise NotTight(f"subset of size {Y.size} with profile {list(prof)}; bound is {bound}")
    outside = np.setdiff1d(np.arange(cert.n), Y)
    sub = cert.rel[np.ix_(outside, Y)]
    counts = {i: (sub == i).sum(axis=1) for i in (1, 2, 3)}
    constants = []
    for i in (1, 2, 3):
        c = counts[i]
        bad = np.flatnonzero(c != c[0])
        if bad.size:
            x2 = int(bad[0])
            raise NotConstant(i, ((int(outside[0]), int(c[0])), (int(outside[x2]), int(c[x2]))))
        constants.append(int(c[0]))
    block = profile.quotient.block_map
    qrel = profile.quotient.quotient.rel
    ybar = np.unique(block[Y])
    qsub = qrel[np.ix_(block[outside], ybar)]
    halving = bool(
        np.all(counts[1] + counts[3] == 2 * (qsub == 1).sum(axis=1))
        and np.all(counts[2] == 2 * (qsub == 2).sum(axis=1))
    )
    c1, c2, c3 = constants
    return TightRegularity((c1, c2, c3), c1 == c3, halving)


@dataclass(frozen=True, eq=False)
class CliquePartition:
    blocks: np.ndarray = field(repr=False)
    f: int
    theta: int
    bound: Fraction
    profile: CoverProfile = field(repr=False)

    def members(self, b: int) -> np.ndarray:
        return np.flatnonzero(self.blocks == b)


def _check_partition(blocks, n: int) -> Tuple[np.ndarray, int]:
    blocks = np.asarray(blocks)
    if blocks.shape != (n,):
        raise NotAPartition(f"expected {n} block labels, got shape {blocks.shape}")
    if not np.issubdtype(blocks.dtype, np.integer) or blocks.min() < 0:
        raise NotAPartition("block labels must be non-negative integers")
    f = int(blocks.max()) + 1
    unused = np.flatnonzero(np.bincount(blocks, minlength=f) == 0)
    if unused.size:
        raise NotAPartition(f"block {int(unused[0])} is empty")
    return blocks.astype(np.int64), f


def validate_spread(profile: CoverProfile, blocks) -> CliquePartition:
    cert = profile.cert
    blocks, f = _check_partition(blocks, cert.n)
    theta, bound = delsarte_bound(profile.spectrum)
    for b in range(f):
        Y = np.flatnonzero(blocks == b)
        prof = clique_profile(cert, Y)
        if prof != CLIQUE_PROFILE:
            raise BlockNotClique(b, prof)
        if Y.size != bound:
            raise BlockNotTight(b, Y.size, bound)
    return CliquePartition(blocks, f, theta, bound, profile)


@dataclass(eq=False)
class FissionScheme:
    refined: RelationPartition = field(repr=False)
    cert5: SchemeCertificate = field(repr=False)
    spectrum5: Spectrum = field(repr=False)
    partition: CliquePartition = field(repr=False)
    reconciliation: Optional["ReconciliationReport"] = field(default=None, repr=False)

    @property
    def profile(self) -> CoverProfile:
        return self.partition.profile

    @property
    def k(self) -> Tuple[int, ...]:
        return self.cert5.k

    @property
    def m(self) -> Tuple[int, ...]:
        return self.spectrum5.m


def refine(profile: CoverProfile, blocks: np.ndarray) -> RelationPartition:
    """Split R_2 into its within-block part (kept as 2) and the rest (new 5)."""
    rel = profile.cert.rel
    same = blocks[:, None] == blocks[None, :]
    rel5 = np.where((rel == 2) & ~same, 5, rel)
    if not (rel5 == 5).any():
        raise DegenerateFission("every R_2 pair lies inside a block; the cross part is empty")
    if not (rel5 == 2).any():
        raise DegenerateFission("no R_2 pair lies inside a block; the within part is empty")
    return RelationPartition(rel5, 5)


def projection_column(partition: CliquePartition, size: int) -> List[Fraction]:
    """|X| times the entries of (1/|Y|) blockdiag(J) - (1/|X|) J, per relation."""
    within = Fraction(size, int(partition.bound)) - 1
    return [within if i in CLIQUE_PROFILE else Fraction(-1) for i in range(6)]


def fission(profile: CoverProfile, partition: CliquePartition) -> FissionScheme:
    """Refine the cover along a validated spread and certify the result.

    Eigenspaces of the result are ordered so that 0, 1, 3, 4 are the
    cover's own, 5 is the clique-indicator projection and 2 is what
    remains of the cover's E_2.
    """
    if partition.profile is not profile:
        partition = validate_spread(profile, partition.blocks)
    refined = refine(profile, partition.blocks)
    cert5 = verify_axioms(refined)
    spec = compute_spectrum(cert5)

    Q = spec.Q
    cover_Q = profile.spectrum.Q
    dup = [0, 1, 2, 3, 4, 2]
    wanted = {e: [cover_Q[i, e] for i in dup] for e in (0, 1, 3, 4)}
    wanted[5] = projection_column(partition, cert5.n)
    order = [None] * 6
    taken = set()
    for e, column in wanted.items():
        hit = [c for c in range(6) if c not in taken and list(Q.col(c)) == column]
        if not hit:
            raise ArrangementImpossible(f"no fission eigenspace matches the expected column for index {e}")
        order[e] = hit[0]
        taken.add(hit[0])
    rest = [c for c in range(6) if c not in taken]
    order[2] = rest[0]
    fs = FissionScheme(refined, cert5, spec.reordered(eigenspaces=order), partition)
    fs.reconciliation = reconcile_fission_formulas(fs, profile)
    return fs


# ----------------------------------------------------------------------
# closed forms and reconciliation

def closed_form_q(profile: CoverProfile) -> RationalMatrix:
    m, r, s, n = profile.m, profile.r, profile.s, profile.n
    t = Fraction(m, s)
    a3 = profile.m3 * profile.alpha3
    a4 = profile.m4 * profile.alpha4
    return RationalMatrix([
        [1, m, n - m - 1 + t, profile.m3, profile.m4, -t],
        [1, r, -r, a3, a4, -1],
        [1, s, -s, 0, 0, -1],
        [1, r, -r, -a3, -a4, -1],
        [1, m, n - m - 1 + t, -profile.m3, -profile.m4, -t],
        [1, s, -s - 1 + t, 0, 0, -t],
    ])


def closed_form_valencies(profile: CoverProfile) -> RationalMatrix:
    k, n, t = profile.k, profile.n, Fraction(profile.m, profile.s)
    return RationalMatrix([[1, k, 2 * (n - k - 1) + t, k, 1, -t]])


def closed_form_p(profile: CoverProfile) -> List[List[Optional[Fraction]]]:
    """First-eigenmatrix closed form; cells with a zero denominator are None."""
    m, r, s, n, k = (Fraction(v) for v in (profile.m, profile.r, profile.s, profile.n, profile.k))
    alpha = profile.alpha3
    t = m / s
    head = 2 * (n - k - 1) + t
    mid = (m + 2 * s * (n - k - 1)) / m
    denom = m * (s - 1) + s * (n - 1)
    if denom == 0:
        p21 = p22 = p25 = None
    else:
        p21 = k * r * s / denom
        p22 = s * (m + 2 * s * (n - k - 1)) / denom
        p25 = m * (m - s * (s + 1)) / (s * denom)
    inv_alpha = None if alpha == 0 else 1 / alpha
    return [
        [1, k, head, k, 1, -t],
        [1, k * r / m, mid, k * r / m, 1, -1],
        [1, p21, p22, p21, 1, p25],
        [1, alpha * k, 0, -alpha * k, -1, 0],
        [1, None if inv_alpha is None else -inv_alpha, 0, inv_alpha, -1, 0],
        [1, k * s / m, mid, k * s / m, 1, -t],
    ]


@dataclass
class TemplateComparison:
    name: str
    row_map: Tuple[int, ...]  # computed row i is compared with template row row_map[i]
    col_map: Tuple[int, ...]
    diffs: List[Tuple[int, int, Fraction, Optional[Fraction]]]  # template coordinates
    identity_diffs: int

    @property
    def matches(self) -> bool:
        return not self.diffs


def _diff(computed, template, row_map, col_map):
    out = []
    for i, ti in enumerate(row_map):
        for j, tj in enumerate(col_map):
            c, t = computed[i][j], template[ti][tj]
            if t is None or c != t:
                out.append((ti, tj, c, t))
    return sorted(out, key=lambda cell: cell[:2])


def compare_template(name: str, computed, template, swap_rows=True, swap_cols=True) -> TemplateComparison:
    """Best match over transposing indices 2 and 5 on either axis; identity wins ties."""
    rows = len(computed)
    cols = len(computed[0])
    ident_r = tuple(range(rows))
    ident_c = tuple(range(cols))
    swap = lambda t: tuple(5 if i == 2 else 2 if i == 5 else i for i in t)
    row_opts = [ident_r] + ([swap(ident_r)] if swap_rows and rows == 6 else [])
    col_opts = [ident_c] + ([swap(ident_c)] if swap_cols and cols == 6 else [])
    best = None
    for rm, cm in itertools.product(row_opts, col_opts):
        d = _diff(computed, template, rm, cm)
        if best is None or len(d) < len(best[2]):
            best = (rm, cm, d)
    identity = len(_diff(computed, template, ident_r, ident_c))
    return TemplateComparison(name, best[0], best[1], best[2], identity)


@dataclass
class ReconciliationReport:
    comparisons: List[TemplateComparison] = field(default_factory=list)

    def get(self, name: str) -> TemplateComparison:
        return next(c for c in self.comparisons if c.name == name)

    def lines(self) -> List[str]:
        out = []
        for c in self.comparisons:
            out.append(f"SECTION {c.name}")
            out.append(
                "MAP rows=" + ",".join(map(str, c.row_map))
                + " cols=" + ",".join(map(str, c.col_map))
            )
            out.append(f"DIFFS {len(c.diffs)} IDENTITY_DIFFS {c.identity_diffs}")
            for i, j, comp, tmpl in c.diffs:
                shown = "undefined" if tmpl is None else str(tmpl)
                out.append(f"CELL row={i} col={j} computed={comp} paper={shown}")
            out.append("MATCH" if c.matches else "MISMATCH")
        return out

    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines())


def reconcile_fission_formulas(fs: FissionScheme, profile: CoverProfile,
                               example_q: Optional[RationalMatrix] = None) -> ReconciliationReport:
    """Compare the computed fission spectrum with the closed-form templates.

    When the cover has the parameters of a Gold-code scheme and no
    ``example_q`` is given, the stated fission Q for that family is
    compared as well.
    """
    from .gold_code import example_fission_q, gold_degree_for

    Q = fs.spectrum5.Q.tolist()
    P = fs.spectrum5.P.tolist()
    report = ReconciliationReport()
    report.comparisons.append(compare_template("closed_form_q", Q, closed_form_q(profile).tolist()))
    report.comparisons.append(
        compare_template("closed_form_valencies", [list(fs.k)],
                         closed_form_valencies(profile).tolist(), swap_rows=False)
    )
    report.comparisons.append(compare_template("closed_form_p", P, closed_form_p(profile)))
    if example_q is None:
        mu = gold_degree_for(profile.m, profile.r, profile.s, profile.n)
        if mu is not None:
            example_q = example_fission_q(mu)
    if example_q is not None:
        report.comparisons.append(compare_template("example_q", Q, example_q.tolist()))
    return report


def recover_fission(rp5: RelationPartition, blocks) -> FissionScheme:
    """Rebuild a :class:`FissionScheme` from a refined 5-class partition and its spread.

    The within-block relations identify the antipodal and within-clique
    relations; the cross relation that the antipodal map fixes is fused
    back with the within-clique one to recover the cover, and the fission
    is redone from there.  The result must reproduce ``rp5`` up to a
    relabeling of relations.
    """
    from .imprimitivity import recognize_cover

    if rp5.d != 5:
        raise ArrangementImpossible(f"expected a 5-class scheme, got {rp5.d} classes")
    cert5 = verify_axioms(rp5)
    blocks, _ = _check_partition(blocks, rp5.n)
    rel = cert5.rel
    same = blocks[:, None] == blocks[None, :]
    inside = sorted(set(np.unique(rel[same]).tolist()) - {0})
    if len(inside) != 2:
        raise ArrangementImpossible(f"blocks realize relations {inside} besides 0")
    antipodal = [i for i in inside if cert5.k[i] == 1]
    if len(antipodal) != 1:
        raise ArrangementImpossible("no unique valency-1 relation inside the blocks")
    a = antipodal[0]
    w = next(i for i in inside if i != a)
    phi = np.argmax(rel == a, axis=1)
    moved = rel[:, phi]
    fixed = [
        c for c in range(1, 6)
        if c not in inside and np.all(moved[rel == c] == c)
    ]
    if len(fixed) != 1:
        raise ArrangementImpossible("cannot identify the cross-block part of the split relation")
    c = fixed[0]
    fused = np.where(rel == c, w, rel).astype(np.int64)
    labels = [i for i in range(6) if i != c]
    compress = np.zeros(6, dtype=np.int64)
    compress[labels] = np.arange(5)
    cover = verify_axioms(RelationPartition(compress[fused], 4))
    profile = recognize_cover(cover)
    fs = fission(profile, validate_spread(profile, blocks))
    pairs = np.unique(np.stack([rel.ravel(), fs.refined.rel.ravel()]), axis=1)
    if pairs.shape[1] != 6 or len(set(pairs[0])) != 6 or len(set(pairs[1])) != 6:
        raise ArrangementImpossible("recomputed fission does not reproduce the input relations")
    return fs
