"""Relation partitions and association scheme axiom checks."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    IdentityViolation,
    IntersectionNumberNotConstant,
    MalformedPartition,
    NotSymmetric,
)
from .exact_linalg import RationalMatrix


def thread_count() -> int:
    env = os.environ.get("ASCH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


class RelationPartition:
    """An n x n table of relation indices in ``[0, d]``.

    Only well-formedness is checked here (shape, range, every index used).
    The scheme axioms themselves are checked by :func:`verify_axioms`.
    """

    def __init__(self, rel, d: Optional[int] = None):
        rel = np.asarray(rel)
        if rel.ndim != 2 or rel.shape[0] != rel.shape[1] or rel.shape[0] == 0:
            raise MalformedPartition(f"relation table must be square, got shape {rel.shape}")
        if not np.issubdtype(rel.dtype, np.integer):
            raise MalformedPartition("relation table must hold integers")
        lo, hi = int(rel.min()), int(rel.max())
        if d is None:
            d = hi
        if lo < 0 or hi > d:
            raise MalformedPartition(f"relation indices must lie in [0,{d}]")
        used = np.bincount(rel.ravel().astype(np.int64), minlength=d + 1)
        missing = [i for i in range(d + 1) if used[i] == 0]
        if missing:
            raise MalformedPartition(f"relations {missing} are empty")
        dtype = np.uint8 if d < 256 else np.int32
        self.rel = np.ascontiguousarray(rel, dtype=dtype)
        self.rel.setflags(write=False)
        self.n = rel.shape[0]
        self.d = int(d)

    def __eq__(self, other):
        if not isinstance(other, RelationPartition):
            return NotImplemented
        return self.d == other.d and np.array_equal(self.rel, other.rel)

    def __repr__(self):
        return f"RelationPartition(n={self.n}, d={self.d})"

    def relabel_relations(self, order: Sequence[int]) -> "RelationPartition":
        """New relation ``a`` is old relation ``order[a]``."""
        inv = np.empty(self.d + 1, dtype=np.int64)
        inv[list(order)] = np.arange(self.d + 1)
        return RelationPartition(inv[self.rel], self.d)

    def permute_points(self, perm: Sequence[int]) -> "RelationPartition":
        """New point ``x`` is old point ``perm[x]``."""
        perm = np.asarray(perm)
        return RelationPartition(self.rel[np.ix_(perm, perm)], self.d)


@dataclass(frozen=True, eq=False)
class SchemeCertificate:
    partition: RelationPartition
    p: np.ndarray  # p[i, j, k] = p_{i,j}^k
    k: Tuple[int, ...]
    adjacency: Tuple[np.ndarray, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def d(self) -> int:
        return self.partition.d

    @property
    def rel(self) -> np.ndarray:
        return self.partition.rel


def _check_identity_and_symmetry(rel: np.ndarray):
    diag = np.diagonal(rel)
    bad = np.flatnonzero(diag)
    if bad.size:
        x = int(bad[0])
        raise IdentityViolation(x, x, int(diag[x]))
    zeros = np.argwhere(rel == 0)
    off = zeros[zeros[:, 0] != zeros[:, 1]]
    if off.size:
        x, y = map(int, off[0])
        raise IdentityViolation(x, y, 0)
    asym = np.argwhere(rel != rel.T)
    if asym.size:
        x, y = map(int, asym[0])
        raise NotSymmetric(x, y, int(rel[x, y]), int(rel[y, x]))


def verify_axioms(rp: RelationPartition) -> SchemeCertificate:
    """Check that ``rp`` is a symmetric association scheme.

    For each pair i <= j the product A_i A_j is formed once (as a float32
    BLAS product, exact for counts below 2**24) and its entries are
    required to be constant on every relation R_k.  The constant is the
    intersection number p_{i,j}^k.
    """
    rel = rp.rel
    n, d = rp.n, rp.d
    _check_identity_and_symmetry(rel)
    if n >= 1 << 24:
        raise MalformedPartition("point count too large for exact float32 counting")

    flat = rel.ravel()
    order = np.argsort(flat, kind="stable")
    sizes = np.bincount(flat, minlength=d + 1)
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    adjacency = tuple(rel == i for i in range(d + 1))
    dense = [a.astype(np.float32) for a in adjacency]

    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    for j in range(d + 1):
        p[0, j, j] = 1
        p[j, 0, j] = 1

    pairs = [(i, j) for i in range(1, d + 1) for j in range(i, d + 1)]

    def check(pair):
        i, j = pair
        counts = (dense[i] @ dense[j]).ravel()[order]
        lo = np.minimum.reduceat(counts, starts)
        hi = np.maximum.reduceat(counts, starts)
        for k in range(d + 1):
            if lo[k] != hi[k]:
                seg = counts[starts[k]:starts[k] + sizes[k]]
                first = int(seg[0])
                other = int(np.flatnonzero(seg != seg[0])[0])
                a = int(order[starts[k]])
                b = int(order[starts[k] + other])
                witnesses = (
                    (a // n, a % n, first),
                    (b // n, b % n, int(seg[other])),
                )
                return pair, IntersectionNumberNotConstant(i, j, k, witnesses)
        return pair, lo.astype(np.int64)

    workers = min(thread_count(), len(pairs)) or 1
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(check, pairs))
    else:
        results = [check(pr) for pr in pairs]

    for (i, j), res in results:
        if isinstance(res, Exception):
            raise res
        p[i, j, :] = res
        p[j, i, :] = res

    k = tuple(int(p[i, i, 0]) for i in range(d + 1))
    return SchemeCertificate(rp, p, k, adjacency)


def intersection_matrices(cert: SchemeCertificate) -> List[RationalMatrix]:
    """B_i with (B_i)[k][j] = p_{i,j}^k."""
    d = cert.d
    return [
        RationalMatrix([[int(cert.p[i, j, k]) for j in range(d + 1)] for k in range(d + 1)])
        for i in range(d + 1)
    ]


def same_certificate(a: SchemeCertificate, b: SchemeCertificate) -> bool:
    return a.k == b.k and np.array_equal(a.p, b.p)
