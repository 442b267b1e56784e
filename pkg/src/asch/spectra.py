"""First and second eigenmatrices of a certified scheme."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import NonIntegralMultiplicity
from .exact_linalg import RationalMatrix, common_eigenbasis, rat_inverse
from .scheme_core import SchemeCertificate, intersection_matrices


@dataclass(frozen=True)
class Spectrum:
    """P has eigenspaces as rows and relations as columns; Q = |X| P^-1."""

    P: RationalMatrix
    Q: RationalMatrix
    sizeX: int

    @property
    def k(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.P.row(0))

    @property
    def m(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.Q.row(0))

    @property
    def d(self) -> int:
        return self.P.rows - 1

    def reordered(self, relations: Sequence[int] = None, eigenspaces: Sequence[int] = None) -> "Spectrum":
        """Relabel relations and/or eigenspaces.

        New relation ``a`` is old relation ``relations[a]``; likewise for
        eigenspaces.  Both orders must keep index 0 in place.
        """
        for order in (relations, eigenspaces):
            if order is not None and order[0] != 0:
                raise ValueError("index 0 must stay first")
        return Spectrum(
            self.P.permuted(eigenspaces, relations),
            self.Q.permuted(relations, eigenspaces),
            self.sizeX,
        )


def _canonical_key(values: Tuple[int, ...], valencies: Tuple[int, ...]):
    # Perron row first, then descending lexicographic order
    return (values != valencies, tuple(-v for v in values))


def compute_spectrum(cert: SchemeCertificate) -> Spectrum:
    family = intersection_matrices(cert)
    pairs = common_eigenbasis(family)
    rows = sorted((lams for _, lams in pairs), key=lambda t: _canonical_key(t, cert.k))
    if rows[0] != cert.k:
        raise NonIntegralMultiplicity("no eigenspace carries the valencies")
    P = RationalMatrix(rows)
    Q = rat_inverse(P).scale(cert.n)
    for j, mj in enumerate(Q.row(0)):
        if mj.denominator != 1 or mj <= 0:
            raise NonIntegralMultiplicity(f"multiplicity m_{j} = {mj}")
    return Spectrum(P, Q, cert.n)


@dataclass
class DualityReport:
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> List[str]:
        if self.ok:
            return ["DUALITY OK"]
        return self.violations


def verify_duality(spec: Spectrum) -> DualityReport:
    """Check Q_ij k_i = P_ji m_j, Q^T diag(k) Q = |X| diag(m), PQ = |X| I,
    and the multiplicity formula m_j = |X| / sum_i P_ji^2 / k_i."""
    P, Q, X = spec.P, spec.Q, spec.sizeX
    k = P.row(0)
    m = Q.row(0)
    size = P.rows
    report = DualityReport()
    for i in range(size):
        for j in range(size):
            if Q[i, j] * k[i] != P[j, i] * m[j]:
                report.violations.append(
                    f"DUAL cell=({i},{j}) Q*k={Q[i, j] * k[i]} P*m={P[j, i] * m[j]}"
                )
    gram = Q.T @ RationalMatrix.diagonal(k) @ Q
    for a in range(size):
        for b in range(size):
            want = X * m[a] if a == b else 0
            if gram[a, b] != want:
                report.violations.append(f"ORTHO cell=({a},{b}) got={gram[a, b]} want={want}")
    prod = P @ Q
    for a in range(size):
        for b in range(size):
            want = X if a == b else 0
            if prod[a, b] != want:
                report.violations.append(f"PQ cell=({a},{b}) got={prod[a, b]} want={want}")
    for j in range(size):
        if any(v == 0 for v in k):
            break
        denom = sum(P[j, i] ** 2 / k[i] for i in range(size))
        if denom == 0 or Fraction(X) / denom != m[j]:
            report.violations.append(f"MULT index={j} formula disagrees with m={m[j]}")
    return report
