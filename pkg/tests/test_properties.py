"""Randomized property suites (at least 100 examples each)."""

from itertools import permutations

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from schemes import SMALL

from asch.errors import CheckFailed, IdentityViolation, IntersectionNumberNotConstant, NotSymmetric
from asch.exact_linalg import RationalMatrix, char_poly
from asch.gold_code import example_cover_q
from asch.imprimitivity import recognize_cover
from asch.scheme_core import RelationPartition, same_certificate, verify_axioms
from asch.spectra import compute_spectrum, verify_duality

PROPS = settings(max_examples=120, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
NAMES = sorted(SMALL)
CERTS = {name: verify_axioms(SMALL[name]()) for name in NAMES}
SPECTRA = {name: compute_spectrum(cert) for name, cert in CERTS.items()}


def witness_is_real(exc, rel):
    if isinstance(exc, IdentityViolation):
        x, y = exc.witness
        return (x == y) != (rel[x, y] == 0)
    if isinstance(exc, NotSymmetric):
        x, y = exc.witness
        return rel[x, y] != rel[y, x]
    if isinstance(exc, IntersectionNumberNotConstant):
        (x1, y1, c1), (x2, y2, c2) = exc.witnesses
        i, j, k = exc.i, exc.j, exc.k

        def count(x, y):
            return int(((rel[x] == i) & (rel[:, y] == j)).sum())

        return rel[x1, y1] == rel[x2, y2] == k and count(x1, y1) == c1 and count(x2, y2) == c2 and c1 != c2
    return False


@PROPS
@given(st.sampled_from(NAMES), st.data())
def test_single_cell_corruption_is_rejected_with_witness(name, data):
    rp = SMALL[name]()
    rel = rp.rel.astype(np.int64).copy()
    x = data.draw(st.integers(0, rp.n - 1))
    y = data.draw(st.integers(0, rp.n - 1))
    new = data.draw(st.integers(0, rp.d).filter(lambda v: v != rel[x, y]))
    rel[x, y] = new
    try:
        corrupted = RelationPartition(rel, rp.d)
    except Exception:
        return  # a relation vanished entirely; the input is not even a partition
    try:
        verify_axioms(corrupted)
    except CheckFailed as exc:
        assert witness_is_real(exc, rel), exc
    else:
        raise AssertionError("corruption accepted")


@PROPS
@given(st.sampled_from(NAMES), st.randoms(use_true_random=False))
def test_point_relabeling_invariance(name, rnd):
    rp = SMALL[name]()
    perm = list(range(rp.n))
    rnd.shuffle(perm)
    cert = verify_axioms(rp.permute_points(np.array(perm)))
    assert same_certificate(cert, CERTS[name])
    spec = compute_spectrum(cert)
    assert spec.P == SPECTRA[name].P and spec.Q == SPECTRA[name].Q


@PROPS
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
))
def test_cayley_hamilton(rows):
    m = RationalMatrix(rows)
    n = len(rows)
    assert char_poly(m).degree == n
    assert char_poly(m).at_matrix(m) == RationalMatrix.zeros(n, n)


@PROPS
@given(st.sampled_from(NAMES), st.randoms(use_true_random=False))
def test_PQ_is_scaled_identity(name, rnd):
    rp = SMALL[name]()
    order = list(range(1, rp.d + 1))
    rnd.shuffle(order)
    spec = compute_spectrum(verify_axioms(rp.relabel_relations([0] + order)))
    assert spec.P @ spec.Q == RationalMatrix.identity(rp.d + 1).scale(rp.n)
    assert verify_duality(spec).ok


def test_cover_recognition_ignores_relation_labels(gold3):
    for order in permutations(range(1, 5)):
        prof = recognize_cover(verify_axioms(gold3.rp.relabel_relations((0,) + order)))
        assert prof.spectrum.Q == example_cover_q(3)
        assert (prof.cert.rel == gold3.profile.cert.rel).all()
