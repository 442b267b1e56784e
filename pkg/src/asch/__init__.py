"""Exact computation and verification of symmetric association schemes.

Covers axiom certification, eigenmatrices, two-fold covers of strongly
regular graphs, spread-driven fission to five classes, weighing matrices
from the fission, and the Gold-code family of instances.
"""

from .clique_fission import (
    CliquePartition,
    FissionScheme,
    clique_profile,
    delsarte_bound,
    fission,
    recover_fission,
    reconcile_fission_formulas,
    validate_spread,
    verify_tight_regularity,
)
from .exact_linalg import RationalMatrix, char_poly, common_eigenbasis, det, integer_eigenvalues
from .gold_code import BinaryField, GoldCode, build_gold_code, rm_coset_partition, scheme_from_code
from .imprimitivity import antipodal_action, find_closed_subsets, quotient_scheme, recognize_cover
from .muwm import muwm_bound, verify_unbiased, weighing_families
from .scheme_core import RelationPartition, SchemeCertificate, verify_axioms
from .spectra import Spectrum, compute_spectrum, verify_duality

__version__ = "0.1.0"
