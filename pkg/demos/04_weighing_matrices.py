# %% [markdown]
# Mutually unbiased weighing matrices
#
# In the eigenspace whose multiplicity is half the clique size, each
# clique is a cross-polytope.  Picking one point per antipodal pair
# turns the Gram matrix into blocks (1/alpha) G_ab, which are weighing
# matrices, and any two of them are unbiased.

# %%
import numpy as np

from asch import (
    build_gold_code,
    fission,
    recognize_cover,
    rm_coset_partition,
    scheme_from_code,
    validate_spread,
    verify_axioms,
)
from asch.muwm import muwm_bound, verify_unbiased, weighing_families

code = build_gold_code(3)
prof = recognize_cover(verify_axioms(scheme_from_code(code)))
fs = fission(prof, validate_spread(prof, rm_coset_partition(code)))
print("\n".join(muwm_bound(fs).lines()))

# %%
fam = weighing_families(fs)[3]
print("size", fam.dim, "weight", fam.weight, "alpha", fam.alpha)
W = fam.matrix(1, 0)
print(W)
print(W @ W.T)

# %%
print(verify_unbiased(fam).line())
print(np.array_equal(fam.matrix(1, 0) @ fam.matrix(2, 0).T, 2 * fam.matrix(1, 2)))
