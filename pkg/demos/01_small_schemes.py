# %% [markdown]
# Small schemes: certificates and eigenmatrices
#
# Build the Hamming scheme H(3,3) from its distance table, certify it,
# and read off P and Q exactly.

# %%
from itertools import product

import numpy as np

from asch import RelationPartition, compute_spectrum, verify_axioms, verify_duality

words = np.array(list(product(range(3), repeat=3)))
rel = (words[:, None, :] != words[None, :, :]).sum(axis=2)
cert = verify_axioms(RelationPartition(rel, 3))
print("valencies", cert.k)

# %%
spec = compute_spectrum(cert)
print("P (eigenspaces x relations)")
print(spec.P.to_text())
print("Q")
print(spec.Q.to_text())
print("multiplicities", spec.m)
print(verify_duality(spec).lines())

# %% [markdown]
# A broken table is rejected with a witness pair.

# %%
from asch.errors import CheckFailed

bad = rel.copy()
bad[0, 1] = bad[1, 0] = 2
try:
    verify_axioms(RelationPartition(bad, 3))
except CheckFailed as exc:
    print(type(exc).__name__, exc)
