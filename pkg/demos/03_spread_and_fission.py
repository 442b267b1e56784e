# %% [markdown]
# Tight cliques, the coset spread, and the 5-class fission
#
# Cosets of RM(1,m) are {0,2,4}-cliques meeting the clique bound.
# Splitting relation 2 into its within-coset and cross-coset parts gives
# a 5-class scheme, whose spectrum is then compared with the stated
# closed forms.

# %%
from asch import (
    build_gold_code,
    delsarte_bound,
    fission,
    recognize_cover,
    rm_coset_partition,
    scheme_from_code,
    validate_spread,
    verify_axioms,
    verify_tight_regularity,
)

code = build_gold_code(3)
prof = recognize_cover(verify_axioms(scheme_from_code(code)))
print("theta, bound =", delsarte_bound(prof.spectrum))

spread = validate_spread(prof, rm_coset_partition(code))
print("blocks", spread.f)
print("outside counts", verify_tight_regularity(prof, spread.members(0)))

# %%
fs = fission(prof, spread)
print("valencies", fs.k)
print("multiplicities", fs.m)
print(fs.spectrum5.Q.to_text())

# %%
print(fs.reconciliation.text())
