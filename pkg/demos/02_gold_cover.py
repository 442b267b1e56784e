# %% [markdown]
# The Gold-code scheme as a two-fold cover
#
# For odd m the code {Tr(ax + bx^3) + e} has five distances, and its
# distance classes form a 4-class scheme.  Complementation is the
# antipodal map, and the quotient by it is a strongly regular graph.

# %%
from asch import build_gold_code, recognize_cover, scheme_from_code, verify_axioms
from asch.imprimitivity import antipodal_action, find_closed_subsets

code = build_gold_code(3)
print("weight counts", code.weight_counts)
cert = verify_axioms(scheme_from_code(code))
print("valencies", cert.k)
print("closed subsets", find_closed_subsets(cert))

# %%
prof = recognize_cover(cert)
print("quotient (m, r, s, n) =", (prof.m, prof.r, prof.s, prof.n))
print("m3, m4 =", prof.m3, prof.m4, " alpha3, alpha4 =", prof.alpha3, prof.alpha4)
print(prof.identities())
print(prof.spectrum.Q.to_text())

# %%
print(prof.quotient_spectrum.P.to_text())
print("\n".join(antipodal_action(prof).lines()))
