"""Hom-GD bialgebras, quadratic conformal algebras and affinizations agree."""

# %%
from homgd import affinization_check, check_axioms, check_hom_jacobi, conformal_to_gd, gd_to_conformal
from homgd import truncated_euler

E = truncated_euler(3, 2, 0)
R = gd_to_conformal(E)
print("[b0_l b1] =", R.bracket(0, 1))
print("conformal ok:", check_hom_jacobi(R).passed)
print("roundtrip:", conformal_to_gd(R).same_structure(E, ["circ", "bracket", "alpha"]))

# %% the affinized bracket on A[t, 1/t]
print("sampled:", affinization_check(E, "sampled").passed)
D = affinization_check(E, "symbolic")
print("symbolic:", D.passed)

# %% change one constant: all three views fail together, and the residuals say where
circ = {key: dict(row) for key, row in E.ops["circ"].items()}
circ[(0, 1)][1] += 1
bad = E.replace(ops={"circ": circ})
print("hom_gd:", check_axioms(bad, "hom_gd").passed)
print("conformal:", check_hom_jacobi(gd_to_conformal(bad)).passed)
D = affinization_check(bad, "symbolic")
print("symbolic:", D.passed, "broken:", sorted(D.localize()))
