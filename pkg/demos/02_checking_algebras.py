"""Checking axioms of a finite-dimensional algebra exhaustively on a basis."""

# %%
from homgd import AlgebraCarrier, check_axioms, truncated_euler

E = truncated_euler(3, 2, 0)  # k[x]/(x^3), Euler field, alpha(x^a) = 2^a x^a
print("circ entries:", {k: {t: str(c) for t, c in row.items()} for k, row in E.ops["circ"].items()})
print("alpha:", [[str(c) for c in row] for row in E.maps["alpha"]])

report = check_axioms(E, "hom_gd")
print("hom_gd passed:", report.passed)

# %% break one structure constant and look at what fails
circ = {key: dict(row) for key, row in E.ops["circ"].items()}
circ[(0, 1)][1] += 1
bad = E.replace(ops={"circ": circ})
report = check_axioms(bad, "hom_gd")
print("violations:", len(report.violations))
for v in report.violations[:5]:
    print(" ", v.identity, v.indices, [str(c) for c in v.residual])

# %% a hand-written two-dimensional Lie algebra [e0, e1] = e1
L = AlgebraCarrier.build(2, ops={"bracket": {(0, 1, 1): 1, (1, 0, 1): -1}},
                         maps={"alpha": [[1, 0], [0, 1]]})
print("hom_lie:", check_axioms(L, "hom_lie").passed)
