"""The constructions: commutator, twists, derivation products and Poisson data."""

# %%
from homgd import check_axioms, commutator_bracket, derivation_product, endomorphism_twist
from homgd.constructions import lie_2d, nilpotent_exp, nilpotent_truncated, truncated_algebra, trivial_lie_gd

# Hom-Novikov algebra -> Hom-GD via the commutator bracket
N = derivation_product(truncated_algebra(3, 2), 0, "twisted").replace(drop=("bracket",))
G = commutator_bracket(N)
print("commutator -> hom_gd:", check_axioms(G, "hom_gd").passed)

# %% twisting a GD bialgebra by an automorphism
T = trivial_lie_gd(lie_2d()).replace(maps={"alpha": ((1, 1), (0, 1))})
print("gd twist -> hom_gd:", check_axioms(endomorphism_twist(T, "gd"), "hom_gd").passed)

# %% derivation product on k[x]/(x^3), a few weights
# plain mode wants a commutative Hom-associative dot, so alpha = id here;
# twisted mode takes the ordinary product with alpha(x) = 2x
for mode, q in (("plain", 1), ("twisted", 2)):
    A = truncated_algebra(3, q)
    for w in (0, 1, "1/2"):
        out = derivation_product(A, w, mode)
        print(mode, w, check_axioms(out, "hom_gd").passed, out.metadata.get("warnings", []))

# the same ordinary product with alpha(x) = 2x is not Hom-associative; plain mode says so
print(derivation_product(truncated_algebra(3, 2), 0, "plain").metadata["warnings"])

# %% a nilpotent derivation and alpha = exp(D)
X = nilpotent_exp(nilpotent_truncated(4), 1)
print("nilpotent exp:", check_axioms(X, "hom_gd").passed)
