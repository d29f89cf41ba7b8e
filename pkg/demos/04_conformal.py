"""Hom-Lie conformal algebras: lambda-brackets, j-products and distributions."""

# %%
from homgd import (check_hom_jacobi, check_skew, degree_of, distribution_bracket, fourier,
                   j_products, reconstruct, virasoro_like)
from homgd.conformal import virasoro_residual

# Virasoro: [L_l L] = (d + 2l) L with alpha(L) = b L
for b in (1, 2, -3):
    R = virasoro_like(b)
    print("b =", b, "skew:", check_skew(R).passed, "hom-jacobi:", check_hom_jacobi(R).passed)

# %% twisting by f(d) with a d-term is not allowed
print("residual for f = d:", virasoro_residual("d"))
print("residual for f = 3:", virasoro_residual("3"))

# %% j-products and back
R = virasoro_like(1)
T = j_products(R)
print("L_(0)L =", T.get(0, 0, 0), " L_(1)L =", T.get(0, 0, 1))
print("reconstructs:", reconstruct(T).same_structure(R))
print("degree:", degree_of(R).value)

# %% local distributions: coefficients of [L(z), L(w)] and the Fourier transform
Ld = distribution_bracket(R, 0, 0)
print("support:", Ld.support())
print("fourier:", fourier(Ld))
print("[L_2, L_-1] coefficient:", Ld.coefficient(2, -1))
