"""Exact polynomials in d (the derivation), l, u (formal parameters) and m, n, k."""

# %%
from homgd import MPoly, poly

p = poly("d^2 + 2*d*l - 1/2")
q = poly("l + d")
print("p       =", p)
print("p * q   =", p * q)
print("p(l -> -l - d) =", p.subst("l", -poly("l") - poly("d")))

# %% coefficients are Fractions, never floats
print("coeff of d*l:", p.coeff(d=1, l=1))
print("p at d=1/3, l=2:", p.eval({"d": "1/3", "l": 2}))

# %% canonical form: equal polynomials print the same
a = poly("(d + l)^2")
b = poly("l^2 + 2*l*d + d^2")
print(a == b, str(a) == str(b))
