"""Independent oracles built on sympy, used only by the test suite."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import sympy as sp

from homgd.exactpoly import VARS, MPoly

SYMS = sp.symbols(" ".join(VARS))
d, l, u, m, n, k = SYMS
t = sp.Symbol("t")


def to_sympy(p: MPoly):
    expr = sp.Integer(0)
    for exp, c in p.items():
        term = sp.Rational(c.numerator, c.denominator)
        for s, e in zip(SYMS, exp):
            term *= s ** e
        expr += term
    return sp.expand(expr)


def from_sympy(expr) -> MPoly:
    poly = sp.Poly(sp.expand(expr), *SYMS)
    return MPoly({exp: Fraction(int(c.p), int(c.q)) for exp, c in poly.terms() if c != 0})


# -- conformal brackets ---------------------------------------------------------

def conformal_tables(R):
    """``B[(i, j)]`` as a list of sympy expressions in d, l; alpha likewise in d."""
    B = {(i, j): [to_sympy(c) for c in R.bracket_vector(i, j)] for i in range(R.rank) for j in range(R.rank)}
    alpha = [[to_sympy(c) for c in row] for row in R.alpha]
    return B, alpha


def sym_bracket(B, rank, x, y, nu):
    """``[x_nu y]`` for ``x = sum f_i(d) e_i`` given as lists of sympy expressions.

    The coefficients of ``x`` and ``y`` may carry spectators (other symbols);
    only ``d`` is acted on: ``f(d) -> f(-nu)`` on the left and ``h(d) -> h(d + nu)``
    on the right.
    """
    out = [sp.Integer(0)] * rank
    for i, f in enumerate(x):
        if f == 0:
            continue
        fl = f.subs(d, -nu)
        for j, h in enumerate(y):
            if h == 0:
                continue
            hr = h.subs(d, d + nu)
            for p, c in enumerate(B[(i, j)]):
                if c != 0:
                    out[p] += fl * hr * c.subs(l, nu)
    return [sp.expand(e) for e in out]


def sym_alpha(alpha, x):
    rank = len(x)
    return [sp.expand(sum(alpha[p][q] * x[q] for q in range(rank))) for p in range(rank)]


def hom_jacobi_oracle(R, i, j, c):
    """``[alpha(a)_l [b_u c]] - [[a_l b]_{l+u} alpha(c)] - [alpha(b)_u [a_l c]]``."""
    B, alpha = conformal_tables(R)
    rank = R.rank
    e = lambda q: [sp.Integer(1) if p == q else sp.Integer(0) for p in range(rank)]
    a, b, cc = e(i), e(j), e(c)
    lhs = sym_bracket(B, rank, sym_alpha(alpha, a), sym_bracket(B, rank, b, cc, u), l)
    t1 = sym_bracket(B, rank, sym_bracket(B, rank, a, b, l), sym_alpha(alpha, cc), l + u)
    t2 = sym_bracket(B, rank, sym_alpha(alpha, b), sym_bracket(B, rank, a, cc, l), u)
    return [sp.expand(x - y - z) for x, y, z in zip(lhs, t1, t2)]


def skew_oracle(R, i, j):
    """``[e_i_l e_j] + [e_j_{-l-d} e_i]`` with ``d`` acting on the whole coefficient."""
    B, _ = conformal_tables(R)
    return [sp.expand(x + y.subs(l, -l - d)) for x, y in zip(B[(i, j)], B[(j, i)])]


# -- affinization with symbolic exponents -----------------------------------------

def affine_jacobi_by_power(A):
    """Hom-Jacobi sum of ``e_i t^m, e_j t^n, alpha(e_l) t^k`` in the affinization.

    Elements are maps ``(basis, exponent expression) -> sympy coefficient``;
    the bracket follows ``[u t^a, v t^b] = [u,v] t^(a+b) + a (u o v) t^(a+b-1)
    - b (v o u) t^(a+b-1)`` with ``a, b`` symbolic.  Returns, per triple, the
    coefficient vectors of ``t^(m+n+k-s)`` for ``s = 0, 1, 2``.
    """
    circ = A.ops.get("circ", {})
    br = A.ops.get("bracket", {})
    alpha = A.maps["alpha"]
    dim = A.dim

    def add(acc, key, c):
        acc[key] = sp.expand(acc.get(key, 0) + c)

    def bracket(X, Y):
        out = {}
        for (i, a), x in X.items():
            for (j, b), y in Y.items():
                for kk, c in br.get((i, j), {}).items():
                    add(out, (kk, sp.expand(a + b)), x * y * sp.Rational(c.numerator, c.denominator))
                for kk, c in circ.get((i, j), {}).items():
                    add(out, (kk, sp.expand(a + b - 1)), a * x * y * sp.Rational(c.numerator, c.denominator))
                for kk, c in circ.get((j, i), {}).items():
                    add(out, (kk, sp.expand(a + b - 1)), -b * x * y * sp.Rational(c.numerator, c.denominator))
        return out

    def twist(X):
        out = {}
        for (j, a), x in X.items():
            for i in range(dim):
                if alpha[i][j]:
                    add(out, (i, a), x * sp.Rational(alpha[i][j].numerator, alpha[i][j].denominator))
        return out

    result = {}
    for i in range(dim):
        for j in range(dim):
            for q in range(dim):
                U, V, W = {(i, m): 1}, {(j, n): 1}, {(q, k): 1}
                total = {}
                for X, Y, Z in ((U, V, W), (V, W, U), (W, U, V)):
                    for key, c in bracket(bracket(X, Y), twist(Z)).items():
                        add(total, key, c)
                by_power = {s: [sp.Integer(0)] * dim for s in range(3)}
                for (p, e), c in total.items():
                    s = sp.expand(m + n + k - e)
                    by_power[int(s)][p] += c
                result[(i, j, q)] = {s: [sp.expand(x) for x in v] for s, v in by_power.items()}
    return result


# -- formal distributions by direct series expansion ----------------------------------

def distribution_coefficient(components, mode_symbol, M, N, window=6):
    """Coefficient of ``z^(-M-1) w^(-N-1)`` in ``sum_j c^j(w) d_w^j delta(z, w) / j!``.

    ``components[j]`` is ``{generator: [c_0, c_1, ...]}`` meaning
    ``sum_s c_s d^s e_p`` read as the field ``sum_s c_s d_w^s e_p(w)``.
    Fields are truncated to modes ``|mode| <= window`` around the target,
    which is exact for the requested coefficient.  ``mode_symbol(p, r)``
    names the symbol for ``e_p[r]``.
    """
    z, w = sp.symbols("z w")
    total = sp.Integer(0)
    lo, hi = M + N - window, M + N + window
    for j, comp in components.items():
        # coefficient of z^(-M-1) in d_w^j delta / j! is binom(M, j) w^(M-j)
        if M >= 0:
            b = comb(M, j)
        else:
            b = sp.binomial(M, j)
        piece = sp.Integer(b) * w ** (M - j)
        field = sp.Integer(0)
        for p, coeffs in comp.items():
            base = sum(mode_symbol(p, r) * w ** (-r - 1) for r in range(lo, hi + 1))
            for s, c in enumerate(coeffs):
                if c:
                    field += c * sp.diff(base, w, s)
        total += piece * field
    total = sp.expand(total)
    return total.coeff(w, -N - 1)


def falling(n, s):
    out = 1
    for r in range(s):
        out *= n - r
    return out


__all__ = [
    "to_sympy", "from_sympy", "hom_jacobi_oracle", "skew_oracle", "affine_jacobi_by_power",
    "distribution_coefficient", "factorial", "falling",
]
