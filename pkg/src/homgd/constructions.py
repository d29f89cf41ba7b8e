"""Constructions of Hom-GD bialgebras and finite example generators.

None of the constructions validate their inputs eagerly.  Where a
construction's guarantee depends on hypotheses (a map being an
endomorphism, a derivation, commuting with another map ...), failed
hypotheses are listed under ``metadata["warnings"]`` of the output and the
caller is expected to certify the result with :func:`check_axioms`.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, List, Sequence

from .exactpoly import ScalarLike, format_scalar, scalar
from .finalg import (
    AlgebraCarrier,
    AlgebraError,
    Matrix,
    Tensor,
    apply,
    check_axioms,
    commutes,
    diagonal_matrix,
    identity_matrix,
    is_derivation,
    is_endomorphism,
    matmul,
    mult,
    vadd,
    vscale,
    zero_matrix,
)


def _tensor_from(A: AlgebraCarrier, fn) -> Tensor:
    """Tabulate ``fn(e_i, e_j)`` over all basis pairs."""
    out: Tensor = {}
    for i in range(A.dim):
        for j in range(A.dim):
            v = fn(A.basis(i), A.basis(j))
            if v:
                out[(i, j)] = v
    return out


def _meta(A: AlgebraCarrier, construction: str, warnings: List[str], **extra) -> dict:
    meta = {k: v for k, v in A.metadata.items() if k != "warnings"}
    meta["construction"] = construction
    meta.update(extra)
    if warnings:
        meta["warnings"] = warnings
    return meta


def commutator_bracket(A: AlgebraCarrier) -> AlgebraCarrier:
    """Add ``[x, y] = x o y - y o x`` next to an existing ``circ`` and ``alpha``."""
    c = A.op("circ", "commutator_bracket")
    A.map("alpha", "commutator_bracket")
    br = _tensor_from(A, lambda x, y: vadd(mult(c, x, y), vscale(-1, mult(c, y, x))))
    warnings = []
    if not check_axioms(A, "hom_novikov").passed:
        warnings.append("input is not Hom-Novikov")
    return A.replace(ops={"bracket": br}, metadata=_meta(A, "commutator", warnings))


def _twist(t: Tensor, M: Matrix, A: AlgebraCarrier) -> Tensor:
    images = [apply(M, A.basis(i)) for i in range(A.dim)]
    return _tensor_from(A, lambda x, y: mult(t, images[next(iter(x))], images[next(iter(y))]))


def endomorphism_twist(A: AlgebraCarrier, kind: str = "novikov") -> AlgebraCarrier:
    """Twist products by ``alpha`` in both arguments.

    ``kind="novikov"`` replaces ``circ`` by ``alpha(x) o alpha(y)`` and sets
    the bracket to ``alpha(x o y) - alpha(y o x)``; ``kind="gd"`` twists the
    existing ``circ`` and ``bracket`` alike.  ``alpha`` is kept as the
    twisting map of the result.
    """
    M = A.map("alpha", "endomorphism_twist")
    c = A.op("circ", "endomorphism_twist")
    warnings = []
    if kind == "novikov":
        if not check_axioms(A, "novikov").passed:
            warnings.append("input circ is not Novikov")
        if not is_endomorphism(A, "alpha", ["circ"]):
            warnings.append("alpha is not an endomorphism of circ")
        new_c = _twist(c, M, A)
        br = _tensor_from(A, lambda x, y: apply(M, vadd(mult(c, x, y), vscale(-1, mult(c, y, x)))))
        ops = {"circ": new_c, "bracket": br}
    elif kind == "gd":
        br = A.op("bracket", "endomorphism_twist(kind=gd)")
        if not check_axioms(A, "gd").passed:
            warnings.append("input is not a GD bialgebra")
        if not is_endomorphism(A, "alpha", ["circ", "bracket"]):
            warnings.append("alpha is not an endomorphism of circ and bracket")
        ops = {"circ": _twist(c, M, A), "bracket": _twist(br, M, A)}
    else:
        raise AlgebraError(f"unknown twist kind {kind!r}; expected 'novikov' or 'gd'")
    return A.replace(ops=ops, drop=("dot", "D"), metadata=_meta(A, f"twist:{kind}", warnings))


def derivation_product(A: AlgebraCarrier, weight: ScalarLike = 0, mode: str = "plain") -> AlgebraCarrier:
    """Build ``circ`` and ``bracket`` from ``dot`` and a derivation ``D``.

    plain:   x o y = x.D(y) + w x.y,            [x, y] = x.D(y) - y.D(x)
    twisted: x o y = alpha(x.D(y) + w x.y),     [x, y] = alpha(x.D(y) - y.D(x))
    """
    dot = A.op("dot", "derivation_product")
    alpha = A.map("alpha", "derivation_product")
    Dm = A.map("D", "derivation_product")
    w = scalar(weight)
    if mode not in ("plain", "twisted"):
        raise AlgebraError(f"unknown mode {mode!r}; expected 'plain' or 'twisted'")
    warnings = []
    if not commutes(A, "alpha", "D"):
        warnings.append("alpha and D do not commute")
    if not is_derivation(A, "D", "dot", 0):
        warnings.append("D is not a derivation of dot")
    if mode == "plain":
        if not check_axioms(A, "comm_hom_assoc").passed:
            warnings.append("(dot, alpha) is not commutative Hom-associative")
        post = lambda v: v
    else:
        if not is_endomorphism(A, "alpha", ["dot"]):
            warnings.append("alpha is not an endomorphism of dot")
        plain = A.replace(maps={"alpha": identity_matrix(A.dim)})
        if not check_axioms(plain, "comm_hom_assoc").passed:
            warnings.append("dot is not commutative associative")
        post = lambda v: apply(alpha, v)

    def circ(x, y):
        return post(vadd(mult(dot, x, apply(Dm, y)), vscale(w, mult(dot, x, y))))

    def bracket(x, y):
        return post(vadd(mult(dot, x, apply(Dm, y)), vscale(-1, mult(dot, y, apply(Dm, x)))))

    out = A.replace(
        ops={"circ": _tensor_from(A, circ), "bracket": _tensor_from(A, bracket)},
        drop=("dot", "D"),
        metadata=_meta(A, f"derivation:{mode}", warnings, weight=format_scalar(w)),
    )
    return out


def poisson_derived_gd(A: AlgebraCarrier, weight: ScalarLike = 0) -> AlgebraCarrier:
    """``x o y = x.D(y) + w x.y`` on a Hom-Poisson algebra, bracket retained."""
    dot = A.op("dot", "poisson_derived_gd")
    A.op("bracket", "poisson_derived_gd")
    A.map("alpha", "poisson_derived_gd")
    Dm = A.map("D", "poisson_derived_gd")
    w = scalar(weight)
    warnings = []
    if not check_axioms(A, "hom_poisson").passed:
        warnings.append("input is not Hom-Poisson")
    if not commutes(A, "alpha", "D"):
        warnings.append("alpha and D do not commute")
    if not is_derivation(A, "D", "dot", 0):
        warnings.append("D is not a derivation of dot")
    if not is_derivation(A, "D", "bracket", w):
        warnings.append(f"D is not a weight-{format_scalar(w)} derivation of bracket")
    circ = _tensor_from(A, lambda x, y: vadd(mult(dot, x, apply(Dm, y)), vscale(w, mult(dot, x, y))))
    return A.replace(
        ops={"circ": circ},
        drop=("dot", "D"),
        metadata=_meta(A, "poisson", warnings, weight=format_scalar(w)),
    )


# -- precursors -------------------------------------------------------------

def truncated_product(d: int) -> Tensor:
    """``b_a . b_c = b_{a+c}`` when ``a + c < d``, zero otherwise."""
    return {(a, c): {a + c: Fraction(1)} for a in range(d) for c in range(d) if a + c < d}


def euler_map(d: int) -> Matrix:
    return diagonal_matrix([a for a in range(d)])


def power_map(d: int, q: ScalarLike) -> Matrix:
    q = scalar(q)
    return diagonal_matrix([q ** a for a in range(d)])


def truncated_algebra(d: int, q: ScalarLike = 2) -> AlgebraCarrier:
    """Commutative associative ``k[x]/(x^d)`` with Euler ``D`` and ``alpha(b_a) = q^a b_a``."""
    return AlgebraCarrier.build(
        d,
        ops={"dot": truncated_product(d)},
        maps={"alpha": power_map(d, q), "D": euler_map(d)},
        basis_names=[f"b{a}" for a in range(d)],
    )


def shift_derivation(d: int, step: int = 1, scale: ScalarLike = 1) -> Matrix:
    """``D(b_a) = scale * a * b_{a+step}``: the derivation ``x^(step+1) d/dx`` of ``k[x]/(x^d)``.

    Nilpotent for ``step >= 1``.
    """
    s = scalar(scale)
    rows = [[Fraction(0)] * d for _ in range(d)]
    for a in range(d):
        if a + step < d and a:
            rows[a + step][a] = s * a
    return tuple(tuple(r) for r in rows)


def matrix_exp_nilpotent(M: Matrix) -> Matrix:
    """``id + M + M^2/2! + ...``; raises if ``M`` is not nilpotent."""
    n = len(M)
    total = identity_matrix(n)
    power = identity_matrix(n)
    zero = zero_matrix(n)
    for k in range(1, n + 1):
        power = matmul(power, M)
        if power == zero:
            return total
        total = tuple(
            tuple(total[i][j] + power[i][j] / factorial(k) for j in range(n)) for i in range(n)
        )
    if n == 0:
        return total
    raise AlgebraError("D is not nilpotent")


# -- named examples -----------------------------------------------------------

def truncated_euler(d: int, q: ScalarLike = 2, w: ScalarLike = 0) -> AlgebraCarrier:
    """Finite Hom-GD family ``b_a o b_c = (c + w) q^(a+c) b_(a+c)``.

    Truncated polynomial ring with the Euler derivation and the grading
    automorphism ``b_a -> q^a b_a``, fed through the twisted derivation
    product.
    """
    if d < 1:
        raise AlgebraError("truncated_euler needs d >= 1")
    q = scalar(q)
    if q == 0:
        raise AlgebraError("truncated_euler needs q != 0")
    out = derivation_product(truncated_algebra(d, q), w, mode="twisted")
    meta = {
        "example": "truncated_euler",
        "d": d,
        "q": format_scalar(q),
        "w": format_scalar(scalar(w)),
    }
    return out.replace(metadata=meta)


def trivial_lie_gd(L: AlgebraCarrier) -> AlgebraCarrier:
    """Lie algebra as a GD bialgebra with zero ``circ`` and ``alpha = id``."""
    br = L.op("bracket", "trivial_lie_gd")
    return AlgebraCarrier(
        L.dim, L.basis_names, {"circ": {}, "bracket": br},
        {"alpha": identity_matrix(L.dim)}, {"example": "trivial_lie_gd"},
    )


def trivial_novikov_gd(N: AlgebraCarrier) -> AlgebraCarrier:
    """Novikov algebra as a GD bialgebra with zero bracket and ``alpha = id``."""
    c = N.op("circ", "trivial_novikov_gd")
    return AlgebraCarrier(
        N.dim, N.basis_names, {"circ": c, "bracket": {}},
        {"alpha": identity_matrix(N.dim)}, {"example": "trivial_novikov_gd"},
    )


def nilpotent_exp(A: AlgebraCarrier, w: ScalarLike = 0) -> AlgebraCarrier:
    """Twisted derivation product with ``alpha = exp(D)`` for nilpotent ``D``."""
    A.op("dot", "nilpotent_exp")
    Dm = A.map("D", "nilpotent_exp")
    alpha = matrix_exp_nilpotent(Dm)
    out = derivation_product(A.replace(maps={"alpha": alpha}), w, mode="twisted")
    meta = dict(out.metadata)
    meta["example"] = "nilpotent_exp"
    return out.replace(metadata=meta)


def nilpotent_truncated(d: int, step: int = 1, scale: ScalarLike = 1) -> AlgebraCarrier:
    """``k[x]/(x^d)`` with the nilpotent derivation ``scale * x^(step+1) d/dx``."""
    return AlgebraCarrier.build(
        d,
        ops={"dot": truncated_product(d)},
        maps={"D": shift_derivation(d, step, scale)},
        basis_names=[f"b{a}" for a in range(d)],
    )


def lie_2d() -> AlgebraCarrier:
    """The nonabelian 2-dimensional Lie algebra ``[e, f] = e``."""
    return AlgebraCarrier.build(
        2, ops={"bracket": {(0, 1, 0): 1, (1, 0, 0): -1}}, basis_names=["e", "f"]
    )


def sl2() -> AlgebraCarrier:
    """``[h, e] = 2e, [h, f] = -2f, [e, f] = h`` on basis ``(e, h, f)``."""
    t = {
        (1, 0, 0): 2, (0, 1, 0): -2,
        (1, 2, 2): -2, (2, 1, 2): 2,
        (0, 2, 1): 1, (2, 0, 1): -1,
    }
    return AlgebraCarrier.build(3, ops={"bracket": t}, basis_names=["e", "h", "f"])


def heisenberg() -> AlgebraCarrier:
    """``[x, y] = z`` on basis ``(x, y, z)``."""
    return AlgebraCarrier.build(3, ops={"bracket": {(0, 1, 2): 1, (1, 0, 2): -1}}, basis_names=["x", "y", "z"])


def novikov_from_derivation(A: AlgebraCarrier, w: ScalarLike = 0) -> AlgebraCarrier:
    """``x o y = x.D(y) + w x.y`` on a commutative associative ``dot`` (``alpha`` unused)."""
    dot, Dm = A.op("dot"), A.map("D")
    ws = scalar(w)
    c = _tensor_from(A, lambda x, y: vadd(mult(dot, x, apply(Dm, y)), vscale(ws, mult(dot, x, y))))
    return AlgebraCarrier(A.dim, A.basis_names, {"circ": c}, {}, {"example": "novikov_from_derivation"})


EXAMPLES = ("truncated_euler", "trivial_lie_gd", "trivial_novikov_gd", "nilpotent_exp")


def make_example(name: str, **params) -> AlgebraCarrier:
    if name == "truncated_euler":
        return truncated_euler(params.get("d", 3), params.get("q", 2), params.get("w", 0))
    if name == "trivial_lie_gd":
        return trivial_lie_gd(params.get("L") or lie_2d())
    if name == "trivial_novikov_gd":
        N = params.get("N")
        if N is None:
            N = novikov_from_derivation(truncated_algebra(params.get("d", 3)), params.get("w", 0))
        return trivial_novikov_gd(N)
    if name == "nilpotent_exp":
        A = params.get("A")
        if A is None:
            A = nilpotent_truncated(params.get("d", 4), params.get("step", 1), params.get("scale", 1))
        return nilpotent_exp(A, params.get("w", 0))
    raise AlgebraError(f"unknown example {name!r}; expected one of {EXAMPLES}")
