"""Hom-GD bialgebras versus degree-2 Hom-Lie conformal algebras, and affinization.

``gd_to_conformal`` uses the bracket

    [u_l v] = [v, u] + d (v o u) + l (v o u + u o v)

and ``conformal_to_gd`` inverts it.  The affinization ``A (x) k[t, 1/t]``
carries

    [u[m], v[n]] = [u, v][m+n] + m (u o v)[m+n-1] - n (v o u)[m+n-1]

with twisting map ``u[m] -> alpha(u)[m]``.  Its Hom-Jacobi defect splits by
powers of ``t`` into three carrier-valued polynomials in ``m, n, k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple

from .conformal import ConformalAlgebra, ConformalError, degree_of
from .exactpoly import D, K_SYM, LAM, M_SYM, N_SYM, ZERO, LaurentVec, MPoly
from .finalg import (
    AlgebraCarrier,
    CheckReport,
    Tensor,
    Violation,
    apply,
    mult,
    vadd,
    vscale,
)


class EquivalenceError(ConformalError):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


def gd_to_conformal(A: AlgebraCarrier, order: str = "standard") -> ConformalAlgebra:
    """Free ``k[d]``-module over ``A`` with the quadratic lambda-bracket.

    ``order="reversed"`` builds ``[u,v] + d(u o v) + l(u o v + v o u)``
    instead, which fails Hom-Jacobi as soon as ``circ`` is not commutative;
    it exists only as a negative control.
    """
    circ = A.op("circ", "gd_to_conformal")
    br = A.op("bracket", "gd_to_conformal")
    alpha = A.map("alpha", "gd_to_conformal")
    if order not in ("standard", "reversed"):
        raise EquivalenceError(f"unknown order {order!r}")
    n = A.dim
    brackets = {}
    for i in range(n):
        for j in range(n):
            first, second = (j, i) if order == "standard" else (i, j)
            vec: Dict[int, MPoly] = {}
            for k, c in br.get((first, second), {}).items():
                vec[k] = vec.get(k, ZERO) + c
            for k, c in circ.get((first, second), {}).items():
                vec[k] = vec.get(k, ZERO) + D * c + LAM * c
            for k, c in circ.get((second, first), {}).items():
                vec[k] = vec.get(k, ZERO) + LAM * c
            vec = {k: v for k, v in vec.items() if v}
            if vec:
                brackets[(i, j)] = vec
    meta = {"construction": "gd_to_conformal", "order": order}
    return ConformalAlgebra.build(
        n, brackets, [[MPoly.const(c) for c in row] for row in alpha], A.basis_names, meta
    )


def _split_quadratic(R: ConformalAlgebra, i: int, j: int):
    """``B[i][j] = c00 + d c10 + l c01`` with generator-constant coefficients."""
    c00, c10, c01 = {}, {}, {}
    for p, f in R.bracket(i, j).items():
        for exp, c in f.items():
            if exp == (0,) * 6:
                c00[p] = c
            elif exp == (1, 0, 0, 0, 0, 0):
                c10[p] = c
            elif exp == (0, 1, 0, 0, 0, 0):
                c01[p] = c
            else:
                raise EquivalenceError(
                    f"bracket ({i}, {j}) has a term outside 1, d, l: {f}", (i, j)
                )
    return c00, c10, c01


def conformal_to_gd(R: ConformalAlgebra) -> AlgebraCarrier:
    """Read a degree-2 conformal algebra back as ``(circ, bracket, alpha)``.

    ``e_j o e_i`` is read off the ``d`` coefficient of ``B[i][j]`` and again
    as ``l``-coefficient minus ``d``-coefficient of ``B[j][i]``; the bracket
    ``[e_j, e_i]`` is the constant term of ``B[i][j]``.  Disagreeing readings
    raise :class:`EquivalenceError` naming the pair.
    """
    deg = degree_of(R)
    if deg.value > 2:
        raise EquivalenceError(f"degree {deg.value} exceeds 2")
    if not R.is_scalar_alpha():
        raise EquivalenceError("alpha must be a scalar matrix to come from a carrier")
    n = R.rank
    parts = {(i, j): _split_quadratic(R, i, j) for i in range(n) for j in range(n)}
    circ: Dict[Tuple[int, int, int], Fraction] = {}
    bracket: Dict[Tuple[int, int, int], Fraction] = {}
    for i in range(n):
        for j in range(n):
            c00, c10, c01 = parts[(i, j)]
            # e_j o e_i from the d-coefficient of B[i][j]
            for p, c in c10.items():
                circ[(j, i, p)] = c
            for p, c in c00.items():
                bracket[(j, i, p)] = c
    for i in range(n):
        for j in range(n):
            _, c10, c01 = parts[(i, j)]
            other = {p: c01.get(p, 0) - c10.get(p, 0) for p in set(c01) | set(c10)}
            for p in range(n):
                if other.get(p, 0) != circ.get((i, j, p), 0):
                    raise EquivalenceError(
                        f"inconsistent readings of {R.generator_names[i]} o {R.generator_names[j]} "
                        f"from brackets ({i}, {j}) and ({j}, {i})",
                        (i, j),
                    )
            for p in range(n):
                if bracket.get((i, j, p), 0) != -bracket.get((j, i, p), 0):
                    raise EquivalenceError(
                        f"constant terms of brackets ({i}, {j}) and ({j}, {i}) are not skew", (i, j)
                    )
    alpha = [[c.constant_term() for c in row] for row in R.alpha]
    meta = {"construction": "conformal_to_gd"}
    return AlgebraCarrier.build(
        n, ops={"circ": circ, "bracket": bracket}, maps={"alpha": alpha},
        basis_names=R.generator_names, metadata=meta,
    )


# -- affinization ------------------------------------------------------------------

class _Affine:
    """Affinized bracket on basis modes with memoization."""

    def __init__(self, A: AlgebraCarrier):
        self.A = A
        self.circ = A.op("circ", "affinization")
        self.br = A.op("bracket", "affinization")
        self.alpha = A.maps.get("alpha")
        self._cache: Dict[Tuple[int, int, int, int], Dict[Tuple[int, int], Fraction]] = {}

    def basis_bracket(self, i, m, j, n):
        key = (i, m, j, n)
        hit = self._cache.get(key)
        if hit is None:
            out: Dict[Tuple[int, int], Fraction] = {}
            for k, c in self.br.get((i, j), {}).items():
                out[(k, m + n)] = out.get((k, m + n), 0) + c
            if m:
                for k, c in self.circ.get((i, j), {}).items():
                    out[(k, m + n - 1)] = out.get((k, m + n - 1), 0) + m * c
            if n:
                for k, c in self.circ.get((j, i), {}).items():
                    out[(k, m + n - 1)] = out.get((k, m + n - 1), 0) - n * c
            hit = {kk: c for kk, c in out.items() if c}
            self._cache[key] = hit
        return hit

    def bracket(self, x: LaurentVec, y: LaurentVec) -> LaurentVec:
        acc: Dict[Tuple[int, int], Fraction] = {}
        for (i, m), a in x.items():
            for (j, n), b in y.items():
                for key, c in self.basis_bracket(i, m, j, n).items():
                    acc[key] = acc.get(key, 0) + a * b * c
        return LaurentVec(acc)

    def phi(self, x: LaurentVec) -> LaurentVec:
        if self.alpha is None:
            raise KeyError("alpha")
        acc: Dict[Tuple[int, int], Fraction] = {}
        for (j, m), a in x.items():
            for i in range(self.A.dim):
                c = self.alpha[i][j]
                if c:
                    acc[(i, m)] = acc.get((i, m), 0) + a * c
        return LaurentVec(acc)


def affinize_bracket(A: AlgebraCarrier, x: LaurentVec, y: LaurentVec) -> LaurentVec:
    return _Affine(A).bracket(x, y)


def affinize_twist(A: AlgebraCarrier, x: LaurentVec) -> LaurentVec:
    A.map("alpha", "affinization")
    return _Affine(A).phi(x)


def _laurent_residual(v: LaurentVec):
    return tuple(sorted(v.items()))


def sampled_affinization_check(A: AlgebraCarrier, powers: Iterable[int] = range(-2, 3)) -> CheckReport:
    """Skew-symmetry and Hom-Jacobi of the affinization on basis modes ``e_i[p]``."""
    A.map("alpha", "affinization_check")
    aff = _Affine(A)
    powers = list(powers)
    n = A.dim
    modes = [(i, p) for i in range(n) for p in powers]
    elem = {mp: LaurentVec.basis(*mp) for mp in modes}
    twisted = {mp: aff.phi(elem[mp]) for mp in modes}
    found: List[Violation] = []
    for x in modes:
        for y in modes:
            r = aff.bracket(elem[x], elem[y]) + aff.bracket(elem[y], elem[x])
            if r:
                found.append(Violation("affine_skew_symmetry", (x[0], y[0], x[1], y[1]), _laurent_residual(r)))
    inner = {(x, y): aff.bracket(elem[x], elem[y]) for x in modes for y in modes}
    for x in modes:
        for y in modes:
            for z in modes:
                r = (
                    aff.bracket(inner[(x, y)], twisted[z])
                    + aff.bracket(inner[(y, z)], twisted[x])
                    + aff.bracket(inner[(z, x)], twisted[y])
                )
                if r:
                    found.append(Violation(
                        "affine_hom_jacobi", (x[0], y[0], z[0], x[1], y[1], z[1]), _laurent_residual(r)
                    ))
    return CheckReport.collect(found, subject="affinization:sampled")


@dataclass(frozen=True)
class DeltaResiduals:
    """Per basis triple ``(u, v, w)``: the coefficients of ``t^(m+n+k)``,
    ``t^(m+n+k-1)`` and ``t^(m+n+k-2)`` in the affinized Hom-Jacobi sum.

    The split is exact when the carrier bracket is skew; ``skew`` holds
    ``[u, v] + [v, u]`` per basis pair, the only obstruction to
    skew-symmetry of the affinized bracket.
    """

    dim: int
    delta1: Mapping[Tuple[int, int, int], Tuple[MPoly, ...]]
    delta2: Mapping[Tuple[int, int, int], Tuple[MPoly, ...]]
    delta3: Mapping[Tuple[int, int, int], Tuple[MPoly, ...]]
    skew: Mapping[Tuple[int, int], Tuple[Fraction, ...]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.skew and all(
            not any(v) for table in (self.delta1, self.delta2, self.delta3) for v in table.values()
        )

    def nonzero(self, which: str):
        table = getattr(self, which)
        return {key: v for key, v in table.items() if any(v)}

    def report(self) -> CheckReport:
        found = [Violation("affine_skew_symmetry", key, v) for key, v in self.skew.items()]
        for name in ("delta1", "delta2", "delta3"):
            for key, v in self.nonzero(name).items():
                found.append(Violation(name, key, v))
        return CheckReport.collect(found, subject="affinization:symbolic")

    def localize(self) -> set:
        """Which carrier identities fail, read off specializations of the residuals.

        delta1                -> jacobi
        delta2 at (2, 0, 0)   -> compatibility
        delta3 at (2, 0, 0)   -> right_commutative
        delta3 at (1, 1, 0)   -> left_symmetric
        """
        broken = set()
        if self.skew:
            broken.add("skew_symmetry")
        if self.nonzero("delta1"):
            broken.add("jacobi")
        at = lambda pt: {"m": pt[0], "n": pt[1], "k": pt[2]}
        for v in self.delta2.values():
            if any(c.eval(at((2, 0, 0))) for c in v):
                broken.add("compatibility")
        for v in self.delta3.values():
            if any(c.eval(at((2, 0, 0))) for c in v):
                broken.add("right_commutative")
            if any(c.eval(at((1, 1, 0))) for c in v):
                broken.add("left_symmetric")
        return broken


def _poly_vec(dim: int, *pairs) -> Tuple[MPoly, ...]:
    """Vector of polynomials ``sum coeff_poly * carrier_vec``."""
    out = [ZERO] * dim
    for coef, vec in pairs:
        for p, c in vec.items():
            out[p] = out[p] + coef * c
    return tuple(out)


def delta_residuals(A: AlgebraCarrier) -> DeltaResiduals:
    """The three t-power coefficients, as polynomials in ``m, n, k``."""
    c = A.op("circ", "affinization_check")
    b = A.op("bracket", "affinization_check")
    alpha = A.map("alpha", "affinization_check")
    n_ = A.dim
    e = [A.basis(i) for i in range(n_)]
    ae = [apply(alpha, x) for x in e]
    neg = lambda v: vscale(-1, v)
    o = lambda x, y: mult(c, x, y)
    br = lambda x, y: mult(b, x, y)
    m, n, k = M_SYM, N_SYM, K_SYM
    d1, d2, d3 = {}, {}, {}
    for i in range(n_):
        for j in range(n_):
            for l in range(n_):
                u, v, w = e[i], e[j], e[l]
                au, av, aw = ae[i], ae[j], ae[l]
                delta1 = vadd(br(br(u, v), aw), br(br(v, w), au), br(br(w, u), av))
                X = vadd(o(br(u, v), aw), br(o(u, v), aw), neg(o(au, br(v, w))),
                         neg(o(br(u, w), av)), neg(br(o(u, w), av)))
                Y = vadd(o(br(v, u), aw), br(o(v, u), aw), neg(o(av, br(u, w))),
                         neg(o(br(v, w), au)), neg(br(o(v, w), au)))
                Z = vadd(o(aw, br(u, v)), o(br(w, v), au), br(o(w, v), au),
                         neg(o(br(w, u), av)), neg(br(o(w, u), av)))
                P1 = vadd(o(o(u, v), aw), neg(o(o(u, w), av)))
                P2 = vadd(o(o(v, w), au), neg(o(o(v, u), aw)))
                P3 = vadd(o(o(w, u), av), neg(o(o(w, v), au)))
                Q1 = vadd(o(o(u, v), aw), neg(o(o(v, u), aw)), neg(o(au, o(v, w))), o(av, o(u, w)))
                Q2 = vadd(o(o(w, u), av), neg(o(o(u, w), av)), neg(o(aw, o(u, v))), o(au, o(w, v)))
                Q3 = vadd(o(o(v, w), au), neg(o(o(w, v), au)), neg(o(av, o(w, u))), o(aw, o(v, u)))
                d1[(i, j, l)] = _poly_vec(n_, (MPoly.const(1), delta1))
                # the t^(m+n+k-1) coefficient carries -k Z once the bracket is skew
                d2[(i, j, l)] = _poly_vec(n_, (m, X), (-n, Y), (-k, Z))
                d3[(i, j, l)] = _poly_vec(
                    n_, (m * m - m, P1), (n * n - n, P2), (k * k - k, P3),
                    (m * n, Q1), (m * k, Q2), (n * k, Q3),
                )
    skew = {}
    for i in range(n_):
        for j in range(n_):
            r = vadd(br(e[i], e[j]), br(e[j], e[i]))
            if r:
                skew[(i, j)] = A.dense(r)
    return DeltaResiduals(n_, d1, d2, d3, skew)


def affinization_check(A: AlgebraCarrier, mode: str = "sampled", powers: Iterable[int] = range(-2, 3)):
    """``mode="sampled"`` returns a :class:`CheckReport`; ``"symbolic"`` a :class:`DeltaResiduals`."""
    if mode == "sampled":
        return sampled_affinization_check(A, powers)
    if mode == "symbolic":
        return delta_residuals(A)
    raise EquivalenceError(f"unknown mode {mode!r}; expected 'sampled' or 'symbolic'")
