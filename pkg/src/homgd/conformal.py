"""Hom-Lie conformal algebras on free finite-rank modules over ``k[d]``.

A conformal algebra is stored by its lambda-bracket on generators,
``B[i][j] = sum_p B_ijp(d, l) e_p``, and a twisting map whose entries are
polynomials in ``d``.  Elements of the module are sparse maps
``{generator: polynomial}``; the bracket of arbitrary elements follows the
sesquilinear extension

    [f(d) e_i _nu h(d) e_j] = f(-nu) h(d + nu) B[i][j](d, nu).

The nested-bracket rules used by the Hom-Jacobi check are exactly this
extension applied with ``nu`` equal to ``l``, ``u`` or ``l + u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, List, Mapping, NamedTuple, Sequence, Tuple

from .exactpoly import D, LAM, MU, ONE, ZERO, LaurentVec, MPoly, poly
from .finalg import AlgebraCarrier, CheckReport, MissingSlotError, Violation, check_axioms

PolyVec = Dict[int, MPoly]


class ConformalError(ValueError):
    pass


def _clean_vec(v) -> PolyVec:
    if isinstance(v, Mapping):
        items = v.items()
    else:
        items = enumerate(v)
    out = {}
    for p, c in items:
        c = poly(c)
        if c:
            out[int(p)] = out.get(int(p), ZERO) + c
            if not out[int(p)]:
                del out[int(p)]
    return out


def pv_add(*vs: PolyVec) -> PolyVec:
    out: PolyVec = {}
    for v in vs:
        for p, c in v.items():
            s = out.get(p, ZERO) + c
            if s:
                out[p] = s
            else:
                out.pop(p, None)
    return out


def pv_scale(c: MPoly, v: PolyVec) -> PolyVec:
    out = {}
    for p, x in v.items():
        y = c * x
        if y:
            out[p] = y
    return out


def pv_neg(v: PolyVec) -> PolyVec:
    return {p: -c for p, c in v.items()}


def pv_map(fn, v: PolyVec) -> PolyVec:
    out = {}
    for p, c in v.items():
        y = fn(c)
        if y:
            out[p] = y
    return out


@dataclass(frozen=True, eq=False)
class ConformalAlgebra:
    rank: int
    generator_names: Tuple[str, ...]
    brackets: Mapping[Tuple[int, int], PolyVec]
    alpha: Tuple[Tuple[MPoly, ...], ...]
    metadata: Mapping[str, object] = field(default_factory=dict)

    @classmethod
    def build(cls, rank, brackets=None, alpha=None, generator_names=None, metadata=None):
        """``brackets`` maps ``(i, j)`` to a vector (sequence or ``{p: poly}``).

        ``alpha`` is a row-major ``rank x rank`` matrix of polynomials in
        ``d`` (column ``j`` is the image of generator ``j``); identity when
        omitted.
        """
        names = tuple(generator_names) if generator_names else tuple(f"a{i}" for i in range(rank))
        if len(names) != rank:
            raise ConformalError("need one name per generator")
        table = {}
        for (i, j), vec in (brackets or {}).items():
            if not (0 <= i < rank and 0 <= j < rank):
                raise ConformalError(f"bracket pair {(i, j)} out of range for rank {rank}")
            v = _clean_vec(vec)
            for p, c in v.items():
                if not 0 <= p < rank:
                    raise ConformalError(f"generator index {p} out of range in bracket {(i, j)}")
                if c.variables() - {"d", "l"}:
                    raise ConformalError(f"bracket {(i, j)} uses variables other than d, l: {c}")
            if v:
                table[(i, j)] = v
        if alpha is None:
            amat = tuple(tuple(ONE if p == q else ZERO for q in range(rank)) for p in range(rank))
        else:
            amat = tuple(tuple(poly(c) for c in row) for row in alpha)
            if len(amat) != rank or any(len(r) != rank for r in amat):
                raise ConformalError(f"alpha must be a {rank}x{rank} matrix")
            for row in amat:
                for c in row:
                    if c.variables() - {"d"}:
                        raise ConformalError(f"alpha entries must be polynomials in d, got {c}")
        return cls(rank, names, table, amat, dict(metadata or {}))

    def bracket(self, i: int, j: int) -> PolyVec:
        return self.brackets.get((i, j), {})

    def bracket_vector(self, i: int, j: int) -> Tuple[MPoly, ...]:
        return to_vector(self.bracket(i, j), self.rank)

    def alpha_of(self, x: PolyVec) -> PolyVec:
        """``alpha(sum f_j(d) e_j) = sum f_j(d) alpha(e_j)``."""
        out: PolyVec = {}
        for j, f in x.items():
            for p in range(self.rank):
                a = self.alpha[p][j]
                if a:
                    out = pv_add(out, {p: f * a})
        return out

    def generator(self, i: int) -> PolyVec:
        return {i: ONE}

    def is_scalar_alpha(self) -> bool:
        return all(c.is_constant() for row in self.alpha for c in row)

    def same_structure(self, other: "ConformalAlgebra") -> bool:
        return (
            self.rank == other.rank
            and dict(self.brackets) == dict(other.brackets)
            and self.alpha == other.alpha
        )


def to_vector(v: PolyVec, rank: int) -> Tuple[MPoly, ...]:
    return tuple(v.get(p, ZERO) for p in range(rank))


def element(R: ConformalAlgebra, coeffs) -> PolyVec:
    """Module element from a length-``rank`` sequence or ``{generator: poly}``."""
    v = _clean_vec(coeffs)
    if not isinstance(coeffs, Mapping) and len(coeffs) != R.rank:
        raise ConformalError(f"element has {len(coeffs)} coefficients, rank is {R.rank}")
    if any(not 0 <= p < R.rank for p in v):
        raise ConformalError("generator index out of range")
    return v


class _Bracketer:
    """Sesquilinear bracket with memoized substitutions for one algebra."""

    def __init__(self, R: ConformalAlgebra):
        self.R = R
        self._b: Dict[Tuple[int, int, MPoly], PolyVec] = {}

    def table_at(self, p: int, q: int, nu: MPoly) -> PolyVec:
        key = (p, q, nu)
        if key not in self._b:
            self._b[key] = pv_map(lambda c: c.subst("l", nu), self.R.bracket(p, q))
        return self._b[key]

    def __call__(self, x: PolyVec, y: PolyVec, nu: MPoly) -> PolyVec:
        out: PolyVec = {}
        shift = D + nu
        xs = {p: f.subst("d", -nu) for p, f in x.items()}
        ys = {q: h.subst("d", shift) for q, h in y.items()}
        for p, f in xs.items():
            if not f:
                continue
            for q, h in ys.items():
                if not h:
                    continue
                b = self.table_at(p, q, nu)
                if b:
                    out = pv_add(out, pv_scale(f * h, b))
        return out


def lambda_bracket(R: ConformalAlgebra, x: PolyVec, y: PolyVec, nu: MPoly = LAM) -> PolyVec:
    return _Bracketer(R)(x, y, nu)


def extend_bracket(R: ConformalAlgebra, x, y) -> Tuple[MPoly, ...]:
    """``[x _l y]`` for arbitrary module elements, as a length-``rank`` vector."""
    if not isinstance(x, Mapping):
        x = element(R, x)
    if not isinstance(y, Mapping):
        y = element(R, y)
    for v in (x, y):
        if any(not 0 <= p < R.rank for p in v):
            raise ConformalError("element does not live in this algebra's rank")
    return to_vector(lambda_bracket(R, _clean_vec(x), _clean_vec(y), LAM), R.rank)


SKEW_SUB = -LAM - D


def check_skew(R: ConformalAlgebra) -> CheckReport:
    """``[a_l b] + [b_{-l-d} a] = 0`` on every generator pair."""
    found = []
    for i in range(R.rank):
        for j in range(R.rank):
            flipped = pv_map(lambda c: c.subst("l", SKEW_SUB), R.bracket(j, i))
            r = pv_add(R.bracket(i, j), flipped)
            if r:
                found.append(Violation("skew_symmetry", (i, j), to_vector(r, R.rank)))
    return CheckReport.collect(found, subject="conformal")


def hom_jacobi_sides(R: ConformalAlgebra, i: int, j: int, k: int, _br: _Bracketer | None = None):
    """The three terms of the Hom-Jacobi identity on generators ``a, b, c``.

    Returns ``(lhs, t1, t2)`` with
    ``lhs = [alpha(a)_l [b_u c]]``, ``t1 = [[a_l b]_{l+u} alpha(c)]`` and
    ``t2 = [alpha(b)_u [a_l c]]``; the identity is ``lhs = t1 + t2``.
    """
    br = _br or _Bracketer(R)
    a, b, c = R.generator(i), R.generator(j), R.generator(k)
    inner_bc = br(b, c, MU)
    lhs = br(R.alpha_of(a), inner_bc, LAM)
    t1 = br(br(a, b, LAM), R.alpha_of(c), LAM + MU)
    t2 = br(R.alpha_of(b), br(a, c, LAM), MU)
    return lhs, t1, t2


def hom_jacobi_residual(R: ConformalAlgebra, i: int, j: int, k: int, _br=None) -> PolyVec:
    lhs, t1, t2 = hom_jacobi_sides(R, i, j, k, _br)
    return pv_add(lhs, pv_neg(t1), pv_neg(t2))


def check_hom_jacobi(R: ConformalAlgebra) -> CheckReport:
    br = _Bracketer(R)
    found = []
    for i in range(R.rank):
        for j in range(R.rank):
            for k in range(R.rank):
                r = hom_jacobi_residual(R, i, j, k, br)
                if r:
                    found.append(Violation("hom_jacobi", (i, j, k), to_vector(r, R.rank)))
    return CheckReport.collect(found, subject="conformal")


class Degree(NamedTuple):
    value: int
    zero_bracket: bool

    def __int__(self):
        return self.value


def degree_of(R: ConformalAlgebra) -> Degree:
    """Smallest ``m`` with every ``d^i l^j`` in the table satisfying ``i + j < m``.

    The zero bracket reports ``Degree(0, zero_bracket=True)``.
    """
    top = -1
    for vec in R.brackets.values():
        for c in vec.values():
            top = max(top, c.degree())
    if top < 0:
        return Degree(0, True)
    return Degree(top + 1, False)


# -- j-products ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class JProductTable:
    """``products[(i, j)][n]`` is ``e_i (n) e_j`` as a sparse vector over ``k[d]``."""

    rank: int
    products: Mapping[Tuple[int, int], Tuple[PolyVec, ...]]
    alpha: Tuple[Tuple[MPoly, ...], ...]
    generator_names: Tuple[str, ...] = ()

    def get(self, i: int, j: int, n: int) -> PolyVec:
        if n < 0:
            return {}
        row = self.products.get((i, j), ())
        return row[n] if n < len(row) else {}

    def max_index(self) -> int:
        return max((len(row) - 1 for row in self.products.values()), default=-1)


def j_products(R: ConformalAlgebra) -> JProductTable:
    """``e_i (n) e_j = n! * [l^n] B[i][j]``."""
    table = {}
    for (i, j), vec in R.brackets.items():
        top = max(c.degree("l") for c in vec.values())
        row = []
        for n in range(top + 1):
            row.append(pv_map(lambda c: c.coefficient_in("l", n).scale(factorial(n)), vec))
        while row and not row[-1]:
            row.pop()
        if row:
            table[(i, j)] = tuple(row)
    return JProductTable(R.rank, table, R.alpha, R.generator_names)


def reconstruct(T: JProductTable) -> ConformalAlgebra:
    """``B[i][j] = sum_n l^n / n! * (e_i (n) e_j)``."""
    brackets = {}
    for (i, j), row in T.products.items():
        acc: PolyVec = {}
        for n, v in enumerate(row):
            acc = pv_add(acc, pv_scale(LAM ** n * Fraction(1, factorial(n)), v))
        brackets[(i, j)] = acc
    return ConformalAlgebra.build(T.rank, brackets, T.alpha, T.generator_names or None)


def _falling(n: int, s: int) -> int:
    out = 1
    for r in range(s):
        out *= n - r
    return out


def _d_terms(f: MPoly):
    """Split a polynomial in ``d`` into ``{power: coefficient}``."""
    if f.variables() - {"d"}:
        raise ConformalError(f"expected a polynomial in d, got {f}")
    return {exp[0]: c for exp, c in f.items()}


def jproduct(T: JProductTable, x: PolyVec, y: PolyVec, n: int) -> PolyVec:
    """``x (n) y`` for module elements, computed natively from the table.

    Uses ``(d^s a)(n) b = (-1)^s n!/(n-s)! a(n-s) b`` and
    ``a(n)(d^t b) = sum_r C(t, r) n!/(n-r)! d^(t-r) a(n-r) b``.
    """
    out: PolyVec = {}
    if n < 0:
        return out
    for p, f in x.items():
        for s, cf in _d_terms(f).items():
            if s > n:
                continue
            left = cf * (-1) ** s * _falling(n, s)
            n1 = n - s
            for q, h in y.items():
                for t, ch in _d_terms(h).items():
                    for r in range(min(t, n1) + 1):
                        base = T.get(p, q, n1 - r)
                        if not base:
                            continue
                        coef = left * ch * comb(t, r) * _falling(n1, r)
                        out = pv_add(out, pv_scale(D ** (t - r) * coef, base))
    return out


def _alpha_elem(T: JProductTable, x: PolyVec) -> PolyVec:
    out: PolyVec = {}
    for j, f in x.items():
        for p in range(T.rank):
            a = T.alpha[p][j]
            if a:
                out = pv_add(out, {p: f * a})
    return out


def check_jproduct_axioms(T: JProductTable) -> CheckReport:
    """Sesquilinearity, skew-symmetry and Hom-Jacobi in j-product form.

    Indices ``m, n`` run up to the largest nonzero j-index plus two.
    Sesquilinearity compares the table against the lambda-bracket extension
    of the reconstructed algebra, so it is not a restatement of
    :func:`jproduct`'s own rules.
    """
    bound = T.max_index() + 2
    R = reconstruct(T)
    br = _Bracketer(R)
    N = T.rank
    found: List[Violation] = []

    def jcoef(vec: PolyVec, n: int) -> PolyVec:
        return pv_map(lambda c: c.coefficient_in("l", n).scale(factorial(n)), vec)

    for i in range(N):
        for j in range(N):
            dl = br({i: D}, {j: ONE}, LAM)
            dr = br({i: ONE}, {j: D}, LAM)
            for n in range(bound + 1):
                r = pv_add(jcoef(dl, n), pv_scale(MPoly.const(n), T.get(i, j, n - 1)))
                if r:
                    found.append(Violation("sesquilinearity_left", (i, j, n), to_vector(r, N)))
                expect = pv_add(pv_scale(D, T.get(i, j, n)), pv_scale(MPoly.const(n), T.get(i, j, n - 1)))
                r = pv_add(jcoef(dr, n), pv_neg(expect))
                if r:
                    found.append(Violation("sesquilinearity_right", (i, j, n), to_vector(r, N)))
                # a(n)b + sum_i (-1)^(n+i)/i! d^i b(n+i)a
                acc = dict(T.get(i, j, n))
                for s in range(bound + 1):
                    term = T.get(j, i, n + s)
                    if term:
                        c = Fraction((-1) ** (n + s), factorial(s))
                        acc = pv_add(acc, pv_scale(D ** s * c, term))
                if acc:
                    found.append(Violation("skew_symmetry", (i, j, n), to_vector(acc, N)))

    for a in range(N):
        for b in range(N):
            for c in range(N):
                ea, eb, ec = {a: ONE}, {b: ONE}, {c: ONE}
                aa, ab, ac = _alpha_elem(T, ea), _alpha_elem(T, eb), _alpha_elem(T, ec)
                for m in range(bound + 1):
                    for n in range(bound + 1):
                        lhs = jproduct(T, aa, T.get(b, c, n), m)
                        rhs = jproduct(T, ab, T.get(a, c, m), n)
                        for s in range(m + 1):
                            ab_s = T.get(a, b, s)
                            if ab_s:
                                rhs = pv_add(rhs, pv_scale(MPoly.const(comb(m, s)), jproduct(T, ab_s, ac, m + n - s)))
                        r = pv_add(lhs, pv_neg(rhs))
                        if r:
                            found.append(Violation("hom_jacobi", (a, b, c, m, n), to_vector(r, N)))
    return CheckReport.collect(found, subject="j-products")


# -- formal distributions --------------------------------------------------------

def _binom(m: int, j: int) -> Fraction:
    """Generalized binomial ``m (m-1) ... (m-j+1) / j!`` valid for negative ``m``."""
    return Fraction(_falling(m, j), factorial(j))


@dataclass(frozen=True, eq=False)
class LocalDistribution:
    """``sum_j c^j(w) d_w^j delta(z, w) / j!`` with fields ``c^j`` in decomposed form.

    Each component ``c^j`` is a module element ``sum_p f_p(d) e_p`` read as
    the field ``sum_p f_p(d_w) e_p(w)`` where ``e_p(w) = sum_M e_p[M] w^(-M-1)``.
    """

    rank: int
    components: Mapping[int, PolyVec]

    def support(self) -> List[int]:
        return sorted(j for j, v in self.components.items() if v)

    def fourier(self) -> Tuple[MPoly, ...]:
        acc: PolyVec = {}
        for j, v in self.components.items():
            acc = pv_add(acc, pv_scale(LAM ** j * Fraction(1, factorial(j)), v))
        return to_vector(acc, self.rank)

    def times_z_minus_w(self, m: int) -> "LocalDistribution":
        """Multiply by ``(z - w)^m``: component ``j`` moves to ``j - m``, ``j < m`` dies."""
        return LocalDistribution(
            self.rank, {j - m: v for j, v in self.components.items() if j >= m and v}
        )

    @staticmethod
    def field_mode(v: PolyVec, M: int) -> LaurentVec:
        """Coefficient of ``w^(-M-1)`` in the field of ``v``.

        ``(d^s e_p)(w)`` has that coefficient equal to
        ``(-1)^s M (M-1) ... (M-s+1) e_p[M-s]``.
        """
        entries: Dict[Tuple[int, int], Fraction] = {}
        for p, f in v.items():
            for s, c in _d_terms(f).items():
                x = c * (-1) ** s * _falling(M, s)
                if x:
                    key = (p, M - s)
                    entries[key] = entries.get(key, 0) + x
        return LaurentVec(entries)

    def coefficient(self, m: int, n: int) -> LaurentVec:
        """Coefficient of ``z^(-m-1) w^(-n-1)``."""
        out = LaurentVec()
        for j, v in self.components.items():
            if v:
                c = _binom(m, j)
                if c:
                    out = out + self.field_mode(v, m + n - j).scale(c)
        return out


def distribution_bracket(R: ConformalAlgebra, i: int, j: int) -> LocalDistribution:
    T = j_products(R)
    row = T.products.get((i, j), ())
    return LocalDistribution(R.rank, {n: v for n, v in enumerate(row) if v})


def fourier(Ld: LocalDistribution) -> Tuple[MPoly, ...]:
    return Ld.fourier()


# -- constructions ---------------------------------------------------------------

def current_algebra(L: AlgebraCarrier) -> ConformalAlgebra:
    """``[u_l v] = [u, v]`` on ``k[d] (x) L`` with ``alpha`` lifted entrywise."""
    br = L.op("bracket", "current_algebra")
    alpha = L.map("alpha", "current_algebra")
    brackets = {
        (i, j): {k: MPoly.const(c) for k, c in row.items()} for (i, j), row in br.items()
    }
    meta = {"example": "current"}
    if not check_axioms(L, "hom_lie").passed:
        meta["warnings"] = ["input is not Hom-Lie"]
    return ConformalAlgebra.build(L.dim, brackets, [[MPoly.const(c) for c in row] for row in alpha],
                                  L.basis_names, meta)


VIRASORO_BRACKET = D + 2 * LAM


def virasoro_like(b=1, f=None) -> ConformalAlgebra:
    """Rank one, ``[L_l L] = (d + 2l) L``, ``alpha(L) = b L``.

    Passing ``f`` (a polynomial in ``d``) installs ``alpha(L) = f(d) L``
    instead, which is only Hom-Lie conformal when ``f`` is constant.
    """
    if f is None:
        bpoly = poly(b)
        if not bpoly.is_constant() or bpoly.is_zero():
            raise ConformalError("virasoro_like needs a nonzero scalar b")
        alpha = [[bpoly]]
        meta = {"example": "virasoro", "b": str(bpoly)}
    else:
        fpoly = poly(f)
        if fpoly.is_zero():
            raise ConformalError("twisting polynomial must be nonzero")
        alpha = [[fpoly]]
        meta = {"example": "virasoro", "f": str(fpoly)}
    return ConformalAlgebra.build(1, {(0, 0): [VIRASORO_BRACKET]}, alpha, ["L"], meta)


def virasoro_residual(f) -> MPoly:
    """Hom-Jacobi residual of the Virasoro bracket twisted by ``alpha(L) = f(d) L``.

    Zero exactly when ``f`` has no ``d`` term.
    """
    R = virasoro_like(f=f)
    return hom_jacobi_residual(R, 0, 0, 0).get(0, ZERO)


def conformal_report(R: ConformalAlgebra) -> CheckReport:
    """Skew-symmetry, Hom-Jacobi and the j-product axioms together."""
    return check_skew(R).merge(check_hom_jacobi(R)).merge(check_jproduct_axioms(j_products(R)))
