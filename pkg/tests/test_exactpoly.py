from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from homgd.exactpoly import (
    D,
    LAM,
    MU,
    ONE,
    ZERO,
    LaurentVec,
    MPoly,
    PolyError,
    PolySyntaxError,
    VARS,
    format_scalar,
    mpoly_arith,
    mpoly_eval,
    mpoly_subst,
    poly,
    scalar,
)
from oracles import SYMS, from_sympy, to_sympy

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exponents = st.tuples(*[st.integers(0, 2)] * 3, st.just(0), st.just(0), st.just(0))
polys = st.dictionaries(exponents, rationals, max_size=5).map(MPoly)
points = st.fixed_dictionaries({v: rationals for v in VARS})


def P(text):
    return MPoly.parse(text)


# -- examples ------------------------------------------------------------------

def test_multiply_by_one():
    assert mpoly_arith(D + 2 * LAM, ONE, "mul") == D + 2 * LAM


def test_difference_of_squares():
    assert (D + LAM) * (D - LAM) == D ** 2 - LAM ** 2


def test_three_variable_product():
    got = mpoly_arith(D + 2 * LAM, D + LAM + 2 * MU, "mul")
    assert got == P("d^2 + 3*l*d + 2*u*d + 2*l^2 + 4*l*u")
    assert to_sympy(got) == sp.expand((SYMS[0] + 2 * SYMS[1]) * (SYMS[0] + SYMS[1] + 2 * SYMS[2]))


def test_skew_substitution_examples():
    sub = -LAM - D
    assert mpoly_subst(LAM, "l", sub) == -LAM - D
    assert mpoly_subst(D + 2 * LAM, "l", sub) == -D - 2 * LAM
    assert mpoly_subst(LAM ** 2, "l", sub) == LAM ** 2 + 2 * LAM * D + D ** 2


def test_eval_examples():
    assert mpoly_eval(D + 2 * LAM, {"d": 1, "l": 3}) == 7
    assert mpoly_eval(ZERO, {}) == 0
    assert mpoly_eval(D ** 2 - LAM ** 2, {"d": Fraction(2, 3), "l": Fraction(1, 3)}) == Fraction(1, 3)


def test_eval_missing_variable():
    with pytest.raises(PolyError):
        mpoly_eval(D + LAM, {"d": 1})


def test_printing_is_canonical():
    assert str(P("2 - 3*l*d + d^2")) == "d^2 - 3*d*l + 2"
    assert str(ZERO) == "0"
    assert str(P("-l")) == "-l"
    assert str(P("1/2*d")) == "1/2*d"


def test_parse_forms():
    assert P("2(d+l)") == 2 * D + 2 * LAM
    assert P("d l") == D * LAM
    assert P("-(d - 1)^2") == -(D - 1) ** 2
    assert P("3/4") == MPoly.const(Fraction(3, 4))


@pytest.mark.parametrize("bad", ["d +", "x", "d^-1", "(d", "1/0", "d ^ l", ""])
def test_parse_errors(bad):
    with pytest.raises(PolyError):
        P(bad)


def test_syntax_error_reports_column():
    with pytest.raises(PolySyntaxError) as info:
        P("d + * l")
    assert "column" in str(info.value)


def test_scalar_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        scalar(0.5)
    with pytest.raises(TypeError):
        scalar(True)
    with pytest.raises(PolyError):
        scalar("1/0")
    assert scalar(" -3/6 ") == Fraction(-1, 2)
    assert format_scalar(Fraction(-1, 2)) == "-1/2"


def test_degree_and_coefficients():
    p = P("d^2*l + 3*l - 1")
    assert p.degree() == 3
    assert p.degree("l") == 1
    assert ZERO.degree() == -1
    assert p.coeff(d=2, l=1) == 1
    assert p.coefficient_in("l", 1) == D ** 2 + 3
    assert p.variables() == {"d", "l"}
    assert poly("d") == D and poly(2) == MPoly.const(2)


def test_laurent_vectors():
    a = LaurentVec.basis(0, -2, 3)
    b = LaurentVec.from_vector([1, 0, 2], 5)
    s = a + b - a
    assert s == b
    assert s.powers() == {5}
    assert b.component(5, 3) == (1, 0, 2)
    assert not (a - a)
    assert a.scale(0) == LaurentVec()


# -- properties ------------------------------------------------------------------

@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO and a * ONE == a


@given(polys, polys)
def test_against_sympy(a, b):
    assert to_sympy(a * b) == sp.expand(to_sympy(a) * to_sympy(b))
    assert from_sympy(to_sympy(a) - to_sympy(b)) == a - b


@given(polys, polys, points)
def test_eval_is_a_homomorphism(a, b, pt):
    assert (a * b).eval(pt) == a.eval(pt) * b.eval(pt)
    assert (a + b).eval(pt) == a.eval(pt) + b.eval(pt)


@settings(max_examples=50)
@given(polys, points)
def test_skew_substitution_by_evaluation(p, pt):
    sub = -LAM - D
    q = p.subst("l", sub)
    shifted = dict(pt, l=-pt["l"] - pt["d"])
    assert q.eval(pt) == p.eval(shifted)


@given(polys)
def test_skew_substitution_is_an_involution(p):
    sub = -LAM - D
    assert p.subst("l", sub).subst("l", sub) == p


@given(polys)
def test_print_parse_roundtrip(p):
    assert MPoly.parse(str(p)) == p
    assert hash(MPoly.parse(str(p))) == hash(p)
