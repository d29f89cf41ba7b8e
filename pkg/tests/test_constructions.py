import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

import generators as gen
from homgd.constructions import (
    commutator_bracket,
    derivation_product,
    endomorphism_twist,
    heisenberg,
    lie_2d,
    make_example,
    matrix_exp_nilpotent,
    nilpotent_exp,
    nilpotent_truncated,
    poisson_derived_gd,
    sl2,
    truncated_algebra,
    truncated_euler,
    trivial_lie_gd,
    trivial_novikov_gd,
)
from homgd.finalg import (
    AlgebraCarrier,
    AlgebraError,
    MissingSlotError,
    apply,
    check_axioms,
    identity_matrix,
    mult,
    vadd,
    vscale,
    vsub,
    zero_matrix,
)

theorem = settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
seeds = st.integers(0, 10 ** 6)


def circ_of(A, i, j):
    return mult(A.ops["circ"], A.basis(i), A.basis(j))


# -- commutator ------------------------------------------------------------------

def test_commutator_of_commutative_is_zero():
    A = AlgebraCarrier.build(2, ops={"circ": {(0, 1, 1): 1, (1, 0, 1): 1}}, maps={"alpha": identity_matrix(2)})
    assert commutator_bracket(A).ops["bracket"] == {}


def test_commutator_on_e310():
    A = truncated_euler(3, 1, 0).replace(drop=("bracket",))
    out = commutator_bracket(A)
    assert mult(out.ops["bracket"], {0: 1}, {1: 1}) == {1: 1}
    assert check_axioms(out, "hom_gd").passed


def test_commutator_keeps_going_on_bad_input():
    A = truncated_euler(3, 2, 0)
    c = {key: dict(row) for key, row in A.ops["circ"].items()}
    c[(0, 1)][1] = Fraction(3)
    out = commutator_bracket(A.replace(ops={"circ": c}, drop=("bracket",)))
    assert "bracket" in out.ops
    assert out.metadata["warnings"] == ["input is not Hom-Novikov"]


def test_commutator_needs_slots():
    with pytest.raises(MissingSlotError):
        commutator_bracket(AlgebraCarrier.build(1, ops={"circ": {}}))


@theorem
@given(seeds)
def test_commutator_theorem(seed):
    H = gen.hom_novikov(random.Random(seed))
    assert check_axioms(H, "hom_novikov").passed
    assert check_axioms(commutator_bracket(H), "hom_gd").passed


# -- endomorphism twist --------------------------------------------------------------

def test_twist_by_identity_is_identity():
    A = truncated_euler(4, 1, 1)
    assert endomorphism_twist(A, "gd").ops == A.ops
    N = A.replace(drop=("bracket",))
    out = endomorphism_twist(N, "novikov")
    assert out.ops["circ"] == A.ops["circ"]


def test_twist_novikov_example():
    # precursor b_a o b_c = (c + 1) b_{a+c}, alpha(b_a) = 2^a b_a
    N = truncated_euler(3, 1, 1).replace(drop=("bracket",))
    N = N.replace(maps={"alpha": ((1, 0, 0), (0, 2, 0), (0, 0, 4))})
    out = endomorphism_twist(N, "novikov")
    assert circ_of(out, 0, 1) == {1: 4}
    assert check_axioms(out, "hom_novikov").passed


def test_twist_gd_example():
    L = trivial_lie_gd(lie_2d()).replace(maps={"alpha": ((1, 1), (0, 1))})
    out = endomorphism_twist(L, "gd")
    assert mult(out.ops["bracket"], {0: 1}, {1: 1}) == {0: 1}
    assert check_axioms(out, "hom_gd").passed


def test_twist_unknown_kind():
    with pytest.raises(AlgebraError):
        endomorphism_twist(truncated_euler(2), "jordan")


@theorem
@given(seeds)
def test_novikov_twist_theorem(seed):
    N = gen.novikov_with_endomorphism(random.Random(seed))
    out = endomorphism_twist(N, "novikov")
    assert "warnings" not in out.metadata
    assert check_axioms(out, "hom_novikov").passed
    # the composite bracket alpha(x o y - y o x) completes it to Hom-GD
    assert check_axioms(out, "hom_gd").passed


@theorem
@given(seeds)
def test_gd_twist_theorem(seed):
    G = gen.novikov_with_endomorphism_gd(random.Random(seed))
    assert check_axioms(G, "gd").passed
    assert check_axioms(endomorphism_twist(G, "gd"), "hom_gd").passed


@pytest.mark.parametrize("L", [lie_2d(), sl2(), heisenberg()], ids=["lie2", "sl2", "heis"])
def test_gd_twist_of_lie_algebras(L):
    rng = random.Random(7)
    G = trivial_lie_gd(L)
    # automorphisms of the lie algebras given by inner exponentials
    for _ in range(3):
        i = rng.randrange(L.dim)
        ad = [[Fraction(0)] * L.dim for _ in range(L.dim)]
        for j in range(L.dim):
            for k, c in mult(L.ops["bracket"], L.basis(i), L.basis(j)).items():
                ad[k][j] = c
        try:
            alpha = matrix_exp_nilpotent(tuple(tuple(r) for r in ad))
        except AlgebraError:
            continue
        out = endomorphism_twist(G.replace(maps={"alpha": alpha}), "gd")
        assert check_axioms(out, "hom_gd").passed


# -- derivation product --------------------------------------------------------------

def test_zero_derivation_gives_zero_ops():
    A = truncated_algebra(3, 2).replace(maps={"D": zero_matrix(3)})
    out = derivation_product(A, 0, "plain")
    assert out.ops["circ"] == {} and out.ops["bracket"] == {}
    assert "dot" not in out.ops and "D" not in out.maps


def test_twisted_closed_form():
    A = truncated_algebra(3, 2)
    out = derivation_product(A, 0, "twisted")
    assert circ_of(out, 1, 1) == {2: 4}
    for a in range(3):
        for c in range(3):
            expected = {a + c: Fraction(c * 2 ** (a + c))} if a + c < 3 and c else {}
            assert circ_of(out, a, c) == expected
            br = mult(out.ops["bracket"], {a: 1}, {c: 1})
            assert br == ({a + c: Fraction((c - a) * 2 ** (a + c))} if a + c < 3 and c != a else {})
    assert check_axioms(out, "hom_gd").passed
    w1 = derivation_product(A, 1, "twisted")
    assert circ_of(w1, 0, 0) == {0: 1}


def test_derivation_product_warnings():
    A = truncated_algebra(3, 2).replace(maps={"D": ((0, 1, 0), (0, 0, 0), (0, 0, 0))})
    out = derivation_product(A, 0, "twisted")
    assert any("commute" in w for w in out.metadata["warnings"])
    with pytest.raises(AlgebraError):
        derivation_product(A, 0, "sideways")


@theorem
@given(seeds)
def test_plain_derivation_theorem(seed):
    P, w = gen.hom_assoc_with_derivation(random.Random(seed))
    assert check_axioms(P, "comm_hom_assoc").passed
    out = derivation_product(P, w, "plain")
    assert "warnings" not in out.metadata
    assert check_axioms(out, "hom_gd").passed


@theorem
@given(seeds)
def test_twisted_derivation_corollary(seed):
    P, w = gen.assoc_with_endomorphism(random.Random(seed))
    out = derivation_product(P, w, "twisted")
    assert "warnings" not in out.metadata
    assert check_axioms(out, "hom_gd").passed


@theorem
@given(seeds)
def test_plain_mode_associator_identity(seed):
    """(x o y) o a(z) - a(x) o (y o z) = -(x.y).a(D^2 z) - w (x.y).a(D z)."""
    P, w = gen.hom_assoc_with_derivation(random.Random(seed))
    G = derivation_product(P, w, "plain")
    c, a, Dm, dot = G.ops["circ"], P.maps["alpha"], P.maps["D"], P.ops["dot"]
    for i in range(P.dim):
        for j in range(P.dim):
            for k in range(P.dim):
                x, y, z = P.basis(i), P.basis(j), P.basis(k)
                lhs = vsub(mult(c, mult(c, x, y), apply(a, z)), mult(c, apply(a, x), mult(c, y, z)))
                xy = mult(dot, x, y)
                rhs = vscale(-1, vadd(
                    mult(dot, xy, apply(a, apply(Dm, apply(Dm, z)))),
                    vscale(w, mult(dot, xy, apply(a, apply(Dm, z)))),
                ))
                assert lhs == rhs


# -- Poisson ---------------------------------------------------------------------

def test_poisson_with_zero_bracket_matches_plain():
    A = truncated_algebra(3, 2)
    T = gen.Truncated(1, 3)
    P = T.carrier(ops={"dot": gen.twisted_dot(T, A.maps["alpha"]), "bracket": {}}, maps=dict(A.maps))
    out = poisson_derived_gd(P, 0)
    plain = derivation_product(P, 0, "plain")
    assert out.ops["circ"] == plain.ops["circ"]
    assert check_axioms(out, "hom_gd").passed


def test_poisson_with_zero_derivation():
    P, _ = gen.hom_poisson_with_derivation(random.Random(3))
    out = poisson_derived_gd(P.replace(maps={"D": zero_matrix(P.dim)}), 0)
    assert out.ops["circ"] == {}
    assert check_axioms(out, "hom_gd").passed == check_axioms(out, "hom_lie").passed


@theorem
@given(seeds)
def test_poisson_theorem(seed):
    P, w = gen.hom_poisson_with_derivation(random.Random(seed))
    assert check_axioms(P, "hom_poisson").passed
    out = poisson_derived_gd(P, w)
    assert "warnings" not in out.metadata
    assert check_axioms(out, "hom_gd").passed


# -- examples --------------------------------------------------------------------

def test_truncated_euler_dim_one():
    A = truncated_euler(1, 5, Fraction(3, 2))
    assert A.ops["circ"] == {(0, 0): {0: Fraction(3, 2)}}
    assert A.ops["bracket"] == {}
    assert A.maps["alpha"] == ((1,),)


def test_truncated_euler_errors():
    with pytest.raises(AlgebraError):
        truncated_euler(0)
    with pytest.raises(AlgebraError):
        truncated_euler(3, 0)


@pytest.mark.parametrize("d", range(1, 7))
@pytest.mark.parametrize("q", [1, 2, Fraction(1, 2)])
@pytest.mark.parametrize("w", [0, 1, -1])
def test_truncated_euler_catalog(d, q, w):
    A = make_example("truncated_euler", d=d, q=q, w=w)
    assert check_axioms(A, "hom_gd").passed


def test_trivial_embeddings():
    G = trivial_lie_gd(lie_2d())
    assert G.ops["circ"] == {}
    assert check_axioms(G, "gd").passed
    N = trivial_novikov_gd(truncated_euler(4, 1, 1).replace(drop=("bracket",)))
    assert N.ops["bracket"] == {}
    assert check_axioms(N, "gd").passed


def test_nilpotent_exp_examples():
    for d in range(1, 5):
        A = nilpotent_exp(nilpotent_truncated(d), 1)
        assert check_axioms(A, "hom_gd").passed
    with pytest.raises(AlgebraError, match="nilpotent"):
        nilpotent_exp(truncated_algebra(3, 2), 0)
