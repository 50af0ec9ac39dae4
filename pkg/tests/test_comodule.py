import pytest
from hypothesis import given, strategies as st

from _gallery import comodule_gallery, homogeneous_comodule
from corings.algebra import field_algebra
from corings.bimodule import find_bijective_in_space, maps_from_space, regular_bimodule, vector_space
from corings.comodule import (Comodule, ComoduleError, check_bicomodule, check_comodule, comodule_hom_space,
                              cotensor, cotensor_associator, cotensor_of_morphisms, counit_comparison,
                              finite_dual_comodule, is_colinear, regular_bicomodule, regular_comodule,
                              standard_comodule)
from corings.coring import grouplike_coring, matrix_coring, trivial_coring
from corings.duals import ConvolutionAlgebra
from corings.linalg import QQ, Matrix


def test_regular_comodule_is_valid(M2):
    assert check_comodule(regular_comodule(matrix_coring(M2, 2))) == []


def test_standard_comodule_over_grouplike_is_homogeneous(k):
    c = grouplike_coring(k, ["x", "y"])
    S = standard_comodule(vector_space(QQ, 2), c)
    assert S.dim == 4 and check_comodule(S) == []
    for i in range(S.dim):
        terms = S.coaction_pairs(i)
        assert len(terms) == 1 and terms[0][0][0] == i  # e_i ↦ e_i ⊗ (its point)


def test_trivial_coring_standard_comodule_is_the_module(M2):
    S = standard_comodule(regular_bimodule(M2), trivial_coring(M2))
    assert S.dim == M2.dim and check_comodule(S) == []


def test_regrading_a_point_is_still_a_comodule(k):
    # C with ρ(x) = x⊗y, ρ(y) = y⊗y: basis vector x put into degree y
    c = grouplike_coring(k, ["x", "y"])
    T = c.carrier.tensor(c.carrier)
    co = Matrix.from_function(QQ, T.dim, 2, lambda i: T.project_pair(i, 1))
    assert check_comodule(Comodule("right", c, c.carrier, co)) == []


def test_mixing_basis_vectors_breaks_coassociativity(k):
    # m_0 ↦ m_1⊗x, m_1 ↦ m_1⊗y
    c = grouplike_coring(k, ["x", "y"])
    V = vector_space(QQ, 2)
    T = V.tensor(c.carrier)
    co = Matrix.from_columns(QQ, T.dim, [T.project_pair(1, 0), T.project_pair(1, 1)])
    bad = check_comodule(Comodule("right", c, V, co))
    assert {i.check for i in bad} >= {"coassociativity", "counit law"}
    assert all(i.where == "m_0" for i in bad)


# ---------------------------------------------------------------------------
# hom spaces

def test_end_of_grouplike_is_diagonal(k):
    c = grouplike_coring(k, ["x", "y"])
    R = regular_comodule(c)
    E = comodule_hom_space(R, R)
    assert E.dim == 2
    for f in maps_from_space(E, 2, 2):
        assert f[0, 1] == 0 and f[1, 0] == 0


def test_hom_over_trivial_coring_is_all_linear_maps(M2):
    c = trivial_coring(M2)
    R = regular_comodule(c)
    assert comodule_hom_space(R, R).dim == M2.dim  # right M2-linear endomorphisms of M2


def test_hom_between_distinct_degrees_is_zero(k):
    c = grouplike_coring(k, 3)
    assert comodule_hom_space(homogeneous_comodule(c, [0, 0]), homogeneous_comodule(c, [1, 2])).dim == 0


@pytest.mark.parametrize("name,m", comodule_gallery()[:10])
def test_end_of_regular_matches_dual_dimension(name, m):
    C = m.coring
    assert comodule_hom_space(m, m).dim == ConvolutionAlgebra(C, "right").dim


def test_hom_space_side_mismatch(k):
    c = grouplike_coring(k, 2)
    with pytest.raises(ComoduleError):
        comodule_hom_space(regular_comodule(c, "right"), regular_comodule(c, "left"))


# ---------------------------------------------------------------------------
# cotensor products

@pytest.mark.parametrize("name,m", comodule_gallery())
def test_cotensor_with_coring_recovers_module(name, m):
    K, back = counit_comparison(m)
    assert K.dim == m.dim
    assert back.is_invertible()


def test_cotensor_over_trivial_coring_is_full_tensor(M2):
    c = trivial_coring(M2)
    K = cotensor(regular_comodule(c, "right"), regular_comodule(c, "left"))
    assert K.dim == K.tensor.dim


@given(st.lists(st.integers(0, 2), min_size=0, max_size=5), st.lists(st.integers(0, 2), min_size=0, max_size=5))
def test_grouplike_cotensor_counts_degree_pairs(dm, dn):
    c = grouplike_coring(field_algebra(QQ), 3)
    K = cotensor(homogeneous_comodule(c, dm), homogeneous_comodule(c, dn, "left"))
    assert K.dim == sum(dm.count(x) * dn.count(x) for x in range(3))
    assert (K.omega @ K.inclusion).is_zero()


def test_cotensor_coring_mismatch(k):
    with pytest.raises(ComoduleError):
        cotensor(regular_comodule(grouplike_coring(k, 2)), regular_comodule(grouplike_coring(k, 2), "left"))


def test_cotensor_of_bicomodules_is_bicomodule(M2):
    c = matrix_coring(M2, 2)
    B = regular_bicomodule(c)
    K = cotensor(B, B)
    assert K.dim == B.dim and check_bicomodule(K.result) == []


def test_cotensor_of_morphisms_identity_and_zero(k):
    c = grouplike_coring(k, 2)
    M = homogeneous_comodule(c, [0, 1, 1])
    N = homogeneous_comodule(c, [1, 0], "left")
    K = cotensor(M, N)
    assert cotensor_of_morphisms(Matrix.identity(QQ, 3), Matrix.identity(QQ, 2), K, K) == Matrix.identity(QQ, K.dim)
    assert cotensor_of_morphisms(Matrix.identity(QQ, 3), Matrix.zero(QQ, 2, 2), K, K).is_zero()


def _random_colinear(m, n, rng):
    maps = maps_from_space(comodule_hom_space(m, n), n.dim, m.dim)
    out = Matrix.zero(QQ, n.dim, m.dim)
    for f in maps:
        out = out + f.scale(QQ(rng.randint(-2, 2)))
    return out


@given(st.randoms(use_true_random=False))
def test_cotensor_is_functorial(rng):
    c = grouplike_coring(field_algebra(QQ), 2)
    M0, M1, M2 = (homogeneous_comodule(c, d) for d in ([0, 1], [0, 0, 1], [1, 0]))
    N0, N1, N2 = (homogeneous_comodule(c, d, "left") for d in ([1], [0, 1], [1, 1, 0]))
    f, f2 = _random_colinear(M0, M1, rng), _random_colinear(M1, M2, rng)
    g, g2 = _random_colinear(N0, N1, rng), _random_colinear(N1, N2, rng)
    K0, K1, K2 = cotensor(M0, N0), cotensor(M1, N1), cotensor(M2, N2)
    whole = cotensor_of_morphisms(f2 @ f, g2 @ g, K0, K2)
    assert whole == cotensor_of_morphisms(f2, g2, K1, K2) @ cotensor_of_morphisms(f, g, K0, K1)


def test_non_colinear_morphism_rejected(k):
    c = grouplike_coring(k, 2)
    M = homogeneous_comodule(c, [0, 1])
    N = homogeneous_comodule(c, [0], "left")
    K = cotensor(M, N)
    swap = Matrix.from_rows(QQ, [[0, 1], [1, 0]])
    assert not is_colinear(swap, M, M)
    with pytest.raises(ComoduleError):
        cotensor_of_morphisms(swap, Matrix.identity(QQ, 1), K, K)


# ---------------------------------------------------------------------------
# associativity and finite duals

@pytest.mark.parametrize("which", ["grouplike", "matrix", "trivial"])
def test_cotensor_associativity(which, k, M2):
    c = {"grouplike": grouplike_coring(k, 3), "matrix": matrix_coring(k, 2), "trivial": trivial_coring(M2)}[which]
    B = regular_bicomodule(c)
    phi, src, dst = cotensor_associator(B, B, B)
    assert phi.is_invertible() and src.dim == dst.dim == c.dim


def test_cotensor_associativity_with_one_sided_ends(k):
    c = grouplike_coring(k, 2)
    L = homogeneous_comodule(c, [0, 1, 1])
    N = homogeneous_comodule(c, [1, 1], "left")
    phi, src, dst = cotensor_associator(L, regular_bicomodule(c), N)
    assert phi.is_invertible() and src.dim == 4


def test_dual_of_grouplike_is_homogeneous(k):
    c = grouplike_coring(k, ["x", "y"])
    D = finite_dual_comodule(regular_comodule(c)).comodule
    assert D.side == "left" and check_comodule(D) == []
    for i in range(D.dim):
        assert len(D.coaction_pairs(i)) == 1


def test_dual_of_trivial_regular(M2):
    D = finite_dual_comodule(regular_comodule(trivial_coring(M2))).comodule
    assert D.dim == M2.dim and check_comodule(D) == []


def test_double_dual_of_graded_comodule(k):
    c = grouplike_coring(k, 3)
    M = homogeneous_comodule(c, [0, 2, 2])
    DD = finite_dual_comodule(finite_dual_comodule(M).comodule).comodule
    assert DD.side == "right"
    space = comodule_hom_space(M, DD)
    assert find_bijective_in_space(space, DD.dim, M.dim).is_yes
