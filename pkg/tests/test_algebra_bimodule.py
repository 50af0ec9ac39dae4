import pytest
from hypothesis import given, strategies as st

from corings.algebra import (AlgebraMap, FiniteGroup, GradingError, build_named_algebra, check_algebra,
                             field_algebra, from_structure_constants, group_algebra, matrix_algebra,
                             opposite_algebra, polynomial_quotient, tensor_algebra)
from corings.bimodule import (Bimodule, bimodule_map_space, check_bimodule, check_frobenius_extension,
                              check_projective, check_separable_bimodule, double_dual_map, dual_module,
                              find_bijective_in_space, free_bimodule, left_module, left_regular, regular_bimodule,
                              right_regular, submodule, vector_space)
from corings.linalg import GF, QQ, Matrix, Subspace, kernel_basis


def simple_over_dual_numbers():
    """ℚ as a left ℚ[t]/(t²)-module with t acting by 0."""
    D = polynomial_quotient(QQ, [0, 0])
    return D, left_module(D, 1, [Matrix.identity(QQ, 1), Matrix.zero(QQ, 1, 1)], label="S")


def column_module(M2):
    """M_2(ℚ)·e_11 = span{e_11, e_21} as a left module."""
    return submodule(left_regular(M2), Subspace(QQ, 4, [{0: QQ(1)}, {2: QQ(1)}]))


# ---------------------------------------------------------------------------
# algebras

def test_matrix_algebra_valid_with_unit(M2):
    assert check_algebra(M2) == []
    assert M2.dim == 4 and M2.unit == {0: QQ(1), 3: QQ(1)}


def test_group_algebra_c2(QC2):
    assert check_algebra(QC2) == []
    g = QC2.basis(1)
    assert QC2.mul(g, g) == QC2.unit


def test_perturbed_structure_constants_break_associativity(M2):
    triples = [(i, j, k, x) for i in range(4) for j in range(4) for k, x in M2.table[i][j].items()]
    triples = [(i, j, k, (x + 1) if (i, j, k) == (0, 0, 0) else x) for i, j, k, x in triples]
    bad = check_algebra(from_structure_constants(QQ, 4, triples, [1, 0, 0, 1]))
    assert any(i.check == "associativity" for i in bad)


def test_named_algebras():
    A = build_named_algebra({"type": "matrix", "n": 2})
    assert A.dim == 4
    G = build_named_algebra({"type": "group", "group": {"type": "cyclic", "n": 2}})
    assert G.mul(G.basis(1), G.basis(1)) == G.unit


def test_graded_quotient_by_t_squared_minus_one():
    A = build_named_algebra({"type": "graded", "algebra": {"type": "polynomial", "coeffs": [-1, 0]},
                             "group": {"type": "cyclic", "n": 2}, "components": {"0": [0], "1": [1]}})
    t = A.basis(1)
    assert A.mul(t, t) == A.unit
    assert A.grading.degrees == (0, 1)


def test_bad_grading_rejected():
    A = polynomial_quotient(QQ, [-1, 0])
    with pytest.raises(GradingError):
        build_named_algebra({"type": "graded", "algebra": {"type": "polynomial", "coeffs": [-1, 1]},
                             "group": {"type": "cyclic", "n": 2}, "degrees": [0, 1]})
    assert A.grading is None


@pytest.mark.parametrize("F", [QQ, GF(7)])
@pytest.mark.parametrize("G", [FiniteGroup.cyclic(3), FiniteGroup.symmetric(3)])
def test_group_algebras_and_derived_constructions(F, G):
    A = group_algebra(F, G)
    assert check_algebra(A) == []
    assert check_algebra(opposite_algebra(A)) == []


def test_tensor_of_algebras(M2, QC2):
    T = tensor_algebra(M2, QC2)
    assert T.dim == 8 and check_algebra(T) == []


@given(st.integers(1, 4), st.lists(st.integers(-2, 2), min_size=1, max_size=3))
def test_polynomial_quotients_are_commutative_algebras(n, cs):
    cs = (cs * n)[:n]
    A = polynomial_quotient(QQ, cs)
    assert check_algebra(A) == [] and A.is_commutative()


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_conjugation_is_algebra_map(b):
    A = matrix_algebra(QQ, 2)
    v = {i: QQ(x) for i, x in enumerate(b) if x}
    if A.inverse(v) is None:
        return
    assert AlgebraMap.conjugation(A, v).check() == []


# ---------------------------------------------------------------------------
# relative tensor products

def test_tensor_over_algebra_collapses(M2):
    A = regular_bimodule(M2)
    M = free_bimodule(M2, 2)
    assert A.tensor(M).dim == M.dim


def test_tensor_over_field_multiplies():
    assert vector_space(QQ, 3).tensor(vector_space(QQ, 4)).dim == 12


def test_matrix_coring_square_dimension():
    # the carrier of M_2^c(ℚ) is a 4-dim vector space, so C⊗_ℚC has 16 dims
    from corings.coring import matrix_coring
    C = matrix_coring(field_algebra(QQ), 2)
    assert C.tensor2.dim == 16


@pytest.mark.parametrize("make", [lambda: regular_bimodule(matrix_algebra(QQ, 2)),
                                  lambda: free_bimodule(group_algebra(QQ, FiniteGroup.cyclic(2)), 2)])
def test_relative_tensor_invariants(make):
    M = make()
    T = M.tensor(M)
    assert T.projection @ T.section == Matrix.identity(QQ, T.dim)
    assert kernel_basis(T.projection) == T.relation_span()
    assert check_bimodule(T.module) == []


# ---------------------------------------------------------------------------
# hom spaces, projectivity, duals

def test_bimodule_endomorphisms_of_m2(M2):
    assert bimodule_map_space(regular_bimodule(M2), regular_bimodule(M2)).dim == 1


def test_maps_of_vector_spaces():
    V = vector_space(QQ, 3)
    assert bimodule_map_space(V, V).dim == 9


def test_endomorphisms_of_commutative_algebra(QC2):
    assert bimodule_map_space(regular_bimodule(QC2), regular_bimodule(QC2)).dim == 2


def test_free_module_is_projective(M2):
    v = check_projective(left_regular(M2), "left")
    assert v.is_yes


def test_simple_module_over_dual_numbers_is_not_projective():
    _, S = simple_over_dual_numbers()
    assert check_projective(S, "left").is_no


def test_column_module_is_projective(M2):
    assert check_projective(column_module(M2), "left").is_yes


def test_right_dual_of_regular_is_left_regular(M2):
    D = dual_module(right_regular(M2), "right")
    assert D.dim == M2.dim
    space = bimodule_map_space(left_regular(M2), D.module)
    assert find_bijective_in_space(space, D.dim, M2.dim).is_yes


def test_dual_of_free_module(QC2):
    M = free_bimodule(QC2, 3)
    assert dual_module(M, "right").dim == M.dim


def test_double_dual_of_column_module(M2):
    ev, _, _ = double_dual_map(column_module(M2), "left")
    assert ev.is_invertible()


# ---------------------------------------------------------------------------
# separability and Frobenius extensions

def test_regular_bimodule_is_separable(M2):
    assert check_separable_bimodule(regular_bimodule(M2)).is_yes


@pytest.mark.parametrize("n", [1, 2, 3])
def test_free_vector_space_is_separable(n):
    v = check_separable_bimodule(vector_space(QQ, n))
    assert v.is_yes


def test_simple_module_is_not_separable():
    D, S = simple_over_dual_numbers()
    M = Bimodule(D, field_algebra(QQ), 1, S.left_action, [Matrix.identity(QQ, 1)])
    assert check_separable_bimodule(M).is_no


@pytest.mark.parametrize("target", [lambda: field_algebra(QQ), lambda: matrix_algebra(QQ, 2),
                                    lambda: polynomial_quotient(QQ, [0, 0])])
def test_frobenius_extensions(target):
    B = target()
    iota = AlgebraMap.identity(B) if B.dim == 1 else AlgebraMap.unit_map(B)
    assert check_frobenius_extension(iota).is_yes


def test_identity_extension_is_frobenius(M2):
    assert check_frobenius_extension(AlgebraMap.identity(M2)).is_yes


@given(st.integers(0, 5))
def test_bimodule_check_detects_noncommuting_actions(seed):
    A = polynomial_quotient(QQ, [0, 0])
    t = Matrix.from_rows(QQ, [[0, 0], [1, 0]])
    s = Matrix.from_rows(QQ, [[0, 1], [0, 0]]) if seed % 2 else t
    M = Bimodule(A, A, 2, [Matrix.identity(QQ, 2), t], [Matrix.identity(QQ, 2), s])
    assert (check_bimodule(M) == []) == (seed % 2 == 0)
