import pytest
from hypothesis import given, settings, strategies as st

from _gallery import coring_gallery
from corings.algebra import AlgebraMap, FiniteGroup, field_algebra, group_algebra, matrix_algebra, polynomial_quotient
from corings.bimodule import (Bimodule, check_separable_bimodule, free_bimodule, left_module, left_regular,
                              regular_bimodule, submodule, vector_space)
from corings.comodule import ComoduleError, regular_bicomodule, trivial_bicomodule
from corings.coring import base_extension, comatrix_coring, grouplike_coring, matrix_coring, trivial_coring
from corings.graded import GSet, build_graded_coring, graded_cointegral
from corings.linalg import GF, QQ, Matrix, Subspace
from corings.solvers import (canonical_trivial_frobenius_data, check_frobenius_coring, check_quasifinite_trivial,
                             cointegral_issues, cointegral_solution_contains, find_cointegral, find_cosplit,
                             frobenius_certificate, verify_frobenius_data)

GALLERY = sorted(coring_gallery().items())


def sweedler(B):
    return base_extension(trivial_coring(field_algebra(B.field)), AlgebraMap.unit_map(B))


# ---------------------------------------------------------------------------
# cointegrals

@pytest.mark.parametrize("name,c", GALLERY)
def test_gallery_is_coseparable_and_witness_reverifies(name, c):
    v = find_cointegral(c)
    assert v.is_yes
    assert cointegral_issues(c, v.witness["delta"]) == []


def test_trivial_coring_cointegral_is_multiplication(M2):
    c = trivial_coring(M2)
    # for the trivial coring δ and π coincide: both are A⊗_A A → A
    delta = canonical_trivial_frobenius_data(c)[1]
    assert cointegral_issues(c, delta) == []


def test_graded_cointegral_lies_in_solution_set(QC2):
    X = GSet.regular(FiniteGroup.cyclic(2))
    c = build_graded_coring(QC2, X)
    delta = graded_cointegral(QC2, X, c)
    assert cointegral_solution_contains(c, delta)
    assert find_cointegral(c).is_yes


def test_zero_is_not_a_cointegral(k):
    c = matrix_coring(k, 2)
    assert not cointegral_solution_contains(c, Matrix.zero(QQ, 1, c.tensor2.dim))


def test_sweedler_coring_of_dual_numbers():
    # k → k[t]/(t²) splits, but k[t]/(t²) is not separable over k
    c = sweedler(polynomial_quotient(QQ, [0, 0]))
    assert find_cointegral(c).is_yes
    assert find_cosplit(c).is_no


@pytest.mark.parametrize("M", [lambda: vector_space(QQ, 1), lambda: vector_space(QQ, 3),
                               lambda: regular_bimodule(matrix_algebra(QQ, 2)),
                               lambda: free_bimodule(group_algebra(QQ, FiniteGroup.cyclic(2)), 2),
                               lambda: free_bimodule(matrix_algebra(QQ, 2), 2)])
def test_separable_module_gives_coseparable_comatrix(M):
    M = M()
    assert check_separable_bimodule(M).is_yes
    assert find_cointegral(comatrix_coring(M)).is_yes


# ---------------------------------------------------------------------------
# cosplittings

@pytest.mark.parametrize("name,c", GALLERY)
def test_cosplit_witness_reverifies(name, c):
    v = find_cosplit(c)
    if v.is_yes:
        xi = v.witness["xi"]
        assert c.counit @ xi == Matrix.identity(QQ, c.algebra.dim)


def test_trivial_coring_cosplits_by_identity(M2):
    v = find_cosplit(trivial_coring(M2))
    assert v.is_yes and v.witness["homogeneous"].dim == 0
    assert v.witness["xi"] == Matrix.identity(QQ, 4)


def test_grouplike_cosplits_with_coefficients_summing_to_one(k):
    v = find_cosplit(grouplike_coring(k, ["x", "y"]))
    assert v.is_yes and v.details["solution_dim"] == 1
    z = v.witness["element"]
    assert sum(z.values()) == 1
    assert list(v.witness["homogeneous"].rows) == [{0: QQ(1), 1: QQ(-1)}]


def test_matrix_coring_cosplits(k):
    v = find_cosplit(matrix_coring(k, 2))
    assert v.is_yes and v.details["solution_dim"] == 3


# ---------------------------------------------------------------------------
# Frobenius corings

@pytest.mark.parametrize("build", [lambda: trivial_coring(matrix_algebra(QQ, 2)),
                                   lambda: trivial_coring(polynomial_quotient(QQ, [0, 0])),
                                   lambda: matrix_coring(field_algebra(QQ), 2),
                                   lambda: comatrix_coring(free_bimodule(matrix_algebra(QQ, 2), 2)),
                                   lambda: sweedler(matrix_algebra(QQ, 2))])
def test_frobenius_yes_converts_to_accepted_certificate(build):
    c = build()
    v = check_frobenius_coring(c)
    assert v.is_yes
    eta, pi = frobenius_certificate(c, v.witness["theta"], v.witness["setup"])
    assert verify_frobenius_data(c, eta, pi) == []


def test_trivial_coring_canonical_certificate(QC2):
    c = trivial_coring(QC2)
    eta, pi = canonical_trivial_frobenius_data(c)
    assert verify_frobenius_data(c, eta, pi) == []


def test_zero_eta_rejected(M2):
    c = trivial_coring(M2)
    _, pi = canonical_trivial_frobenius_data(c)
    bad = {i.check for i in verify_frobenius_data(c, Matrix.zero(QQ, 4, 4), pi)}
    assert {"π(C⊗η) = id", "π(η⊗C) = id"} <= bad


def test_wrong_shape_rejected(k):
    c = matrix_coring(k, 2)
    assert verify_frobenius_data(c, Matrix.zero(QQ, 1, 1), Matrix.zero(QQ, 1, 1))[0].check == "shape"


def test_grouplike_over_small_prime_is_decided_by_enumeration():
    c = grouplike_coring(field_algebra(GF(3)), ["x", "y"])
    v = check_frobenius_coring(c, budget=5)
    assert not v.is_unknown
    assert "enumerated" in v.details or v.reason == "found by enumeration"
    if v.is_yes:
        eta, pi = frobenius_certificate(c, v.witness["theta"], v.witness["setup"])
        assert verify_frobenius_data(c, eta, pi) == []


@settings(max_examples=10)
@given(st.integers(0, 2 ** 32))
def test_frobenius_verdict_is_deterministic_for_seed(seed):
    c = grouplike_coring(field_algebra(QQ), 3)
    a = check_frobenius_coring(c, budget=3, seed=seed, enum_cap=0)
    b = check_frobenius_coring(c, budget=3, seed=seed, enum_cap=0)
    assert a.status == b.status and a.details == b.details


# ---------------------------------------------------------------------------
# quasi-finiteness

def test_regular_over_trivial_is_quasifinite(M2):
    v = check_quasifinite_trivial(regular_bicomodule(trivial_coring(M2)))
    assert v.is_yes and v.witness["cohom_module"].dim == 4


def test_simple_dual_numbers_module_not_quasifinite():
    D = polynomial_quotient(QQ, [0, 0])
    k = field_algebra(QQ)
    S = left_module(D, 1, [Matrix.identity(QQ, 1), Matrix.zero(QQ, 1, 1)])
    N = Bimodule(D, k, 1, S.left_action, [Matrix.identity(QQ, 1)])
    assert check_quasifinite_trivial(trivial_bicomodule(N, trivial_coring(D), trivial_coring(k))).is_no


def test_column_module_is_quasifinite(M2):
    col = submodule(left_regular(M2), Subspace(QQ, 4, [{0: QQ(1)}, {2: QQ(1)}]))
    v = check_quasifinite_trivial(trivial_bicomodule(col, trivial_coring(M2), trivial_coring(field_algebra(QQ))))
    assert v.is_yes and v.witness["dual_comodule"].dim == 2


def test_quasifinite_needs_trivial_right_coring(k):
    with pytest.raises(ComoduleError):
        check_quasifinite_trivial(regular_bicomodule(grouplike_coring(k, 2)))
