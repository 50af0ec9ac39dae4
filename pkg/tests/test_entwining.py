import random

import pytest
from hypothesis import given, settings, strategies as st

from corings.algebra import FiniteGroup, field_algebra, graded_algebra, group_algebra, matrix_algebra, polynomial_quotient
from corings.coring import check_coring, grouplike_coring, matrix_coring, trivial_coring
from corings.entwining import (Bialgebra, EntwiningError, EntwiningStructure, check_bialgebra, check_dk,
                               check_entwining, coalgebra, coring_from_data_recovers_entwining, dk_to_entwining,
                               graded_dk, group_bialgebra, perturb, takeuchi_coring, takeuchi_issues,
                               takeuchi_right_action, trivial_bialgebra, trivial_dk, twist_entwining)
from corings.graded import GSet, build_graded_coring
from corings.linalg import GF, QQ, Matrix

C2 = FiniteGroup.cyclic(2)
FLIP = [[0, 1], [1, 0]]  # C_2 acting on itself


def graded_qc2(F=QQ):
    return graded_algebra(group_algebra(F, C2), C2, [0, 1])


def graded_entwining(F=QQ):
    return dk_to_entwining(graded_dk(graded_qc2(F), FLIP))


# ---------------------------------------------------------------------------
# bialgebras

def test_group_algebra_c2_is_hopf():
    h = group_bialgebra(QQ, C2)
    assert check_bialgebra(h, h.antipode) == []


def test_s3_over_f7_is_hopf():
    h = group_bialgebra(GF(7), FiniteGroup.symmetric(3))
    assert check_bialgebra(h, h.antipode, twisted=h.antipode) == []


def test_constant_comultiplication_breaks_counit():
    h = group_bialgebra(QQ, C2)
    bad = Bialgebra(h.algebra, coalgebra(QQ, 2, [{(0, 0): 1}, {(1, 0): 1}], [1, 1]))
    issues = check_bialgebra(bad)
    assert issues and all("counit" in i.check for i in issues)
    assert all(i.where == "e_1" for i in issues)


def test_identity_is_not_an_antipode_for_c3():
    h = group_bialgebra(QQ, FiniteGroup.cyclic(3))
    assert any(i.check == "antipode" for i in check_bialgebra(h, Matrix.identity(QQ, 3)))


def test_non_multiplicative_counit():
    A = polynomial_quotient(QQ, [0, 0])  # t² = 0, ε(t) = 1
    c = coalgebra(QQ, 2, [{(0, 0): 1}, {(1, 1): 1}], [1, 1])
    assert any(i.check.startswith("bialg2") for i in check_bialgebra(Bialgebra(A, c)))


def test_trivial_bialgebra():
    assert check_bialgebra(trivial_bialgebra(QQ)) == []


# ---------------------------------------------------------------------------
# entwinings

def test_graded_entwining_is_valid():
    e = graded_entwining()
    assert check_entwining(e) == []
    # ψ(x⊗g) = g⊗xg
    assert e.apply(0, 1) == [((1, 1), QQ(1))]
    assert e.apply(1, 1) == [((1, 0), QQ(1))]


@pytest.mark.parametrize("A,C", [
    (lambda: polynomial_quotient(QQ, [1, 0, 0]), lambda: grouplike_coring(field_algebra(QQ), 3)),
    (lambda: group_algebra(QQ, C2), lambda: matrix_coring(field_algebra(QQ), 2)),
    (lambda: matrix_algebra(QQ, 2), lambda: grouplike_coring(field_algebra(QQ), 2)),
])
def test_twist_entwinings(A, C):
    e = twist_entwining(A(), C())
    assert check_entwining(e) == []
    assert check_coring(takeuchi_coring(e)) == []


def test_graded_perturbation_fails_an_axiom():
    e = graded_entwining()
    rows = {i: dict(v) for i, v in e.psi.rows_items()}
    rows[0][0] = rows[0][0] + 1
    bad = check_entwining(EntwiningStructure(e.A, e.C, Matrix(QQ, e.psi.nrows, e.psi.ncols, rows)))
    assert any(i.check.startswith("ES") for i in bad)


def test_entwining_needs_a_coalgebra(M2):
    with pytest.raises(EntwiningError):
        twist_entwining(field_algebra(QQ), trivial_coring(M2))


def test_entwining_shape_checked(k):
    with pytest.raises(EntwiningError):
        EntwiningStructure(k, grouplike_coring(k, 2), Matrix.zero(QQ, 1, 1))


# ---------------------------------------------------------------------------
# Takeuchi correspondence

def test_graded_takeuchi_is_the_graded_coring():
    e = graded_entwining()
    t = takeuchi_coring(e)
    g = build_graded_coring(e.A, GSet(C2, FLIP))
    assert t.comult == g.comult and t.counit == g.counit
    assert t.carrier.right_action == g.carrier.right_action


def test_takeuchi_over_the_ground_field_is_the_coalgebra(k):
    c = matrix_coring(k, 2)
    t = takeuchi_coring(twist_entwining(k, c))
    assert t.comult == c.comult and t.counit == c.counit


def test_takeuchi_rejects_non_entwining():
    e = perturb(graded_entwining(), random.Random(3))
    with pytest.raises(EntwiningError):
        takeuchi_coring(e)


@pytest.mark.parametrize("F", [QQ, GF(5)])
def test_perturbation_verdicts_agree(F):
    e = graded_entwining(F)
    rng = random.Random(2024)
    for _ in range(20):
        p = perturb(e, rng)
        assert bool(check_entwining(p)) == bool(takeuchi_issues(p))


@settings(max_examples=20)
@given(st.randoms(use_true_random=False))
def test_perturbed_twist_verdicts_agree(rng):
    A = polynomial_quotient(QQ, [0, 0])
    e = twist_entwining(A, grouplike_coring(field_algebra(QQ), 2))
    p = perturb(e, rng)
    assert bool(check_entwining(p)) == bool(takeuchi_issues(p))


def test_round_trip_recovers_psi():
    e = graded_entwining()
    t = takeuchi_coring(e)
    back = coring_from_data_recovers_entwining(e.A, e.C, t.carrier.right_action)
    assert back is not None and back.psi == e.psi


def test_round_trip_from_graded_coring():
    e = graded_entwining()
    g = build_graded_coring(e.A, GSet(C2, FLIP))
    back = coring_from_data_recovers_entwining(e.A, e.C, g.carrier.right_action)
    assert back is not None and back.psi == e.psi


def test_non_associative_action_has_no_entwining():
    e = graded_entwining()
    act = takeuchi_right_action(e)
    act[1] = act[1].scale(QQ(2))
    assert coring_from_data_recovers_entwining(e.A, e.C, act) is None


# ---------------------------------------------------------------------------
# Doi-Koppinen data

def test_graded_dk_gives_graded_psi():
    dk = graded_dk(graded_qc2(), FLIP)
    assert check_dk(dk) == []
    e = dk_to_entwining(dk)
    assert check_entwining(e) == []


def test_trivial_dk_gives_twist(k):
    A = polynomial_quotient(QQ, [0, 0])
    C = grouplike_coring(k, 3)
    assert dk_to_entwining(trivial_dk(A, C)).psi == twist_entwining(A, C).psi


def test_dk_over_f5():
    dk = graded_dk(graded_qc2(GF(5)), FLIP)
    e = dk_to_entwining(dk)
    assert check_entwining(e) == [] and check_coring(takeuchi_coring(e)) == []


def test_dk_needs_grading():
    with pytest.raises(EntwiningError):
        graded_dk(polynomial_quotient(QQ, [-1, 0]), FLIP)


def test_bad_dk_action_rejected():
    dk = graded_dk(graded_qc2(), FLIP)
    dk.action = [Matrix.identity(QQ, 2), Matrix.zero(QQ, 2, 2)]
    assert check_dk(dk)
    with pytest.raises(EntwiningError):
        dk_to_entwining(dk)
