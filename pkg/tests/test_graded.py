import pytest
from hypothesis import given, settings, strategies as st

from corings.algebra import FiniteGroup, GradingError, field_algebra, graded_algebra, group_algebra
from corings.comodule import ComoduleError, Comodule, check_comodule
from corings.coring import check_coring, grouplike_coring, trivial_coring
from corings.bimodule import right_regular
from corings.graded import (GradedModule, GSet, build_graded_coring, graded_cointegral, graded_cotensor_oracle, graded_sum,
                            graded_takeuchi, graded_to_comodule, graded_vector_space, comodule_to_graded,
                            load_example, suspension)
from corings.linalg import QQ, Matrix
from corings.solvers import cointegral_issues, cointegral_solution_contains, find_cointegral

C2 = FiniteGroup.cyclic(2)


def k_graded(G=C2):
    return graded_algebra(field_algebra(QQ), G, [0])


def qc2():
    return graded_algebra(group_algebra(QQ, C2), C2, [0, 1])


def c2_set(orbits: int, fixed: int) -> GSet:
    """Disjoint union of regular C_2-orbits and fixed points."""
    action = []
    for o in range(orbits):
        action += [[2 * o, 2 * o + 1], [2 * o + 1, 2 * o]]
    base = 2 * orbits
    action += [[base + i, base + i] for i in range(fixed)]
    return GSet(C2, action)


# ---------------------------------------------------------------------------
# G-sets

def test_gset_axioms_enforced():
    with pytest.raises(GradingError):
        GSet(C2, [[1, 0], [1, 0]])  # x·e ≠ x
    with pytest.raises(GradingError):
        GSet(FiniteGroup.cyclic(3), [[0, 1, 0], [1, 0, 1]])


def test_left_action_inverts():
    X = GSet.regular(FiniteGroup.cyclic(3))
    assert [X.left_act(1, x) for x in range(3)] == [2, 0, 1]


# ---------------------------------------------------------------------------
# the coring A⊗kX

def test_singleton_gives_trivial_coring():
    A = k_graded()
    c = build_graded_coring(A, GSet.trivial(C2, 1))
    t = trivial_coring(field_algebra(QQ))
    assert c.comult == t.comult and c.counit == t.counit


def test_ground_field_gives_grouplike_coring():
    A = k_graded()
    c = build_graded_coring(A, GSet.trivial(C2, 3))
    g = grouplike_coring(field_algebra(QQ), 3)
    assert c.comult == g.comult and c.counit == g.counit


def test_qc2_coring_is_four_dimensional():
    c = build_graded_coring(qc2(), GSet.regular(C2))
    assert c.dim == 4 and check_coring(c) == []


@pytest.mark.parametrize("X", [lambda: GSet.regular(C2), lambda: c2_set(1, 2), lambda: GSet.trivial(C2, 2)])
def test_graded_coring_equals_takeuchi(X):
    X = X()
    A = qc2()
    g, t = build_graded_coring(A, X), graded_takeuchi(A, X)
    assert g.comult == t.comult and g.counit == t.counit
    assert g.carrier.left_action == t.carrier.left_action and g.carrier.right_action == t.carrier.right_action


def test_ungraded_algebra_rejected():
    with pytest.raises(GradingError):
        build_graded_coring(field_algebra(QQ), GSet.regular(C2))


# ---------------------------------------------------------------------------
# cointegral

def test_grouplike_cointegral_is_kronecker():
    A = k_graded()
    X = GSet.trivial(C2, 3)
    delta = graded_cointegral(A, X)
    c = build_graded_coring(A, X)
    T = c.tensor2
    for q, (i, j) in enumerate(T.pairs):
        assert delta.apply(T.project_pair(i, j)) == ({0: QQ(1)} if i == j else {})


def test_qc2_cointegral_in_solution_space():
    A, X = qc2(), GSet.regular(C2)
    c = build_graded_coring(A, X)
    delta = graded_cointegral(A, X, c)
    assert cointegral_issues(c, delta) == [] and cointegral_solution_contains(c, delta)
    assert find_cointegral(c).is_yes


def test_zeroed_diagonal_breaks_counit_equation():
    A = k_graded()
    X = GSet.trivial(C2, 2)
    c = build_graded_coring(A, X)
    delta = graded_cointegral(A, X, c)
    T = c.tensor2
    q = next(iter(T.project_pair(0, 0)))
    rows = {r: {k: v for k, v in row.items() if k != q} for r, row in delta.rows_items()}
    bad = cointegral_issues(c, Matrix(QQ, delta.nrows, delta.ncols, rows))
    assert any(i.check == "δΔ = ε" for i in bad)


# ---------------------------------------------------------------------------
# graded modules and comodules

def test_suspensions_are_homogeneous_comodules():
    A, X = qc2(), GSet.regular(C2)
    c = build_graded_coring(A, X)
    for x in range(2):
        for side in ("right", "left"):
            M = graded_to_comodule(suspension(A, X, x, side), c)
            assert check_comodule(M) == []


def test_zero_module_gives_zero_comodule():
    A, X = qc2(), GSet.regular(C2)
    Z = graded_sum([], A, X)
    M = graded_to_comodule(Z, build_graded_coring(A, X))
    assert M.dim == 0 and check_comodule(M) == []


def test_inhomogeneous_module_rejected():
    A, X = qc2(), GSet.regular(C2)
    with pytest.raises(GradingError):
        GradedModule(A, X, right_regular(A), [0, 0])


def test_non_graded_coaction_rejected_with_basis_vector():
    A, X = k_graded(), GSet.trivial(C2, 2)
    c = build_graded_coring(A, X)
    V = graded_vector_space(A, X, [0, 1])
    T = V.carrier.tensor(c.carrier)
    co = Matrix.from_columns(QQ, T.dim, [T.project_pair(0, 0), {**T.project_pair(1, 0), **T.project_pair(1, 1)}])
    with pytest.raises(ComoduleError, match="basis vector 1"):
        comodule_to_graded(Comodule("right", c, V.carrier, co), X)


@settings(max_examples=25)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=3))
def test_round_trip_over_qc2(xs):
    A, X = qc2(), GSet.regular(C2)
    c = build_graded_coring(A, X)
    mods = [suspension(A, X, x) for x in xs]
    m = graded_sum(mods)
    back = comodule_to_graded(graded_to_comodule(m, c), X)
    assert back.degrees == m.degrees


# ---------------------------------------------------------------------------
# M□N = graded tensor

def test_degree_count_example():
    A, X = k_graded(), GSet.trivial(C2, 2)
    M = graded_vector_space(A, X, [0, 1, 1])
    N = graded_vector_space(A, X, [0, 0, 0, 1], "left")
    r = graded_cotensor_oracle(M, N)
    assert r.equal and r.cotensor.dim == 5


def test_tensor_with_algebra_over_a_point_is_module():
    A, X = qc2(), GSet.trivial(C2, 1)
    M = graded_sum([suspension(A, X, 0), suspension(A, X, 0)])
    r = graded_cotensor_oracle(M, suspension(A, X, 0, "left"))
    assert r.equal and r.cotensor.dim == M.dim


def test_tensor_with_algebra_over_regular_set_keeps_identity_component():
    A, X = qc2(), GSet.regular(C2)
    M = graded_sum([suspension(A, X, 0), suspension(A, X, 1)])
    r = graded_cotensor_oracle(M, suspension(A, X, 0, "left"))
    assert r.equal and r.cotensor.dim == list(M.degrees).count(0)


def test_oracle_needs_sides():
    A, X = qc2(), GSet.regular(C2)
    with pytest.raises(GradingError):
        graded_cotensor_oracle(suspension(A, X, 0), suspension(A, X, 0))


@settings(max_examples=50)
@given(st.sampled_from([(o, f) for o in range(3) for f in range(5) if 1 <= 2 * o + f <= 4]), st.data())
def test_oracle_matches_cotensor_over_ground_field(shape, data):
    X = c2_set(*shape)
    n = X.size
    A = k_graded()
    deg = st.integers(0, n - 1)
    dm = data.draw(st.lists(deg, max_size=5))
    dn = data.draw(st.lists(deg, max_size=5))
    r = graded_cotensor_oracle(graded_vector_space(A, X, dm), graded_vector_space(A, X, dn, "left"))
    assert r.equal
    assert list(r.oracle.rows) == list(r.cotensor.rows)


@settings(max_examples=25)
@given(st.lists(st.integers(0, 1), max_size=2), st.lists(st.integers(0, 1), max_size=2))
def test_oracle_matches_cotensor_over_qc2(xs, ys):
    A, X = qc2(), GSet.regular(C2)
    c = build_graded_coring(A, X)
    M = graded_sum([suspension(A, X, x) for x in xs], A, X)
    N = graded_sum([suspension(A, X, y, "left") for y in ys], A, X, "left")
    assert graded_cotensor_oracle(M, N, c).equal


# ---------------------------------------------------------------------------
# shipped example

def test_shipped_example_loads():
    doc = load_example()
    assert doc["schema_version"] == 1
    assert {s["name"] for s in doc["structures"]} >= {"A", "X"}
