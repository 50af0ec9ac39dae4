"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line; the lines are
repeated in the terminal summary. Run the file directly for the lines alone:

    python3 tests/test_acceptance.py
"""
import random
import sys

import pytest

from _gallery import comodule_gallery
from corings.algebra import AlgebraMap, FiniteGroup, field_algebra, graded_algebra, group_algebra, matrix_algebra, polynomial_quotient
from corings.bimodule import Bimodule, check_separable_bimodule, free_bimodule, regular_bimodule, vector_space
from corings.comatrix import (build_generalized_comatrix, comatrix_context, free_comatrix_to_matrix_coring,
                              identity_context, verify_context)
from corings.comodule import counit_comparison
from corings.coring import (CoringMorphism, check_coring, check_coring_morphism, comatrix_coring, grouplike_coring,
                            matrix_coring, tensor_coring, trivial_coring)
from corings.duals import ConvolutionAlgebra, check_unit_antimorphisms, end_ring_iso, unit_antimorphism_matrix
from corings.entwining import check_entwining, dk_to_entwining, graded_dk, perturb, takeuchi_coring, takeuchi_issues
from corings.graded import GSet, build_graded_coring, graded_cointegral, graded_cotensor_oracle, graded_vector_space
from corings.linalg import GF, QQ, Matrix
from corings.picard import (algebra_automorphism, compose_automorphisms, conjugation_automorphism,
                            find_bicomodule_iso, grouplike_permutation, identity_automorphism, induced_bicomodule,
                            inner_condition_issues, is_inner, picard_compose)
from corings.solvers import (canonical_trivial_frobenius_data, check_frobenius_coring, cointegral_issues,
                             cointegral_solution_contains, find_cointegral, frobenius_certificate,
                             verify_frobenius_data)

C2 = FiniteGroup.cyclic(2)
LINES: list[str] = []


def k():
    return field_algebra(QQ)


def qc2_graded(F=QQ):
    return graded_algebra(group_algebra(F, C2), C2, [0, 1])


def c2_set(orbits: int, fixed: int) -> GSet:
    action = []
    for o in range(orbits):
        action += [[2 * o, 2 * o + 1], [2 * o + 1, 2 * o]]
    action += [[2 * orbits + i] * 2 for i in range(fixed)]
    return GSet(C2, action)


# ---------------------------------------------------------------------------
# criteria; each returns a list of failure descriptions

def criterion_1():
    M2, QC2 = matrix_algebra(QQ, 2), group_algebra(QQ, C2)
    corings = {"trivial(k)": trivial_coring(k()), "trivial(M2)": trivial_coring(M2), "trivial(QC2)": trivial_coring(QC2)}
    for n in range(1, 5):
        corings["grouplike(k,%d)" % n] = grouplike_coring(k(), n)
    for n in (2, 3):
        corings["M%d^c" % n] = matrix_coring(k(), n)
    corings["comatrix(k^2)"] = comatrix_coring(vector_space(QQ, 2))
    corings["comatrix(M2^2)"] = comatrix_coring(free_bimodule(M2, 2))
    corings["grouplike⊗grouplike"] = tensor_coring(grouplike_coring(k(), 2), grouplike_coring(k(), 3))
    return ["%s: %s" % (name, check_coring(c)[0]) for name, c in corings.items() if check_coring(c)]


def criterion_2():
    out = []
    e = dk_to_entwining(graded_dk(qc2_graded(), [[0, 1], [1, 0]]))
    if check_entwining(e):
        out.append("graded entwining fails %s" % check_entwining(e)[0])
    if check_coring(takeuchi_coring(e)):
        out.append("assembled coring fails")
    rng = random.Random(20)
    for t in range(20):
        p = perturb(e, rng)
        if bool(check_entwining(p)) != bool(takeuchi_issues(p)):
            out.append("perturbation %d: verdicts disagree" % t)
    return out


def criterion_3():
    out = []
    rng = random.Random(3)
    A = graded_algebra(k(), C2, [0])
    shapes = [(o, f) for o in range(3) for f in range(5) if 1 <= 2 * o + f <= 4]
    for t in range(50):
        X = c2_set(*rng.choice(shapes))
        n = X.size
        dm = sorted(rng.randrange(n) for _ in range(rng.randint(0, 5 * n)))
        dn = sorted(rng.randrange(n) for _ in range(rng.randint(0, 5 * n)))
        # keep each homogeneous component at dimension ≤ 5
        dm = [x for i, x in enumerate(dm) if dm[:i].count(x) < 5]
        dn = [x for i, x in enumerate(dn) if dn[:i].count(x) < 5]
        r = graded_cotensor_oracle(graded_vector_space(A, X, dm), graded_vector_space(A, X, dn, "left"))
        expect = sum(dm.count(x) * dn.count(x) for x in range(n))
        if not r.equal or list(r.oracle.rows) != list(r.cotensor.rows):
            out.append("pair %d: kernel differs from degree-matched span" % t)
        if r.cotensor.dim != expect:
            out.append("pair %d: dim %d, expected %d" % (t, r.cotensor.dim, expect))
    return out


def criterion_4():
    out = []
    c = trivial_coring(matrix_algebra(QQ, 2))
    for side in ("right", "left"):
        if not unit_antimorphism_matrix(c, side).is_invertible():
            out.append("i_%s not bijective" % side[0].upper())
    out += ["trivial(M2): %s" % i for i in check_unit_antimorphisms(c)]
    for name, cor in (("grouplike(k,{x,y})", grouplike_coring(k(), ["x", "y"])), ("M2^c", matrix_coring(k(), 2))):
        iso = end_ring_iso(cor)
        out += ["%s: %s" % (name, i) for i in iso.issues]
    return out


def criterion_5():
    out = []
    corings = {"trivial(%s)" % n: trivial_coring(A) for n, A in
               (("k", k()), ("M2", matrix_algebra(QQ, 2)), ("QC2", group_algebra(QQ, C2)))}
    corings.update({"grouplike(k,%d)" % n: grouplike_coring(k(), n) for n in (1, 2, 3)})
    A, X = qc2_graded(), GSet.regular(C2)
    graded = build_graded_coring(A, X)
    corings["QC2⊗kC2"] = graded
    for name, c in corings.items():
        v = find_cointegral(c)
        if not v.is_yes:
            out.append("%s: %s" % (name, v.status.value))
        elif cointegral_issues(c, v.witness["delta"]):
            out.append("%s: witness fails re-verification" % name)
    delta = graded_cointegral(A, X, graded)
    if not cointegral_solution_contains(graded, delta):
        out.append("explicit δ outside the solution space")
    out += ["explicit δ: %s" % i for i in cointegral_issues(graded, delta)]
    return out


def _frobenius_yes(name, c, **kw):
    v = check_frobenius_coring(c, **kw)
    if not v.is_yes:
        return ["%s: %s (%s)" % (name, v.status.value, v.reason)]
    eta, pi = frobenius_certificate(c, v.witness["theta"], v.witness["setup"])
    return ["%s witness: %s" % (name, i) for i in verify_frobenius_data(c, eta, pi)]


def criterion_6():
    out = []
    for name, A in (("k", k()), ("M2", matrix_algebra(QQ, 2)), ("QC2", group_algebra(QQ, C2))):
        c = trivial_coring(A)
        eta, pi = canonical_trivial_frobenius_data(c)
        out += ["trivial(%s) canonical: %s" % (name, i) for i in verify_frobenius_data(c, eta, pi)]
        out += _frobenius_yes("trivial(%s) search" % name, c)
    out += _frobenius_yes("M2^c", matrix_coring(k(), 2), budget=64)
    g = grouplike_coring(field_algebra(GF(3)), ["x", "y"])
    v = check_frobenius_coring(g)
    if not v.is_no:
        out.append("grouplike(F3,{x,y}): expected No, got %s (%s, %s)" % (v.status.value, v.reason, dict(v.details)))
    return out


def criterion_7():
    out = []
    for name, M in comodule_gallery():
        K, comp = counit_comparison(M)
        if K.dim != M.dim:
            out.append("%s: dim %d vs %d" % (name, K.dim, M.dim))
        elif not comp.is_invertible():
            out.append("%s: comparison not bijective" % name)
    return out


def _random_unit(rng):
    while True:
        e = [rng.randint(-3, 3) for _ in range(4)]
        if e[0] * e[3] - e[1] * e[2]:
            return {i: QQ(x) for i, x in enumerate(e) if x}


def criterion_8():
    out = []
    for name, c in (("trivial(M2)", trivial_coring(matrix_algebra(QQ, 2))), ("grouplike(k,2)", grouplike_coring(k(), 2))):
        v = is_inner(identity_automorphism(c))
        if not v.is_yes or v.witness["p"] != c.counit:
            out.append("identity on %s: expected Yes with p = ε" % name)
    c = trivial_coring(matrix_algebra(QQ, 2))
    rng = random.Random(8)
    for t in range(3):
        f = conjugation_automorphism(c, _random_unit(rng))
        v = is_inner(f)
        if not v.is_yes:
            out.append("unit %d: %s" % (t, v.status.value))
            continue
        conv = v.witness["conv"]
        if inner_condition_issues(f, v.witness["p"]):
            out.append("unit %d: witness fails inner condition" % t)
        if conv.algebra.mul(v.witness["coords"], v.witness["inverse"]) != conv.unit_element:
            out.append("unit %d: inverse fails" % t)
    A = polynomial_quotient(QQ, [-1, 0])
    neg = algebra_automorphism(trivial_coring(A), AlgebraMap(A, A, Matrix.from_rows(QQ, [[1, 0], [0, -1]])))
    v = is_inner(neg)
    if not (v.is_no and v.details.get("solution_dim") == 0):
        out.append("x ↦ -x: expected No with zero solution space, got %s" % v.status.value)
    return out


def criterion_9():
    out = []
    ctx = comatrix_context(vector_space(QQ, 2))
    out += ["context: %s" % i for i in verify_context(ctx)]
    f = free_comatrix_to_matrix_coring(build_generalized_comatrix(ctx), 2)
    if f.target.comult != matrix_coring(k(), 2).comult or f.target.counit != matrix_coring(k(), 2).counit:
        out.append("target is not M2^c")
    if check_coring_morphism(f) or not f.phi.is_invertible():
        out.append("intertwiner is not a coring isomorphism")
    for name, c in (("grouplike(k,2)", grouplike_coring(k(), 2)), ("M2^c", matrix_coring(k(), 2)),
                    ("trivial(M2)", trivial_coring(matrix_algebra(QQ, 2)))):
        ictx = identity_context(c)
        cor = build_generalized_comatrix(ictx)
        eps = c.counit.columns()
        back = ictx.LX.tensor.map_pairs(lambda i, j: c.carrier.act_left(eps[i], c.carrier.basis(j)), c.dim) @ ictx.LX.inclusion
        m = CoringMorphism(cor, c, AlgebraMap.identity(c.algebra), back)
        if check_coring_morphism(m) or not back.is_invertible():
            out.append("identity context does not reproduce %s" % name)
    return out


def _random_bimodule(rng):
    algebras = [k, lambda: matrix_algebra(QQ, 2), lambda: group_algebra(QQ, C2), lambda: polynomial_quotient(QQ, [0, 0])]
    kind = rng.randrange(3)
    if kind == 0:
        M = vector_space(QQ, rng.randint(1, 3))
    elif kind == 1:
        M = free_bimodule(rng.choice(algebras)(), rng.randint(1, 2))
    else:
        M = regular_bimodule(rng.choice(algebras)())
    # same bimodule in a random basis
    n = M.dim
    while True:
        P = Matrix.from_rows(QQ, [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if P.is_invertible():
            break
    Pi = P.inverse()
    return Bimodule(M.left_alg, M.right_alg, n, [Pi @ a @ P for a in M.left_action], [Pi @ a @ P for a in M.right_action])


def _random_permutation(rng, n):
    p = list(range(n))
    rng.shuffle(p)
    return p


def criterion_10():
    out = []
    rng = random.Random(10)
    for t in range(10):
        M = _random_bimodule(rng)
        if check_separable_bimodule(M).is_yes and not find_cointegral(comatrix_coring(M)).is_yes:
            out.append("instance %d: separable but comatrix not coseparable" % t)
    for t in range(5):
        c = grouplike_coring(k(), rng.randint(2, 4))
        f = grouplike_permutation(c, _random_permutation(rng, c.dim))
        g = grouplike_permutation(c, _random_permutation(rng, c.dim))
        prod = picard_compose(induced_bicomodule(g), induced_bicomodule(f)).bicomodule
        if not find_bicomodule_iso(prod, induced_bicomodule(compose_automorphisms(g, f))).is_yes:
            out.append("pair %d: _gC□_fC not isomorphic to _(gf)C" % t)
    return out


CRITERIA = [
    (1, "coring axiom gallery", criterion_1),
    (2, "Takeuchi bidirectionality", criterion_2),
    (3, "graded cotensor oracle", criterion_3),
    (4, "dual algebras", criterion_4),
    (5, "coseparability", criterion_5),
    (6, "Frobenius", criterion_6),
    (7, "M□C ≅ M", criterion_7),
    (8, "inner automorphisms", criterion_8),
    (9, "generalized comatrix", criterion_9),
    (10, "metamorphic cross-checks", criterion_10),
]


def line(n, title, failures):
    head = "criterion %d (%s): %s" % (n, title, "FAIL" if failures else "PASS")
    return head + ("  [%s]" % "; ".join(failures[:3]) if failures else "")


@pytest.mark.parametrize("n,title,check", CRITERIA, ids=["criterion_%d" % n for n, _, _ in CRITERIA])
def test_criterion(n, title, check):
    failures = check()
    msg = line(n, title, failures)
    LINES.append(msg)
    print(msg)
    assert not failures, msg


if __name__ == "__main__":
    bad = 0
    for n, title, check in CRITERIA:
        f = check()
        bad += bool(f)
        print(line(n, title, f))
    sys.exit(1 if bad else 0)
