"""Shared small structures for the test modules."""
from corings.algebra import FiniteGroup, field_algebra, group_algebra, matrix_algebra, polynomial_quotient
from corings.bimodule import free_bimodule, regular_bimodule, right_module, vector_space
from corings.comodule import Comodule, regular_comodule, standard_comodule
from corings.coring import comatrix_coring, grouplike_coring, matrix_coring, tensor_coring, trivial_coring
from corings.linalg import QQ, Matrix


def homogeneous_comodule(c, degrees, side="right"):
    """A vector space over a grouplike coalgebra with basis vector i in degree degrees[i]."""
    n = len(degrees)
    V = vector_space(c.field, n, label="V")
    T = V.tensor(c.carrier) if side == "right" else c.carrier.tensor(V)
    if side == "right":
        co = Matrix.from_function(c.field, T.dim, n, lambda i: T.project_pair(i, degrees[i]))
    else:
        co = Matrix.from_function(c.field, T.dim, n, lambda i: T.project_pair(degrees[i], i))
    return Comodule(side, c, V, co, label="V%s" % list(degrees))


def coring_gallery():
    k = field_algebra(QQ)
    M2 = matrix_algebra(QQ, 2)
    QC2 = group_algebra(QQ, FiniteGroup.cyclic(2))
    return {
        "triv(k)": trivial_coring(k),
        "triv(M2)": trivial_coring(M2),
        "triv(QC2)": trivial_coring(QC2),
        "grouplike(k,2)": grouplike_coring(k, ["x", "y"]),
        "grouplike(k,3)": grouplike_coring(k, 3),
        "grouplike(QC2,2)": grouplike_coring(QC2, 2),
        "M2c": matrix_coring(k, 2),
        "M3c": matrix_coring(k, 3),
        "comatrix(A^2)": comatrix_coring(free_bimodule(M2, 2)),
        "tensor": tensor_coring(grouplike_coring(k, 2), grouplike_coring(k, 2)),
    }


def comodule_gallery():
    """(name, right comodule) pairs used by the M□C ≅ M checks."""
    g = coring_gallery()
    out = []
    for name, c in g.items():
        out.append(("regular " + name, regular_comodule(c, "right")))
    gl = g["grouplike(k,2)"]
    out.append(("standard k^2 ⊗ grouplike", standard_comodule(vector_space(QQ, 2), gl)))
    out.append(("homogeneous [0,1,1]", homogeneous_comodule(gl, [0, 1, 1])))
    out.append(("homogeneous [2,0]", homogeneous_comodule(g["grouplike(k,3)"], [2, 0])))
    tm = g["triv(M2)"]
    out.append(("standard M2 ⊗ triv", standard_comodule(regular_bimodule(tm.algebra), tm)))
    D = polynomial_quotient(QQ, [0, 0])
    t = Matrix.from_rows(QQ, [[0, 0], [1, 0]])
    dual_numbers = right_module(D, 2, [Matrix.identity(QQ, 2), t], label="D")
    out.append(("standard D ⊗ grouplike(D,2)", standard_comodule(dual_numbers, grouplike_coring(D, 2))))
    out.append(("standard k^3 ⊗ M2c", standard_comodule(vector_space(QQ, 3), g["M2c"])))
    return out
