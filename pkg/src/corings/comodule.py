"""Comodules, bicomodules, colinear maps and cotensor products."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .algebra import Issue, Report
from .bimodule import (Bimodule, DualModule, RelativeTensor, associator, check_projective, forget_left, forget_right,
                       intertwiner_system, is_bimodule_map, left_dual, right_dual, submodule, tensor_maps,
                       _require_same)
from .coring import Coring, _fmt
from .linalg import DimensionError, LinearSystem, Matrix, Subspace, axpy, kernel_basis, solve_linear


class ComoduleError(ValueError):
    pass


class Comodule:
    """Right comodule: coaction M → M⊗_A C. Left comodule: coaction M → C⊗_A M."""

    def __init__(self, side: str, coring: Coring, carrier: Bimodule, coaction: Matrix, label: str = "M"):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.side = side
        self.coring = coring
        self.carrier = carrier
        self.label = label
        if side == "right":
            _require_same(carrier.right_alg, coring.algebra, "comodule algebra")
        else:
            _require_same(carrier.left_alg, coring.algebra, "comodule algebra")
        if coaction.shape != (self.tensor.dim, carrier.dim):
            raise DimensionError("coaction has shape %s, expected %s" % (coaction.shape, (self.tensor.dim, carrier.dim)))
        self.coaction = coaction

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def field(self):
        return self.carrier.field

    @property
    def tensor(self) -> RelativeTensor:
        C = self.coring.carrier
        return self.carrier.tensor(C) if self.side == "right" else C.tensor(self.carrier)

    def coaction_pairs(self, i: int) -> list:
        return self.tensor.lift_pairs(self.coaction.col(i))

    def __repr__(self):
        return "Comodule(%s, %s over %s, dim=%d)" % (self.label, self.side, self.coring.label, self.dim)


def _linearity_issues(mat: Matrix, src: Bimodule, dst: Bimodule, name: str) -> Report:
    out = []
    for a, (P, Q) in enumerate(zip(src.left_action, dst.left_action)):
        if mat @ P != Q @ mat:
            out.append(Issue(name + " left-linear", "a=e_%d" % a))
    for a, (P, Q) in enumerate(zip(src.right_action, dst.right_action)):
        if mat @ P != Q @ mat:
            out.append(Issue(name + " right-linear", "a=e_%d" % a))
    return out


def check_comodule(m: Comodule) -> Report:
    issues = _linearity_issues(m.coaction, m.carrier, m.tensor.module, "coaction")
    C = m.coring
    M = m.carrier
    T = m.tensor
    ecols = C.counit.columns()
    cols = m.coaction.columns()
    if m.side == "right":
        T3 = T.module.tensor(C.carrier)
        for i in range(m.dim):
            back: dict = {}
            lhs: dict = {}
            rhs: dict = {}
            for (u, c), x in m.coaction_pairs(i):
                axpy(back, x, M.act_right(M.basis(u), ecols[c]))
                for q, y in cols[u].items():
                    axpy(lhs, x * y, T3.project_pair(q, c))
                for (s, t), y in C.delta_pairs(c):
                    for q, z in T.project_pair(u, s).items():
                        axpy(rhs, x * y * z, T3.project_pair(q, t))
            if back != M.basis(i):
                issues.append(Issue("counit law", "m_%d" % i, "(M⊗ε)ρ = %s" % _fmt(back)))
            if lhs != rhs:
                issues.append(Issue("coassociativity", "m_%d" % i, "(ρ⊗C)ρ = %s, (M⊗Δ)ρ = %s" % (_fmt(lhs), _fmt(rhs))))
    else:
        CC = C.tensor2
        T3 = CC.module.tensor(M)
        for i in range(m.dim):
            back = {}
            lhs = {}
            rhs = {}
            for (c, u), x in m.coaction_pairs(i):
                axpy(back, x, M.act_left(ecols[c], M.basis(u)))
                for q, y in C.comult.col(c).items():
                    axpy(lhs, x * y, T3.project_pair(q, u))
                for (s, t), y in T.lift_pairs(cols[u]):
                    for q, z in CC.project_pair(c, s).items():
                        axpy(rhs, x * y * z, T3.project_pair(q, t))
            if back != M.basis(i):
                issues.append(Issue("counit law", "m_%d" % i, "(ε⊗M)λ = %s" % _fmt(back)))
            if lhs != rhs:
                issues.append(Issue("coassociativity", "m_%d" % i, "(Δ⊗M)λ = %s, (C⊗λ)λ = %s" % (_fmt(lhs), _fmt(rhs))))
    return issues


def regular_comodule(C: Coring, side: str = "right") -> Comodule:
    return Comodule(side, C, C.carrier, C.comult, label=C.label)


def standard_comodule(X: Bimodule, C: Coring) -> Comodule:
    """X⊗_A C with coaction X⊗_A Δ."""
    T = X.tensor(C.carrier)
    car = T.module
    T2 = car.tensor(C.carrier)

    def rho(q):
        x, c = T.pairs[q]
        out: dict = {}
        for (u, w), a in C.delta_pairs(c):
            for p, b in T.project_pair(x, u).items():
                axpy(out, a * b, T2.project_pair(p, w))
        return out
    return Comodule("right", C, car, Matrix.from_function(X.field, T2.dim, car.dim, rho), label="%s⊗%s" % (X.label, C.label))


# ----------------------------------------------------------------------------
# bicomodules

class Bicomodule:
    """(C', C)-bicomodule: carrier (A', A), λ into C'⊗_{A'} M and ρ into M⊗_A C."""

    def __init__(self, left_coring: Coring, right_coring: Coring, carrier: Bimodule,
                 left_coaction: Matrix, right_coaction: Matrix, label: str = "M"):
        self.left_coring = left_coring
        self.right_coring = right_coring
        self.carrier = carrier
        self.label = label
        self._left = Comodule("left", left_coring, carrier, left_coaction, label)
        self._right = Comodule("right", right_coring, carrier, right_coaction, label)

    @property
    def left_coaction(self) -> Matrix:
        return self._left.coaction

    @property
    def right_coaction(self) -> Matrix:
        return self._right.coaction

    @property
    def dim(self):
        return self.carrier.dim

    @property
    def field(self):
        return self.carrier.field

    def left_comodule(self) -> Comodule:
        return self._left

    def right_comodule(self) -> Comodule:
        return self._right

    def __repr__(self):
        return "Bicomodule(%s, (%s, %s), dim=%d)" % (self.label, self.left_coring.label, self.right_coring.label, self.dim)


def check_bicomodule(b: Bicomodule) -> Report:
    issues = [Issue("left comodule: " + i.check, i.where, i.detail) for i in check_comodule(b._left)]
    issues += [Issue("right comodule: " + i.check, i.where, i.detail) for i in check_comodule(b._right)]
    if issues:
        return issues
    L = b._left.tensor  # C'⊗M
    R = b._right.tensor  # M⊗C
    W = L.module.tensor(b.right_coring.carrier)
    lam, rho = b.left_coaction.columns(), b.right_coaction.columns()
    for i in range(b.dim):
        lhs: dict = {}
        rhs: dict = {}
        for (u, c), x in R.lift_pairs(rho[i]):
            for q, y in lam[u].items():
                axpy(lhs, x * y, W.project_pair(q, c))
        for (c2, u), x in L.lift_pairs(lam[i]):
            for (v, c), y in R.lift_pairs(rho[u]):
                for q, z in L.project_pair(c2, v).items():
                    axpy(rhs, x * y * z, W.project_pair(q, c))
        if lhs != rhs:
            issues.append(Issue("compatibility", "m_%d" % i, "(λ⊗C)ρ = %s, (C'⊗ρ)λ = %s" % (_fmt(lhs), _fmt(rhs))))
    return issues


def regular_bicomodule(C: Coring) -> Bicomodule:
    return Bicomodule(C, C, C.carrier, C.comult, C.comult, label=C.label)


# ----------------------------------------------------------------------------
# colinear maps

def _colinearity_equations(ls: LinearSystem, m: Comodule, n: Comodule, tag="col"):
    nd, md = n.dim, m.dim
    Tn = n.tensor
    rho_n = n.coaction
    for i in range(md):
        for pair, x in m.coaction_pairs(i):
            if m.side == "right":
                u, c = pair
                for r in range(nd):
                    for q, y in Tn.project_pair(r, c).items():
                        ls.add((tag, i, q), r * md + u, x * y)
            else:
                c, u = pair
                for r in range(nd):
                    for q, y in Tn.project_pair(c, r).items():
                        ls.add((tag, i, q), r * md + u, x * y)
        for q, row in rho_n.rows_items():
            for r, y in row.items():
                ls.add((tag, i, q), r * md + i, -y)


def comodule_hom_space(m: Comodule, n: Comodule) -> Subspace:
    """A-linear colinear maps m → n, flattened as n.dim × m.dim matrices."""
    if m.side != n.side:
        raise ComoduleError("comodules on different sides")
    if m.coring is not n.coring:
        raise ComoduleError("comodules over different corings")
    F = m.field
    if m.side == "right":
        pairs = list(zip(m.carrier.right_action, n.carrier.right_action))
    else:
        pairs = list(zip(m.carrier.left_action, n.carrier.left_action))
    ls = intertwiner_system(F, pairs, m.dim, n.dim)
    _colinearity_equations(ls, m, n)
    return ls.kernel()


def is_colinear(f: Matrix, m: Comodule, n: Comodule) -> bool:
    if m.side == "right":
        lin = all(f @ P == Q @ f for P, Q in zip(m.carrier.right_action, n.carrier.right_action))
        fc = tensor_maps(m.tensor, n.tensor, f, Matrix.identity(m.field, m.coring.dim))
    else:
        lin = all(f @ P == Q @ f for P, Q in zip(m.carrier.left_action, n.carrier.left_action))
        fc = tensor_maps(m.tensor, n.tensor, Matrix.identity(m.field, m.coring.dim), f)
    return lin and fc @ m.coaction == n.coaction @ f


def bicomodule_hom_space(m: Bicomodule, n: Bicomodule) -> Subspace:
    """Bimodule maps that are colinear on both sides."""
    if m.left_coring is not n.left_coring or m.right_coring is not n.right_coring:
        raise ComoduleError("bicomodules over different corings")
    F = m.field
    pairs = list(zip(m.carrier.left_action, n.carrier.left_action)) + list(zip(m.carrier.right_action, n.carrier.right_action))
    ls = intertwiner_system(F, pairs, m.dim, n.dim)
    _colinearity_equations(ls, m._left, n._left, "lcol")
    _colinearity_equations(ls, m._right, n._right, "rcol")
    return ls.kernel()


def is_bicomodule_map(f: Matrix, m: Bicomodule, n: Bicomodule) -> bool:
    return (is_bimodule_map(f, m.carrier, n.carrier) and is_colinear(f, m._left, n._left)
            and is_colinear(f, m._right, n._right))


# ----------------------------------------------------------------------------
# cotensor

@dataclass
class CotensorSpace:
    left: Any  # right Comodule or Bicomodule
    right: Any  # left Comodule or Bicomodule
    tensor: RelativeTensor  # M⊗_A N
    space: Subspace  # kernel of omega
    omega: Matrix
    module: Bimodule  # induced bimodule on the kernel
    result: Any = None  # induced Comodule/Bicomodule when outer coactions exist

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def inclusion(self) -> Matrix:
        return self.space.basis


def _as_right(m):
    return m.right_comodule() if isinstance(m, Bicomodule) else m


def _as_left(n):
    return n.left_comodule() if isinstance(n, Bicomodule) else n


def omega_map(M: Comodule, N: Comodule) -> tuple[RelativeTensor, Matrix]:
    """ω = ρ_M⊗N − M⊗λ_N : M⊗_A N → (M⊗_A C)⊗_A N."""
    T = M.carrier.tensor(N.carrier)
    MC = M.tensor
    W = MC.module.tensor(N.carrier)
    rho = M.coaction.columns()
    lam = N.coaction.columns()

    def fn(i, j):
        out: dict = {}
        for q, x in rho[i].items():
            axpy(out, x, W.project_pair(q, j))
        for (c, t), x in N.tensor.lift_pairs(lam[j]):
            for q, y in MC.project_pair(i, c).items():
                axpy(out, -x * y, W.project_pair(q, t))
        return out
    return T, T.map_pairs(fn, W.dim)


def cotensor(m, n) -> CotensorSpace:
    """M □_C N as the kernel of ω inside M⊗_A N, with induced outer structure."""
    M, N = _as_right(m), _as_left(n)
    if M.side != "right" or N.side != "left":
        raise ComoduleError("cotensor needs a right comodule and a left comodule")
    if M.coring is not N.coring:
        raise ComoduleError("middle corings differ")
    T, om = omega_map(M, N)
    K = kernel_basis(om)
    mod = submodule(T.module, K, label="%s□%s" % (M.label, N.label))
    out = CotensorSpace(m, n, T, K, om, mod)
    lam = _induced_left(m, n, T, K, mod) if isinstance(m, Bicomodule) else None
    rho = _induced_right(m, n, T, K, mod) if isinstance(n, Bicomodule) else None
    if lam is not None and rho is not None:
        out.result = Bicomodule(m.left_coring, n.right_coring, mod, lam, rho, label=mod.label)
        bad = check_bicomodule(out.result)
    elif lam is not None:
        out.result = Comodule("left", m.left_coring, mod, lam, label=mod.label)
        bad = check_comodule(out.result)
    elif rho is not None:
        out.result = Comodule("right", n.right_coring, mod, rho, label=mod.label)
        bad = check_comodule(out.result)
    else:
        bad = []
    if bad:
        raise ComoduleError("induced coaction on the cotensor fails: %s" % bad[0])
    return out


def _solve_through(J: Matrix, Fm: Matrix, what: str) -> Matrix:
    sol = solve_linear(J, Fm)
    if sol is None:
        raise ComoduleError("%s does not factor through the cotensor" % what)
    return sol[0]


def _induced_left(m: Bicomodule, n, T, K, mod) -> Matrix:
    Cp = m.left_coring
    lamM = m.left_comodule()
    CM = lamM.tensor
    W = CM.module.tensor(n.carrier)
    CK = Cp.carrier.tensor(mod)
    incl = K.basis.columns()
    J = CK.map_pairs(lambda c, k: _assoc_left(CM, W, T, c, incl[k]), W.dim)
    lam_cols = lamM.coaction.columns()

    def fk(k):
        out: dict = {}
        for (i, j), x in T.lift_pairs(incl[k]):
            for q, y in lam_cols[i].items():
                axpy(out, x * y, W.project_pair(q, j))
        return out
    Fm = Matrix.from_function(m.field, W.dim, K.dim, fk)
    return _solve_through(J, Fm, "left coaction")


def _assoc_left(CM, W, T, c, tvec):
    out: dict = {}
    for (i, j), x in T.lift_pairs(tvec):
        for q, y in CM.project_pair(c, i).items():
            axpy(out, x * y, W.project_pair(q, j))
    return out


def _induced_right(m, n: Bicomodule, T, K, mod) -> Matrix:
    D = n.right_coring
    rhoN = n.right_comodule()
    ND = rhoN.tensor
    W = T.module.tensor(D.carrier)
    KD = mod.tensor(D.carrier)
    incl = K.basis.columns()

    def jcol(k, d):
        out: dict = {}
        for q, x in incl[k].items():
            axpy(out, x, W.project_pair(q, d))
        return out
    J = KD.map_pairs(jcol, W.dim)
    rho_cols = rhoN.coaction.columns()

    def fk(k):
        out: dict = {}
        for (i, j), x in T.lift_pairs(incl[k]):
            for (u, d), y in ND.lift_pairs(rho_cols[j]):
                for q, z in T.project_pair(i, u).items():
                    axpy(out, x * y * z, W.project_pair(q, d))
        return out
    Fm = Matrix.from_function(n.field, W.dim, K.dim, fk)
    return _solve_through(J, Fm, "right coaction")


def cotensor_of_morphisms(f: Matrix, g: Matrix, src: CotensorSpace, dst: CotensorSpace) -> Matrix:
    """The restriction of f⊗_A g to the cotensor subspaces."""
    M, N = _as_right(src.left), _as_left(src.right)
    M2, N2 = _as_right(dst.left), _as_left(dst.right)
    if not is_colinear(f, M, M2):
        raise ComoduleError("f is not colinear")
    if not is_colinear(g, N, N2):
        raise ComoduleError("g is not colinear")
    fg = tensor_maps(src.tensor, dst.tensor, f, g)
    return _solve_through(dst.inclusion, fg @ src.inclusion, "f⊗g")


def cotensor_associator(L, M: Bicomodule, N) -> tuple[Matrix, CotensorSpace, CotensorSpace]:
    """Canonical L□(M□N) → (L□M)□N, solved through both inclusions and checked bijective.

    Returns the map with its source and target cotensor spaces.
    """
    F = M.field
    MN = cotensor(M, N)
    src = cotensor(L, MN.result)
    LM = cotensor(L, M)
    dst = cotensor(LM.result, N)
    Lc, Nc = L.carrier, N.carrier
    inner = Lc.tensor(MN.tensor.module)
    flat = tensor_maps(src.tensor, inner, Matrix.identity(F, Lc.dim), MN.inclusion) @ src.inclusion
    flat = associator(Lc, M.carrier, Nc) @ flat
    outer = LM.tensor.module.tensor(Nc)
    J = tensor_maps(dst.tensor, outer, LM.inclusion, Matrix.identity(F, Nc.dim)) @ dst.inclusion
    phi = _solve_through(J, flat, "associator")
    if not phi.is_invertible():
        raise ComoduleError("associator is not bijective")
    return phi, src, dst


def counit_comparison(M: Comodule) -> tuple[CotensorSpace, Matrix]:
    """M □_C C together with the map M⊗ε restricted to it."""
    C = M.coring
    K = cotensor(M, regular_comodule(C, "left"))
    T = K.tensor
    eps = C.counit.columns()
    me = T.map_pairs(lambda i, c: M.carrier.act_right(M.carrier.basis(i), eps[c]), M.dim)
    return K, me @ K.inclusion


# ----------------------------------------------------------------------------
# finite duals

@dataclass
class FiniteDual:
    comodule: Comodule
    dual: DualModule
    dual_basis: list


def finite_dual_comodule(m: Comodule) -> FiniteDual:
    """Right M ↦ left M* = Hom_A(M, A); left N ↦ right *N. Requires projectivity."""
    C = m.coring
    F = m.field
    if m.side == "right":
        v = check_projective(forget_left(m.carrier), "right")
        if not v.is_yes:
            raise ComoduleError("carrier is not projective: " + v.reason)
        D = right_dual(m.carrier)
        T = C.carrier.tensor(D.module)
        basis = [(e, D.coords(f)) for e, f in v.witness["dual_basis"]]
        rho = [m.coaction.apply(e) for e, _ in basis]

        def lam(s):
            out: dict = {}
            for r, (e, fc) in zip(rho, basis):
                for (u, w), x in m.tensor.lift_pairs(r):
                    val = C.carrier.act_left(D.eval_basis(s, u), C.carrier.basis(w))
                    axpy(out, x, T.pure(val, fc))
            return out
        co = Comodule("left", C, D.module, Matrix.from_function(F, T.dim, D.dim, lam), label=m.label + "*")
    else:
        v = check_projective(forget_right(m.carrier), "left")
        if not v.is_yes:
            raise ComoduleError("carrier is not projective: " + v.reason)
        D = left_dual(m.carrier)
        T = D.module.tensor(C.carrier)
        basis = [(e, D.coords(f)) for e, f in v.witness["dual_basis"]]
        lams = [m.coaction.apply(e) for e, _ in basis]

        def rho(s):
            out: dict = {}
            for l, (e, fc) in zip(lams, basis):
                for (c, u), x in m.tensor.lift_pairs(l):
                    val = C.carrier.act_right(C.carrier.basis(c), D.eval_basis(s, u))
                    axpy(out, x, T.pure(fc, val))
            return out
        co = Comodule("right", C, D.module, Matrix.from_function(F, T.dim, D.dim, rho), label="*" + m.label)
    bad = check_comodule(co)
    if bad:
        raise ComoduleError("dual coaction fails: %s" % bad[0])
    return FiniteDual(co, D, v.witness["dual_basis"])


def trivial_bicomodule(M: Bimodule, left: Coring, right: Coring) -> Bicomodule:
    """M as a bicomodule over trivial corings: λ(m) = 1⊗m, ρ(m) = m⊗1."""
    L = left.carrier.tensor(M)
    R = M.tensor(right.carrier)
    lam = Matrix.from_function(M.field, L.dim, M.dim, lambda i: L.pure(left.algebra.unit, M.basis(i)))
    rho = Matrix.from_function(M.field, R.dim, M.dim, lambda i: R.pure(M.basis(i), right.algebra.unit))
    return Bicomodule(left, right, M, lam, rho, label=M.label)
