"""Adjunction contexts (ψ, ω) and the generalized comatrix coring Λ□_C X.

Every cotensor here is over a field, so all flatness side conditions hold and the
identifications used below are honest isomorphisms. Composite maps are chased
left to right through explicit inclusions; each factorisation through a
cotensor subspace is solved for and fails loudly if it does not exist.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraMap, Issue, Report
from .bimodule import Bimodule, check_projective, forget_left, right_dual, vec_to_mat
from .comodule import (Bicomodule, CotensorSpace, bicomodule_hom_space, check_bicomodule, cotensor,
                       is_bicomodule_map, regular_bicomodule, trivial_bicomodule)
from .coring import (Coring, CoringError, CoringMorphism, check_coring, comatrix_coring, matrix_coring,
                     trivial_coring)
from .linalg import LinearSystem, Matrix, axpy, solve_linear


class ContextError(ValueError):
    pass


@dataclass
class AdjunctionContext:
    """X a (C, D)-bicomodule, Λ a (D, C)-bicomodule, ψ: C → X□_DΛ, ω: Λ□_CX → D."""

    X: Bicomodule
    Lam: Bicomodule
    psi: Matrix
    omega: Matrix
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def C(self) -> Coring:
        return self.X.left_coring

    @property
    def D(self) -> Coring:
        return self.X.right_coring

    @property
    def XL(self) -> CotensorSpace:
        if "XL" not in self._cache:
            self._cache["XL"] = cotensor(self.X, self.Lam)
        return self._cache["XL"]

    @property
    def LX(self) -> CotensorSpace:
        if "LX" not in self._cache:
            self._cache["LX"] = cotensor(self.Lam, self.X)
        return self._cache["LX"]


def _structure_issues(ctx: AdjunctionContext) -> Report:
    issues: Report = []
    X, L = ctx.X, ctx.Lam
    if X.left_coring is not L.right_coring or X.right_coring is not L.left_coring:
        return [Issue("corings", "X/Λ", "X must be (C, D) and Λ must be (D, C)")]
    for name, b in (("X", X), ("Λ", L)):
        issues += [Issue(name + ": " + i.check, i.where, i.detail) for i in check_bicomodule(b)]
    if ctx.psi.shape != (ctx.XL.dim, ctx.C.dim):
        issues.append(Issue("shape", "ψ", "expected %s" % ((ctx.XL.dim, ctx.C.dim),)))
    if ctx.omega.shape != (ctx.D.dim, ctx.LX.dim):
        issues.append(Issue("shape", "ω", "expected %s" % ((ctx.D.dim, ctx.LX.dim),)))
    return issues


class _Chase:
    """Pieces of the two triangle composites that do not depend on ω."""

    def __init__(self, ctx: AdjunctionContext, psi: Matrix):
        X, L = ctx.X, ctx.Lam
        XL, LX = ctx.XL, ctx.LX
        self.ctx = ctx
        F = X.field
        Txl, Tlx = XL.tensor, LX.tensor
        psi_t = XL.inclusion @ psi  # C → X⊗_B Λ
        pcols = psi_t.columns()
        K2 = LX.module
        incl2 = LX.inclusion.columns()
        # identity on Λ: Λ → Λ⊗C → (Λ⊗X)⊗Λ, solved into (Λ□X)⊗Λ
        W1 = Tlx.module.tensor(L.carrier)
        rhoL = L.right_comodule()

        def v1(i):
            out: dict = {}
            for (l, c), a in rhoL.coaction_pairs(i):
                for (x, lp), b in Txl.lift_pairs(pcols[c]):
                    for q, y in Tlx.project_pair(l, x).items():
                        axpy(out, a * b * y, W1.project_pair(q, lp))
            return out
        V1 = Matrix.from_function(F, W1.dim, L.dim, v1)
        self.KL = K2.tensor(L.carrier)

        def j1(k, lp):
            out: dict = {}
            for q, x in incl2[k].items():
                axpy(out, x, W1.project_pair(q, lp))
            return out
        J1 = self.KL.map_pairs(j1, W1.dim)
        s1 = solve_linear(J1, V1)
        self.Y1 = None if s1 is None else s1[0]
        # identity on X: X → C⊗X → X⊗(Λ⊗X), solved into X⊗(Λ□X)
        W2 = X.carrier.tensor(Tlx.module)
        lamX = X.left_comodule()

        def v2(i):
            out: dict = {}
            for (c, x), a in lamX.coaction_pairs(i):
                for (xp, lp), b in Txl.lift_pairs(pcols[c]):
                    for q, y in Tlx.project_pair(lp, x).items():
                        axpy(out, a * b * y, W2.project_pair(xp, q))
            return out
        V2 = Matrix.from_function(F, W2.dim, X.dim, v2)
        self.XK = X.carrier.tensor(K2)

        def j2(xp, k):
            out: dict = {}
            for q, x in incl2[k].items():
                axpy(out, x, W2.project_pair(xp, q))
            return out
        J2 = self.XK.map_pairs(j2, W2.dim)
        s2 = solve_linear(J2, V2)
        self.Y2 = None if s2 is None else s2[0]

    def E1(self, eo: Matrix) -> Matrix:
        """(εω)⊗Λ : (Λ□X)⊗_B Λ → Λ."""
        L = self.ctx.Lam.carrier
        cols = eo.columns()
        return self.KL.map_pairs(lambda k, lp: L.act_left(cols[k], L.basis(lp)), L.dim)

    def E2(self, eo: Matrix) -> Matrix:
        """X⊗(εω) : X⊗_B (Λ□X) → X."""
        X = self.ctx.X.carrier
        cols = eo.columns()
        return self.XK.map_pairs(lambda xp, k: X.act_right(X.basis(xp), cols[k]), X.dim)


def verify_context(ctx: AdjunctionContext) -> Report:
    """Bicolinearity of ψ and ω and both triangle identities."""
    issues = _structure_issues(ctx)
    if issues:
        return issues
    C, D = ctx.C, ctx.D
    if not is_bicomodule_map(ctx.psi, regular_bicomodule(C), ctx.XL.result):
        issues.append(Issue("ψ bicolinear", "ψ"))
    if not is_bicomodule_map(ctx.omega, ctx.LX.result, regular_bicomodule(D)):
        issues.append(Issue("ω bicolinear", "ω"))
    ch = _Chase(ctx, ctx.psi)
    eo = D.counit @ ctx.omega
    F = C.field
    if ch.Y1 is None:
        issues.append(Issue("identity on Λ", "Λ", "composite does not factor through the cotensor"))
    elif ch.E1(eo) @ ch.Y1 != Matrix.identity(F, ctx.Lam.dim):
        issues.append(Issue("identity on Λ", "Λ", "(ω□Λ)(Λ□ψ) is not the identity"))
    if ch.Y2 is None:
        issues.append(Issue("identity on X", "X", "composite does not factor through the cotensor"))
    elif ch.E2(eo) @ ch.Y2 != Matrix.identity(F, ctx.X.dim):
        issues.append(Issue("identity on X", "X", "(X□ω)(ψ□X) is not the identity"))
    return issues


def solve_omega(X: Bicomodule, Lam: Bicomodule, psi: Matrix) -> Matrix | None:
    """Given ψ, the triangle identities are linear in ω; return a solution or None."""
    ctx = AdjunctionContext(X, Lam, psi, Matrix.zero(X.field, X.right_coring.dim, 0))
    LX = ctx.LX
    S = bicomodule_hom_space(LX.result, regular_bicomodule(ctx.D))
    ch = _Chase(ctx, psi)
    if ch.Y1 is None or ch.Y2 is None:
        return None
    F = X.field
    D = ctx.D
    ls = LinearSystem(F, S.dim)
    for s, v in enumerate(S.rows):
        om = vec_to_mat(F, v, D.dim, LX.dim)
        eo = D.counit @ om
        for tag, prod in (("L", ch.E1(eo) @ ch.Y1), ("X", ch.E2(eo) @ ch.Y2)):
            for r, row in prod.rows_items():
                for c, x in row.items():
                    ls.add((tag, r, c), s, x)
    for r in range(Lam.dim):
        ls.add_rhs(("L", r, r), F.one)
    for r in range(X.dim):
        ls.add_rhs(("X", r, r), F.one)
    sol = ls.solve()
    if sol is None:
        return None
    return vec_to_mat(F, S.combine(sol[0]), D.dim, LX.dim)


def build_generalized_comatrix(ctx: AdjunctionContext, *, verify: bool = True) -> Coring:
    """The D-base coring Λ□_C X with Δ through ψ and ε = ε_D∘ω."""
    if verify:
        bad = verify_context(ctx)
        if bad:
            raise ContextError("context fails verification: %s" % bad[0])
    X, L, LX, XL = ctx.X, ctx.Lam, ctx.LX, ctx.XL
    F = X.field
    Tlx, Txl = LX.tensor, XL.tensor
    K = LX.module
    W = Tlx.module.tensor(Tlx.module)
    KK = K.tensor(K)
    incl = LX.inclusion.columns()
    pcols = (XL.inclusion @ ctx.psi).columns()
    lamX = X.left_comodule()
    lam_cols = [lamX.coaction_pairs(i) for i in range(X.dim)]

    def w(k):
        out: dict = {}
        for (l, x), a in Tlx.lift_pairs(incl[k]):
            for (c, x2), b in lam_cols[x]:
                for (x1, l1), d in Txl.lift_pairs(pcols[c]):
                    left = Tlx.project_pair(l, x1)
                    right = Tlx.project_pair(l1, x2)
                    for p, y in left.items():
                        for q, z in right.items():
                            axpy(out, a * b * d * y * z, W.project_pair(p, q))
        return out
    V = Matrix.from_function(F, W.dim, K.dim, w)

    def j(k1, k2):
        out: dict = {}
        for p, y in incl[k1].items():
            for q, z in incl[k2].items():
                axpy(out, y * z, W.project_pair(p, q))
        return out
    J = KK.map_pairs(j, W.dim)
    sol = solve_linear(J, V)
    if sol is None:
        raise ContextError("comultiplication does not land in the cotensor square")
    counit = ctx.D.counit @ ctx.omega
    K.label = "%s□%s" % (L.label, X.label)
    cor = Coring(K, sol[0], counit, label="comatrix(%s, %s)" % (L.label, X.label))
    cor.context = ctx
    if verify:
        bad = check_coring(cor)
        if bad:
            raise ContextError("generalized comatrix coring fails: %s" % bad[0])
    return cor


# ----------------------------------------------------------------------------
# standard contexts

def comatrix_context(M: Bimodule, dual_basis=None) -> AdjunctionContext:
    """For M a (B, A)-bimodule with M_A f.g. projective: C = triv(B), D = triv(A),
    X = M, Λ = M*, ψ(b) = Σ b e_i⊗e_i*, ω(φ⊗m) = φ(m)."""
    B, A = M.left_alg, M.right_alg
    if dual_basis is None:
        v = check_projective(forget_left(M), "right")
        if not v.is_yes:
            raise CoringError("M_A is not projective")
        dual_basis = v.witness["dual_basis"]
    Cb, Da = trivial_coring(B), trivial_coring(A)
    Dm = right_dual(M)
    X = trivial_bicomodule(M, Cb, Da)
    L = trivial_bicomodule(Dm.module, Da, Cb)
    ctx = AdjunctionContext(X, L, Matrix.zero(M.field, 0, 0), Matrix.zero(M.field, 0, 0))
    XL, LX = ctx.XL, ctx.LX
    t: dict = {}
    for e, f in dual_basis:
        axpy(t, 1, XL.tensor.pure(e, Dm.coords(f)))
    psi_cols = []
    for b in range(B.dim):
        v = XL.tensor.module.left_action[b].apply(t)
        c = XL.space.coords(v)
        if c is None:
            raise ContextError("ψ does not land in the cotensor")
        psi_cols.append(c)
    ctx.psi = Matrix.from_columns(M.field, XL.dim, psi_cols)
    ev = LX.tensor.map_pairs(lambda s, j: Dm.eval_basis(s, j), A.dim)
    ctx.omega = ev @ LX.inclusion
    ctx.dual = Dm
    return ctx


def identity_context(C: Coring) -> AdjunctionContext:
    """X = Λ = C, ψ = Δ, ω = ε⊗C on C□_C C."""
    R = regular_bicomodule(C)
    ctx = AdjunctionContext(R, R, Matrix.zero(C.field, 0, 0), Matrix.zero(C.field, 0, 0))
    XL = ctx.XL
    psi_cols = []
    for i in range(C.dim):
        c = XL.space.coords(C.comult.col(i))
        if c is None:
            raise ContextError("Δ does not land in C□C")
        psi_cols.append(c)
    ctx.psi = Matrix.from_columns(C.field, XL.dim, psi_cols)
    LX = ctx.LX
    eps = C.counit.columns()
    ec = LX.tensor.map_pairs(lambda i, j: C.carrier.act_left(eps[i], C.carrier.basis(j)), C.dim)
    ctx.omega = ec @ LX.inclusion
    return ctx


def comatrix_comparison(ctx: AdjunctionContext, cor: Coring) -> CoringMorphism:
    """Λ□_C X → M*⊗_B M for a comatrix context; over trivial corings the cotensor is the whole tensor."""
    M = ctx.X.carrier
    target = comatrix_coring(M)
    phi = ctx.LX.inclusion
    return CoringMorphism(cor, target, AlgebraMap.identity(cor.algebra), phi)


def free_comatrix_to_matrix_coring(cor: Coring, n: int) -> CoringMorphism:
    """(k^n)*⊗_k k^n → M_n^c(k), φ⊗e_j ↦ Σ_i φ(e_i) e_ij.

    `cor` must come from the comatrix context of vector_space(k, n).
    """
    k = cor.algebra
    target = matrix_coring(k, n)
    ctx = cor.context
    Dm = ctx.dual
    T = ctx.LX.tensor
    incl = ctx.LX.inclusion

    def pair_image(s, j):
        out: dict = {}
        for i in range(n):
            x = Dm.eval_basis(s, i).get(0)
            if x:
                out[i * n + j] = x
        return out
    on_tensor = T.map_pairs(pair_image, target.dim)
    if not incl.is_invertible():
        raise ContextError("cotensor is not the full tensor")
    return CoringMorphism(cor, target, AlgebraMap.identity(k), on_tensor @ incl)
