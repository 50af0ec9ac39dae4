"""Coring automorphisms, the induced bicomodules _fC, inner automorphisms and
certificate-based products in the right Picard group."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import AlgebraMap, Issue, Report
from .bimodule import Bimodule, find_bijective_in_space
from .comodule import Bicomodule, bicomodule_hom_space, check_bicomodule, cotensor, is_bicomodule_map, regular_bicomodule
from .coring import Coring, CoringError, CoringMorphism, check_coring_morphism
from .duals import ConvolutionAlgebra
from .linalg import (DEFAULT_BUDGET, DEFAULT_ENUM_CAP, LinearSystem, Matrix, SolveVerdict, axpy,
                     find_invertible_in_span)


class CoringAutomorphism(CoringMorphism):
    """(φ, ρ) with φ: C → C and ρ: A → A, both bijective."""

    def __init__(self, coring: Coring, rho: AlgebraMap, phi: Matrix, label: str = "f"):
        super().__init__(coring, coring, rho, phi)
        self.label = label

    @property
    def coring(self) -> Coring:
        return self.source

    def check(self) -> Report:
        issues = check_coring_morphism(self)
        if not self.phi.is_invertible():
            issues.append(Issue("bijective", "φ"))
        if not self.rho.matrix.is_invertible():
            issues.append(Issue("bijective", "ρ"))
        return issues

    def __eq__(self, other):
        return (isinstance(other, CoringAutomorphism) and other.coring is self.coring
                and other.phi == self.phi and other.rho.matrix == self.rho.matrix)

    __hash__ = None


def identity_automorphism(c: Coring) -> CoringAutomorphism:
    return CoringAutomorphism(c, AlgebraMap.identity(c.algebra), Matrix.identity(c.field, c.dim), label="id")


def compose_automorphisms(f: CoringAutomorphism, g: CoringAutomorphism) -> CoringAutomorphism:
    """f∘g."""
    if f.coring is not g.coring:
        raise CoringError("automorphisms of different corings")
    return CoringAutomorphism(f.coring, f.rho.compose(g.rho), f.phi @ g.phi, label="%s∘%s" % (f.label, g.label))


def inverse_automorphism(f: CoringAutomorphism) -> CoringAutomorphism:
    phi, rho = f.phi.inverse(), f.rho.inverse()
    if phi is None or rho is None:
        raise CoringError("not bijective")
    return CoringAutomorphism(f.coring, rho, phi, label=f.label + "⁻¹")


def conjugation_automorphism(c: Coring, b: Mapping) -> CoringAutomorphism:
    """On a trivial coring: φ = ρ = (a ↦ b a b⁻¹)."""
    rho = AlgebraMap.conjugation(c.algebra, b)
    return CoringAutomorphism(c, rho, rho.matrix, label="conj")


def algebra_automorphism(c: Coring, rho: AlgebraMap, label: str = "f") -> CoringAutomorphism:
    """An automorphism of A acting on the trivial coring A."""
    return CoringAutomorphism(c, rho, rho.matrix, label=label)


def grouplike_permutation(c: Coring, perm: Sequence[int], label: str = "σ") -> CoringAutomorphism:
    """a·x ↦ a·σ(x) on a grouplike coring."""
    n = len(c.points)
    d = c.algebra.dim
    if sorted(perm) != list(range(n)):
        raise CoringError("not a permutation of the grouplikes")
    phi = Matrix.from_function(c.field, c.dim, c.dim, lambda q: {perm[q // d] * d + q % d: c.field.one})
    return CoringAutomorphism(c, AlgebraMap.identity(c.algebra), phi, label=label)


def graded_automorphism(c: Coring, alpha: AlgebraMap, gamma: Sequence[int], group_map: Sequence[int] | None = None,
                        label: str = "(f,φ,α)") -> CoringAutomorphism:
    """On A⊗kX: a⊗x ↦ α(a)⊗γ(x), with α(A_g) ⊆ A_f(g) and γ(xg) = γ(x)f(g)."""
    X = c.gset
    A = c.algebra
    G = X.group
    f = list(group_map) if group_map is not None else list(range(G.order))
    degs = A.grading.degrees
    for a in range(A.dim):
        for p in alpha(A.basis(a)):
            if degs[p] != f[degs[a]]:
                raise CoringError("α does not map A_g into A_f(g)")
    for x in range(X.size):
        for g in range(G.order):
            if gamma[X.act(x, g)] != X.act(gamma[x], f[g]):
                raise CoringError("γ is not f-equivariant")
    n = X.size
    phi = Matrix.from_function(c.field, c.dim, c.dim,
                               lambda q: {p * n + gamma[q % n]: v for p, v in alpha(A.basis(q // n)).items()})
    return CoringAutomorphism(c, alpha, phi, label=label)


# ----------------------------------------------------------------------------
# induced bicomodules

def induced_bicomodule(f: CoringMorphism) -> Bicomodule:
    """_fC for an isomorphism f = (φ, ρ): C → D: left B-action through ρ⁻¹, left coaction φ(c1)⊗c2."""
    C, D = f.source, f.target
    rinv = f.rho.inverse()
    if rinv is None or not f.phi.is_invertible():
        raise CoringError("f is not an isomorphism")
    B = D.algebra
    car = C.carrier
    left = [car.left_matrix(rinv(B.basis(b))) for b in range(B.dim)]
    M = Bimodule(B, C.algebra, C.dim, left, car.right_action, label="_%s%s" % (getattr(f, "label", "f"), C.label))
    L = D.carrier.tensor(M)
    pcols = f.phi.columns()

    def lam(i):
        out: dict = {}
        for (u, w), x in C.delta_pairs(i):
            axpy(out, x, L.pure(pcols[u], M.basis(w)))
        return out
    lam_m = Matrix.from_function(C.field, L.dim, C.dim, lam)
    R = M.tensor(C.carrier)
    rho_m = Matrix.from_function(C.field, R.dim, C.dim, lambda i: _regular_right(C, R, i))
    return Bicomodule(D, C, M, lam_m, rho_m, label=M.label)


def _regular_right(C: Coring, R, i: int) -> dict:
    out: dict = {}
    for (u, w), x in C.delta_pairs(i):
        axpy(out, x, R.project_pair(u, w))
    return out


def find_bicomodule_iso(m: Bicomodule, n: Bicomodule, *, budget: int = DEFAULT_BUDGET, seed: int = 0,
                        enum_cap: int = DEFAULT_ENUM_CAP) -> SolveVerdict:
    """A bijective bicolinear map m → n (Matrix n.dim × m.dim)."""
    if m.dim != n.dim:
        return SolveVerdict.no("dimensions differ (%d vs %d)" % (m.dim, n.dim))
    space = bicomodule_hom_space(m, n)
    res = find_bijective_in_space(space, n.dim, m.dim, budget=budget, seed=seed, enum_cap=enum_cap)
    res.details["hom_dim"] = space.dim
    return res


# ----------------------------------------------------------------------------
# inner automorphisms

def inner_solution_space(f: CoringAutomorphism, conv: ConvolutionAlgebra | None = None):
    """S ⊆ C*: p(ac) = ρ(a)p(c) and φ(c1)p(c2) = p(c1)c2, in C* coordinates."""
    c = f.coring
    conv = conv or ConvolutionAlgebra(c, "right")
    A, C = c.algebra, c.carrier
    ls = LinearSystem(c.field, conv.dim)
    rho_cols = f.rho.images()
    pcols = f.phi.columns()
    for s, m in enumerate(conv.maps):
        mc = m.columns()
        for a in range(A.dim):
            diff = m @ C.left_action[a]
            for i in range(c.dim):
                v = dict(diff.col(i))
                axpy(v, -1, A.mul(rho_cols[a], mc[i]))
                for k, x in v.items():
                    ls.add(("rho", a, i, k), s, x)
        for i in range(c.dim):
            v: dict = {}
            for (u, w), x in c.delta_pairs(i):
                axpy(v, x, C.act_right(pcols[u], mc[w]))
                axpy(v, -x, C.act_left(mc[u], C.basis(w)))
            for k, x in v.items():
                ls.add(("cond", i, k), s, x)
    return ls.kernel(), conv


def inner_condition_issues(f: CoringAutomorphism, p: Matrix) -> Report:
    """Re-check φ(c1)p(c2) = p(c1)c2 and p(ac) = ρ(a)p(c) for a map p: C → A."""
    c = f.coring
    A, C = c.algebra, c.carrier
    issues: Report = []
    pc = p.columns()
    fc = f.phi.columns()
    for i in range(c.dim):
        lhs: dict = {}
        rhs: dict = {}
        for (u, w), x in c.delta_pairs(i):
            axpy(lhs, x, C.act_right(fc[u], pc[w]))
            axpy(rhs, x, C.act_left(pc[u], C.basis(w)))
        if lhs != rhs:
            issues.append(Issue("φ(c1)p(c2) = p(c1)c2", "e_%d" % i))
        for a in range(A.dim):
            if p.apply(C.left_action[a].col(i)) != A.mul(f.rho(A.basis(a)), pc[i]):
                issues.append(Issue("p(ac) = ρ(a)p(c)", (a, i)))
    return issues


def is_inner(f: CoringAutomorphism, budget: int = DEFAULT_BUDGET, *, seed: int = 0,
             enum_cap: int = DEFAULT_ENUM_CAP) -> SolveVerdict:
    """Yes(p) with p ∈ C* invertible satisfying the inner condition; No when none exists."""
    S, conv = inner_solution_space(f)
    res = find_invertible_in_span(conv.algebra, S, budget=budget, seed=seed, enum_cap=enum_cap)
    res.details["solution_dim"] = S.dim
    if res.is_yes:
        p = conv.element(res.witness["element"])
        bad = inner_condition_issues(f, p)
        if bad:
            raise ArithmeticError("inner witness failed re-verification: %s" % bad[0])
        res.witness = {"p": p, "coords": res.witness["element"], "inverse": res.witness["inverse"], "conv": conv}
    return res


def graded_inner_issues(f: CoringAutomorphism, p: Matrix) -> Report:
    """Conditions (i)-(ii) for a graded coring A⊗kX."""
    c = f.coring
    X = c.gset
    A = c.algebra
    n = X.size
    degs = A.grading.degrees
    issues: Report = []
    one_at = [{q * n + x: v for q, v in A.unit.items()} for x in range(n)]
    for x in range(n):
        px = p.apply(one_at[x])
        comp: dict = {}
        for q, v in px.items():
            comp.setdefault(degs[q], {})[q] = v
        img = f.phi.apply(one_at[x])
        coeff: dict = {}
        for q, v in img.items():
            coeff.setdefault(q % n, {})[q // n] = v
        for y, ay in coeff.items():
            for h, ph in comp.items():
                if X.act(y, h) != x and A.mul(ay, ph):
                    issues.append(Issue("(i) a_y^x p(1⊗x)_h = 0", (x, y, h)))
        for a in range(A.dim):
            lhs = p.apply(c.carrier.act_left(A.basis(a), one_at[x]))
            rhs = A.mul(f.rho(A.basis(a)), px)
            if lhs != rhs:
                issues.append(Issue("(ii) p(a⊗x) = ρ(a)p(1⊗x)", (a, x)))
    return issues


# ----------------------------------------------------------------------------
# Picard products

@dataclass
class InvertibilityCertificate:
    """X with an inverse Y and bicolinear isomorphisms X□Y → C, Y□X → C."""

    X: Bicomodule
    Y: Bicomodule
    f: Matrix
    g: Matrix


def verify_certificate(cert: InvertibilityCertificate) -> Report:
    X, Y = cert.X, cert.Y
    c = X.left_coring
    if not (X.right_coring is c and Y.left_coring is c and Y.right_coring is c):
        return [Issue("corings", "X/Y", "certificate must be over a single coring")]
    issues: Report = []
    for name, b in (("X", X), ("Y", Y)):
        issues += [Issue(name + ": " + i.check, i.where, i.detail) for i in check_bicomodule(b)]
    if issues:
        return issues
    R = regular_bicomodule(c)
    for name, m, src in (("f", cert.f, cotensor(X, Y).result), ("g", cert.g, cotensor(Y, X).result)):
        if m.shape != (R.dim, src.dim):
            issues.append(Issue("shape", name))
        elif not is_bicomodule_map(m, src, R):
            issues.append(Issue("bicolinear", name))
        elif not m.is_invertible():
            issues.append(Issue("bijective", name))
    return issues


def certify(X: Bicomodule, Y: Bicomodule, *, budget: int = DEFAULT_BUDGET, seed: int = 0,
            enum_cap: int = DEFAULT_ENUM_CAP) -> SolveVerdict:
    """Search the isomorphisms X□Y ≅ C ≅ Y□X and return a verified certificate."""
    R = regular_bicomodule(X.left_coring)
    maps = []
    for k, (a, b) in enumerate(((X, Y), (Y, X))):
        v = find_bicomodule_iso(cotensor(a, b).result, R, budget=budget, seed=seed + k, enum_cap=enum_cap)
        if not v.is_yes:
            return SolveVerdict(v.status, None, "no isomorphism found: " + v.reason, v.details)
        maps.append(v.witness)
    cert = InvertibilityCertificate(X, Y, maps[0], maps[1])
    bad = verify_certificate(cert)
    if bad:
        raise ArithmeticError("certificate failed re-verification: %s" % bad[0])
    return SolveVerdict.yes(cert, "isomorphisms found")


def induced_certificate(f: CoringAutomorphism, **kw) -> SolveVerdict:
    """_fC is invertible with inverse _{f⁻¹}C."""
    return certify(induced_bicomodule(f), induced_bicomodule(inverse_automorphism(f)), **kw)


def same_bicomodule(a: Bicomodule, b: Bicomodule) -> bool:
    """Equal structure data over the same pair of corings."""
    if a is b:
        return True
    return (a.left_coring is b.left_coring and a.right_coring is b.right_coring and a.dim == b.dim
            and a.carrier.left_action == b.carrier.left_action and a.carrier.right_action == b.carrier.right_action
            and a.left_coaction == b.left_coaction and a.right_coaction == b.right_coaction)


@dataclass
class PicardProduct:
    bicomodule: Bicomodule
    invertibility: SolveVerdict


def picard_compose(x1: Bicomodule, x2: Bicomodule, cert1: InvertibilityCertificate | None = None,
                   cert2: InvertibilityCertificate | None = None, *, budget: int = DEFAULT_BUDGET,
                   seed: int = 0, enum_cap: int = DEFAULT_ENUM_CAP) -> PicardProduct:
    """X1□_C X2 with a composed certificate (inverse Y2□Y1) when both inputs carry valid ones."""
    c = x1.left_coring
    if not (x1.right_coring is c and x2.left_coring is c and x2.right_coring is c):
        raise CoringError("both bicomodules must be over the same coring")
    prod = cotensor(x1, x2).result
    if cert1 is None or cert2 is None:
        return PicardProduct(prod, SolveVerdict.unknown("no invertibility certificate attached"))
    for name, cert, x in (("first", cert1, x1), ("second", cert2, x2)):
        if not same_bicomodule(cert.X, x):
            return PicardProduct(prod, SolveVerdict.unknown("%s certificate belongs to another bicomodule" % name))
        bad = verify_certificate(cert)
        if bad:
            return PicardProduct(prod, SolveVerdict.unknown("%s certificate invalid: %s" % (name, bad[0])))
    inv = cotensor(cert2.Y, cert1.Y).result
    v = certify(prod, inv, budget=budget, seed=seed, enum_cap=enum_cap)
    if v.is_no:
        v = SolveVerdict.unknown("composed certificate not found: " + v.reason, **v.details)
    return PicardProduct(prod, v)
