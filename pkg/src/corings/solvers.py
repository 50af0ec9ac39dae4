"""Solvers and certificate checks: cointegrals, cosplittings, Frobenius data, quasi-finiteness."""
from __future__ import annotations

from .algebra import Issue, Report, opposite_algebra
from .bimodule import (Bimodule, bimodule_map_space, check_projective, find_bijective_in_space, forget_right,
                       intertwiner_system, is_bimodule_map, mat_to_vec, regular_bimodule, vec_to_mat)
from .comodule import (Bicomodule, ComoduleError, finite_dual_comodule, is_bicomodule_map, regular_bicomodule)
from .coring import Coring
from .duals import ConvolutionAlgebra, i_L
from .linalg import (DEFAULT_BUDGET, DEFAULT_ENUM_CAP, LinearSystem, Matrix, SolveVerdict, Subspace, axpy)


# ----------------------------------------------------------------------------
# cointegrals

def cointegral_system(c: Coring) -> LinearSystem:
    """Linear conditions on δ: C⊗_A C → A (flattened A.dim × dim(C⊗C))."""
    A, C, T = c.algebra, c.carrier, c.tensor2
    F = c.field
    n2 = T.dim
    ls = intertwiner_system(F, list(zip(T.module.left_action, A.lmul_basis()))
                            + list(zip(T.module.right_action, A.rmul_basis())), n2, A.dim, tag="bimod")
    # δΔ = ε
    for q, row in c.comult.rows_items():
        for col, x in row.items():
            for r in range(A.dim):
                ls.add(("unit", r, col), r * n2 + q, x)
    for r, row in c.counit.rows_items():
        for col, x in row.items():
            ls.add_rhs(("unit", r, col), x)
    # c1·δ(c2⊗c') = δ(c⊗c'1)·c'2 on each basis pair of C⊗_A C
    La = C.left_action
    Ra = C.right_action
    for q, (i, j) in enumerate(T.pairs):
        for (u, w), x in c.delta_pairs(i):
            for q2, y in T.project_pair(w, j).items():
                for r in range(A.dim):
                    for k, z in Ra[r].col(u).items():
                        ls.add(("assoc", q, k), r * n2 + q2, x * y * z)
        for (s, t), x in c.delta_pairs(j):
            for q2, y in T.project_pair(i, s).items():
                for r in range(A.dim):
                    for k, z in La[r].col(t).items():
                        ls.add(("assoc", q, k), r * n2 + q2, -x * y * z)
    return ls


def cointegral_issues(c: Coring, delta: Matrix) -> Report:
    """Substitute δ into the defining equations."""
    A, C, T = c.algebra, c.carrier, c.tensor2
    issues: Report = []
    if not is_bimodule_map(delta, T.module, regular_bimodule(A)):
        issues.append(Issue("bimodule map", "δ"))
    if delta @ c.comult != c.counit:
        issues.append(Issue("δΔ = ε", "δ"))
    for q, (i, j) in enumerate(T.pairs):
        lhs: dict = {}
        rhs: dict = {}
        for (u, w), x in c.delta_pairs(i):
            val = delta.apply(T.project_pair(w, j))
            axpy(lhs, x, C.act_right(C.basis(u), val))
        for (s, t), x in c.delta_pairs(j):
            val = delta.apply(T.project_pair(i, s))
            axpy(rhs, x, C.act_left(val, C.basis(t)))
        if lhs != rhs:
            issues.append(Issue("(C⊗δ)(Δ⊗C) = (δ⊗C)(C⊗Δ)", "pair %d" % q))
    return issues


def find_cointegral(c: Coring) -> SolveVerdict:
    """Yes(δ) with δ a cointegral, or No when the linear system is inconsistent."""
    ls = cointegral_system(c)
    sol = ls.solve()
    if sol is None:
        return SolveVerdict.no("cointegral equations are inconsistent")
    part, kern = sol
    delta = vec_to_mat(c.field, part, c.algebra.dim, c.tensor2.dim)
    bad = cointegral_issues(c, delta)
    if bad:
        raise ArithmeticError("cointegral failed re-verification: %s" % bad[0])
    return SolveVerdict.yes({"delta": delta, "homogeneous": kern}, "particular solution", solution_dim=kern.dim)


def cointegral_solution_contains(c: Coring, delta: Matrix) -> bool:
    """Whether δ satisfies the full cointegral system."""
    ls = cointegral_system(c)
    v = mat_to_vec(delta)
    for key, row in ls.eqs.items():
        acc = 0
        for var, coeff in row.items():
            if var == ls.nvars:
                acc = acc - coeff
            else:
                acc = acc + coeff * v.get(var, 0)
        if acc:
            return False
    return True


# ----------------------------------------------------------------------------
# cosplit

def find_cosplit(c: Coring) -> SolveVerdict:
    """An A-bimodule map ξ: A → C with εξ = id, i.e. a central z ∈ C with ε(z) = 1."""
    A, C = c.algebra, c.carrier
    ls = LinearSystem(c.field, C.dim)
    for a in range(A.dim):
        diff = C.left_action[a] - C.right_action[a]
        for r, row in diff.rows_items():
            for k, x in row.items():
                ls.add(("central", a, r), k, x)
    for r, row in c.counit.rows_items():
        for k, x in row.items():
            ls.add(("eps", r), k, x)
    for r, x in A.unit.items():
        ls.add_rhs(("eps", r), x)
    sol = ls.solve()
    if sol is None:
        return SolveVerdict.no("no central element with counit value 1")
    z, kern = sol
    xi = Matrix.from_function(c.field, C.dim, A.dim, lambda j: C.left_action[j].apply(z))
    if c.counit @ xi != Matrix.identity(c.field, A.dim) or not is_bimodule_map(xi, regular_bimodule(A), C):
        raise ArithmeticError("cosplitting failed re-verification")
    return SolveVerdict.yes({"element": z, "xi": xi, "homogeneous": kern}, "central element", solution_dim=kern.dim)


# ----------------------------------------------------------------------------
# Frobenius corings

class FrobeniusSetup:
    """R = (*C)° with C and R as (A, R)-bimodules: c·r = Σ c1 r(c2), a·r = r(-a)."""

    def __init__(self, c: Coring):
        self.coring = c
        A = c.algebra
        F = c.field
        self.conv = ConvolutionAlgebra(c, "left")
        self.R = opposite_algebra(self.conv.algebra)
        R = self.R
        psi = [Matrix.from_columns(F, c.dim, [self.conv._psi_col(m.columns(), k) for k in range(c.dim)])
               for m in self.conv.maps]
        self.C_mod = Bimodule(A, R, c.dim, c.carrier.left_action, psi, label=c.label)
        iL = [self.conv.coords(i_L(c, A.basis(a))) for a in range(A.dim)]
        self.R_mod = Bimodule(A, R, R.dim, [R.lmul(v) for v in iL], R.rmul_basis(), label="R")

    def map_space(self) -> Subspace:
        return bimodule_map_space(self.C_mod, self.R_mod)


def check_frobenius_coring(c: Coring, budget: int = DEFAULT_BUDGET, *, seed: int = 0,
                           enum_cap: int = DEFAULT_ENUM_CAP) -> SolveVerdict:
    """_AC projective and C ≅ (*C)° as (A, R)-bimodules; Yes carries θ: C → R."""
    proj = check_projective(forget_right(c.carrier), "left")
    if not proj.is_yes:
        return SolveVerdict.no("_AC is not projective")
    setup = FrobeniusSetup(c)
    space = setup.map_space()
    res = find_bijective_in_space(space, setup.R.dim, c.dim, budget=budget, seed=seed, enum_cap=enum_cap)
    res.details["map_space_dim"] = space.dim
    if res.is_yes:
        res.witness = {"theta": res.witness, "setup": setup}
    return res


def frobenius_certificate(c: Coring, theta: Matrix, setup: FrobeniusSetup | None = None) -> tuple[Matrix, Matrix]:
    """Convert θ: C ≅ R into (η, π): e = θ⁻¹(ε), η(a) = a e, π(c⊗c') = Σ c1 θ(c')(c2)."""
    setup = setup or FrobeniusSetup(c)
    inv = theta.inverse()
    if inv is None:
        raise ValueError("θ is not bijective")
    e = inv.apply(setup.R.unit)
    C = c.carrier
    eta = Matrix.from_function(c.field, c.dim, c.algebra.dim, lambda a: C.act_left(c.algebra.basis(a), e))
    th = theta.columns()
    conv = setup.conv

    def pi(i, j):
        g = conv.element(th[j]).columns()
        return conv._psi_col(g, i)
    return eta, c.tensor2.map_pairs(pi, c.dim)


def tensor_square_bicomodule(c: Coring) -> Bicomodule:
    """C⊗_A C with coactions Δ⊗C and C⊗Δ."""
    T = c.tensor2
    M = T.module
    L = c.carrier.tensor(M)
    R = M.tensor(c.carrier)

    def lam(i, j):
        out: dict = {}
        for (u, w), x in c.delta_pairs(i):
            axpy(out, x, L.pure(c.carrier.basis(u), T.project_pair(w, j)))
        return out

    def rho(i, j):
        out: dict = {}
        for (s, t), x in c.delta_pairs(j):
            for q, y in T.project_pair(i, s).items():
                axpy(out, x * y, R.project_pair(q, t))
        return out
    return Bicomodule(c, c, M, T.map_pairs(lam, L.dim), T.map_pairs(rho, R.dim), label="C⊗C")


def verify_frobenius_data(c: Coring, eta: Matrix, pi: Matrix) -> Report:
    """η bimodule map, π bicolinear, π(C⊗η) = id = π(η⊗C)."""
    issues: Report = []
    A, C, T = c.algebra, c.carrier, c.tensor2
    F = c.field
    if eta.shape != (c.dim, A.dim) or pi.shape != (c.dim, T.dim):
        return [Issue("shape", "η/π")]
    if not is_bimodule_map(eta, regular_bimodule(A), C):
        issues.append(Issue("η bimodule map", "η"))
    if not is_bicomodule_map(pi, tensor_square_bicomodule(c), regular_bicomodule(c)):
        issues.append(Issue("π bicolinear", "π"))
    e = eta.apply(A.unit)
    I = Matrix.identity(F, c.dim)
    right = Matrix.from_function(F, c.dim, c.dim, lambda i: pi.apply(T.pure(C.basis(i), e)))
    left = Matrix.from_function(F, c.dim, c.dim, lambda i: pi.apply(T.pure(e, C.basis(i))))
    if right != I:
        issues.append(Issue("π(C⊗η) = id", "π", "fails"))
    if left != I:
        issues.append(Issue("π(η⊗C) = id", "π", "fails"))
    return issues


def canonical_trivial_frobenius_data(c: Coring) -> tuple[Matrix, Matrix]:
    """For a trivial coring: η = id and π the multiplication A⊗_A A → A."""
    A = c.algebra
    return (Matrix.identity(c.field, A.dim),
            c.tensor2.map_pairs(lambda i, j: A.table[i][j], A.dim))


# ----------------------------------------------------------------------------
# quasi-finiteness over a trivial coring

def is_trivial_coring(d: Coring) -> bool:
    """ε is a bimodule isomorphism onto A (then Δ is forced to be c ↦ c⊗1)."""
    return d.counit.is_invertible() and d.dim == d.algebra.dim


def check_quasifinite_trivial(n: Bicomodule) -> SolveVerdict:
    """N over (C, trivial(B)) is quasi-finite iff _AN is finitely generated projective."""
    if not is_trivial_coring(n.right_coring):
        raise ComoduleError("right coring is not trivial")
    v = check_projective(forget_right(n.carrier), "left")
    if not v.is_yes:
        return v
    dual = finite_dual_comodule(n.left_comodule())
    v.witness = {"dual_basis": v.witness["dual_basis"], "cohom_module": dual.dual.module, "dual_comodule": dual.comodule}
    return v
