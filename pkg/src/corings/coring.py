"""Corings, their validity checks, standard constructions and morphisms."""
from __future__ import annotations

from typing import Mapping, Sequence

from .algebra import Algebra, AlgebraMap, Issue, Report, opposite_algebra
from .bimodule import (Bimodule, RelativeTensor, check_bimodule, check_projective, forget_left,
                       free_bimodule, regular_bimodule, right_dual, _require_same)
from .linalg import DimensionError, Matrix, axpy


class CoringError(ValueError):
    pass


def _fmt(v: Mapping) -> str:
    return "{" + ", ".join("%d: %s" % (k, v[k]) for k in sorted(v)) + "}"


class Coring:
    """An A-coring: bimodule carrier, comultiplication into the quotient basis of
    C⊗_A C, and counit into A."""

    def __init__(self, carrier: Bimodule, comult: Matrix, counit: Matrix, label: str = "C"):
        _require_same(carrier.left_alg, carrier.right_alg, "coring carrier")
        self.carrier = carrier
        self.comult = comult
        self.counit = counit
        self.label = label
        if comult.shape != (self.tensor2.dim, carrier.dim):
            raise DimensionError("comultiplication has shape %s, expected %s" % (comult.shape, (self.tensor2.dim, carrier.dim)))
        if counit.shape != (self.algebra.dim, carrier.dim):
            raise DimensionError("counit has wrong shape")
        self._tensor3 = None

    @classmethod
    def from_lift(cls, carrier: Bimodule, lifts: Sequence[Mapping], counit: Matrix, label="C") -> "Coring":
        """Comultiplication given per basis vector as a k-tensor {(i, j): value}."""
        T = carrier.tensor(carrier)
        cols = []
        for v in lifts:
            out: dict = {}
            for (i, j), x in v.items():
                axpy(out, carrier.field(x), T.project_pair(i, j))
            cols.append(out)
        return cls(carrier, Matrix.from_columns(carrier.field, T.dim, cols), counit, label)

    @property
    def algebra(self) -> Algebra:
        return self.carrier.left_alg

    @property
    def field(self):
        return self.carrier.field

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def tensor2(self) -> RelativeTensor:
        return self.carrier.tensor(self.carrier)

    @property
    def tensor3(self) -> RelativeTensor:
        """(C⊗_A C)⊗_A C."""
        if self._tensor3 is None:
            self._tensor3 = self.tensor2.module.tensor(self.carrier)
        return self._tensor3

    def delta(self, c: Mapping) -> dict:
        return self.comult.apply(c)

    def eps(self, c: Mapping) -> dict:
        return self.counit.apply(c)

    def delta_pairs(self, i: int) -> list:
        """Δ(e_i) as [((u, w), coeff)] over pure basis pairs."""
        return self.tensor2.lift_pairs(self.comult.col(i))

    def coassoc_sides(self, i: int) -> tuple[dict, dict]:
        """((C⊗Δ)Δ(e_i), (Δ⊗C)Δ(e_i)) in (C⊗C)⊗C."""
        T2, T3 = self.tensor2, self.tensor3
        cols = self.comult.columns()
        left: dict = {}
        right: dict = {}
        for (u, w), x in self.delta_pairs(i):
            for (s, t), y in T2.lift_pairs(cols[w]):
                for q, z in T2.project_pair(u, s).items():
                    axpy(left, x * y * z, T3.project_pair(q, t))
            for q, y in cols[u].items():
                axpy(right, x * y, T3.project_pair(q, w))
        return left, right

    def is_valid(self) -> bool:
        return not check_coring(self)

    def __repr__(self):
        return "Coring(%s, dim=%d over %s)" % (self.label, self.dim, self.algebra.label)


def check_coring(c: Coring) -> Report:
    """Carrier validity, bilinearity of Δ and ε, counit laws and coassociativity."""
    issues: Report = [Issue("carrier", i.where, str(i)) for i in check_bimodule(c.carrier)]
    if issues:
        return issues
    A, C, T2 = c.algebra, c.carrier, c.tensor2
    Tm = T2.module
    for a in range(A.dim):
        if c.comult @ C.left_action[a] != Tm.left_action[a] @ c.comult:
            issues.append(Issue("comult left-linear", "a=e_%d" % a))
        if c.comult @ C.right_action[a] != Tm.right_action[a] @ c.comult:
            issues.append(Issue("comult right-linear", "a=e_%d" % a))
        if c.counit @ C.left_action[a] != A.lmul_basis()[a] @ c.counit:
            issues.append(Issue("counit left-linear", "a=e_%d" % a))
        if c.counit @ C.right_action[a] != A.rmul_basis()[a] @ c.counit:
            issues.append(Issue("counit right-linear", "a=e_%d" % a))
    ecols = c.counit.columns()
    for i in range(c.dim):
        lhs: dict = {}
        rhs: dict = {}
        for (u, w), x in c.delta_pairs(i):
            axpy(lhs, x, C.act_left(ecols[u], C.basis(w)))
            axpy(rhs, x, C.act_right(C.basis(u), ecols[w]))
        e = C.basis(i)
        if lhs != e:
            issues.append(Issue("left counit law", "e_%d" % i, "(ε⊗C)Δ = %s, expected %s" % (_fmt(lhs), _fmt(e))))
        if rhs != e:
            issues.append(Issue("right counit law", "e_%d" % i, "(C⊗ε)Δ = %s, expected %s" % (_fmt(rhs), _fmt(e))))
    for i in range(c.dim):
        left, right = c.coassoc_sides(i)
        if left != right:
            issues.append(Issue("coassociativity", "e_%d" % i, "(C⊗Δ)Δ = %s, (Δ⊗C)Δ = %s" % (_fmt(left), _fmt(right))))
    return issues


# ----------------------------------------------------------------------------
# constructions

def trivial_coring(A: Algebra) -> Coring:
    """A with Δ(a) = a⊗1 and ε = id."""
    C = regular_bimodule(A)
    T = C.tensor(C)
    comult = Matrix.from_function(A.field, T.dim, A.dim, lambda i: T.pure(A.basis(i), A.unit))
    return Coring(C, comult, Matrix.identity(A.field, A.dim), label="triv(%s)" % A.label)


def _points(X) -> list[str]:
    if isinstance(X, int):
        return ["x%d" % i for i in range(X)]
    return [str(x) for x in X]


def grouplike_coring(A: Algebra, X, counit: Mapping[int, Mapping] | None = None) -> Coring:
    """Free bimodule on X with Δ(x) = x⊗x, ε(x) = 1; basis index x*dim(A) + i is e_i·x.

    ``counit`` optionally overrides ε(x) for selected points (for building broken data).
    """
    pts = _points(X)
    n, d = len(pts), A.dim
    C = free_bimodule(A, n)
    C.label = "%s[%s]" % (A.label, ",".join(pts))
    T = C.tensor(C)
    F = A.field
    unit_at = [{x * d + k: v for k, v in A.unit.items()} for x in range(n)]
    comult = Matrix.from_function(F, T.dim, n * d, lambda c: T.pure(C.basis(c), unit_at[c // d]))
    eps_pt = [dict(A.unit) for _ in range(n)]
    for x, v in (counit or {}).items():
        eps_pt[x] = {k: F(y) for k, y in v.items() if y}
    counit_m = Matrix.from_function(F, d, n * d, lambda c: A.mul(A.basis(c % d), eps_pt[c // d]))
    cor = Coring(C, comult, counit_m, label="grouplike(%s,%d)" % (A.label, n))
    cor.points = pts
    return cor


def matrix_coring(A: Algebra, n: int) -> Coring:
    """M_n^c(A): basis (i*n + j)*dim(A) + t is e_t·e_ij, Δ(e_ij) = Σ_k e_ik⊗e_kj, ε(e_ij) = δ_ij."""
    d = A.dim
    C = free_bimodule(A, n * n)
    C.label = "M%d^c(%s)" % (n, A.label)
    T = C.tensor(C)
    F = A.field

    def unit_at(b):
        return {b * d + k: v for k, v in A.unit.items()}

    def comult(c):
        blk, t = divmod(c, d)
        i, j = divmod(blk, n)
        out: dict = {}
        for k in range(n):
            axpy(out, 1, T.pure(C.basis((i * n + k) * d + t), unit_at(k * n + j)))
        return out

    def counit(c):
        blk, t = divmod(c, d)
        i, j = divmod(blk, n)
        return A.basis(t) if i == j else {}
    return Coring(C, Matrix.from_function(F, T.dim, C.dim, comult),
                  Matrix.from_function(F, d, C.dim, counit), label=C.label)


def _kron(F, P: Matrix, Q: Matrix) -> Matrix:
    rows: dict = {}
    nq = Q.ncols
    for i, prow in P.rows_items():
        for k, qrow in Q.rows_items():
            r = rows.setdefault(i * Q.nrows + k, {})
            for j, x in prow.items():
                for l, y in qrow.items():
                    r[j * nq + l] = x * y
    return Matrix(F, P.nrows * Q.nrows, P.ncols * Q.ncols, rows)


def tensor_coring(C: Coring, D: Coring) -> Coring:
    """C⊗_k D as an A⊗B-coring; basis index c*dim(D) + d."""
    from .algebra import tensor_algebra
    A, B = C.algebra, D.algebra
    AB = tensor_algebra(A, B)
    F = A.field
    la = [_kron(F, C.carrier.left_action[i], D.carrier.left_action[j]) for i in range(A.dim) for j in range(B.dim)]
    ra = [_kron(F, C.carrier.right_action[i], D.carrier.right_action[j]) for i in range(A.dim) for j in range(B.dim)]
    nd = D.dim
    M = Bimodule(AB, AB, C.dim * nd, la, ra, label="%s⊗%s" % (C.label, D.label))
    T = M.tensor(M)

    def comult(k):
        i, j = divmod(k, nd)
        out: dict = {}
        for (u, w), x in C.delta_pairs(i):
            for (s, t), y in D.delta_pairs(j):
                axpy(out, x * y, T.project_pair(u * nd + s, w * nd + t))
        return out

    def counit(k):
        i, j = divmod(k, nd)
        return {r * B.dim + s: x * y for r, x in C.counit.col(i).items() for s, y in D.counit.col(j).items()}
    return Coring(M, Matrix.from_function(F, T.dim, M.dim, comult),
                  Matrix.from_function(F, AB.dim, M.dim, counit), label=M.label)


def base_extension(C: Coring, rho: AlgebraMap) -> Coring:
    """B⊗_A C⊗_A B for an algebra map rho: A → B."""
    A, B = rho.source, rho.target
    _require_same(A, C.algebra, "base extension source")
    F = A.field
    BA = Bimodule(B, A, B.dim, B.lmul_basis(), [B.rmul(rho(A.basis(a))) for a in range(A.dim)], label=B.label)
    AB = Bimodule(A, B, B.dim, [B.lmul(rho(A.basis(a))) for a in range(A.dim)], B.rmul_basis(), label=B.label)
    T1 = BA.tensor(C.carrier)
    car = T1.module.tensor(AB)
    M = car.module
    M.label = "%s⊗%s⊗%s" % (B.label, C.label, B.label)
    T2 = M.tensor(M)
    one = B.unit

    def comult(q):
        q1, j = car.pairs[q]
        i, c = T1.pairs[q1]
        out: dict = {}
        for (u, w), x in C.delta_pairs(c):
            left = car.pure(T1.pure(B.basis(i), C.carrier.basis(u)), one)
            right = car.pure(T1.pure(one, C.carrier.basis(w)), B.basis(j))
            axpy(out, x, T2.pure(left, right))
        return out

    def counit(q):
        q1, j = car.pairs[q]
        i, c = T1.pairs[q1]
        return B.prod(B.basis(i), rho(C.counit.col(c)), B.basis(j))
    return Coring(M, Matrix.from_function(F, T2.dim, M.dim, comult),
                  Matrix.from_function(F, B.dim, M.dim, counit), label="ext(%s)" % C.label)


def comatrix_coring(M: Bimodule, dual_basis: Sequence[tuple[Mapping, Matrix]] | None = None) -> Coring:
    """M*⊗_B M for M a (B, A)-bimodule with M_A finitely generated projective."""
    A = M.right_alg
    F = M.field
    if dual_basis is None:
        v = check_projective(forget_left(M), "right")
        if not v.is_yes:
            raise CoringError("M is not projective as a right module: " + v.reason)
        dual_basis = v.witness["dual_basis"]
    for i in range(M.dim):
        acc: dict = {}
        for e, f in dual_basis:
            axpy(acc, 1, M.act_right(e, f.col(i)))
        if acc != M.basis(i):
            raise CoringError("dual basis fails at basis vector %d" % i)
    D = right_dual(M)
    T = D.module.tensor(M)
    car = T.module
    car.label = "%s*⊗%s" % (M.label, M.label)
    T2 = car.tensor(car)
    duals = []
    for e, f in dual_basis:
        c = D.coords(f)
        if c is None:
            raise CoringError("dual basis functional is not right A-linear")
        duals.append((e, c))

    def comult(q):
        s, j = T.pairs[q]
        out: dict = {}
        for e, fc in duals:
            axpy(out, 1, T2.pure(T.pure(D.module.basis(s), e), T.pure(fc, M.basis(j))))
        return out
    counit = T.map_pairs(lambda s, j: D.eval_basis(s, j), A.dim)
    cor = Coring(car, Matrix.from_function(F, T2.dim, car.dim, comult), counit, label="comatrix(%s)" % M.label)
    cor.comatrix_data = {"module": M, "dual": D, "tensor": T, "dual_basis": dual_basis}
    return cor


def opposite_coring(c: Coring) -> Coring:
    """The A°-coring with swapped actions, Δ° = twist∘Δ, ε° = ε."""
    Ao = opposite_algebra(c.algebra)
    C = c.carrier
    car = Bimodule(Ao, Ao, C.dim, C.right_action, C.left_action, label=c.label + "°")
    T = car.tensor(car)

    def comult(i):
        out: dict = {}
        for (u, w), x in c.delta_pairs(i):
            axpy(out, x, T.project_pair(w, u))
        return out
    return Coring(car, Matrix.from_function(c.field, T.dim, C.dim, comult), c.counit, label=c.label + "°")


def build_named_coring(spec: Mapping, resolve) -> Coring:
    """``type`` in trivial, grouplike, matrix, base_extension, tensor, comatrix, opposite."""
    t = spec.get("type")
    if t == "trivial":
        cor = trivial_coring(resolve(spec["algebra"]))
    elif t == "grouplike":
        cor = grouplike_coring(resolve(spec["algebra"]), spec["points"])
    elif t == "matrix":
        cor = matrix_coring(resolve(spec["algebra"]), int(spec["n"]))
    elif t == "base_extension":
        cor = base_extension(resolve(spec["coring"]), resolve(spec["rho"]))
    elif t == "tensor":
        cor = tensor_coring(resolve(spec["left"]), resolve(spec["right"]))
    elif t == "comatrix":
        cor = comatrix_coring(resolve(spec["module"]))
    elif t == "opposite":
        cor = opposite_coring(resolve(spec["of"]))
    else:
        raise CoringError("unknown coring type %r" % t)
    issues = check_coring(cor)
    if issues:
        raise CoringError("constructed coring fails validation: %s" % issues[0])
    return cor


def grouplike_basis_vectors(c: Coring) -> list[int]:
    """Basis vectors g with Δ(g) = g⊗g and ε(g) = 1."""
    out = []
    for i in range(c.dim):
        e = c.carrier.basis(i)
        if c.delta(e) == c.tensor2.pure(e, e) and c.eps(e) == c.algebra.unit:
            out.append(i)
    return out


# ----------------------------------------------------------------------------
# morphisms

class CoringMorphism:
    def __init__(self, source: Coring, target: Coring, rho: AlgebraMap, phi: Matrix):
        if phi.shape != (target.dim, source.dim):
            raise DimensionError("phi has the wrong shape")
        self.source = source
        self.target = target
        self.rho = rho
        self.phi = phi

    def tensor_square(self) -> Matrix:
        """φ⊗φ: C⊗_A C → D⊗_B D."""
        cols = self.phi.columns()
        T = self.target.tensor2
        return self.source.tensor2.map_pairs(lambda i, j: T.pure(cols[i], cols[j]), T.dim)


def check_coring_morphism(f: CoringMorphism) -> Report:
    issues: Report = []
    C, D = f.source, f.target
    A, B = C.algebra, D.algebra
    if not f.rho.source.same_as(A) or not f.rho.target.same_as(B):
        return [Issue("algebra map", "rho", "rho does not go between the base algebras")]
    issues += [Issue("rho", i.where, str(i)) for i in f.rho.check()]
    for a in range(A.dim):
        ra = f.rho(A.basis(a))
        if f.phi @ C.carrier.left_action[a] != D.carrier.left_matrix(ra) @ f.phi:
            issues.append(Issue("phi left-linear", "a=e_%d" % a))
        if f.phi @ C.carrier.right_action[a] != D.carrier.right_matrix(ra) @ f.phi:
            issues.append(Issue("phi right-linear", "a=e_%d" % a))
    if issues:
        return issues
    lhs = f.tensor_square() @ C.comult
    rhs = D.comult @ f.phi
    for i in range(C.dim):
        if lhs.col(i) != rhs.col(i):
            issues.append(Issue("comultiplicative", "e_%d" % i, "%s vs %s" % (_fmt(lhs.col(i)), _fmt(rhs.col(i)))))
    e1 = D.counit @ f.phi
    e2 = f.rho.matrix @ C.counit
    for i in range(C.dim):
        if e1.col(i) != e2.col(i):
            issues.append(Issue("counital", "e_%d" % i, "%s vs %s" % (_fmt(e1.col(i)), _fmt(e2.col(i)))))
    return issues
