"""Bimodules, relative tensor products, hom spaces and module duals.

A one-sided module is a Bimodule whose unused side is the ground field acting by
scalars. Tensor products M⊗_A N are realised as quotients of M⊗_k N whose basis
is a set of pure tensors (i, j), so a map out of M⊗_A N can be given on pairs.
"""
from __future__ import annotations

import itertools
from typing import Callable, Mapping, Sequence

from .algebra import Algebra, AlgebraMap, Issue, Report, field_algebra
from .linalg import (DimensionError, LinearSystem, Matrix, SolveVerdict, Subspace, axpy,
                     echelonize, search_span, DEFAULT_BUDGET, DEFAULT_ENUM_CAP)


class AlgebraMismatch(ValueError):
    pass


def _require_same(a: Algebra, b: Algebra, what: str):
    if not a.same_as(b):
        raise AlgebraMismatch("%s: %s vs %s" % (what, a.label, b.label))


class Bimodule:
    """(L, R)-bimodule; ``left_action[i]`` is v ↦ e_i·v, ``right_action[j]`` is v ↦ v·e_j."""

    def __init__(self, left_alg: Algebra, right_alg: Algebra, dim: int,
                 left_action: Sequence[Matrix], right_action: Sequence[Matrix], label: str = "M"):
        self.left_alg = left_alg
        self.right_alg = right_alg
        self.dim = dim
        self.left_action = tuple(left_action)
        self.right_action = tuple(right_action)
        self.label = label
        if len(self.left_action) != left_alg.dim or len(self.right_action) != right_alg.dim:
            raise DimensionError("one action matrix per algebra basis vector is required")
        for m in self.left_action + self.right_action:
            if m.shape != (dim, dim):
                raise DimensionError("action matrices must be %dx%d" % (dim, dim))
        self._tensors: dict = {}

    @property
    def field(self):
        return self.left_alg.field

    # actions on vectors
    def left_matrix(self, a: Mapping) -> Matrix:
        out = Matrix.zero(self.field, self.dim, self.dim)
        for i, x in a.items():
            out = out + self.left_action[i].scale(x)
        return out

    def right_matrix(self, a: Mapping) -> Matrix:
        out = Matrix.zero(self.field, self.dim, self.dim)
        for i, x in a.items():
            out = out + self.right_action[i].scale(x)
        return out

    def act_left(self, a: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for i, x in a.items():
            axpy(out, x, self.left_action[i].apply(v))
        return out

    def act_right(self, v: Mapping, a: Mapping) -> dict:
        out: dict = {}
        for i, x in a.items():
            axpy(out, x, self.right_action[i].apply(v))
        return out

    def basis(self, i: int) -> dict:
        return {i: self.field.one}

    def tensor(self, other: "Bimodule") -> "RelativeTensor":
        key = id(other)
        hit = self._tensors.get(key)
        if hit is None or hit[0] is not other:
            hit = (other, RelativeTensor(self, other))
            self._tensors[key] = hit
        return hit[1]

    def check(self) -> Report:
        return check_bimodule(self)

    def __repr__(self):
        return "Bimodule(%s, dim=%d, (%s, %s))" % (self.label, self.dim, self.left_alg.label, self.right_alg.label)


def check_bimodule(M: Bimodule) -> Report:
    issues: Report = []
    F = M.field
    I = Matrix.identity(F, M.dim)
    L, R = M.left_alg, M.right_alg
    if M.left_matrix(L.unit) != I:
        issues.append(Issue("left unit", "1", "unit does not act as the identity"))
    if M.right_matrix(R.unit) != I:
        issues.append(Issue("right unit", "1", "unit does not act as the identity"))
    for i, j in itertools.product(range(L.dim), repeat=2):
        if M.left_matrix(L.table[i][j]) != M.left_action[i] @ M.left_action[j]:
            issues.append(Issue("left associativity", (i, j)))
    for i, j in itertools.product(range(R.dim), repeat=2):
        if M.right_matrix(R.table[i][j]) != M.right_action[j] @ M.right_action[i]:
            issues.append(Issue("right associativity", (i, j)))
    for i, j in itertools.product(range(L.dim), range(R.dim)):
        if M.left_action[i] @ M.right_action[j] != M.right_action[j] @ M.left_action[i]:
            issues.append(Issue("actions commute", (i, j)))
    return issues


# ----------------------------------------------------------------------------
# constructors

def _scalar_actions(F, dim):
    return (Matrix.identity(F, dim),)


def regular_bimodule(A: Algebra) -> Bimodule:
    return Bimodule(A, A, A.dim, A.lmul_basis(), A.rmul_basis(), label=A.label)


def left_regular(A: Algebra) -> Bimodule:
    return Bimodule(A, field_algebra(A.field), A.dim, A.lmul_basis(), _scalar_actions(A.field, A.dim), label=A.label)


def right_regular(A: Algebra) -> Bimodule:
    return Bimodule(field_algebra(A.field), A, A.dim, _scalar_actions(A.field, A.dim), A.rmul_basis(), label=A.label)


def vector_space(F, n: int, label="V") -> Bimodule:
    k = field_algebra(F)
    return Bimodule(k, k, n, _scalar_actions(F, n), _scalar_actions(F, n), label=label)


def left_module(A: Algebra, dim: int, action: Sequence[Matrix], label="M") -> Bimodule:
    return Bimodule(A, field_algebra(A.field), dim, action, _scalar_actions(A.field, dim), label=label)


def right_module(A: Algebra, dim: int, action: Sequence[Matrix], label="M") -> Bimodule:
    return Bimodule(field_algebra(A.field), A, dim, _scalar_actions(A.field, dim), action, label=label)


def forget_right(M: Bimodule) -> Bimodule:
    return Bimodule(M.left_alg, field_algebra(M.field), M.dim, M.left_action, _scalar_actions(M.field, M.dim), M.label)


def forget_left(M: Bimodule) -> Bimodule:
    return Bimodule(field_algebra(M.field), M.right_alg, M.dim, _scalar_actions(M.field, M.dim), M.right_action, M.label)


def direct_sum(mods: Sequence[Bimodule], label="M") -> Bimodule:
    from .linalg import block_diag
    L, R = mods[0].left_alg, mods[0].right_alg
    F = L.field
    la = [block_diag(F, [m.left_action[i] for m in mods]) for i in range(L.dim)]
    ra = [block_diag(F, [m.right_action[j] for m in mods]) for j in range(R.dim)]
    return Bimodule(L, R, sum(m.dim for m in mods), la, ra, label=label)


def free_bimodule(A: Algebra, n: int) -> Bimodule:
    """A^n as an (A, A)-bimodule."""
    return direct_sum([regular_bimodule(A)] * n, label="%s^%d" % (A.label, n))


def restrict_scalars(M: Bimodule, left: AlgebraMap | None = None, right: AlgebraMap | None = None) -> Bimodule:
    """Pull the actions back along algebra maps into M's algebras."""
    la, L = M.left_action, M.left_alg
    if left is not None:
        _require_same(left.target, M.left_alg, "restriction target")
        L = left.source
        la = [M.left_matrix(left(L.basis(i))) for i in range(L.dim)]
    ra, R = M.right_action, M.right_alg
    if right is not None:
        _require_same(right.target, M.right_alg, "restriction target")
        R = right.source
        ra = [M.right_matrix(right(R.basis(j))) for j in range(R.dim)]
    return Bimodule(L, R, M.dim, la, ra, label=M.label)


def submodule(M: Bimodule, sub: Subspace, label: str | None = None) -> Bimodule:
    """Restrict both actions to an invariant subspace (coordinates in sub's basis)."""
    def restrict(mat):
        cols = []
        for r in sub.rows:
            c = sub.coords(mat.apply(r))
            if c is None:
                raise ValueError("subspace is not invariant under the action")
            cols.append(c)
        return Matrix.from_columns(M.field, sub.dim, cols)
    return Bimodule(M.left_alg, M.right_alg, sub.dim, [restrict(m) for m in M.left_action],
                    [restrict(m) for m in M.right_action], label=label or M.label)


# ----------------------------------------------------------------------------
# relative tensor product

class RelativeTensor:
    """M ⊗_A N as a quotient of M ⊗_k N (index i*dim N + j)."""

    def __init__(self, left: Bimodule, right: Bimodule):
        _require_same(left.right_alg, right.left_alg, "middle algebra")
        self.left = left
        self.right = right
        F = left.field
        self.field = F
        A = left.right_alg
        nl, nr = left.dim, right.dim
        self.ambient_dim = nl * nr
        rels = []
        for a in range(A.dim):
            ra = left.right_action[a].columns()
            la = right.left_action[a].columns()
            for v in range(nl):
                va = ra[v]
                for w in range(nr):
                    rel: dict = {}
                    for s, x in va.items():
                        rel[s * nr + w] = x
                    for t, x in la[w].items():
                        k = v * nr + t
                        y = rel.get(k, 0) - x
                        if y:
                            rel[k] = y
                        else:
                            rel.pop(k, None)
                    if rel:
                        rels.append(rel)
        self._piv = echelonize(rels)
        self.free = [f for f in range(self.ambient_dim) if f not in self._piv]
        self.index = {f: q for q, f in enumerate(self.free)}
        self.pairs = [(f // nr, f % nr) for f in self.free]
        self.dim = len(self.free)
        self._proj: dict[int, dict] = {}
        self._module = None

    @property
    def quotient_dim(self) -> int:
        return self.dim

    def relation_span(self) -> Subspace:
        return Subspace(self.field, self.ambient_dim, _echelon=dict(self._piv))

    def project_flat(self, f: int) -> dict:
        hit = self._proj.get(f)
        if hit is None:
            q = self.index.get(f)
            if q is not None:
                hit = {q: self.field.one}
            else:
                row = self._piv[f]
                hit = {self.index[g]: -x for g, x in row.items() if g != f}
            self._proj[f] = hit
        return hit

    def project_pair(self, i: int, j: int) -> dict:
        return self.project_flat(i * self.right.dim + j)

    def project(self, v: Mapping) -> dict:
        """Image of a k-tensor vector (flat indices)."""
        out: dict = {}
        for f, x in v.items():
            axpy(out, x, self.project_flat(f))
        return out

    def pure(self, u: Mapping, w: Mapping) -> dict:
        out: dict = {}
        for i, x in u.items():
            for j, y in w.items():
                axpy(out, x * y, self.project_pair(i, j))
        return out

    def lift(self, q: Mapping) -> dict:
        """Section: quotient vector to flat k-tensor."""
        return {self.free[k]: x for k, x in q.items()}

    def lift_pairs(self, q: Mapping) -> list:
        return [(self.pairs[k], x) for k, x in q.items()]

    @property
    def projection(self) -> Matrix:
        return Matrix.from_function(self.field, self.dim, self.ambient_dim, self.project_flat)

    @property
    def section(self) -> Matrix:
        return Matrix.from_function(self.field, self.ambient_dim, self.dim, lambda q: {self.free[q]: self.field.one})

    @property
    def module(self) -> Bimodule:
        """Induced (left.left_alg, right.right_alg)-bimodule on the quotient."""
        if self._module is None:
            F = self.field
            L, R = self.left.left_alg, self.right.right_alg
            la = []
            for l in range(L.dim):
                cols = self.left.left_action[l].columns()
                la.append(Matrix.from_columns(F, self.dim, [
                    self._apply_left(cols[i], j) for i, j in self.pairs]))
            ra = []
            for r in range(R.dim):
                cols = self.right.right_action[r].columns()
                ra.append(Matrix.from_columns(F, self.dim, [
                    self._apply_right(i, cols[j]) for i, j in self.pairs]))
            self._module = Bimodule(L, R, self.dim, la, ra,
                                    label="(%s⊗%s)" % (self.left.label, self.right.label))
        return self._module

    def _apply_left(self, u, j):
        out: dict = {}
        for s, x in u.items():
            axpy(out, x, self.project_pair(s, j))
        return out

    def _apply_right(self, i, w):
        out: dict = {}
        for t, x in w.items():
            axpy(out, x, self.project_pair(i, t))
        return out

    def map_pairs(self, fn: Callable[[int, int], Mapping], target_dim: int) -> Matrix:
        """Linear map out of the quotient given on the pure basis pairs."""
        return Matrix.from_columns(self.field, target_dim, [fn(i, j) for i, j in self.pairs])

    def __repr__(self):
        return "RelativeTensor(%s ⊗ %s, dim=%d)" % (self.left.label, self.right.label, self.dim)


def tensor_over_algebra(m: Bimodule, n: Bimodule) -> RelativeTensor:
    return m.tensor(n)


def tensor_maps(src: RelativeTensor, dst: RelativeTensor, f: Matrix, g: Matrix) -> Matrix:
    """f ⊗_A g between relative tensors (f right-linear, g left-linear)."""
    fc, gc = f.columns(), g.columns()
    return src.map_pairs(lambda i, j: dst.pure(fc[i], gc[j]), dst.dim)


def associator(M: Bimodule, N: Bimodule, P: Bimodule) -> Matrix:
    """Canonical map M⊗(N⊗P) → (M⊗N)⊗P."""
    NP = N.tensor(P)
    MN = M.tensor(N)
    src = M.tensor(NP.module)
    dst = MN.module.tensor(P)

    def fn(i, q):
        j, k = NP.pairs[q]
        out: dict = {}
        for s, x in MN.project_pair(i, j).items():
            axpy(out, x, dst.project_pair(s, k))
        return out
    return src.map_pairs(fn, dst.dim)


# ----------------------------------------------------------------------------
# hom spaces

def mat_to_vec(X: Matrix) -> dict:
    n = X.ncols
    return {r * n + c: x for r, row in X.rows_items() for c, x in row.items()}


def vec_to_mat(F, v: Mapping, nrows: int, ncols: int) -> Matrix:
    rows: dict = {}
    for k, x in v.items():
        rows.setdefault(k // ncols, {})[k % ncols] = x
    return Matrix(F, nrows, ncols, rows)


def intertwiner_system(F, pairs, m: int, n: int, ls: LinearSystem | None = None, tag="c") -> LinearSystem:
    """Equations X P = Q X for X of shape n×m, one block per (P, Q) pair."""
    if ls is None:
        ls = LinearSystem(F, n * m)
    for t, (P, Q) in enumerate(pairs):
        if P.nrows == P.ncols == Q.nrows == Q.ncols and P == Matrix.identity(F, m) and Q == Matrix.identity(F, n):
            continue
        for k, row in P.rows_items():
            for c, x in row.items():
                for r in range(n):
                    ls.add((tag, t, r, c), r * m + k, x)
        for r, row in Q.rows_items():
            for k, x in row.items():
                for c in range(m):
                    ls.add((tag, t, r, c), k * m + c, -x)
    return ls


def commutant(F, pairs, m: int, n: int) -> Subspace:
    return intertwiner_system(F, pairs, m, n).kernel()


def bimodule_map_space(m: Bimodule, n: Bimodule) -> Subspace:
    """All (L, R)-bimodule maps m → n, flattened row-major as n.dim × m.dim matrices."""
    _require_same(m.left_alg, n.left_alg, "left algebra")
    _require_same(m.right_alg, n.right_alg, "right algebra")
    pairs = list(zip(m.left_action, n.left_action)) + list(zip(m.right_action, n.right_action))
    return commutant(m.field, pairs, m.dim, n.dim)


def left_linear_space(m: Bimodule, n: Bimodule) -> Subspace:
    _require_same(m.left_alg, n.left_alg, "left algebra")
    return commutant(m.field, list(zip(m.left_action, n.left_action)), m.dim, n.dim)


def right_linear_space(m: Bimodule, n: Bimodule) -> Subspace:
    _require_same(m.right_alg, n.right_alg, "right algebra")
    return commutant(m.field, list(zip(m.right_action, n.right_action)), m.dim, n.dim)


def is_bimodule_map(f: Matrix, m: Bimodule, n: Bimodule) -> bool:
    return (all(f @ P == Q @ f for P, Q in zip(m.left_action, n.left_action))
            and all(f @ P == Q @ f for P, Q in zip(m.right_action, n.right_action)))


def maps_from_space(space: Subspace, nrows: int, ncols: int) -> list[Matrix]:
    return [vec_to_mat(space.field, r, nrows, ncols) for r in space.rows]


# ----------------------------------------------------------------------------
# duals

class DualModule:
    """Hom_A(M, A) with its induced bimodule structure and evaluation pairing."""

    def __init__(self, original: Bimodule, side: str, space: Subspace, functionals: list[Matrix], module: Bimodule):
        self.original = original
        self.side = side  # "right": Hom_A(M_A, A_A); "left": Hom_A(_AM, _AA)
        self.space = space
        self.functionals = functionals
        self.module = module
        self.base = original.right_alg if side == "right" else original.left_alg

    @property
    def dim(self):
        return self.module.dim

    def coords(self, f: Matrix) -> dict | None:
        return self.space.coords(mat_to_vec(f))

    def functional(self, v: Mapping) -> Matrix:
        out = Matrix.zero(self.original.field, self.base.dim, self.original.dim)
        for s, x in v.items():
            out = out + self.functionals[s].scale(x)
        return out

    def evaluate(self, f: Mapping, m: Mapping) -> dict:
        out: dict = {}
        for s, x in f.items():
            axpy(out, x, self.functionals[s].apply(m))
        return out

    def eval_basis(self, s: int, i: int) -> dict:
        return self.functionals[s].col(i)


def right_dual(M: Bimodule) -> DualModule:
    """M* = Hom_A(M_A, A_A) for M an (L, A)-bimodule; an (A, L)-bimodule."""
    A, L = M.right_alg, M.left_alg
    F = M.field
    space = commutant(F, list(zip(M.right_action, A.rmul_basis())), M.dim, A.dim)
    fs = maps_from_space(space, A.dim, M.dim)

    def cols(op):
        out = []
        for f in fs:
            c = space.coords(mat_to_vec(op(f)))
            assert c is not None
            out.append(c)
        return Matrix.from_columns(F, space.dim, out)
    la = [cols(lambda f, a=a: A.lmul_basis()[a] @ f) for a in range(A.dim)]
    ra = [cols(lambda f, l=l: f @ M.left_action[l]) for l in range(L.dim)]
    mod = Bimodule(A, L, space.dim, la, ra, label=M.label + "*")
    return DualModule(M, "right", space, fs, mod)


def left_dual(M: Bimodule) -> DualModule:
    """*M = Hom_A(_AM, _AA) for M an (A, R)-bimodule; an (R, A)-bimodule."""
    A, R = M.left_alg, M.right_alg
    F = M.field
    space = commutant(F, list(zip(M.left_action, A.lmul_basis())), M.dim, A.dim)
    fs = maps_from_space(space, A.dim, M.dim)

    def cols(op):
        out = []
        for f in fs:
            c = space.coords(mat_to_vec(op(f)))
            assert c is not None
            out.append(c)
        return Matrix.from_columns(F, space.dim, out)
    la = [cols(lambda f, r=r: f @ M.right_action[r]) for r in range(R.dim)]
    ra = [cols(lambda f, a=a: A.rmul_basis()[a] @ f) for a in range(A.dim)]
    mod = Bimodule(R, A, space.dim, la, ra, label="*" + M.label)
    return DualModule(M, "left", space, fs, mod)


def dual_module(M: Bimodule, side: str) -> DualModule:
    """side='right': M is a right module over its right algebra; 'left' likewise."""
    if side == "right":
        return right_dual(M)
    if side == "left":
        return left_dual(M)
    raise ValueError("side must be 'left' or 'right'")


def double_dual_map(M: Bimodule, side: str) -> tuple[Matrix, DualModule, DualModule]:
    """Evaluation M → (M^∨)^∨, m ↦ (f ↦ f(m)), with both duals."""
    D1 = dual_module(M, side)
    D2 = dual_module(D1.module, "left" if side == "right" else "right")
    F = M.field
    cols = []
    for i in range(M.dim):
        ev = Matrix.from_columns(F, D1.base.dim, [D1.eval_basis(s, i) for s in range(D1.dim)])
        c = D2.coords(ev)
        if c is None:
            raise ArithmeticError("evaluation functional is not linear on the dual")
        cols.append(c)
    return Matrix.from_columns(F, D2.dim, cols), D1, D2


# ----------------------------------------------------------------------------
# projectivity, separability, Frobenius extensions

def _span_over(M: Bimodule, gens: list[dict], side: str) -> Subspace:
    acts = M.left_action if side == "left" else M.right_action
    return Subspace(M.field, M.dim, [a.apply(g) for g in gens for a in acts])


def check_projective(M: Bimodule, side: str = "left") -> SolveVerdict:
    """Decide whether M is projective over its ``side`` algebra.

    Yes carries generators g_t, the surjection pi: A^n → M, a splitting sigma and
    the dual basis (g_t, f_t) with f_t = t-th component of sigma.
    """
    F = M.field
    A = M.left_alg if side == "left" else M.right_alg
    acts = M.left_action if side == "left" else M.right_action
    gens: list[dict] = []
    span = Subspace.zero(F, M.dim)
    for i in range(M.dim):
        e = M.basis(i)
        if not span.contains(e):
            gens.append(e)
            span = _span_over(M, gens, side)
    n, d = len(gens), A.dim
    regs = A.lmul_basis() if side == "left" else A.rmul_basis()
    from .linalg import block_diag
    free_acts = [block_diag(F, [regs[a]] * n) for a in range(d)]
    # pi: block t, basis a  ↦  e_a·g_t (left) or g_t·e_a (right)
    pi = Matrix.from_columns(F, M.dim, [acts[a].apply(gens[t]) for t in range(n) for a in range(d)])
    hom = commutant(F, list(zip(acts, free_acts)), M.dim, n * d)
    ls = LinearSystem(F, hom.dim)
    for s, v in enumerate(hom.rows):
        prod = pi @ vec_to_mat(F, v, n * d, M.dim)
        for r, row in prod.rows_items():
            for c, x in row.items():
                ls.add((r, c), s, x)
    for r in range(M.dim):
        ls.add_rhs((r, r), F.one)
    sol = ls.solve()
    if sol is None:
        return SolveVerdict.no("no A-linear splitting of the canonical surjection", generators=n)
    sigma = vec_to_mat(F, hom.combine(sol[0]), n * d, M.dim)
    if pi @ sigma != Matrix.identity(F, M.dim):
        raise ArithmeticError("splitting failed re-verification")
    dual = [sigma.submatrix_rows(list(range(t * d, (t + 1) * d))) for t in range(n)]
    return SolveVerdict.yes({"generators": gens, "pi": pi, "sigma": sigma, "dual_basis": list(zip(gens, dual))},
                            "split surjection from a free module", generators=n)


def check_separable_bimodule(M: Bimodule) -> SolveVerdict:
    """For M an (A, B)-bimodule, look for an A-bimodule section of ev: M⊗_B *M → A."""
    A = M.left_alg
    F = M.field
    D = left_dual(M)
    T = M.tensor(D.module)
    ev = T.map_pairs(lambda i, s: D.eval_basis(s, i), A.dim)
    Tm = T.module
    ls = LinearSystem(F, T.dim)
    for a in range(A.dim):
        diff = Tm.left_action[a] - Tm.right_action[a]
        for r, row in diff.rows_items():
            for c, x in row.items():
                ls.add(("central", a, r), c, x)
    for r, row in ev.rows_items():
        for c, x in row.items():
            ls.add(("ev", r), c, x)
    for r, x in A.unit.items():
        ls.add_rhs(("ev", r), x)
    sol = ls.solve()
    if sol is None:
        return SolveVerdict.no("evaluation map has no bimodule section")
    t = sol[0]
    s = Matrix.from_function(F, T.dim, A.dim, lambda j: Tm.left_action[j].apply(t))
    if ev @ s != Matrix.identity(F, A.dim) or not is_bimodule_map(s, regular_bimodule(A), Tm):
        raise ArithmeticError("separability witness failed re-verification")
    return SolveVerdict.yes({"element": t, "section": s, "tensor": T, "dual": D}, "central element with ev = 1")


def algebra_as_bimodule(iota: AlgebraMap, side: str) -> Bimodule:
    """B as (A, B) ('left' restricted) or (B, A) ('right' restricted) bimodule via iota: A → B."""
    B, A = iota.target, iota.source
    if side == "left":
        la = [B.lmul(iota(A.basis(a))) for a in range(A.dim)]
        return Bimodule(A, B, B.dim, la, B.rmul_basis(), label=B.label)
    ra = [B.rmul(iota(A.basis(a))) for a in range(A.dim)]
    return Bimodule(B, A, B.dim, B.lmul_basis(), ra, label=B.label)


def find_bijective_in_space(space: Subspace, nrows: int, ncols: int, *, budget=DEFAULT_BUDGET, seed=0,
                            enum_cap=DEFAULT_ENUM_CAP, first=()) -> SolveVerdict:
    if nrows != ncols:
        return SolveVerdict.no("dimensions differ (%d vs %d)" % (nrows, ncols))
    if nrows == 0:
        return SolveVerdict.yes(Matrix.zero(space.field, 0, 0), "zero spaces")
    F = space.field

    def accept(v):
        X = vec_to_mat(F, v, nrows, ncols)
        return X if X.rank() == nrows else None
    return search_span(space, accept, budget=budget, seed=seed, enum_cap=enum_cap, first=first)


def check_frobenius_extension(iota: AlgebraMap, *, budget=DEFAULT_BUDGET, seed=0,
                              enum_cap=DEFAULT_ENUM_CAP) -> SolveVerdict:
    """_AB projective and B ≅ Hom_A(_AB, _AA) as (B, A)-bimodules."""
    issues = iota.check()
    if issues:
        raise ValueError("not an algebra morphism: %s" % issues[0])
    BA = algebra_as_bimodule(iota, "left")
    proj = check_projective(forget_right(BA), "left")
    if not proj.is_yes:
        return SolveVerdict(proj.status, None, "_AB is not projective: " + proj.reason, proj.details)
    D = left_dual(BA)
    src = algebra_as_bimodule(iota, "right")
    space = bimodule_map_space(src, D.module)
    res = find_bijective_in_space(space, D.dim, src.dim, budget=budget, seed=seed, enum_cap=enum_cap)
    if res.is_yes:
        res.witness = {"iso": res.witness, "dual": D, "projective": proj.witness}
    return res
