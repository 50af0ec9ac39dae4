"""G-sets, X-graded modules, the coring A⊗kX and the graded description of its cotensor product.

A is graded by G through a homogeneous basis (``Algebra.grading``). X is a right
G-set; the left G-set used for left modules is g·x = x g⁻¹.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

from .algebra import Algebra, FiniteGroup, GradingError, Issue, Report
from .bimodule import Bimodule, direct_sum, left_module, left_regular, right_module, right_regular
from .comodule import Comodule, ComoduleError, cotensor
from .coring import Coring
from .entwining import dk_to_entwining, graded_dk, takeuchi_coring
from .linalg import Matrix, Subspace
from .solvers import cointegral_issues, cointegral_solution_contains


@dataclass(frozen=True)
class GSet:
    """A finite right G-set; ``action[x][g]`` is x·g."""

    group: FiniteGroup
    points: tuple
    action: tuple

    def __init__(self, group: FiniteGroup, action: Sequence[Sequence[int]], points: Sequence[str] | None = None):
        n = len(action)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "action", tuple(tuple(r) for r in action))
        object.__setattr__(self, "points", tuple(points) if points else tuple("x%d" % i for i in range(n)))
        bad = check_gset(self)
        if bad:
            raise GradingError("invalid G-set: %s" % bad[0])

    @property
    def size(self) -> int:
        return len(self.action)

    def act(self, x: int, g: int) -> int:
        return self.action[x][g]

    def left_act(self, g: int, x: int) -> int:
        """g·x = x g⁻¹."""
        return self.action[x][self.group.inv(g)]

    @classmethod
    def regular(cls, G: FiniteGroup) -> "GSet":
        return cls(G, [[G.mul(x, g) for g in range(G.order)] for x in range(G.order)], G.labels)

    @classmethod
    def trivial(cls, G: FiniteGroup, n: int, points: Sequence[str] | None = None) -> "GSet":
        return cls(G, [[x] * G.order for x in range(n)], points)


def check_gset(X: GSet) -> Report:
    G = X.group
    issues: Report = []
    if len(X.points) != len(X.action):
        issues.append(Issue("labels", "X", "one label per point"))
    for x, row in enumerate(X.action):
        if len(row) != G.order or any(not 0 <= y < len(X.action) for y in row):
            issues.append(Issue("table shape", "x=%d" % x))
            continue
        if row[0] != x:
            issues.append(Issue("xe = x", "x=%d" % x))
    if issues:
        return issues
    for x in range(len(X.action)):
        for g in range(G.order):
            for s in range(G.order):
                if X.action[X.action[x][g]][s] != X.action[x][G.mul(g, s)]:
                    issues.append(Issue("(xg)s = x(gs)", (x, g, s)))
    return issues


@dataclass
class GradedModule:
    """A right (side="right") or left A-module with an X-degree per basis vector."""

    algebra: Algebra
    gset: GSet
    carrier: Bimodule
    degrees: tuple
    side: str = "right"

    def __post_init__(self):
        self.degrees = tuple(self.degrees)
        bad = check_graded_module(self)
        if bad:
            raise GradingError("invalid graded module: %s" % bad[0])

    @property
    def dim(self) -> int:
        return self.carrier.dim


def check_graded_module(m: GradedModule) -> Report:
    """M_x A_g ⊆ M_{xg} (right) or A_g N_x ⊆ N_{g·x} (left) on basis vectors."""
    A, X = m.algebra, m.gset
    if A.grading is None or A.grading.group != X.group:
        return [Issue("grading", "A", "A must be graded by the group acting on X")]
    if len(m.degrees) != m.dim:
        return [Issue("degrees", "M", "one degree per basis vector")]
    acts = m.carrier.right_action if m.side == "right" else m.carrier.left_action
    issues: Report = []
    for a in range(A.dim):
        g = A.grading.degrees[a]
        for i in range(m.dim):
            want = X.act(m.degrees[i], g) if m.side == "right" else X.left_act(g, m.degrees[i])
            for j in acts[a].col(i):
                if m.degrees[j] != want:
                    issues.append(Issue("homogeneity", "e_%d·a_%d" % (i, a) if m.side == "right" else "a_%d·e_%d" % (a, i)))
                    break
    return issues


def suspension(A: Algebra, X: GSet, x: int, side: str = "right") -> GradedModule:
    """A(x): the regular module with a_g in degree x·g (right) or g⁻¹-shifted g·x (left)."""
    degs = A.grading.degrees
    if side == "right":
        return GradedModule(A, X, right_regular(A), [X.act(x, degs[a]) for a in range(A.dim)], "right")
    return GradedModule(A, X, left_regular(A), [X.left_act(degs[a], x) for a in range(A.dim)], "left")


def graded_sum(parts: Sequence[GradedModule], A: Algebra | None = None, X: GSet | None = None,
               side: str = "right") -> GradedModule:
    """Direct sum; an empty list gives the zero module (A and X required then)."""
    if not parts:
        F = A.field
        car = (right_module if side == "right" else left_module)(A, 0, [Matrix.zero(F, 0, 0)] * A.dim, label="0")
        return GradedModule(A, X, car, (), side)
    degs = sum((list(p.degrees) for p in parts), [])
    return GradedModule(parts[0].algebra, parts[0].gset, direct_sum([p.carrier for p in parts]), degs, parts[0].side)


def graded_vector_space(A: Algebra, X: GSet, degrees: Sequence[int], side: str = "right") -> GradedModule:
    """For A = k: a vector space with the given basis degrees."""
    if A.dim != 1:
        raise GradingError("only the ground field acts trivially")
    F = A.field
    n = len(degrees)
    mk = right_module if side == "right" else left_module
    return GradedModule(A, X, mk(A, n, [Matrix.identity(F, n)]), degrees, side)


# ----------------------------------------------------------------------------
# the coring A⊗kX

def build_graded_coring(A: Algebra, X: GSet) -> Coring:
    """A⊗kX with (a⊗x)b_g = ab_g⊗xg, Δ(a⊗x) = (a⊗x)⊗(1⊗x), ε(a⊗x) = a; basis a*|X| + x."""
    if A.grading is None or A.grading.group != X.group:
        raise GradingError("A must be graded by the group acting on X")
    F = A.field
    n, d = X.size, A.dim
    degs = A.grading.degrees
    left = []
    right = []
    for b in range(d):
        left.append(Matrix.from_function(F, d * n, d * n, lambda q, b=b: {p * n + q % n: x for p, x in A.table[b][q // n].items()}))
        right.append(Matrix.from_function(F, d * n, d * n, lambda q, b=b: {p * n + X.act(q % n, degs[b]): x
                                                                             for p, x in A.table[q // n][b].items()}))
    car = Bimodule(A, A, d * n, left, right, label="%s⊗k%s" % (A.label, "X"))
    lifts = []
    for q in range(d * n):
        a, x = divmod(q, n)
        lifts.append({(q, p * n + x): v for p, v in A.unit.items()})
    counit = Matrix.from_function(F, d, d * n, lambda q: {q // n: F.one})
    cor = Coring.from_lift(car, lifts, counit, label="%s⊗k[%s]" % (A.label, ",".join(X.points)))
    cor.gset = X
    return cor


def graded_takeuchi(A: Algebra, X: GSet) -> Coring:
    """The same coring obtained through the Doi-Koppinen entwining ψ(x⊗a_g) = a_g⊗xg."""
    return takeuchi_coring(dk_to_entwining(graded_dk(A, X.action, X.points)))


def graded_cointegral(A: Algebra, X: GSet, coring: Coring | None = None) -> Matrix:
    """δ((a⊗x)⊗(a'⊗y)) = aa' if x·deg(a') = y, else 0; verified against both cointegral equations."""
    c = coring or build_graded_coring(A, X)
    n = X.size
    degs = A.grading.degrees
    T = c.tensor2

    def value(i, j):
        a, x = divmod(i, n)
        ap, y = divmod(j, n)
        return dict(A.table[a][ap]) if X.act(x, degs[ap]) == y else {}
    delta = T.map_pairs(value, A.dim)
    bad = cointegral_issues(c, delta)
    if bad or not cointegral_solution_contains(c, delta):
        raise ArithmeticError("graded cointegral failed verification: %s" % (bad[0] if bad else "outside solution space"))
    return delta


# ----------------------------------------------------------------------------
# graded modules as comodules

def graded_to_comodule(m: GradedModule, coring: Coring) -> Comodule:
    """ρ(m) = m⊗(1⊗x) for right modules, λ(n) = (1⊗x)⊗n for left ones."""
    A = m.algebra
    n = m.gset.size
    C = coring.carrier
    one_at = [{p * n + x: v for p, v in A.unit.items()} for x in range(n)]
    if m.side == "right":
        T = m.carrier.tensor(C)
        co = Matrix.from_function(A.field, T.dim, m.dim, lambda i: T.pure(m.carrier.basis(i), one_at[m.degrees[i]]))
    else:
        T = C.tensor(m.carrier)
        co = Matrix.from_function(A.field, T.dim, m.dim, lambda i: T.pure(one_at[m.degrees[i]], m.carrier.basis(i)))
    return Comodule(m.side, coring, m.carrier, co, label=m.carrier.label)


def comodule_to_graded(M: Comodule, X: GSet) -> GradedModule:
    """Inverse of graded_to_comodule; raises ComoduleError naming the first non-homogeneous basis vector."""
    c = M.coring
    A = c.algebra
    n = X.size
    T = M.tensor
    one_at = [{p * n + x: v for p, v in A.unit.items()} for x in range(n)]
    degs = []
    for i in range(M.dim):
        got = M.coaction.col(i)
        e = M.carrier.basis(i)
        for x in range(n):
            cand = T.pure(e, one_at[x]) if M.side == "right" else T.pure(one_at[x], e)
            if cand == got:
                degs.append(x)
                break
        else:
            raise ComoduleError("coaction is not of graded form at basis vector %d" % i)
    return GradedModule(A, X, M.carrier, degs, M.side)


@dataclass
class GradedCotensorComparison:
    oracle: Subspace  # span of degree-matched pure tensors in M⊗_A N
    cotensor: Subspace
    equal: bool


def graded_cotensor_oracle(m: GradedModule, n: GradedModule, coring: Coring | None = None) -> GradedCotensorComparison:
    if m.side != "right" or n.side != "left":
        raise GradingError("need a right graded module and a left graded module")
    if m.gset != n.gset or m.algebra is not n.algebra:
        raise GradingError("graded modules over different data")
    c = coring or build_graded_coring(m.algebra, m.gset)
    T = m.carrier.tensor(n.carrier)
    vecs = [T.pure(m.carrier.basis(i), n.carrier.basis(j))
            for i in range(m.dim) for j in range(n.dim) if m.degrees[i] == n.degrees[j]]
    oracle = Subspace(m.algebra.field, T.dim, vecs)
    K = cotensor(graded_to_comodule(m, c), graded_to_comodule(n, c))
    return GradedCotensorComparison(oracle, K.space, oracle == K.space)


# ----------------------------------------------------------------------------
# shipped example

def load_example(name: str = "graded_example.json") -> dict:
    return json.loads(resources.files("corings").joinpath("data", name).read_text())
