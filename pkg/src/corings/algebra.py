"""Finite groups and finite-dimensional unital algebras given by structure constants."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .linalg import (QQ, DimensionError, Field, LinearSystem, Matrix, Subspace, axpy,
                     solve_linear, vec_from_list)


class GroupTableError(ValueError):
    pass


class GradingError(ValueError):
    pass


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Issue:
    """One failed identity in a validation report."""

    check: str
    where: Any
    detail: str = ""

    def __str__(self):
        s = "%s at %s" % (self.check, self.where)
        return s + (": " + self.detail if self.detail else "")


Report = list  # list[Issue]; empty means valid


# ----------------------------------------------------------------------------
# groups

class FiniteGroup:
    """Group given by its multiplication table; element 0 is the identity."""

    def __init__(self, table: Sequence[Sequence[int]], labels: Sequence[str] | None = None, name: str = "G"):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.labels = tuple(labels) if labels else tuple("g%d" % i for i in range(self.order))
        self.name = name
        self._validate()
        self._inv = tuple(next(h for h in range(self.order) if self.table[g][h] == 0) for g in range(self.order))

    def _validate(self):
        n = self.order
        if n == 0:
            raise GroupTableError("empty group table")
        for row in self.table:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise GroupTableError("table is not an n x n table over range(n)")
        for g in range(n):
            if self.table[0][g] != g or self.table[g][0] != g:
                raise GroupTableError("element 0 is not the identity")
            if 0 not in self.table[g]:
                raise GroupTableError("element %d has no inverse" % g)
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise GroupTableError("associativity fails at (%d, %d, %d)" % (a, b, c))
        if len(self.labels) != n:
            raise GroupTableError("label count differs from group order")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    @property
    def identity(self) -> int:
        return 0

    def __eq__(self, o):
        return isinstance(o, FiniteGroup) and self.table == o.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return "FiniteGroup(%s, order=%d)" % (self.name, self.order)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([[(i + j) % n for j in range(n)] for i in range(n)],
                   ["e"] + ["g%d" % i if n > 2 else "g" for i in range(1, n)], name="C%d" % n)

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]], name="G") -> "FiniteGroup":
        """Group of permutations (listed with the identity first); product is composition p∘q."""
        perms = [tuple(p) for p in perms]
        idx = {p: i for i, p in enumerate(perms)}
        try:
            table = [[idx[tuple(p[q[k]] for k in range(len(q)))] for q in perms] for p in perms]
        except KeyError:
            raise GroupTableError("permutations not closed under composition") from None
        return cls(table, ["".join(map(str, p)) for p in perms], name=name)

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        return cls.from_permutations(list(itertools.permutations(range(n))), name="S%d" % n)

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]], ["e"], name="1")


@dataclass(frozen=True)
class Grading:
    group: FiniteGroup
    degrees: tuple  # degree of each basis vector

    def component(self, g: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == g]


# ----------------------------------------------------------------------------
# algebras

class Algebra:
    """Unital associative algebra: ``table[i][j]`` is the sparse vector e_i e_j."""

    def __init__(self, field: Field, dim: int, table, unit: Mapping, label: str = "A",
                 grading: Grading | None = None):
        self.field = field
        self.dim = dim
        self.table = tuple(tuple({k: field(x) for k, x in table[i][j].items() if x} for j in range(dim))
                           for i in range(dim))
        self.unit = {k: field(x) for k, x in unit.items() if x}
        self.label = label
        self.grading = grading
        self._lmul = None
        self._rmul = None

    # structure
    @property
    def structure_constants(self) -> list:
        z = self.field.zero
        return [[[self.table[i][j].get(k, z) for k in range(self.dim)] for j in range(self.dim)]
                for i in range(self.dim)]

    def basis(self, i: int) -> dict:
        return {i: self.field.one}

    def vec(self, xs) -> dict:
        return vec_from_list(self.field, xs)

    def mul(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for i, x in u.items():
            row = self.table[i]
            for j, y in v.items():
                axpy(out, x * y, row[j])
        return out

    def prod(self, *us: Mapping) -> dict:
        out = dict(self.unit)
        for u in us:
            out = self.mul(out, u)
        return out

    def lmul_basis(self) -> tuple[Matrix, ...]:
        """Matrices of x ↦ e_i x."""
        if self._lmul is None:
            self._lmul = tuple(Matrix.from_function(self.field, self.dim, self.dim, lambda j, i=i: self.table[i][j])
                               for i in range(self.dim))
        return self._lmul

    def rmul_basis(self) -> tuple[Matrix, ...]:
        """Matrices of x ↦ x e_j."""
        if self._rmul is None:
            self._rmul = tuple(Matrix.from_function(self.field, self.dim, self.dim, lambda i, j=j: self.table[i][j])
                               for j in range(self.dim))
        return self._rmul

    def lmul(self, u: Mapping) -> Matrix:
        return Matrix.from_function(self.field, self.dim, self.dim, lambda j: self.mul(u, self.basis(j)))

    def rmul(self, u: Mapping) -> Matrix:
        return Matrix.from_function(self.field, self.dim, self.dim, lambda j: self.mul(self.basis(j), u))

    def inverse(self, u: Mapping) -> dict | None:
        """Two-sided inverse of u, or None."""
        if self.dim == 0:
            return None
        sol = solve_linear(self.lmul(u), Matrix.from_columns(self.field, self.dim, [self.unit]))
        if sol is None:
            return None
        w = sol[0].col(0)
        if self.mul(u, w) != self.unit or self.mul(w, u) != self.unit:
            return None
        return dict(w)

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i] for i in range(self.dim) for j in range(i))

    def center(self) -> Subspace:
        ls = LinearSystem(self.field, self.dim)
        for j in range(self.dim):
            for i in range(self.dim):
                for k, x in self.table[i][j].items():
                    ls.add((j, k), i, x)
                for k, x in self.table[j][i].items():
                    ls.add((j, k), i, -x)
        return ls.kernel()

    def __repr__(self):
        return "Algebra(%s, dim=%d over %s)" % (self.label, self.dim, self.field)

    def same_as(self, other: "Algebra") -> bool:
        return (self is other) or (self.field == other.field and self.dim == other.dim
                                   and self.table == other.table and self.unit == other.unit)


def check_algebra(alg: Algebra) -> Report:
    """Associativity on basis triples and two-sided unitality."""
    issues: Report = []
    n = alg.dim
    for i in range(n):
        e = alg.basis(i)
        if alg.mul(alg.unit, e) != e:
            issues.append(Issue("left unit", (i,), "1*e_%d != e_%d" % (i, i)))
        if alg.mul(e, alg.unit) != e:
            issues.append(Issue("right unit", (i,), "e_%d*1 != e_%d" % (i, i)))
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = alg.mul(alg.table[i][j], alg.basis(k))
        rhs = alg.mul(alg.basis(i), alg.table[j][k])
        if lhs != rhs:
            issues.append(Issue("associativity", (i, j, k), "(e_i e_j) e_k != e_i (e_j e_k)"))
    if alg.grading is not None:
        issues.extend(_grading_issues(alg, alg.grading))
    return issues


def _grading_issues(alg: Algebra, gr: Grading) -> Report:
    issues = []
    if len(gr.degrees) != alg.dim:
        return [Issue("grading", "degrees", "expected %d degrees" % alg.dim)]
    G = gr.group
    for i, j in itertools.product(range(alg.dim), repeat=2):
        target = G.mul(gr.degrees[i], gr.degrees[j])
        bad = [k for k in alg.table[i][j] if gr.degrees[k] != target]
        if bad:
            issues.append(Issue("grading", (i, j), "e_%d e_%d has components outside degree %s" % (i, j, G.labels[target])))
    for k in alg.unit:
        if gr.degrees[k] != G.identity:
            issues.append(Issue("grading", "unit", "unit not homogeneous of identity degree"))
    return issues


# ----------------------------------------------------------------------------
# builders

_field_algebras: dict = {}


def field_algebra(F: Field = QQ) -> Algebra:
    """The ground field as a one-dimensional algebra (cached per field)."""
    if F not in _field_algebras:
        _field_algebras[F] = Algebra(F, 1, [[{0: 1}]], {0: 1}, label=str(F))
    return _field_algebras[F]


def matrix_algebra(F: Field, n: int, base: Algebra | None = None) -> Algebra:
    """M_n(base) with basis e_ij ⊗ b_t at index (i*n + j)*dim(base) + t."""
    if base is None:
        base = field_algebra(F)
    d = base.dim
    N = n * n * d
    table = [[{} for _ in range(N)] for _ in range(N)]
    for i, j, k, l in itertools.product(range(n), repeat=4):
        if j != k:
            continue
        for s in range(d):
            for t in range(d):
                tgt = (i * n + l) * d
                table[(i * n + j) * d + s][(k * n + l) * d + t] = {tgt + r: x for r, x in base.table[s][t].items()}
    unit = {}
    for i in range(n):
        for r, x in base.unit.items():
            unit[(i * n + i) * d + r] = x
    lab = "M%d(%s)" % (n, base.label)
    return Algebra(F, N, table, unit, label=lab)


def group_algebra(F: Field, G: FiniteGroup) -> Algebra:
    n = G.order
    table = [[{G.mul(g, h): 1} for h in range(n)] for g in range(n)]
    return Algebra(F, n, table, {0: 1}, label="%s%s" % (F, G.name), grading=Grading(G, tuple(range(n))))


def diagonal_algebra(F: Field, n: int) -> Algebra:
    """k^n with orthogonal idempotent basis."""
    table = [[({i: 1} if i == j else {}) for j in range(n)] for i in range(n)]
    return Algebra(F, n, table, {i: 1 for i in range(n)}, label="%s^%d" % (F, n))


def polynomial_quotient(F: Field, coeffs: Sequence, label: str | None = None) -> Algebra:
    """k[x]/(f) for monic f = x^n + c_{n-1}x^{n-1} + ... + c_0, given as [c_0, ..., c_{n-1}]."""
    cs = [F(c) for c in coeffs]
    n = len(cs)
    if n == 0:
        raise AlgebraError("polynomial of degree 0 gives the zero ring")
    # reduce x^m for m < 2n-1
    powers = []
    for m in range(2 * n - 1):
        if m < n:
            powers.append({m: F.one})
        else:
            prev = powers[m - 1]
            nxt: dict = {}
            for k, x in prev.items():
                if k + 1 < n:
                    axpy(nxt, x, {k + 1: F.one})
                else:
                    axpy(nxt, -x, {r: c for r, c in enumerate(cs) if c})
            powers.append(nxt)
    table = [[dict(powers[i + j]) for j in range(n)] for i in range(n)]
    return Algebra(F, n, table, {0: 1}, label=label or "k[x]/(deg %d)" % n)


def tensor_algebra(A: Algebra, B: Algebra) -> Algebra:
    """A ⊗ B with basis index i*dim(B) + j."""
    if A.field != B.field:
        raise AlgebraError("field mismatch")
    dA, dB = A.dim, B.dim
    table = [[{} for _ in range(dA * dB)] for _ in range(dA * dB)]
    for i, j, k, l in itertools.product(range(dA), range(dB), range(dA), range(dB)):
        out = {}
        for r, x in A.table[i][k].items():
            for s, y in B.table[j][l].items():
                out[r * dB + s] = x * y
        table[i * dB + j][k * dB + l] = out
    unit = {r * dB + s: x * y for r, x in A.unit.items() for s, y in B.unit.items()}
    return Algebra(A.field, dA * dB, table, unit, label="%s⊗%s" % (A.label, B.label))


def opposite_algebra(A: Algebra) -> Algebra:
    table = [[A.table[j][i] for j in range(A.dim)] for i in range(A.dim)]
    gr = None
    if A.grading is not None:
        gr = A.grading  # degrees survive only for abelian groups; checked on use
    return Algebra(A.field, A.dim, table, A.unit, label=A.label + "°", grading=gr if _grading_ok(A, table, gr) else None)


def _grading_ok(A, table, gr):
    if gr is None:
        return True
    probe = Algebra(A.field, A.dim, table, A.unit, grading=gr)
    return not _grading_issues(probe, gr)


def from_structure_constants(F: Field, dim: int, triples, unit, label="A") -> Algebra:
    """Sparse triples (i, j, k, value) meaning e_i e_j has coefficient value at e_k."""
    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for i, j, k, x in triples:
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise DimensionError("structure constant index out of range")
        y = table[i][j].get(k, 0) + F(x)
        if y:
            table[i][j][k] = y
        else:
            table[i][j].pop(k, None)
    u = unit if isinstance(unit, Mapping) else vec_from_list(F, unit)
    return Algebra(F, dim, table, u, label=label)


def graded_algebra(A: Algebra, G: FiniteGroup, degrees: Sequence[int] | None = None,
                   components: Mapping[int, Sequence[int]] | None = None) -> Algebra:
    """Attach a G-grading to A; raises GradingError if some product escapes its component."""
    if degrees is None:
        if components is None:
            raise GradingError("need degrees or components")
        deg = [None] * A.dim
        for g, idx in components.items():
            for i in idx:
                if deg[i] is not None:
                    raise GradingError("basis vector %d assigned twice" % i)
                deg[i] = int(g)
        if any(d is None for d in deg):
            raise GradingError("components do not cover the basis")
        degrees = deg
    gr = Grading(G, tuple(int(d) for d in degrees))
    out = Algebra(A.field, A.dim, A.table, A.unit, label=A.label, grading=gr)
    issues = _grading_issues(out, gr)
    if issues:
        raise GradingError(str(issues[0]))
    return out


def build_named_algebra(spec: Mapping, F: Field = QQ, resolve=None) -> Algebra:
    """Build an algebra from a small declarative dictionary.

    Recognised ``type`` values: field, matrix, group, graded, opposite, diagonal,
    polynomial, constants, tensor. ``resolve`` maps names to already built objects.
    """
    t = spec.get("type")

    def sub(key):
        v = spec[key]
        if isinstance(v, str):
            if resolve is None:
                raise AlgebraError("cannot resolve reference %r" % v)
            return resolve(v)
        if isinstance(v, Mapping) and v.get("type") in ("cyclic", "symmetric", "table"):
            return build_group(v)
        return build_named_algebra(v, F, resolve)

    if t == "field":
        alg = field_algebra(F)
    elif t == "matrix":
        base = sub("base") if "base" in spec else None
        alg = matrix_algebra(F, int(spec["n"]), base)
    elif t == "group":
        G = sub("group") if not isinstance(spec["group"], FiniteGroup) else spec["group"]
        alg = group_algebra(F, G)
    elif t == "graded":
        base = sub("algebra")
        G = sub("group") if not isinstance(spec["group"], FiniteGroup) else spec["group"]
        comps = spec.get("components")
        if comps is not None:
            comps = {int(g): list(v) for g, v in comps.items()}
        alg = graded_algebra(base, G, spec.get("degrees"), comps)
    elif t == "opposite":
        alg = opposite_algebra(sub("of"))
    elif t == "diagonal":
        alg = diagonal_algebra(F, int(spec["n"]))
    elif t == "polynomial":
        alg = polynomial_quotient(F, spec["coeffs"])
    elif t == "tensor":
        alg = tensor_algebra(sub("left"), sub("right"))
    elif t == "constants":
        alg = from_structure_constants(F, int(spec["dim"]), spec["triples"], spec["unit"])
    else:
        raise AlgebraError("unknown algebra type %r" % t)
    if "label" in spec:
        alg.label = spec["label"]
    issues = check_algebra(alg)
    if issues:
        raise AlgebraError("algebra fails validation: %s" % issues[0])
    return alg


def build_group(spec: Mapping) -> FiniteGroup:
    t = spec.get("type")
    if t == "cyclic":
        return FiniteGroup.cyclic(int(spec["n"]))
    if t == "symmetric":
        return FiniteGroup.symmetric(int(spec["n"]))
    if t == "table":
        return FiniteGroup(spec["table"], spec.get("labels"), name=spec.get("name", "G"))
    raise GroupTableError("unknown group type %r" % t)


# ----------------------------------------------------------------------------
# algebra maps

class AlgebraMap:
    def __init__(self, source: Algebra, target: Algebra, matrix: Matrix):
        if matrix.shape != (target.dim, source.dim):
            raise DimensionError("algebra map matrix has wrong shape")
        self.source = source
        self.target = target
        self.matrix = matrix

    def __call__(self, v: Mapping) -> dict:
        return self.matrix.apply(v)

    def images(self) -> list[dict]:
        return self.matrix.columns()

    def compose(self, inner: "AlgebraMap") -> "AlgebraMap":
        """self ∘ inner."""
        return AlgebraMap(inner.source, self.target, self.matrix @ inner.matrix)

    def inverse(self) -> "AlgebraMap | None":
        inv = self.matrix.inverse()
        return None if inv is None else AlgebraMap(self.target, self.source, inv)

    def check(self) -> Report:
        issues = []
        if self(self.source.unit) != self.target.unit:
            issues.append(Issue("unit", "1", "image of unit is not the unit"))
        S, T = self.source, self.target
        for i, j in itertools.product(range(S.dim), repeat=2):
            lhs = self(S.table[i][j])
            rhs = T.mul(self(S.basis(i)), self(S.basis(j)))
            if lhs != rhs:
                issues.append(Issue("multiplicativity", (i, j)))
        return issues

    @classmethod
    def identity(cls, A: Algebra) -> "AlgebraMap":
        return cls(A, A, Matrix.identity(A.field, A.dim))

    @classmethod
    def unit_map(cls, A: Algebra) -> "AlgebraMap":
        """k → A."""
        k = field_algebra(A.field)
        return cls(k, A, Matrix.from_columns(A.field, A.dim, [A.unit]))

    @classmethod
    def conjugation(cls, A: Algebra, b: Mapping) -> "AlgebraMap":
        """a ↦ b a b⁻¹."""
        binv = A.inverse(b)
        if binv is None:
            raise AlgebraError("conjugating element is not a unit")
        return cls(A, A, Matrix.from_function(A.field, A.dim, A.dim,
                                              lambda j: A.mul(A.mul(b, A.basis(j)), binv)))
