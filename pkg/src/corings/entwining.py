"""Coalgebras, bialgebras, right-right entwining structures and Doi-Koppinen data.

Tensor indices: C⊗A is c*dim(A) + a, A⊗C is a*dim(C) + c, A⊗H is a*dim(H) + h.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import Algebra, FiniteGroup, Issue, Report, check_algebra, field_algebra, group_algebra
from .bimodule import Bimodule, vector_space
from .coring import Coring, check_coring, grouplike_coring
from .linalg import Matrix, axpy


class EntwiningError(ValueError):
    pass


# ----------------------------------------------------------------------------
# coalgebras

def is_coalgebra(c: Coring) -> bool:
    return c.algebra.dim == 1 and c.algebra.unit == {0: c.field.one}


def coalgebra(F, dim: int, delta: Sequence[Mapping], counit: Sequence, label: str = "C") -> Coring:
    """A k-coalgebra from Δ(e_i) = {(u, w): x} and ε(e_i)."""
    V = vector_space(F, dim, label=label)
    eps = Matrix.from_rows(F, [[F(x) for x in counit]])
    return Coring.from_lift(V, delta, eps, label=label)


def _cdelta(c: Coring) -> list:
    """Δ on each basis vector of a coalgebra as [((u, w), x)]."""
    return [c.delta_pairs(i) for i in range(c.dim)]


def _ceps(c: Coring) -> list:
    row = c.counit.row(0)
    return [row.get(i, c.field.zero) for i in range(c.dim)]


def group_coalgebra(F, G: FiniteGroup) -> Coring:
    """kG with every group element grouplike."""
    return grouplike_coring(field_algebra(F), G.labels)


# ----------------------------------------------------------------------------
# bialgebras

@dataclass
class Bialgebra:
    algebra: Algebra
    coalgebra: Coring
    antipode: Matrix | None = None
    label: str = "H"

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def field(self):
        return self.algebra.field


def group_bialgebra(F, G: FiniteGroup) -> Bialgebra:
    """kG with S(g) = g⁻¹."""
    A = group_algebra(F, G)
    S = Matrix.from_function(F, G.order, G.order, lambda g: {G.inv(g): F.one})
    return Bialgebra(A, group_coalgebra(F, G), S, label="%sG" % A.field.name)


def trivial_bialgebra(F) -> Bialgebra:
    k = field_algebra(F)
    return Bialgebra(k, grouplike_coring(k, 1), Matrix.identity(F, 1), label="k")


def check_bialgebra(h: Bialgebra, antipode: Matrix | None = None, twisted: Matrix | None = None) -> Report:
    """(bialg1)-(bialg4), plus S(h1)h2 = h1S(h2) = ε(h)1 and h2S̄(h1) = S̄(h2)h1 = ε(h)1 when given."""
    A, C = h.algebra, h.coalgebra
    F = h.field
    issues: Report = [Issue("algebra: " + i.check, i.where, i.detail) for i in check_algebra(A)]
    if not is_coalgebra(C):
        return issues + [Issue("coalgebra", "base", "comultiplication is not over the ground field")]
    issues += [Issue("coalgebra: " + i.check, i.where, i.detail) for i in check_coring(C)]
    if C.dim != A.dim:
        return issues + [Issue("carrier", "H", "algebra and coalgebra dimensions differ")]
    n = A.dim
    dl = _cdelta(C)
    ep = _ceps(C)

    def delta(v: Mapping) -> dict:
        out: dict = {}
        for i, x in v.items():
            for (u, w), y in dl[i]:
                out[(u, w)] = out.get((u, w), 0) + x * y
        return {k: v for k, v in out.items() if v}

    def eps(v: Mapping):
        acc = F.zero
        for i, x in v.items():
            acc = acc + x * ep[i]
        return acc

    for g in range(n):
        for k in range(n):
            lhs = delta(A.table[g][k])
            rhs: dict = {}
            for (g1, g2), x in dl[g]:
                for (k1, k2), y in dl[k]:
                    for p, s in A.table[g1][k1].items():
                        for q, t in A.table[g2][k2].items():
                            rhs[(p, q)] = rhs.get((p, q), 0) + x * y * s * t
            rhs = {key: v for key, v in rhs.items() if v}
            if lhs != rhs:
                issues.append(Issue("bialg1 Δ(gh) = g1h1⊗g2h2", (g, k)))
            if eps(A.table[g][k]) != ep[g] * ep[k]:
                issues.append(Issue("bialg2 ε(gh) = ε(g)ε(h)", (g, k)))
    unit = A.unit
    uu = {(p, q): x * y for p, x in unit.items() for q, y in unit.items()}
    if delta(unit) != {k: v for k, v in uu.items() if v}:
        issues.append(Issue("bialg3 Δ(1) = 1⊗1", "1"))
    if eps(unit) != F.one:
        issues.append(Issue("bialg4 ε(1) = 1", "1"))
    for name, S, twist in (("antipode", antipode, False), ("twisted antipode", twisted, True)):
        if S is None:
            continue
        if S.shape != (n, n):
            issues.append(Issue(name, "S", "wrong shape"))
            continue
        cols = S.columns()
        for i in range(n):
            left: dict = {}
            right: dict = {}
            for (u, w), x in dl[i]:
                if twist:
                    axpy(left, x, A.mul(A.basis(w), cols[u]))
                    axpy(right, x, A.mul(cols[w], A.basis(u)))
                else:
                    axpy(left, x, A.mul(cols[u], A.basis(w)))
                    axpy(right, x, A.mul(A.basis(u), cols[w]))
            target = {k: ep[i] * v for k, v in unit.items() if ep[i] * v}
            if left != target or right != target:
                issues.append(Issue(name, "e_%d" % i, "convolution with the identity is not ηε"))
    return issues


# ----------------------------------------------------------------------------
# entwining structures

class EntwiningStructure:
    """ψ: C⊗A → A⊗C for an algebra A and a coalgebra C over the same field."""

    def __init__(self, A: Algebra, C: Coring, psi: Matrix):
        if not is_coalgebra(C):
            raise EntwiningError("C must be a coalgebra over the ground field")
        if psi.shape != (A.dim * C.dim, C.dim * A.dim):
            raise EntwiningError("ψ must be a %dx%d matrix" % (A.dim * C.dim, C.dim * A.dim))
        self.A = A
        self.C = C
        self.psi = psi

    @property
    def field(self):
        return self.A.field

    def apply(self, c: int, a: int) -> list[tuple[tuple[int, int], object]]:
        """ψ(c⊗a) as [((a', c'), x)]."""
        dC = self.C.dim
        return [(divmod(k, dC), x) for k, x in sorted(self.psi.col(c * self.A.dim + a).items())]

    @classmethod
    def from_function(cls, A: Algebra, C: Coring, fn) -> "EntwiningStructure":
        """fn(c, a) -> {(a', c'): x}."""
        dA, dC = A.dim, C.dim
        F = A.field

        def col(q):
            c, a = divmod(q, dA)
            return {ap * dC + cp: F(x) for (ap, cp), x in fn(c, a).items() if x}
        return cls(A, C, Matrix.from_function(F, dA * dC, dC * dA, col))


def twist_entwining(A: Algebra, C: Coring) -> EntwiningStructure:
    return EntwiningStructure.from_function(A, C, lambda c, a: {(a, c): 1})


def _acc(d: dict, key, x):
    v = d.get(key, 0) + x
    if v:
        d[key] = v
    else:
        d.pop(key, None)


def check_entwining(e: EntwiningStructure) -> Report:
    """ES1-ES4 on every basis pair or triple."""
    A, C = e.A, e.C
    issues: Report = []
    dl = _cdelta(C)
    ep = _ceps(C)
    psi = [[e.apply(c, a) for a in range(A.dim)] for c in range(C.dim)]

    def psi_vec(c: int, v: Mapping) -> dict:
        out: dict = {}
        for a, x in v.items():
            for key, y in psi[c][a]:
                _acc(out, key, x * y)
        return out

    for c in range(C.dim):
        for a in range(A.dim):
            for b in range(A.dim):
                lhs = psi_vec(c, A.table[a][b])
                rhs: dict = {}
                for (ap, cp), x in psi[c][a]:
                    for (bp, cpp), y in psi[cp][b]:
                        for p, z in A.table[ap][bp].items():
                            _acc(rhs, (p, cpp), x * y * z)
                if lhs != rhs:
                    issues.append(Issue("ES1 ψ(c⊗ab) = a_ψ b_Ψ⊗c^ψΨ", "c=%d a=%d b=%d" % (c, a, b)))
            # ES2
            lhs = {}
            for (ap, cp), x in psi[c][a]:
                for (u, w), y in dl[cp]:
                    _acc(lhs, (ap, u, w), x * y)
            rhs = {}
            for (c1, c2), x in dl[c]:
                for (ap, c2p), y in psi[c2][a]:
                    for (app, c1p), z in psi[c1][ap]:
                        _acc(rhs, (app, c1p, c2p), x * y * z)
            if lhs != rhs:
                issues.append(Issue("ES2 (A⊗Δ)ψ = (ψ⊗C)(C⊗ψ)(Δ⊗A)", "c=%d a=%d" % (c, a)))
            # ES4
            lhs = {}
            for (ap, cp), x in psi[c][a]:
                _acc(lhs, ap, x * ep[cp])
            rhs = {a: ep[c]} if ep[c] else {}
            if lhs != rhs:
                issues.append(Issue("ES4 a_ψ ε(c^ψ) = a ε(c)", "c=%d a=%d" % (c, a)))
        # ES3
        got = psi_vec(c, A.unit)
        want = {(p, c): x for p, x in A.unit.items()}
        if got != want:
            issues.append(Issue("ES3 ψ(c⊗1) = 1⊗c", "c=%d" % c))
    return issues


# ----------------------------------------------------------------------------
# the Takeuchi correspondence

def _standard_left(A: Algebra, dC: int) -> list[Matrix]:
    F = A.field
    dA = A.dim
    out = []
    for b in range(dA):
        def col(q, b=b):
            a, c = divmod(q, dC)
            return {p * dC + c: x for p, x in A.table[b][a].items()}
        out.append(Matrix.from_function(F, dA * dC, dA * dC, col))
    return out


def takeuchi_right_action(e: EntwiningStructure) -> list[Matrix]:
    """(a⊗c)·b = a ψ(c⊗b), one matrix per basis vector b."""
    A, dC = e.A, e.C.dim
    F = e.field
    mats = []
    for b in range(A.dim):
        def col(q, b=b):
            a, c = divmod(q, dC)
            out: dict = {}
            for (bp, cp), x in e.apply(c, b):
                for p, y in A.table[a][bp].items():
                    axpy(out, x * y, {p * dC + cp: F.one})
            return out
        mats.append(Matrix.from_function(F, A.dim * dC, A.dim * dC, col))
    return mats


def assemble_takeuchi(e: EntwiningStructure) -> Coring:
    """A⊗C with the entwined right action, Δ = A⊗Δ_C and ε = A⊗ε_C, without checks."""
    A, C = e.A, e.C
    F = e.field
    dA, dC = A.dim, C.dim
    car = Bimodule(A, A, dA * dC, _standard_left(A, dC), takeuchi_right_action(e), label="%s⊗%s" % (A.label, C.label))
    dl = _cdelta(C)
    ep = _ceps(C)
    lifts = []
    for q in range(dA * dC):
        a, c = divmod(q, dC)
        lift: dict = {}
        for (u, w), x in dl[c]:
            # (a⊗c1)⊗_A(1⊗c2)
            for p, y in A.unit.items():
                _acc(lift, (a * dC + u, p * dC + w), x * y)
        lifts.append(lift)
    counit = Matrix.from_function(F, dA, dA * dC, lambda q: {q // dC: ep[q % dC]} if ep[q % dC] else {})
    return Coring.from_lift(car, lifts, counit, label="Takeuchi(%s, %s)" % (A.label, C.label))


def takeuchi_coring(e: EntwiningStructure) -> Coring:
    bad = check_entwining(e)
    if bad:
        raise EntwiningError("not an entwining structure: %s" % bad[0])
    cor = assemble_takeuchi(e)
    bad = check_coring(cor)
    if bad:
        raise ArithmeticError("Takeuchi coring failed its check: %s" % bad[0])
    cor.entwining = e
    return cor


def takeuchi_issues(e: EntwiningStructure) -> Report:
    """Everything wrong with the assembled data viewed as a coring (action checks included)."""
    return check_coring(assemble_takeuchi(e))


def coring_from_data_recovers_entwining(A: Algebra, C: Coring, right_action: Sequence[Matrix]) -> EntwiningStructure | None:
    """Read ψ(c⊗b) = (1⊗c)·b off a right action on A⊗C; None unless ψ entwines and reproduces the action."""
    dA, dC = A.dim, C.dim
    F = A.field
    if len(right_action) != dA or any(m.shape != (dA * dC, dA * dC) for m in right_action):
        return None
    cols = []
    for c in range(dC):
        one_c: dict = {}
        for p, x in A.unit.items():
            one_c[p * dC + c] = x
        for b in range(dA):
            cols.append(right_action[b].apply(one_c))
    e = EntwiningStructure(A, C, Matrix.from_columns(F, dA * dC, cols))
    if check_entwining(e):
        return None
    if list(right_action) != takeuchi_right_action(e):
        return None
    return e


# ----------------------------------------------------------------------------
# Doi-Koppinen structures

@dataclass
class DKStructure:
    """H a bialgebra, A a right H-comodule algebra (ρ: A → A⊗H), C a right H-module coalgebra."""

    H: Bialgebra
    A: Algebra
    coaction: Matrix
    C: Coring
    action: Sequence[Matrix]  # action[h] is c ↦ c·h on C

    def rho(self, a: int) -> list[tuple[tuple[int, int], object]]:
        dH = self.H.dim
        return [(divmod(k, dH), x) for k, x in sorted(self.coaction.col(a).items())]


def check_dk(dk: DKStructure) -> Report:
    H, A, C = dk.H, dk.A, dk.C
    F = A.field
    issues = check_bialgebra(H)
    if not is_coalgebra(C):
        return issues + [Issue("module coalgebra", "C", "not a coalgebra")]
    issues += [Issue("C coalgebra: " + i.check, i.where, i.detail) for i in check_coring(C)]
    dA, dH, dC = A.dim, H.dim, C.dim
    if dk.coaction.shape != (dA * dH, dA) or len(dk.action) != dH:
        return issues + [Issue("shape", "ρ/action")]
    hd = _cdelta(H.coalgebra)
    he = _ceps(H.coalgebra)
    Hm = H.algebra
    # comodule axioms for A
    for a in range(dA):
        left: dict = {}
        right: dict = {}
        cnt: dict = {}
        for (a0, h), x in dk.rho(a):
            for (h1, h2), y in hd[h]:
                _acc(left, (a0, h1, h2), x * y)
            for (a00, h0), y in dk.rho(a0):
                _acc(right, (a00, h0, h), x * y)
            _acc(cnt, a0, x * he[h])
        if left != right:
            issues.append(Issue("A comodule coassociativity", "a=%d" % a))
        if cnt != {a: F.one}:
            issues.append(Issue("A comodule counit", "a=%d" % a))
    rho_vec = lambda v: _vec_rho(dk, v)
    for a in range(dA):
        for b in range(dA):
            lhs = rho_vec(A.table[a][b])
            rhs: dict = {}
            for (a0, h), x in dk.rho(a):
                for (b0, k), y in dk.rho(b):
                    for p, s in A.table[a0][b0].items():
                        for q, t in Hm.table[h][k].items():
                            _acc(rhs, (p, q), x * y * s * t)
            if lhs != rhs:
                issues.append(Issue("ρ(ab) = a0b0⊗a1b1", (a, b)))
    want = {}
    for p, x in A.unit.items():
        for q, y in Hm.unit.items():
            _acc(want, (p, q), x * y)
    if rho_vec(A.unit) != want:
        issues.append(Issue("ρ(1) = 1⊗1", "1"))
    # module coalgebra axioms for C
    act = list(dk.action)
    I = Matrix.identity(F, dC)
    if sum((act[h].scale(x) for h, x in Hm.unit.items()), Matrix.zero(F, dC, dC)) != I:
        issues.append(Issue("C module unit", "1"))
    for g in range(dH):
        for k in range(dH):
            prod = Matrix.zero(F, dC, dC)
            for p, x in Hm.table[g][k].items():
                prod = prod + act[p].scale(x)
            if prod != act[k] @ act[g]:
                issues.append(Issue("C module associativity", (g, k)))
    cd = _cdelta(C)
    ce = _ceps(C)
    for c in range(dC):
        for h in range(dH):
            ch = act[h].col(c)
            lhs: dict = {}
            for i, x in ch.items():
                for key, y in cd[i]:
                    _acc(lhs, key, x * y)
            rhs = {}
            for (c1, c2), x in cd[c]:
                for (h1, h2), y in hd[h]:
                    for u, s in act[h1].col(c1).items():
                        for w, t in act[h2].col(c2).items():
                            _acc(rhs, (u, w), x * y * s * t)
            if lhs != rhs:
                issues.append(Issue("Δ(ch) = c1h1⊗c2h2", "c=%d h=%d" % (c, h)))
            e1 = F.zero
            for i, x in ch.items():
                e1 = e1 + x * ce[i]
            if e1 != ce[c] * he[h]:
                issues.append(Issue("ε(ch) = ε(c)ε(h)", "c=%d h=%d" % (c, h)))
    return issues


def _vec_rho(dk: DKStructure, v: Mapping) -> dict:
    out: dict = {}
    for a, x in v.items():
        for key, y in dk.rho(a):
            _acc(out, key, x * y)
    return out


def dk_to_entwining(dk: DKStructure, *, check: bool = True) -> EntwiningStructure:
    """ψ(c⊗a) = a0⊗c·a1."""
    if check:
        bad = check_dk(dk)
        if bad:
            raise EntwiningError("DK structure fails: %s" % bad[0])
    act = dk.action

    def fn(c, a):
        out: dict = {}
        for (a0, h), x in dk.rho(a):
            for cp, y in act[h].col(c).items():
                _acc(out, (a0, cp), x * y)
        return out
    return EntwiningStructure.from_function(dk.A, dk.C, fn)


def graded_dk(A: Algebra, X_action: Sequence[Sequence[int]], points: Sequence[str] | None = None) -> DKStructure:
    """(kG, A, kX) for A graded by G and a right G-set X given as X_action[x][g] = x·g."""
    if A.grading is None:
        raise EntwiningError("A carries no grading")
    G = A.grading.group
    F = A.field
    H = group_bialgebra(F, G)
    dH = G.order
    rho = Matrix.from_function(F, A.dim * dH, A.dim, lambda a: {a * dH + A.grading.degrees[a]: F.one})
    n = len(X_action)
    k = field_algebra(F)
    C = grouplike_coring(k, list(points) if points else n)
    action = [Matrix.from_function(F, n, n, lambda x, g=g: {X_action[x][g]: F.one}) for g in range(dH)]
    return DKStructure(H, A, rho, C, action)


def trivial_dk(A: Algebra, C: Coring) -> DKStructure:
    """H = k, ρ(a) = a⊗1, trivial action."""
    F = A.field
    H = trivial_bialgebra(F)
    return DKStructure(H, A, Matrix.identity(F, A.dim), C, [Matrix.identity(F, C.dim)])


def perturb(e: EntwiningStructure, rng: random.Random) -> EntwiningStructure:
    """Add a nonzero scalar to one entry of ψ."""
    F = e.field
    r = rng.randrange(e.psi.nrows)
    c = rng.randrange(e.psi.ncols)
    d = F(rng.randrange(1, max(2, min(F.order, 5)))) if F.order else F(rng.choice([1, -1, 2, 3]))
    rows = {i: dict(v) for i, v in e.psi.rows_items()}
    row = rows.setdefault(r, {})
    _acc(row, c, d)
    if not row:
        del rows[r]
    return EntwiningStructure(e.A, e.C, Matrix(F, e.psi.nrows, e.psi.ncols, rows))
