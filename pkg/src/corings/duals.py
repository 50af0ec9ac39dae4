"""Convolution algebras C*, *C, *C* of a coring and their structure maps."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .algebra import Algebra, Issue, Report
from .bimodule import (bimodule_map_space, left_linear_space, mat_to_vec, regular_bimodule,
                       right_linear_space, vec_to_mat)
from .comodule import comodule_hom_space, regular_comodule
from .coring import Coring
from .linalg import Matrix, Subspace, axpy

VARIANTS = ("right", "left", "bi")


class ConvolutionAlgebra:
    """One of the three duals with its product transported to canonical coordinates.

    right: C* = right A-linear maps, f*g(c) = Σ g(f(c1)c2)
    left:  *C = left A-linear maps,  f*g(c) = Σ f(c1 g(c2))
    bi:    *C* = bimodule maps,       f*g(c) = Σ f(c1) g(c2)
    """

    def __init__(self, base: Coring, variant: str):
        if variant not in VARIANTS:
            raise ValueError("variant must be one of %s" % (VARIANTS,))
        self.base = base
        self.variant = variant
        A = base.algebra
        C = base.carrier
        reg = regular_bimodule(A)
        if variant == "right":
            self.space = right_linear_space(C, reg)
        elif variant == "left":
            self.space = left_linear_space(C, reg)
        else:
            self.space = bimodule_map_space(C, reg)
        self._pairs = [base.delta_pairs(i) for i in range(base.dim)]
        self.maps = [self.to_matrix(r) for r in self.space.rows]
        n = self.space.dim
        table = [[self.coords(self.multiply(self.maps[s], self.maps[t])) for t in range(n)] for s in range(n)]
        unit = self.coords(base.counit)
        if unit is None:
            raise ArithmeticError("counit is not in the dual")
        self.algebra = Algebra(A.field, n, table, unit, label="%s(%s)" % ({"right": "C*", "left": "*C", "bi": "*C*"}[variant], base.label))

    @property
    def unit_element(self) -> dict:
        return self.algebra.unit

    @property
    def dim(self) -> int:
        return self.space.dim

    def to_matrix(self, v: Mapping) -> Matrix:
        return vec_to_mat(self.base.field, v, self.base.algebra.dim, self.base.dim)

    def element(self, v: Mapping) -> Matrix:
        """Map C → A for coordinates v."""
        out = Matrix.zero(self.base.field, self.base.algebra.dim, self.base.dim)
        for s, x in v.items():
            out = out + self.maps[s].scale(x)
        return out

    def coords(self, f: Matrix) -> dict | None:
        return self.space.coords(mat_to_vec(f))

    def multiply(self, f: Matrix, g: Matrix) -> Matrix:
        """Convolution product of two maps C → A."""
        C = self.base.carrier
        A = self.base.algebra
        F = self.base.field
        fc, gc = f.columns(), g.columns()
        cols = []
        if self.variant == "right":
            return g @ Matrix.from_columns(F, C.dim, [self._phi_col(fc, c) for c in range(C.dim)])
        if self.variant == "left":
            psi = Matrix.from_columns(F, C.dim, [self._psi_col(gc, c) for c in range(C.dim)])
            return f @ psi
        for c in range(C.dim):
            acc: dict = {}
            for (u, w), x in self._pairs[c]:
                axpy(acc, x, A.mul(fc[u], gc[w]))
            cols.append(acc)
        return Matrix.from_columns(F, A.dim, cols)

    def _phi_col(self, fc, c):
        C = self.base.carrier
        acc: dict = {}
        for (u, w), x in self._pairs[c]:
            axpy(acc, x, C.act_left(fc[u], C.basis(w)))
        return acc

    def _psi_col(self, gc, c):
        C = self.base.carrier
        acc: dict = {}
        for (u, w), x in self._pairs[c]:
            axpy(acc, x, C.act_right(C.basis(u), gc[w]))
        return acc

    def phi(self, f: Matrix) -> Matrix:
        """c ↦ Σ f(c1) c2, the endomorphism (f⊗C)Δ."""
        return Matrix.from_columns(self.base.field, self.base.dim, [self._phi_col(f.columns(), c) for c in range(self.base.dim)])


def dual_algebra(c: Coring, variant: str = "right") -> ConvolutionAlgebra:
    return ConvolutionAlgebra(c, variant)


def i_R(c: Coring, a: Mapping) -> Matrix:
    """ε(a-)."""
    return c.counit @ c.carrier.left_matrix(a)


def i_L(c: Coring, a: Mapping) -> Matrix:
    """ε(-a)."""
    return c.counit @ c.carrier.right_matrix(a)


def unit_antimorphism_matrix(c: Coring, side: str, conv: ConvolutionAlgebra | None = None) -> Matrix:
    """Matrix of i_R (into C* coordinates) or i_L (into *C coordinates)."""
    conv = conv or ConvolutionAlgebra(c, side)
    A = c.algebra
    fn = i_R if side == "right" else i_L
    return Matrix.from_function(c.field, conv.dim, A.dim, lambda a: conv.coords(fn(c, A.basis(a))))


def check_unit_antimorphisms(c: Coring) -> Report:
    """i_R(ab) = i_R(b)*i_R(a) in C*, i_L(ab) = i_L(b)*i_L(a) in *C, both unital."""
    issues: Report = []
    A = c.algebra
    for side, fn in (("right", i_R), ("left", i_L)):
        conv = ConvolutionAlgebra(c, side)
        name = "i_R" if side == "right" else "i_L"
        if fn(c, A.unit) != c.counit:
            issues.append(Issue(name + " unit", "1"))
        for a in range(A.dim):
            fa = fn(c, A.basis(a))
            if conv.coords(fa) is None:
                issues.append(Issue(name + " lands in dual", "e_%d" % a))
                continue
            for b in range(A.dim):
                lhs = fn(c, A.table[a][b])
                rhs = conv.multiply(fn(c, A.basis(b)), fa)
                if lhs != rhs:
                    issues.append(Issue(name + " anti-multiplicative", (a, b)))
    return issues


@dataclass
class EndRingIso:
    end_space: Subspace  # colinear endomorphisms of C, flattened
    conv: ConvolutionAlgebra
    forward: Matrix  # End coordinates → C* coordinates, f ↦ εf
    backward: Matrix  # C* coordinates → End coordinates, h ↦ (h⊗C)Δ
    issues: list = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return not self.issues


def end_ring_iso(c: Coring) -> EndRingIso:
    """End_C(C) → C*, f ↦ εf, checked bijective and anti-multiplicative on bases."""
    F = c.field
    R = regular_comodule(c, "right")
    E = comodule_hom_space(R, R)
    conv = ConvolutionAlgebra(c, "right")
    n = c.dim
    ends = [vec_to_mat(F, v, n, n) for v in E.rows]
    fwd_cols = []
    issues: Report = []
    for k, f in enumerate(ends):
        co = conv.coords(c.counit @ f)
        if co is None:
            issues.append(Issue("εf not right-linear", "f_%d" % k))
            co = {}
        fwd_cols.append(co)
    fwd = Matrix.from_columns(F, conv.dim, fwd_cols)
    back_cols = []
    for s, h in enumerate(conv.maps):
        co = E.coords(mat_to_vec(conv.phi(h)))
        if co is None:
            issues.append(Issue("(h⊗C)Δ not colinear", "h_%d" % s))
            co = {}
        back_cols.append(co)
    back = Matrix.from_columns(F, E.dim, back_cols)
    if E.dim != conv.dim:
        issues.append(Issue("dimension", "End vs C*", "%d vs %d" % (E.dim, conv.dim)))
    else:
        I = Matrix.identity(F, E.dim)
        if fwd @ back != I or back @ fwd != I:
            issues.append(Issue("bijectivity", "f ↦ εf", "maps are not mutually inverse"))
    for i, f in enumerate(ends):
        for j, g in enumerate(ends):
            lhs = c.counit @ (f @ g)
            rhs = conv.multiply(c.counit @ g, c.counit @ f)
            if lhs != rhs:
                issues.append(Issue("anti-multiplicative", (i, j)))
    return EndRingIso(E, conv, fwd, back, issues)


def convolution_invert(alg: ConvolutionAlgebra, p: Mapping) -> dict | None:
    """Two-sided inverse of p (coordinates) or None; verified on both sides."""
    q = alg.algebra.inverse(p)
    if q is None:
        return None
    A = alg.algebra
    if A.mul(p, q) != A.unit or A.mul(q, p) != A.unit:
        return None
    return q
