"""Exact scalars, matrices, subspaces and the small solvers built on them.

Vectors are sparse ``dict[int, scalar]`` with no stored zeros. Matrices use the
column convention: column ``j`` holds the image of basis vector ``j``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping

import gmpy2

Vec = dict


class ScalarParseError(ValueError):
    pass


class DimensionError(ValueError):
    pass


# ----------------------------------------------------------------------------
# fields

class ModInt:
    """Element of F_p, canonical representative in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, o):
        if isinstance(o, ModInt):
            if o.p != self.p:
                raise ValueError("mixed characteristics")
            return o.v
        if isinstance(o, int):
            return o
        return NotImplemented

    def __add__(self, o):
        w = self._coerce(o)
        return NotImplemented if w is NotImplemented else ModInt(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._coerce(o)
        return NotImplemented if w is NotImplemented else ModInt(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._coerce(o)
        return NotImplemented if w is NotImplemented else ModInt(w - self.v, self.p)

    def __mul__(self, o):
        w = self._coerce(o)
        return NotImplemented if w is NotImplemented else ModInt(self.v * w, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def inverse(self) -> "ModInt":
        if self.v == 0:
            raise ZeroDivisionError("zero has no inverse in F_%d" % self.p)
        return ModInt(pow(self.v, self.p - 2, self.p), self.p)

    def __truediv__(self, o):
        w = self._coerce(o)
        if w is NotImplemented:
            return w
        return self * ModInt(w, self.p).inverse()

    def __rtruediv__(self, o):
        w = self._coerce(o)
        if w is NotImplemented:
            return w
        return self.inverse() * w

    def __eq__(self, o):
        if isinstance(o, ModInt):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return self.v == o % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return "%d (mod %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Base class for the two supported session fields."""

    name = "field"
    characteristic = 0
    order: int | None = None

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, s) -> Any:
        if isinstance(s, bool):
            raise ScalarParseError("booleans are not scalars")
        if isinstance(s, int):
            return self(s)
        if not isinstance(s, str):
            raise ScalarParseError("scalar must be a string or integer, got %r" % (s,))
        txt = s.strip()
        num, _, den = txt.partition("/")
        try:
            n = int(num)
            d = int(den) if den else 1
        except ValueError:
            raise ScalarParseError("malformed scalar %r" % s) from None
        if d == 0:
            raise ScalarParseError("zero denominator in %r" % s)
        return self._from_fraction(n, d, s)

    def fmt(self, x) -> str:
        return str(x)

    def random_element(self, rng: random.Random, bound: int = 2):
        raise NotImplementedError

    def elements(self) -> list:
        raise ValueError("%s is infinite" % self.name)

    def __eq__(self, o):
        return isinstance(o, Field) and self.name == o.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"
    characteristic = 0
    order = None

    def __call__(self, x):
        if isinstance(x, Fraction):
            return gmpy2.mpq(x.numerator, x.denominator)
        if isinstance(x, str):
            return self.parse(x)
        return gmpy2.mpq(x)

    def _from_fraction(self, n, d, src):
        return gmpy2.mpq(n, d)

    def random_element(self, rng, bound=2):
        return gmpy2.mpq(rng.randint(-bound, bound))


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p) or p >= 2 ** 31:
            raise ValueError("p must be a prime below 2^31, got %r" % (p,))
        self.p = p
        self.characteristic = p
        self.order = p
        self.name = "F%d" % p

    def __call__(self, x):
        if isinstance(x, ModInt):
            return ModInt(x.v, self.p)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return self._from_fraction(x.numerator, x.denominator, str(x))
        if isinstance(x, type(gmpy2.mpq())):
            return self._from_fraction(int(x.numerator), int(x.denominator), str(x))
        return ModInt(int(x), self.p)

    def _from_fraction(self, n, d, src):
        if d % self.p == 0:
            raise ScalarParseError("denominator of %r is divisible by %d" % (src, self.p))
        return ModInt(n, self.p) / ModInt(d, self.p)

    def random_element(self, rng, bound=2):
        return ModInt(rng.randrange(self.p), self.p)

    def elements(self):
        return [ModInt(i, self.p) for i in range(self.p)]


QQ = RationalField()
_prime_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _prime_cache:
        _prime_cache[p] = PrimeField(p)
    return _prime_cache[p]


def field_from_name(name: str) -> Field:
    """``q`` / ``Q`` for the rationals, ``fp:7`` or ``F7`` for a prime field."""
    s = name.strip()
    if s.lower() in ("q", "qq", "rationals"):
        return QQ
    if s.lower().startswith("fp:"):
        return GF(int(s[3:]))
    if s[:1] in ("F", "f") and s[1:].isdigit():
        return GF(int(s[1:]))
    raise ValueError("unknown field %r" % name)


# ----------------------------------------------------------------------------
# sparse vector helpers

def axpy(v: dict, a, w: Mapping) -> dict:
    """v += a*w in place."""
    for k, x in w.items():
        y = v.get(k, 0) + a * x
        if y:
            v[k] = y
        else:
            v.pop(k, None)
    return v


def vadd(*vs: Mapping) -> dict:
    out: dict = {}
    for v in vs:
        axpy(out, 1, v)
    return out


def vscale(a, v: Mapping) -> dict:
    if not a:
        return {}
    return {k: a * x for k, x in v.items()}


def vsub(v: Mapping, w: Mapping) -> dict:
    return axpy(dict(v), -1, w)


def vec_from_list(F: Field, xs: Iterable) -> dict:
    out = {}
    for i, x in enumerate(xs):
        y = F(x)
        if y:
            out[i] = y
    return out


def vec_to_list(F: Field, v: Mapping, n: int) -> list:
    return [v.get(i, F.zero) for i in range(n)]


def unit_vec(F: Field, i: int) -> dict:
    return {i: F.one}


# ----------------------------------------------------------------------------
# matrices

class Matrix:
    """Immutable matrix stored by sparse rows."""

    __slots__ = ("field", "nrows", "ncols", "_rows", "_cols")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: Mapping[int, Mapping] | None = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        clean = {}
        for r, row in (rows or {}).items():
            row = {c: x for c, x in row.items() if x}
            if row:
                if not (0 <= r < nrows) or any(not (0 <= c < ncols) for c in row):
                    raise DimensionError("entry outside %dx%d" % (nrows, ncols))
                clean[r] = row
        self._rows = clean
        self._cols = None

    # constructors
    @classmethod
    def zero(cls, F, nrows, ncols):
        return cls(F, nrows, ncols)

    @classmethod
    def identity(cls, F, n):
        return cls(F, n, n, {i: {i: F.one} for i in range(n)})

    @classmethod
    def from_rows(cls, F, rows: list[list], ncols: int | None = None):
        nr = len(rows)
        nc = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        data = {}
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise DimensionError("ragged rows")
            data[i] = vec_from_list(F, row)
        return cls(F, nr, nc, data)

    @classmethod
    def from_columns(cls, F, nrows: int, cols: list[Mapping]):
        data: dict = {}
        for j, col in enumerate(cols):
            for i, x in col.items():
                if x:
                    data.setdefault(i, {})[j] = x
        return cls(F, nrows, len(cols), data)

    @classmethod
    def from_function(cls, F, nrows, ncols, fn: Callable[[int], Mapping]):
        """Matrix whose column j is fn(j)."""
        return cls.from_columns(F, nrows, [fn(j) for j in range(ncols)])

    # access
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def row(self, i) -> dict:
        return self._rows.get(i, {})

    def rows_items(self):
        return self._rows.items()

    def columns(self) -> list[dict]:
        if self._cols is None:
            cols: list[dict] = [dict() for _ in range(self.ncols)]
            for i, row in self._rows.items():
                for j, x in row.items():
                    cols[j][i] = x
            self._cols = cols
        return self._cols

    def col(self, j) -> dict:
        return self.columns()[j]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows.get(i, {}).get(j, self.field.zero)

    @property
    def entries(self) -> list:
        """Dense row-major entries."""
        z = self.field.zero
        return [self._rows.get(i, {}).get(j, z) for i in range(self.nrows) for j in range(self.ncols)]

    def to_lists(self) -> list[list]:
        z = self.field.zero
        return [[self._rows.get(i, {}).get(j, z) for j in range(self.ncols)] for i in range(self.nrows)]

    def nnz(self):
        return sum(len(r) for r in self._rows.values())

    # algebra
    def apply(self, v: Mapping) -> dict:
        cols = self.columns()
        out: dict = {}
        for j, x in v.items():
            axpy(out, x, cols[j])
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError("cannot multiply %s by %s" % (self.shape, other.shape))
        out = {}
        for i, row in self._rows.items():
            acc: dict = {}
            for k, x in row.items():
                r2 = other._rows.get(k)
                if r2:
                    axpy(acc, x, r2)
            if acc:
                out[i] = acc
        return Matrix(self.field, self.nrows, other.ncols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            axpy(rows.setdefault(i, {}), 1, r)
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, a) -> "Matrix":
        a = self.field(a)
        return Matrix(self.field, self.nrows, self.ncols, {i: vscale(a, r) for i, r in self._rows.items()})

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, dict(enumerate(self.columns())))

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError("shape mismatch %s vs %s" % (self.shape, other.shape))

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(sorted((i, tuple(sorted(r.items()))) for i, r in self._rows.items()))))

    def rank(self) -> int:
        return len(echelonize(self._rows.values()))

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Matrix | None":
        if self.nrows != self.ncols:
            return None
        sol = solve_linear(self, Matrix.identity(self.field, self.nrows))
        if sol is None or sol[1].dim:
            return None
        return sol[0]

    def submatrix_rows(self, rows: list[int]) -> "Matrix":
        return Matrix(self.field, len(rows), self.ncols,
                      {k: self._rows[r] for k, r in enumerate(rows) if r in self._rows})

    def __repr__(self):
        return "Matrix(%dx%d, nnz=%d)" % (self.nrows, self.ncols, self.nnz())


def hstack(F, nrows, mats: list[Matrix]) -> Matrix:
    rows: dict = {}
    off = 0
    for m in mats:
        for i, r in m.rows_items():
            d = rows.setdefault(i, {})
            for j, x in r.items():
                d[off + j] = x
        off += m.ncols
    return Matrix(F, nrows, off, rows)


def vstack(F, ncols, mats: list[Matrix]) -> Matrix:
    rows: dict = {}
    off = 0
    for m in mats:
        for i, r in m.rows_items():
            rows[off + i] = dict(r)
        off += m.nrows
    return Matrix(F, off, ncols, rows)


def block_diag(F, mats: list[Matrix]) -> Matrix:
    rows: dict = {}
    ro = co = 0
    for m in mats:
        for i, r in m.rows_items():
            rows[ro + i] = {co + j: x for j, x in r.items()}
        ro += m.nrows
        co += m.ncols
    return Matrix(F, ro, co, rows)


# ----------------------------------------------------------------------------
# elimination

def echelonize(vectors: Iterable[Mapping]) -> dict[int, dict]:
    """Fully reduced echelon rows of the span, keyed by pivot column.

    Each pivot row has a 1 at its pivot, which is also its smallest column, and
    no other row has an entry in that column. The result is canonical.
    """
    piv: dict[int, dict] = {}
    for v in vectors:
        w = dict(v)
        for c in [c for c in w if c in piv]:
            f = w.get(c)
            if f:
                axpy(w, -f, piv[c])
        if not w:
            continue
        c0 = min(w)
        inv = 1 / w[c0]
        w = {k: x * inv for k, x in w.items()}
        for r in piv.values():
            f = r.get(c0)
            if f:
                axpy(r, -f, w)
        piv[c0] = w
    return piv


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    piv = echelonize(r for _, r in sorted(m.rows_items()))
    order = sorted(piv)
    return Matrix(m.field, m.nrows, m.ncols, {k: piv[c] for k, c in enumerate(order)}), tuple(order)


class Subspace:
    """Subspace of F^n held as canonical reduced echelon rows.

    ``basis`` exposes them as the columns of a matrix.
    """

    __slots__ = ("field", "ambient_dim", "rows", "pivots", "_basis")

    def __init__(self, field: Field, ambient_dim: int, vectors: Iterable[Mapping] = (), *, _echelon=None):
        self.field = field
        self.ambient_dim = ambient_dim
        piv = _echelon if _echelon is not None else echelonize(vectors)
        self.pivots = tuple(sorted(piv))
        self.rows = tuple(piv[c] for c in self.pivots)
        for r in self.rows:
            if r and max(r) >= ambient_dim:
                raise DimensionError("vector outside ambient space of dim %d" % ambient_dim)
        self._basis = None

    @classmethod
    def zero(cls, F, n):
        return cls(F, n, ())

    @classmethod
    def full(cls, F, n):
        return cls(F, n, ({i: F.one} for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> Matrix:
        if self._basis is None:
            self._basis = Matrix.from_columns(self.field, self.ambient_dim, list(self.rows))
        return self._basis

    def vectors(self) -> list[dict]:
        return [dict(r) for r in self.rows]

    def coords(self, v: Mapping) -> dict | None:
        """Coordinates of v in the canonical basis, or None when v is outside."""
        c = {k: v[p] for k, p in enumerate(self.pivots) if v.get(p)}
        rest = dict(v)
        for k, x in c.items():
            axpy(rest, -x, self.rows[k])
        return c if not rest else None

    def contains(self, v: Mapping) -> bool:
        return self.coords(v) is not None

    def combine(self, coeffs: Mapping[int, Any] | list) -> dict:
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        out: dict = {}
        for k, x in items:
            if x:
                axpy(out, x, self.rows[k])
        return out

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.ambient_dim, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        # kernel of [B_self | -B_other]
        n1 = self.dim
        m = hstack(self.field, self.ambient_dim, [self.basis, other.basis.scale(-1)])
        k = kernel_basis(m)
        vecs = [self.combine({i: x for i, x in v.items() if i < n1}) for v in k.rows]
        return Subspace(self.field, self.ambient_dim, vecs)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))

    def __repr__(self):
        return "Subspace(dim=%d in %d)" % (self.dim, self.ambient_dim)


def _kernel_from_echelon(F, ncols, piv) -> list[dict]:
    free = [c for c in range(ncols) if c not in piv]
    kern = {f: {f: F.one} for f in free}
    for c, row in piv.items():
        for f, x in row.items():
            if f != c:
                kern[f][c] = -x
    return [kern[f] for f in free]


def kernel_basis(m: Matrix) -> Subspace:
    """{v : m v = 0} with canonical basis."""
    piv = echelonize(r for _, r in sorted(m.rows_items()))
    return Subspace(m.field, m.ncols, _kernel_from_echelon(m.field, m.ncols, piv))


def image(m: Matrix) -> Subspace:
    return Subspace(m.field, m.nrows, m.columns())


def solve_linear(m: Matrix, rhs: Matrix) -> tuple[Matrix, Subspace] | None:
    """One particular X with m X = rhs plus the kernel of m, or None if inconsistent."""
    if rhs.nrows != m.nrows:
        raise DimensionError("rhs has %d rows, matrix has %d" % (rhs.nrows, m.nrows))
    n = m.ncols
    aug = []
    for i in range(m.nrows):
        r = dict(m.row(i))
        for j, x in rhs.row(i).items():
            r[n + j] = x
        if r:
            aug.append(r)
    piv = echelonize(aug)
    if any(c >= n for c in piv):
        return None
    xrows = {}
    for c, row in piv.items():
        xr = {j - n: x for j, x in row.items() if j >= n}
        if xr:
            xrows[c] = xr
    sol = Matrix(m.field, n, rhs.ncols, xrows)
    core = {c: {j: x for j, x in row.items() if j < n} for c, row in piv.items()}
    return sol, Subspace(m.field, n, _kernel_from_echelon(m.field, n, core))


class LinearSystem:
    """Equations keyed by arbitrary hashables, unknowns indexed 0..nvars-1."""

    def __init__(self, field: Field, nvars: int):
        self.field = field
        self.nvars = nvars
        self.eqs: dict[Any, dict] = {}

    def add(self, eq, var: int, coeff) -> None:
        if not coeff:
            return
        row = self.eqs.setdefault(eq, {})
        y = row.get(var, 0) + coeff
        if y:
            row[var] = y
        else:
            row.pop(var, None)

    def add_rhs(self, eq, value) -> None:
        self.add(eq, self.nvars, value)

    def add_row(self, eq, row: Mapping[int, Any]) -> None:
        for v, c in row.items():
            self.add(eq, v, c)

    def _echelon(self):
        return echelonize(r for r in self.eqs.values() if r)

    def kernel(self) -> Subspace:
        """Solution space of the homogeneous part."""
        rows = [{v: c for v, c in r.items() if v < self.nvars} for r in self.eqs.values()]
        piv = echelonize(r for r in rows if r)
        return Subspace(self.field, self.nvars, _kernel_from_echelon(self.field, self.nvars, piv))

    def solve(self) -> tuple[dict, Subspace] | None:
        n = self.nvars
        piv = self._echelon()
        if n in piv:
            return None
        part = {c: row[n] for c, row in piv.items() if row.get(n)}
        core = {c: {j: x for j, x in row.items() if j < n} for c, row in piv.items()}
        return part, Subspace(self.field, n, _kernel_from_echelon(self.field, n, core))


# ----------------------------------------------------------------------------
# verdicts and span searches

class Status(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass
class SolveVerdict:
    status: Status
    witness: Any = None
    reason: str = ""
    details: dict = dc_field(default_factory=dict)

    @classmethod
    def yes(cls, witness=None, reason="", **details):
        return cls(Status.YES, witness, reason, details)

    @classmethod
    def no(cls, reason="", **details):
        return cls(Status.NO, None, reason, details)

    @classmethod
    def unknown(cls, reason="", **details):
        return cls(Status.UNKNOWN, None, reason, details)

    @property
    def is_yes(self):
        return self.status is Status.YES

    @property
    def is_no(self):
        return self.status is Status.NO

    @property
    def is_unknown(self):
        return self.status is Status.UNKNOWN

    def __bool__(self):
        raise TypeError("use .is_yes / .is_no / .is_unknown on a SolveVerdict")


DEFAULT_BUDGET = 64
DEFAULT_ENUM_CAP = 10 ** 6


def search_span(span: Subspace, accept: Callable[[dict], Any], *, budget: int = DEFAULT_BUDGET,
                seed: int = 0, enum_cap: int = DEFAULT_ENUM_CAP, first: Iterable[Mapping] = (),
                coeff_bound: int | None = None) -> SolveVerdict:
    """Look for v in span with accept(v) not None.

    Candidates in ``first`` are tried before anything else. A finite span small
    enough to enumerate is searched exhaustively and may answer No; otherwise
    ``budget`` random elements are drawn and the answer is Unknown on failure.
    """
    F = span.field
    if span.dim == 0:
        return SolveVerdict.no("span is zero")
    tried = 0
    for v in first:
        if span.contains(v):
            tried += 1
            res = accept(dict(v))
            if res is not None:
                return SolveVerdict.yes(res, "preferred candidate", candidates_tried=tried)
    if F.order is not None and F.order ** span.dim <= enum_cap:
        elems = F.elements()
        count = 0
        for coeffs in itertools.product(elems, repeat=span.dim):
            if not any(coeffs):
                continue
            count += 1
            res = accept(span.combine(list(coeffs)))
            if res is not None:
                return SolveVerdict.yes(res, "found by enumeration", enumerated=count)
        return SolveVerdict.no("exhaustive enumeration of all %d nonzero elements" % count,
                               enumerated=count, span_dim=span.dim)
    rng = random.Random(seed)
    bound = coeff_bound if coeff_bound is not None else max(2, span.dim)
    for t in range(budget):
        coeffs = [F.random_element(rng, bound) for _ in range(span.dim)]
        if not any(coeffs):
            continue
        res = accept(span.combine(coeffs))
        if res is not None:
            return SolveVerdict.yes(res, "found by random trial", trial=t + 1, seed=seed, budget=budget)
    return SolveVerdict.unknown("no success in %d random trials" % budget, budget=budget, seed=seed,
                                span_dim=span.dim)


def find_invertible_in_span(alg, span: Subspace, budget: int = DEFAULT_BUDGET, *, seed: int = 0,
                            enum_cap: int = DEFAULT_ENUM_CAP) -> SolveVerdict:
    """Search span for a two-sided unit of ``alg``; the unit is tried first."""
    if alg.dim and span.ambient_dim != alg.dim:
        raise DimensionError("span does not live in the algebra")

    def accept(v):
        if not v:
            return None
        inv = alg.inverse(v)
        return None if inv is None else {"element": v, "inverse": inv}

    first = [alg.unit] + [dict(r) for r in span.rows]
    return search_span(span, accept, budget=budget, seed=seed, enum_cap=enum_cap, first=first)
