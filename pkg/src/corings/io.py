"""JSON structure documents: parse into a registry of named objects and serialize back.

A document looks like::

    {"schema_version": 1, "field": "q",
     "structures": [{"name": "A", "kind": "algebra", "type": "matrix", "n": 2}, ...],
     "commands": [["cointegral", "C"]]}

Scalars are strings "a/b" over Q and integers over F_p. Matrices are row-major
lists. References are names of earlier structures.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from .algebra import (AlgebraError, AlgebraMap, GradingError, GroupTableError, Issue, Report,
                      build_group, build_named_algebra, check_algebra,
                      from_structure_constants)
from .bimodule import (Bimodule, check_bimodule, free_bimodule, regular_bimodule, vector_space)
from .comatrix import ContextError, comatrix_context, identity_context, verify_context
from .comodule import (Comodule, ComoduleError, check_bicomodule, check_comodule, regular_bicomodule,
                       regular_comodule, standard_comodule, trivial_bicomodule)
from .coring import (Coring, CoringError, base_extension, check_coring, comatrix_coring, grouplike_coring,
                     matrix_coring, opposite_coring, tensor_coring, trivial_coring)
from .entwining import EntwiningError, EntwiningStructure, check_entwining, dk_to_entwining, graded_dk, twist_entwining
from .graded import GSet, build_graded_coring, graded_cointegral
from .linalg import DimensionError, Field, Matrix, ModInt, PrimeField, QQ, ScalarParseError, field_from_name
from .picard import (CoringAutomorphism, algebra_automorphism, conjugation_automorphism, graded_automorphism,
                     grouplike_permutation, identity_automorphism, induced_bicomodule)
from .solvers import cointegral_issues

SCHEMA_VERSION = 1

KINDS = ("group", "algebra", "algebra_map", "gset", "bimodule", "coring", "comodule", "bicomodule",
         "automorphism", "entwining", "cointegral", "context")


class InputError(ValueError):
    """Schema violation, dangling reference or bad scalar, annotated with its position."""

    def __init__(self, where: str, message: str):
        super().__init__("%s: %s" % (where, message))
        self.where = where
        self.message = message


# ----------------------------------------------------------------------------
# scalars

def scalar_to_json(F: Field, x):
    """Canonical document form: "a/b" strings over Q, integers over F_p."""
    if isinstance(F, PrimeField):
        return int(F(x).v)
    return str(F(x))


def scalar_to_str(F: Field, x) -> str:
    if isinstance(x, ModInt):
        return str(x.v)
    return str(F(x))


def _scalar(F: Field, v, where: str):
    try:
        return F.parse(v)
    except ScalarParseError as e:
        raise InputError(where, str(e)) from None


def _vector(F: Field, v, dim: int | None, where: str) -> dict:
    if not isinstance(v, list):
        raise InputError(where, "expected a list of scalars")
    if dim is not None and len(v) != dim:
        raise InputError(where, "expected %d entries, got %d" % (dim, len(v)))
    out = {}
    for i, x in enumerate(v):
        s = _scalar(F, x, "%s[%d]" % (where, i))
        if s:
            out[i] = s
    return out


def _matrix(F: Field, rows, where: str, shape: tuple[int, int] | None = None) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InputError(where, "expected a list of rows")
    ncols = len(rows[0]) if rows else (shape[1] if shape else 0)
    if any(len(r) != ncols for r in rows):
        raise InputError(where, "ragged matrix")
    if shape is not None and (len(rows), ncols) != shape:
        raise InputError(where, "expected shape %dx%d, got %dx%d" % (shape + (len(rows), ncols)))
    data = {}
    for i, r in enumerate(rows):
        row = {j: _scalar(F, x, "%s[%d][%d]" % (where, i, j)) for j, x in enumerate(r)}
        data[i] = {j: x for j, x in row.items() if x}
    return Matrix(F, len(rows), ncols, data)


def matrix_to_json(F: Field, m: Matrix) -> list:
    return [[scalar_to_json(F, x) for x in row] for row in m.to_lists()]


def matrix_to_strings(F: Field, m: Matrix) -> list:
    return [[scalar_to_str(F, x) for x in row] for row in m.to_lists()]


def vector_to_strings(F: Field, v: Mapping, dim: int) -> list:
    return [scalar_to_str(F, v.get(i, F.zero)) for i in range(dim)]


# ----------------------------------------------------------------------------
# canonical form

# keys whose leaves are scalars (the rest are structural integers or names)
_SCALAR_KEYS = {"matrix", "counit", "element", "psi", "left_action", "right_action", "coeffs", "unit", "rho", "phi"}
_TRIPLE_KEYS = {"comult", "coaction", "triples"}


def _canon_scalars(F: Field, v, where: str):
    if isinstance(v, list):
        return [_canon_scalars(F, x, "%s[%d]" % (where, i)) for i, x in enumerate(v)]
    return scalar_to_json(F, _scalar(F, v, where))


def _canon_triples(F: Field, v, where: str):
    """Nested lists whose innermost lists end in a scalar, e.g. [[i, j, x], ...]."""
    if not isinstance(v, list):
        raise InputError(where, "expected nested lists ending in scalars")
    if v and not isinstance(v[0], list):
        return list(v[:-1]) + [scalar_to_json(F, _scalar(F, v[-1], where))]
    return [_canon_triples(F, x, "%s[%d]" % (where, i)) for i, x in enumerate(v)]


def canonical_declaration(F: Field, decl: Mapping, where: str) -> dict:
    out = {}
    for k, v in decl.items():
        w = "%s.%s" % (where, k)
        if k in _SCALAR_KEYS and not isinstance(v, str):
            out[k] = _canon_scalars(F, v, w)
        elif k in _TRIPLE_KEYS:
            out[k] = _canon_triples(F, v, w)
        else:
            out[k] = v
    return out


# ----------------------------------------------------------------------------
# registry

@dataclass
class Entry:
    name: str
    kind: str
    decl: dict
    obj: Any
    report: Report = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.report


class Registry:
    def __init__(self, F: Field, commands: list | None = None):
        self.field = F
        self.entries: dict[str, Entry] = {}
        self.commands = commands or []

    def __contains__(self, name):
        return name in self.entries

    def __getitem__(self, name) -> Entry:
        return self.entries[name]

    def names(self) -> list[str]:
        return list(self.entries)

    def get(self, name: str, where: str, kinds: tuple | None = None):
        if not isinstance(name, str):
            raise InputError(where, "expected a structure name")
        if name not in self.entries:
            raise InputError(where, "unknown structure %r" % name)
        e = self.entries[name]
        if kinds and e.kind not in kinds:
            raise InputError(where, "%r is a %s, expected %s" % (name, e.kind, " or ".join(kinds)))
        if e.obj is None:
            raise InputError(where, "%r failed to construct: %s" % (name, e.report[0] if e.report else "?"))
        return e.obj

    def to_document(self) -> dict:
        F = self.field
        doc = {"schema_version": SCHEMA_VERSION,
               "field": "q" if F is QQ else "fp:%d" % F.characteristic,
               "structures": [e.decl for e in self.entries.values()]}
        if self.commands:
            doc["commands"] = self.commands
        return doc


def serialize(reg: Registry) -> str:
    return json.dumps(reg.to_document(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def parse_document(doc: Any, field_override: Field | None = None) -> Registry:
    if not isinstance(doc, dict):
        raise InputError("$", "document must be an object")
    ver = doc.get("schema_version", SCHEMA_VERSION)
    if ver != SCHEMA_VERSION:
        raise InputError("$.schema_version", "unsupported version %r" % (ver,))
    unknown = set(doc) - {"schema_version", "field", "structures", "commands"}
    if unknown:
        raise InputError("$", "unknown keys %s" % sorted(unknown))
    if field_override is not None:
        F = field_override
    else:
        try:
            F = field_from_name(str(doc.get("field", "q")))
        except ValueError as e:
            raise InputError("$.field", str(e)) from None
    cmds = doc.get("commands", [])
    if not isinstance(cmds, list) or any(not isinstance(c, list) or not c or not all(isinstance(s, str) for s in c)
                                         for c in cmds):
        raise InputError("$.commands", "expected a list of [command, arg, ...] string lists")
    reg = Registry(F, [list(c) for c in cmds])
    structs = doc.get("structures", [])
    if not isinstance(structs, list):
        raise InputError("$.structures", "expected a list")
    for i, decl in enumerate(structs):
        where = "$.structures[%d]" % i
        if not isinstance(decl, dict):
            raise InputError(where, "expected an object")
        name, kind = decl.get("name"), decl.get("kind")
        if not isinstance(name, str) or not name:
            raise InputError(where + ".name", "missing name")
        if name in reg:
            raise InputError(where + ".name", "duplicate name %r" % name)
        if kind not in KINDS:
            raise InputError(where + ".kind", "unknown kind %r" % (kind,))
        canon = canonical_declaration(F, decl, where)
        obj, report = _BUILDERS[kind](reg, canon, where)
        reg.entries[name] = Entry(name, kind, canon, obj, report)
    return reg


def parse_text(text: str, field_override: Field | None = None) -> Registry:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("line %d column %d" % (e.lineno, e.colno), e.msg) from None
    return parse_document(doc, field_override)


def parse_input(path_or_stream, field_override: Field | None = None) -> Registry:
    if hasattr(path_or_stream, "read"):
        return parse_text(path_or_stream.read(), field_override)
    with open(path_or_stream, encoding="utf-8") as fh:
        return parse_text(fh.read(), field_override)


# ----------------------------------------------------------------------------
# builders: each returns (object or None, validity report)

def _req(decl: Mapping, key: str, where: str):
    if key not in decl:
        raise InputError(where, "missing key %r" % key)
    return decl[key]


def _int(decl: Mapping, key: str, where: str, minimum: int = 0) -> int:
    v = _req(decl, key, where)
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise InputError("%s.%s" % (where, key), "expected an integer ≥ %d" % minimum)
    return v


def _fail(where: str, e: Exception):
    return None, [Issue("construction", where, str(e))]


def _build_group(reg: Registry, d: dict, where: str):
    try:
        return build_group(d), []
    except (GroupTableError, KeyError, ValueError, TypeError) as e:
        return _fail(where, e)


def _build_algebra(reg: Registry, d: dict, where: str):
    spec = {k: v for k, v in d.items() if k not in ("name", "kind")}
    if spec.get("type") == "constants":
        # built unchecked so that a broken table still loads with its report
        try:
            alg = from_structure_constants(reg.field, _int(d, "dim", where, 1), _req(d, "triples", where),
                                           _req(d, "unit", where), label=d["name"])
        except (DimensionError, ValueError, TypeError) as e:
            return _fail(where, e)
        return alg, check_algebra(alg)

    def resolve(n):
        return reg.get(n, where, ("algebra", "group"))
    try:
        alg = build_named_algebra(spec, reg.field, resolve)
    except (AlgebraError, GradingError, GroupTableError, DimensionError, KeyError, TypeError) as e:
        return _fail(where, e)
    return alg, check_algebra(alg)


def _build_algebra_map(reg: Registry, d: dict, where: str):
    t = d.get("type", "explicit")
    F = reg.field
    if t == "conjugation":
        A = reg.get(_req(d, "algebra", where), where + ".algebra", ("algebra",))
        b = _vector(F, _req(d, "element", where), A.dim, where + ".element")
        try:
            m = AlgebraMap.conjugation(A, b)
        except AlgebraError as e:
            return _fail(where, e)
    elif t == "identity":
        m = AlgebraMap.identity(reg.get(_req(d, "algebra", where), where + ".algebra", ("algebra",)))
    elif t == "unit":
        m = AlgebraMap.unit_map(reg.get(_req(d, "algebra", where), where + ".algebra", ("algebra",)))
    elif t == "explicit":
        S = reg.get(_req(d, "source", where), where + ".source", ("algebra",))
        T = reg.get(_req(d, "target", where), where + ".target", ("algebra",))
        m = AlgebraMap(S, T, _matrix(F, _req(d, "matrix", where), where + ".matrix", (T.dim, S.dim)))
    else:
        raise InputError(where + ".type", "unknown algebra_map type %r" % t)
    return m, m.check()


def _build_gset(reg: Registry, d: dict, where: str):
    G = reg.get(_req(d, "group", where), where + ".group", ("group",))
    try:
        if d.get("regular"):
            return GSet.regular(G), []
        return GSet(G, _req(d, "action", where), d.get("points")), []
    except (GradingError, TypeError, IndexError) as e:
        return _fail(where, e)


def _build_bimodule(reg: Registry, d: dict, where: str):
    F = reg.field
    t = _req(d, "type", where)
    if t == "regular":
        M = regular_bimodule(reg.get(_req(d, "algebra", where), where + ".algebra", ("algebra",)))
    elif t == "vector_space":
        M = vector_space(F, _int(d, "dim", where))
    elif t == "free":
        M = free_bimodule(reg.get(_req(d, "algebra", where), where + ".algebra", ("algebra",)), _int(d, "n", where, 1))
    elif t == "explicit":
        L = reg.get(_req(d, "left", where), where + ".left", ("algebra",))
        R = reg.get(_req(d, "right", where), where + ".right", ("algebra",))
        n = _int(d, "dim", where)
        la = _req(d, "left_action", where)
        ra = _req(d, "right_action", where)
        if len(la) != L.dim or len(ra) != R.dim:
            raise InputError(where, "one action matrix per algebra basis vector is required")
        M = Bimodule(L, R, n, [_matrix(F, m, "%s.left_action[%d]" % (where, i), (n, n)) for i, m in enumerate(la)],
                     [_matrix(F, m, "%s.right_action[%d]" % (where, i), (n, n)) for i, m in enumerate(ra)])
    else:
        raise InputError(where + ".type", "unknown bimodule type %r" % t)
    M.label = d["name"]
    return M, check_bimodule(M)


def _lift_list(F: Field, v, dim: int, where: str) -> list[dict]:
    if not isinstance(v, list) or len(v) != dim:
        raise InputError(where, "expected one entry per basis vector (%d)" % dim)
    out = []
    for i, terms in enumerate(v):
        lift: dict = {}
        for k, t in enumerate(terms):
            w = "%s[%d][%d]" % (where, i, k)
            if not isinstance(t, list) or len(t) != 3 or not all(isinstance(z, int) for z in t[:2]):
                raise InputError(w, "expected [i, j, scalar]")
            key = (t[0], t[1])
            lift[key] = lift.get(key, 0) + _scalar(F, t[2], w)
        out.append(lift)
    return out


def _build_coring(reg: Registry, d: dict, where: str):
    F = reg.field
    t = _req(d, "type", where)

    def alg(key="algebra"):
        return reg.get(_req(d, key, where), "%s.%s" % (where, key), ("algebra",))

    def cor(key):
        return reg.get(_req(d, key, where), "%s.%s" % (where, key), ("coring",))
    try:
        if t == "trivial":
            c = trivial_coring(alg())
        elif t == "grouplike":
            A = alg()
            pts = _req(d, "points", where)
            override = None
            if "counit" in d:
                vals = d["counit"]
                npts = pts if isinstance(pts, int) else len(pts)
                if not isinstance(vals, list) or len(vals) != npts:
                    raise InputError(where + ".counit", "expected one vector per point")
                override = {x: _vector(F, v, A.dim, "%s.counit[%d]" % (where, x)) for x, v in enumerate(vals)}
            c = grouplike_coring(A, pts, override)
        elif t == "matrix":
            c = matrix_coring(alg(), _int(d, "n", where, 1))
        elif t == "base_extension":
            c = base_extension(cor("coring"), reg.get(_req(d, "rho", where), where + ".rho", ("algebra_map",)))
        elif t == "tensor":
            c = tensor_coring(cor("left"), cor("right"))
        elif t == "comatrix":
            c = comatrix_coring(reg.get(_req(d, "module", where), where + ".module", ("bimodule",)))
        elif t == "opposite":
            c = opposite_coring(cor("of"))
        elif t == "graded":
            c = build_graded_coring(alg(), reg.get(_req(d, "gset", where), where + ".gset", ("gset",)))
        elif t == "explicit":
            M = reg.get(_req(d, "carrier", where), where + ".carrier", ("bimodule",))
            lifts = _lift_list(F, _req(d, "comult", where), M.dim, where + ".comult")
            eps = _matrix(F, _req(d, "counit", where), where + ".counit", (M.left_alg.dim, M.dim))
            c = Coring.from_lift(M, lifts, eps, label=d["name"])
        else:
            raise InputError(where + ".type", "unknown coring type %r" % t)
    except (CoringError, GradingError, DimensionError) as e:
        return _fail(where, e)
    c.label = d["name"]
    return c, check_coring(c)


def _build_comodule(reg: Registry, d: dict, where: str):
    F = reg.field
    t = _req(d, "type", where)
    c = reg.get(_req(d, "coring", where), where + ".coring", ("coring",))
    side = d.get("side", "right")
    if side not in ("left", "right"):
        raise InputError(where + ".side", "expected left or right")
    if t == "regular":
        m = regular_comodule(c, side)
    elif t == "standard":
        m = standard_comodule(reg.get(_req(d, "module", where), where + ".module", ("bimodule",)), c)
    elif t == "explicit":
        M = reg.get(_req(d, "carrier", where), where + ".carrier", ("bimodule",))
        T = M.tensor(c.carrier) if side == "right" else c.carrier.tensor(M)
        lifts = _lift_list(F, _req(d, "coaction", where), M.dim, where + ".coaction")
        cols = []
        for lift in lifts:
            v: dict = {}
            for (i, j), x in lift.items():
                for q, y in T.project_pair(i, j).items():
                    v[q] = v.get(q, 0) + x * y
            cols.append({q: y for q, y in v.items() if y})
        m = Comodule(side, c, M, Matrix.from_columns(F, T.dim, cols), label=d["name"])
    else:
        raise InputError(where + ".type", "unknown comodule type %r" % t)
    m.label = d["name"]
    return m, check_comodule(m)


def _build_bicomodule(reg: Registry, d: dict, where: str):
    t = _req(d, "type", where)
    if t == "regular":
        b = regular_bicomodule(reg.get(_req(d, "coring", where), where + ".coring", ("coring",)))
    elif t == "induced":
        b = induced_bicomodule(reg.get(_req(d, "automorphism", where), where + ".automorphism", ("automorphism",)))
    elif t == "trivial":
        b = trivial_bicomodule(reg.get(_req(d, "module", where), where + ".module", ("bimodule",)),
                               reg.get(_req(d, "left", where), where + ".left", ("coring",)),
                               reg.get(_req(d, "right", where), where + ".right", ("coring",)))
    else:
        raise InputError(where + ".type", "unknown bicomodule type %r" % t)
    b.label = d["name"]
    return b, check_bicomodule(b)


def _build_automorphism(reg: Registry, d: dict, where: str):
    F = reg.field
    t = _req(d, "type", where)
    c = reg.get(_req(d, "coring", where), where + ".coring", ("coring",))
    try:
        if t == "identity":
            f = identity_automorphism(c)
        elif t == "conjugation":
            f = conjugation_automorphism(c, _vector(F, _req(d, "element", where), c.algebra.dim, where + ".element"))
        elif t == "algebra":
            f = algebra_automorphism(c, reg.get(_req(d, "map", where), where + ".map", ("algebra_map",)))
        elif t == "permutation":
            f = grouplike_permutation(c, _req(d, "perm", where))
        elif t == "graded":
            f = graded_automorphism(c, reg.get(_req(d, "alpha", where), where + ".alpha", ("algebra_map",)),
                                    _req(d, "gamma", where), d.get("group_map"))
        elif t == "explicit":
            A = c.algebra
            rho = AlgebraMap(A, A, _matrix(F, _req(d, "rho", where), where + ".rho", (A.dim, A.dim)))
            f = CoringAutomorphism(c, rho, _matrix(F, _req(d, "phi", where), where + ".phi", (c.dim, c.dim)))
        else:
            raise InputError(where + ".type", "unknown automorphism type %r" % t)
    except (CoringError, AlgebraError) as e:
        return _fail(where, e)
    f.label = d["name"]
    return f, f.check()


def _build_entwining(reg: Registry, d: dict, where: str):
    F = reg.field
    t = _req(d, "type", where)
    A = reg.get(_req(d, "algebra", where), where + ".algebra", ("algebra",))
    try:
        if t == "graded":
            X = reg.get(_req(d, "gset", where), where + ".gset", ("gset",))
            e = dk_to_entwining(graded_dk(A, X.action, X.points))
        elif t == "twist":
            e = twist_entwining(A, reg.get(_req(d, "coalgebra", where), where + ".coalgebra", ("coring",)))
        elif t == "explicit":
            C = reg.get(_req(d, "coalgebra", where), where + ".coalgebra", ("coring",))
            n = A.dim * C.dim
            e = EntwiningStructure(A, C, _matrix(F, _req(d, "psi", where), where + ".psi", (n, n)))
        else:
            raise InputError(where + ".type", "unknown entwining type %r" % t)
    except EntwiningError as ex:
        return _fail(where, ex)
    return e, check_entwining(e)


def _build_cointegral(reg: Registry, d: dict, where: str):
    F = reg.field
    c = reg.get(_req(d, "coring", where), where + ".coring", ("coring",))
    t = d.get("type", "explicit")
    if t == "graded":
        X = getattr(c, "gset", None)
        if X is None:
            raise InputError(where + ".coring", "not a graded coring")
        try:
            delta = graded_cointegral(c.algebra, X, c)
        except ArithmeticError as e:
            return _fail(where, e)
    elif t == "explicit":
        delta = _matrix(F, _req(d, "matrix", where), where + ".matrix", (c.algebra.dim, c.tensor2.dim))
    else:
        raise InputError(where + ".type", "unknown cointegral type %r" % t)
    return delta, cointegral_issues(c, delta)


def _build_context(reg: Registry, d: dict, where: str):
    t = _req(d, "type", where)
    try:
        if t == "comatrix":
            ctx = comatrix_context(reg.get(_req(d, "module", where), where + ".module", ("bimodule",)))
        elif t == "identity":
            ctx = identity_context(reg.get(_req(d, "coring", where), where + ".coring", ("coring",)))
        else:
            raise InputError(where + ".type", "unknown context type %r" % t)
    except (CoringError, ContextError, ComoduleError) as e:
        return _fail(where, e)
    if d.get("zero_omega"):
        ctx.omega = Matrix.zero(reg.field, ctx.omega.nrows, ctx.omega.ncols)
    ctx.kind = t
    return ctx, verify_context(ctx)


_BUILDERS: dict[str, Callable] = {
    "group": _build_group,
    "algebra": _build_algebra,
    "algebra_map": _build_algebra_map,
    "gset": _build_gset,
    "bimodule": _build_bimodule,
    "coring": _build_coring,
    "comodule": _build_comodule,
    "bicomodule": _build_bicomodule,
    "automorphism": _build_automorphism,
    "entwining": _build_entwining,
    "cointegral": _build_cointegral,
    "context": _build_context,
}
