"""Batch command line: load a structure document, run commands, print a report.

    corings --input example.json                 # run the document's "commands"
    corings --input example.json cointegral C    # run one command instead
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .comatrix import build_generalized_comatrix, comatrix_comparison, verify_context
from .comodule import cotensor
from .coring import check_coring, check_coring_morphism
from .duals import VARIANTS, ConvolutionAlgebra, check_unit_antimorphisms, end_ring_iso
from .entwining import assemble_takeuchi, check_entwining
from .graded import build_graded_coring, graded_cointegral, graded_cotensor_oracle, graded_sum, graded_takeuchi, suspension
from .io import InputError, Registry, matrix_to_strings, parse_input, serialize, vector_to_strings
from .linalg import DEFAULT_BUDGET, DEFAULT_ENUM_CAP, QQ, Field, SolveVerdict, field_from_name
from .picard import is_inner
from .solvers import check_frobenius_coring, find_cointegral, find_cosplit, frobenius_certificate, verify_frobenius_data

REPORT_SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3


@dataclass
class SessionConfig:
    field: Field = QQ
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    enum_cap: int = DEFAULT_ENUM_CAP
    timing: bool = False

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.enum_cap < 0:
            raise ValueError("enumeration cap must be non-negative")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def to_json(self) -> dict:
        return {"field": "q" if self.field is QQ else "fp:%d" % self.field.characteristic,
                "seed": self.seed, "budget": self.budget, "enum_cap": self.enum_cap}


@dataclass
class CommandResult:
    command: str
    args: list
    status: str  # pass | fail | yes | no | unknown
    reason: str = ""
    witness: dict | None = None
    details: dict = field(default_factory=dict)
    issues: list = field(default_factory=list)
    seconds: float | None = None

    @property
    def exit_code(self) -> int:
        if self.status in ("fail", "no"):
            return EXIT_FAIL
        if self.status == "unknown":
            return EXIT_UNKNOWN
        return EXIT_OK

    def to_json(self) -> dict:
        out: dict[str, Any] = {"command": self.command, "args": list(self.args), "status": self.status}
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        if self.issues:
            out["issues"] = self.issues
        if self.seconds is not None:
            out["seconds"] = round(self.seconds, 6)
        return out


def overall_exit(results: list[CommandResult]) -> int:
    codes = {r.exit_code for r in results}
    if EXIT_FAIL in codes:
        return EXIT_FAIL
    if EXIT_UNKNOWN in codes:
        return EXIT_UNKNOWN
    return EXIT_OK


def _plain(v):
    """Details may hold ints, strings, fractions of the session field: make them JSON."""
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return str(v)


def _from_verdict(cmd, args, v: SolveVerdict, cfg: SessionConfig, witness=None) -> CommandResult:
    details = _plain(dict(v.details))
    if v.is_unknown:
        details.setdefault("budget", cfg.budget)
        details.setdefault("seed", cfg.seed)
    return CommandResult(cmd, args, v.status.value, v.reason, witness if v.is_yes else None, details)


def _report_result(cmd, args, issues, **details) -> CommandResult:
    return CommandResult(cmd, args, "fail" if issues else "pass", details=_plain(details),
                         issues=[str(i) for i in issues])


# ----------------------------------------------------------------------------
# commands

def cmd_check(reg: Registry, args: list, cfg: SessionConfig) -> list[CommandResult]:
    names = args or reg.names()
    out = []
    for n in names:
        e = reg[n]
        out.append(CommandResult("check", [n], "pass" if e.valid else "fail",
                                 details={"kind": e.kind}, issues=[str(i) for i in e.report]))
    return out


def cmd_cotensor(reg: Registry, args: list, cfg: SessionConfig):
    m = reg.get(args[0], "argument 1", ("comodule", "bicomodule"))
    n = reg.get(args[1], "argument 2", ("comodule", "bicomodule"))
    K = cotensor(m, n)
    F = reg.field
    return _report_result("cotensor", args, [], dim=K.dim, tensor_dim=K.tensor.dim,
                          basis=matrix_to_strings(F, K.inclusion.transpose()))


def cmd_dual(reg: Registry, args: list, cfg: SessionConfig):
    c = reg.get(args[0], "argument 1", ("coring",))
    dims = {v: ConvolutionAlgebra(c, v).dim for v in VARIANTS}
    issues = list(check_unit_antimorphisms(c))
    iso = end_ring_iso(c)
    issues += iso.issues
    conv = ConvolutionAlgebra(c, "right")
    unit = conv.coords(c.counit)
    return _report_result("dual", args, issues, dims=dims,
                          right_unit=vector_to_strings(reg.field, unit or {}, conv.dim))


def cmd_cointegral(reg: Registry, args: list, cfg: SessionConfig):
    c = reg.get(args[0], "argument 1", ("coring",))
    v = find_cointegral(c)
    w = None
    if v.is_yes:
        w = {"delta": matrix_to_strings(reg.field, v.witness["delta"])}
    return _from_verdict("cointegral", args, v, cfg, w)


def cmd_cosplit(reg: Registry, args: list, cfg: SessionConfig):
    c = reg.get(args[0], "argument 1", ("coring",))
    v = find_cosplit(c)
    w = None
    if v.is_yes:
        w = {"element": vector_to_strings(reg.field, v.witness["element"], c.tensor2.dim)}
    return _from_verdict("cosplit", args, v, cfg, w)


def cmd_frobenius(reg: Registry, args: list, cfg: SessionConfig):
    c = reg.get(args[0], "argument 1", ("coring",))
    v = check_frobenius_coring(c, cfg.budget, seed=cfg.seed, enum_cap=cfg.enum_cap)
    w = None
    if v.is_yes:
        theta = v.witness["theta"]
        eta, pi = frobenius_certificate(c, theta, v.witness["setup"])
        bad = verify_frobenius_data(c, eta, pi)
        if bad:
            raise ArithmeticError("Frobenius witness failed re-verification: %s" % bad[0])
        F = reg.field
        w = {"theta": matrix_to_strings(F, theta), "eta": matrix_to_strings(F, eta), "pi": matrix_to_strings(F, pi)}
    return _from_verdict("frobenius", args, v, cfg, w)


def cmd_entwine(reg: Registry, args: list, cfg: SessionConfig):
    e = reg.get(args[0], "argument 1", ("entwining",))
    return _report_result("entwine", args, check_entwining(e))


def cmd_takeuchi(reg: Registry, args: list, cfg: SessionConfig):
    e = reg.get(args[0], "argument 1", ("entwining",))
    es = check_entwining(e)
    cor = check_coring(assemble_takeuchi(e))
    issues = ["entwining: %s" % i for i in es] + ["coring: %s" % i for i in cor]
    return _report_result("takeuchi", args, issues, entwining_valid=not es, coring_valid=not cor,
                          dim=e.A.dim * e.C.dim)


def cmd_graded_bridge(reg: Registry, args: list, cfg: SessionConfig):
    A = reg.get(args[0], "argument 1", ("algebra",))
    X = reg.get(args[1], "argument 2", ("gset",))
    issues = []
    c = build_graded_coring(A, X)
    issues += check_coring(c)
    t = graded_takeuchi(A, X)
    same = (c.comult == t.comult and c.counit == t.counit
            and c.carrier.left_action == t.carrier.left_action and c.carrier.right_action == t.carrier.right_action)
    if not same:
        issues.append("graded coring differs from the Doi-Koppinen Takeuchi coring")
    try:
        graded_cointegral(A, X, c)
    except ArithmeticError as e:
        issues.append(str(e))
    # oracle check on the sum of all suspensions on both sides
    M = graded_sum([suspension(A, X, x, "right") for x in range(X.size)])
    N = graded_sum([suspension(A, X, x, "left") for x in range(X.size)])
    cmp = graded_cotensor_oracle(M, N, c)
    if not cmp.equal:
        issues.append("cotensor differs from the degree-matched span")
    return _report_result("graded-bridge", args, issues, coring_dim=c.dim, takeuchi_agrees=same,
                          cotensor_dim=cmp.cotensor.dim, oracle_dim=cmp.oracle.dim)


def cmd_inner(reg: Registry, args: list, cfg: SessionConfig):
    f = reg.get(args[0], "argument 1", ("automorphism",))
    if len(args) > 1:
        c = reg.get(args[1], "argument 2", ("coring",))
        if c is not f.coring:
            raise InputError("argument 2", "%r is not the coring of %r" % (args[1], args[0]))
    v = is_inner(f, cfg.budget, seed=cfg.seed, enum_cap=cfg.enum_cap)
    w = None
    if v.is_yes:
        F = reg.field
        conv = v.witness["conv"]
        w = {"p": matrix_to_strings(F, v.witness["p"]),
             "coords": vector_to_strings(F, v.witness["coords"], conv.dim),
             "inverse": vector_to_strings(F, v.witness["inverse"], conv.dim)}
    return _from_verdict("inner", args, v, cfg, w)


def cmd_context_verify(reg: Registry, args: list, cfg: SessionConfig):
    ctx = reg.get(args[0], "argument 1", ("context",))
    return _report_result("context-verify", args, verify_context(ctx))


def cmd_comatrix(reg: Registry, args: list, cfg: SessionConfig):
    ctx = reg.get(args[0], "argument 1", ("context",))
    bad = verify_context(ctx)
    if bad:
        return _report_result("comatrix", args, ["context: %s" % i for i in bad])
    cor = build_generalized_comatrix(ctx, verify=False)
    issues = list(check_coring(cor))
    details: dict = {"dim": cor.dim, "base_dim": cor.algebra.dim}
    if getattr(ctx, "kind", None) == "comatrix":
        m = comatrix_comparison(ctx, cor)
        iso = m.phi.is_invertible()
        issues += ["comparison: %s" % i for i in check_coring_morphism(m)]
        if not iso:
            issues.append("comparison with the comatrix coring is not bijective")
        details["comparison_bijective"] = iso
    details["counit"] = matrix_to_strings(reg.field, cor.counit)
    return _report_result("comatrix", args, issues, **details)


COMMANDS: dict[str, tuple[Callable, int, int]] = {
    "check": (cmd_check, 0, 10 ** 6),
    "cotensor": (cmd_cotensor, 2, 2),
    "dual": (cmd_dual, 1, 1),
    "cointegral": (cmd_cointegral, 1, 1),
    "cosplit": (cmd_cosplit, 1, 1),
    "frobenius": (cmd_frobenius, 1, 1),
    "entwine": (cmd_entwine, 1, 1),
    "takeuchi": (cmd_takeuchi, 1, 1),
    "graded-bridge": (cmd_graded_bridge, 2, 2),
    "inner": (cmd_inner, 1, 2),
    "context-verify": (cmd_context_verify, 1, 1),
    "comatrix": (cmd_comatrix, 1, 1),
}


def validate_command(cmd: list, reg: Registry, where: str) -> None:
    if not cmd:
        raise InputError(where, "empty command")
    name, args = cmd[0], cmd[1:]
    if name not in COMMANDS:
        raise InputError(where, "unknown command %r" % name)
    _, lo, hi = COMMANDS[name]
    if not lo <= len(args) <= hi:
        raise InputError(where, "%s takes %s argument(s), got %d" % (name, lo if lo == hi else "%d-%d" % (lo, hi), len(args)))
    for i, a in enumerate(args):
        if a not in reg:
            raise InputError("%s[%d]" % (where, i + 1), "unknown structure %r" % a)


def run_command(cmd: list, reg: Registry, cfg: SessionConfig) -> list[CommandResult]:
    validate_command(cmd, reg, "command")
    fn = COMMANDS[cmd[0]][0]
    t0 = time.perf_counter()
    res = fn(reg, list(cmd[1:]), cfg)
    out = res if isinstance(res, list) else [res]
    if cfg.timing:
        dt = time.perf_counter() - t0
        for r in out:
            r.seconds = dt / len(out)
    return out


def run_all(reg: Registry, cfg: SessionConfig, commands: list | None = None) -> list[CommandResult]:
    cmds = reg.commands if commands is None else commands
    for i, c in enumerate(cmds):
        validate_command(c, reg, "$.commands[%d]" % i)
    results: list[CommandResult] = []
    for c in cmds:
        results += run_command(c, reg, cfg)
    return results


# ----------------------------------------------------------------------------
# reports

def emit_report(results: list[CommandResult], fmt: str = "text", cfg: SessionConfig | None = None) -> bytes:
    code = overall_exit(results)
    if fmt == "machine":
        doc = {"schema_version": REPORT_SCHEMA_VERSION,
               "config": (cfg or SessionConfig()).to_json(),
               "results": [r.to_json() for r in results],
               "exit_code": code}
        return (json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError("unknown format %r" % fmt)
    if not results:
        return b""
    lines = []
    for r in results:
        head = "%s %s: %s" % (r.command, " ".join(r.args), r.status.upper())
        if r.reason:
            head += " (%s)" % r.reason
        lines.append(head)
        for k in sorted(r.details):
            v = r.details[k]
            if isinstance(v, list) and v and isinstance(v[0], list):
                lines.append("  %s:" % k)
                lines += _table(v)
            else:
                lines.append("  %s: %s" % (k, json.dumps(v, sort_keys=True, ensure_ascii=False)))
        for k in sorted(r.witness or {}):
            v = r.witness[k]
            lines.append("  witness %s:" % k)
            lines += _table(v) if v and isinstance(v[0], list) else ["    " + "  ".join(v)]
        for i in r.issues:
            lines.append("  ! " + i)
        if r.seconds is not None:
            lines.append("  time: %.6fs" % r.seconds)
    lines.append("exit %d" % code)
    return ("\n".join(lines) + "\n").encode("utf-8")


def _table(rows: list) -> list[str]:
    if not rows or not rows[0]:
        return ["    (empty)"]
    w = max(len(x) for r in rows for x in r)
    return ["    " + " ".join(x.rjust(w) for x in r) for r in rows]


# ----------------------------------------------------------------------------
# entry point

class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; usage errors here are exit 3."""

    def error(self, message):
        raise InputError("arguments", message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="corings", description="Exact computations with corings over Q or F_p.")
    p.add_argument("--input", help="structure document (JSON); '-' reads stdin")
    p.add_argument("--field", help="q or fp:<p>; overrides the document")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP)
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--timing", action="store_true", help="include wall-clock time per command")
    p.add_argument("--canonical", action="store_true", help="print the canonical form of the document and exit")
    p.add_argument("command", nargs="*", help="command and arguments; default: the document's command list")
    return p


def main(argv: list[str] | None = None) -> int:
    p = build_parser()
    try:
        ns = p.parse_args(argv)
        F = field_from_name(ns.field) if ns.field else None
        cfg = SessionConfig(F or QQ, ns.seed, ns.budget, ns.enum_cap, ns.timing)
        if ns.input is None:
            reg = Registry(cfg.field)
        else:
            reg = parse_input(sys.stdin if ns.input == "-" else ns.input, F)
            cfg.field = reg.field
        if ns.canonical:
            sys.stdout.write(serialize(reg))
            return EXIT_OK
    except (InputError, ValueError, OSError) as e:
        print("corings: error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    try:
        results = run_all(reg, cfg, [ns.command] if ns.command else None)
    except InputError as e:
        print("corings: error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    out = emit_report(results, ns.format, cfg)
    sys.stdout.buffer.write(out)
    sys.stdout.flush()
    return overall_exit(results)


if __name__ == "__main__":
    sys.exit(main())
