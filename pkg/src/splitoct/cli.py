"""Command-line interface: ``splitoct <command> ...``.

Exit codes: 0 success, 1 failed check or runtime error, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings

import numpy as np

from . import automorphisms as au
from . import generators as gen
from . import kinematics as kin
from . import rotor as ro
from . import zerodiv as zd
from .algebra import (
    TAU_REL,
    TAU_ZERO,
    SplitOctonion,
    classify,
    from_json,
    inverse,
    mul,
    polar,
    to_json,
)
from .errors import SplitOctError
from .verify import DEFAULT_SEED, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# Batch CSV headers: input columns, then appended output columns.
BATCH_HEADERS = {
    "vadd": (("v1", "v2", "v3", "theta1", "lamdot2", "lamdot3"), ("v1p", "v2p", "v3p")),
    "aberration": (("gamma", "V", "lamdot", "plane"), ("dgamma", "valid")),
    "lagrangian": (("m", "v1", "v2", "v3", "p1", "p2", "p3", "pdot1", "pdot2", "pdot3"),
                   ("L", "radicand", "status")),
    "maxforce": (("m",), ("force",)),
    "eikonal": (("g1", "g2", "g3"), ("residual",)),
}


class UsageError(Exception):
    """Bad command-line input; exits with code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_seed() -> int:
    env = os.environ.get("SPLITOCT_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"SPLITOCT_SEED must be an integer, got {env!r}") from None


# -- parsing helpers ----------------------------------------------------------

def _parse_octonion(text: str, name: str = "octonion") -> SplitOctonion:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{name}: invalid JSON ({e.msg})") from None
    try:
        return from_json(obj)
    except ValueError as e:
        raise UsageError(f"{name}: {e}") from None


def _parse_floats(text: str, name: str, count: int | None = None) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{name}: expected comma-separated numbers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"{name}: expected {count} values, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{name}: values must be finite")
    return vals


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not serializable: {type(o).__name__}")


def _emit(obj, args) -> None:
    if getattr(args, "pretty", False):
        text = json.dumps(obj, indent=2, default=_json_default)
    else:
        text = json.dumps(obj, separators=(",", ":"), default=_json_default)
    print(text)


def _consts(args) -> kin.PhysicalConstants:
    try:
        return kin.PhysicalConstants(args.c, args.hbar, args.G)
    except ValueError as e:
        raise UsageError(str(e)) from None


# -- commands -------------------------------------------------------------------

def cmd_mul(args):
    a, b = _parse_octonion(args.a, "a"), _parse_octonion(args.b, "b")
    _emit(to_json(mul(a, b)), args)
    return EXIT_OK


def cmd_conj(args):
    _emit(to_json(_parse_octonion(args.s, "s").conj()), args)
    return EXIT_OK


def cmd_norm(args):
    s = _parse_octonion(args.s, "s")
    _emit({"norm2": s.norm2(), "vector_norm2": s.vector_norm2()}, args)
    return EXIT_OK


def cmd_inverse(args):
    _emit(to_json(inverse(_parse_octonion(args.s, "s"), args.tol_zero)), args)
    return EXIT_OK


def cmd_classify(args):
    n, v = classify(_parse_octonion(args.s, "s"), args.tol_zero)
    _emit({"norm": n.value, "vector": v.value}, args)
    return EXIT_OK


def cmd_polar(args):
    p = polar(_parse_octonion(args.s, "s"), args.tol_zero)
    _emit({"N": p.N, "eps": list(p.eps), "theta": p.theta, "kind": p.kind.value, "sign": p.sign}, args)
    return EXIT_OK


def _axis(text: str) -> str:
    if text not in ro.AXES:
        raise UsageError(f"axis: expected one of {', '.join(ro.AXES)}, got {text!r}")
    return text


def cmd_rotate(args):
    s = _parse_octonion(args.s, "s")
    r = ro.Rotor(_axis(args.axis), args.angle)
    out = ro.left_rotate(r, s) if args.side == "left" else ro.right_rotate(s, r)
    _emit(to_json(out), args)
    return EXIT_OK


def cmd_decompose(args):
    s = _parse_octonion(args.s, "s")
    _emit(ro.decompose(s, _axis(args.axis)).to_json(), args)
    return EXIT_OK


_FAMILY = {"rot": "rotation", "boost": "boost", "diag": "diagonal"}


def cmd_autom(args):
    angles = tuple(_parse_floats(args.angles, "angles", 2))
    family = _FAMILY[args.family]
    if family == "diagonal":
        if args.axis is not None:
            raise UsageError("axis: the diag family takes no axis")
        axis = None
    else:
        if args.axis is None:
            raise UsageError("axis: required for rot and boost")
        axis = args.axis
    m = au.build(au.AutomorphismParams(family, axis, angles))
    try:
        target = json.loads(args.target)
    except json.JSONDecodeError as e:
        raise UsageError(f"target: invalid JSON ({e.msg})") from None
    if isinstance(target, list):
        if len(target) != 7:
            raise UsageError("target: a coordinate vector needs 7 entries (lam1..3, ct, x1..3)")
        for i, v in enumerate(target):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise UsageError(f"target[{i}] must be a number")
        _emit(m.apply_coords(target).tolist(), args)
    else:
        try:
            s = from_json(target)
        except ValueError as e:
            raise UsageError(f"target: {e}") from None
        _emit(to_json(m(s)), args)
    return EXIT_OK


def cmd_generators(args):
    frame = args.frame
    gens = gen.build_generators(frame)
    d = {g.label: g.matrix for g in gens}
    report = gen.closure_report(gens)
    out = {
        "frame": frame,
        "dimension": report.dim,
        "trace_identity_residual": float(np.abs(d["11"] + d["22"] + d["33"]).max()),
        "metric_residuals": [g.metric_residual() for g in gens],
        "closure_ok": report.dim == 14 and not report.missing,
    }
    _emit(out, args)
    return EXIT_OK if out["closure_ok"] else EXIT_FAIL


def cmd_zerodiv(args):
    checks = zd.relation_suite()
    ok = all(c.passed for c in checks)
    _emit({"overall": ok, "passed": sum(c.passed for c in checks), "total": len(checks),
           "checks": [{"id": c.id, "description": c.description, "pass": c.passed}
                      for c in checks]}, args)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args):
    if args.trials < 1:
        raise UsageError("trials: must be at least 1")
    report = run_suite(args.suite, args.seed, args.trials, args.tol_rel)
    _emit(report.to_json(), args)
    return EXIT_OK if report.overall else EXIT_FAIL


# -- kinematics -------------------------------------------------------------------

def _kin_row(verb: str, vals: dict, consts) -> dict:
    """Evaluate one kinematics input row; returns the output columns."""
    if verb == "vadd":
        v = [vals["v1"], vals["v2"], vals["v3"]]
        out = kin.velocity_add(v, vals["theta1"], vals["lamdot2"], vals["lamdot3"], consts,
                               transverse_dilation=not vals.get("printed", False))
        return dict(zip(("v1p", "v2p", "v3p"), out.tolist()))
    if verb == "aberration":
        plane = str(int(vals["plane"]))
        if plane not in ("12", "13"):
            raise UsageError(f"plane: expected 12 or 13, got {vals['plane']!r}")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", kin.AberrationRegimeWarning)
            d = kin.aberration(vals["gamma"], vals["V"], vals["lamdot"], plane, consts)
        return {"dgamma": d, "valid": kin.aberration_valid(vals["V"], consts)}
    if verb == "lagrangian":
        v = [vals["v1"], vals["v2"], vals["v3"]]
        p = [vals["p1"], vals["p2"], vals["p3"]]
        pd = [vals["pdot1"], vals["pdot2"], vals["pdot3"]]
        r = kin.lagrangian_radicand(v, p, pd, consts)
        if r < 0:
            return {"L": None, "radicand": r, "status": "virtual"}
        return {"L": kin.lagrangian(vals["m"], v, p, pd, consts), "radicand": r, "status": "ok"}
    if verb == "maxforce":
        return {"force": kin.max_force(vals["m"], consts), "max_mass": kin.max_mass(consts)}
    if verb == "eikonal":
        return {"residual": kin.eikonal_residual([vals["g1"], vals["g2"], vals["g3"]])}
    raise UsageError(f"unknown kin verb {verb!r}")


def _kin_batch(verb: str, path: str, consts) -> int:
    inputs, outputs = BATCH_HEADERS[verb]
    try:
        fh = sys.stdin if path == "-" else open(path, newline="")
    except OSError as e:
        raise UsageError(f"batch: cannot open {path!r} ({e.strerror})") from None
    with fh:
        reader = csv.DictReader(fh)
        missing = [h for h in inputs if h not in (reader.fieldnames or [])]
        if missing:
            raise UsageError(f"batch: missing column {missing[0]!r}")
        rows = list(reader)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(inputs) + list(outputs))
    status = EXIT_OK
    for lineno, row in enumerate(rows, start=2):
        vals = {}
        for h in inputs:
            try:
                vals[h] = float(row[h])
            except (TypeError, ValueError):
                raise UsageError(f"batch line {lineno}: field {h!r} is not a number") from None
        try:
            res = _kin_row(verb, vals, consts)
            cells = ["" if res[o] is None else res[o] for o in outputs]
        except SplitOctError as e:
            status = EXIT_FAIL
            cells = [f"error: {e}"] + [""] * (len(outputs) - 1)
        writer.writerow([row[h] for h in inputs] + [repr(c) if isinstance(c, float) else c
                                                      for c in cells])
    sys.stdout.write(buf.getvalue())
    return status


def cmd_kin(args):
    consts = _consts(args)
    verb = args.verb
    if args.batch is not None:
        return _kin_batch(verb, args.batch, consts)
    if verb == "vadd":
        v = _parse_floats(args.v, "v", 3)
        vals = {"v1": v[0], "v2": v[1], "v3": v[2], "theta1": args.theta1,
                "lamdot2": args.lamdot2, "lamdot3": args.lamdot3, "printed": args.printed}
    elif verb == "aberration":
        if args.V is None or args.gamma is None or args.plane is None:
            raise UsageError("aberration needs --gamma, --V and --plane")
        vals = {"gamma": args.gamma, "V": args.V, "lamdot": args.lamdot, "plane": args.plane}
    elif verb == "lagrangian":
        v = _parse_floats(args.v, "v", 3)
        p = _parse_floats(args.p, "p", 3)
        pd = _parse_floats(args.pdot, "pdot", 3)
        vals = {"m": args.m, "v1": v[0], "v2": v[1], "v3": v[2], "p1": p[0], "p2": p[1],
                "p3": p[2], "pdot1": pd[0], "pdot2": pd[1], "pdot3": pd[2]}
    elif verb == "maxforce":
        vals = {"m": args.m}
    else:
        g = _parse_floats(args.grad, "grad", 3)
        vals = {"g1": g[0], "g2": g[1], "g3": g[2]}
    if verb == "aberration" and not kin.aberration_valid(args.V, consts):
        print(f"warning: |V|/c >= {kin.ABERRATION_MAX_BETA} is outside the first-order regime",
              file=sys.stderr)
    out = _kin_row(verb, vals, consts)
    _emit(out, args)
    if verb == "lagrangian" and out["status"] == "virtual":
        return EXIT_FAIL
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

def _common(suppress: bool) -> argparse.ArgumentParser:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)  # noqa: E731
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=d(None), help="random seed (env SPLITOCT_SEED)")
    p.add_argument("--trials", type=int, default=d(1000), help="random trials per property")
    p.add_argument("--pretty", action="store_true", default=d(False), help="indented JSON")
    p.add_argument("--tol-zero", type=float, default=d(TAU_ZERO), help="zero-norm threshold")
    p.add_argument("--tol-rel", type=float, default=d(TAU_REL), help="relative tolerance")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="splitoct", description="Split-octonion algebra toolkit.",
                     parents=[_common(False)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = [_common(True)]

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, parents=common)
        p.set_defaults(func=func)
        return p

    p = add("mul", cmd_mul, "product of two octonions")
    p.add_argument("a")
    p.add_argument("b")
    for name, func, help_ in (("conj", cmd_conj, "conjugate"), ("norm", cmd_norm, "norm and vector norm"),
                              ("inverse", cmd_inverse, "multiplicative inverse"),
                              ("classify", cmd_classify, "norm and vector-part class"),
                              ("polar", cmd_polar, "polar form")):
        add(name, func, help_).add_argument("s")

    p = add("rotate", cmd_rotate, "one-sided rotor product")
    p.add_argument("s")
    p.add_argument("--axis", required=True)
    p.add_argument("--angle", type=float, required=True)
    p.add_argument("--side", choices=("left", "right"), default="left")

    p = add("decompose", cmd_decompose, "four-plane decomposition about an axis")
    p.add_argument("s")
    p.add_argument("--axis", required=True)

    p = add("autom", cmd_autom, "apply an automorphism to an octonion or 7-vector")
    p.add_argument("target")
    p.add_argument("--family", choices=tuple(_FAMILY), required=True)
    p.add_argument("--axis", type=int, choices=(1, 2, 3))
    p.add_argument("--angles", required=True, help="two comma-separated angles")

    p = add("generators", cmd_generators, "Lie-algebra report for the 15 operators")
    p.add_argument("--frame", choices=gen.FRAMES, default="cartan")

    add("zerodiv", cmd_zerodiv, "zero-divisor relation suite")

    p = add("verify", cmd_verify, "run seeded property suites")
    p.add_argument("suite", choices=SUITES + ("all",))

    p = add("kin", cmd_kin, "kinematics formulas")
    p.add_argument("verb", choices=tuple(BATCH_HEADERS))
    p.add_argument("--batch", metavar="CSV", help="read input rows from CSV ('-' for stdin)")
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--G", type=float, default=1.0)
    p.add_argument("--v", default="0,0,0")
    p.add_argument("--theta1", type=float, default=0.0)
    p.add_argument("--lamdot2", type=float, default=0.0)
    p.add_argument("--lamdot3", type=float, default=0.0)
    p.add_argument("--printed", action="store_true", help="vadd without the transverse 1/cosh")
    p.add_argument("--gamma", type=float)
    p.add_argument("--V", type=float)
    p.add_argument("--lamdot", type=float, default=0.0)
    p.add_argument("--plane", type=int)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--p", default="1,0,0")
    p.add_argument("--pdot", default="0,0,0")
    p.add_argument("--grad", default="1,0,0")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.seed is None:
            args.seed = _default_seed()
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SplitOctError, ArithmeticError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
