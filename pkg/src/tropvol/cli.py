"""Command-line entry point ``tropvol``.

Every subcommand reads one input (a file path, ``-`` for stdin, or inline
text), runs one library operation and emits a report. Exit codes: 0 on
success, 1 on a domain error, 2 on malformed input.
"""
import argparse
import hashlib
import json
import os
import sys
import time

from . import glnz, lattice
from .errors import MalformedInput, TropvolError
from .gammageo import chi_prime, normalize, parse_formula
from .lattice import LatticeMatrix, PolarizationType
from .motclass import MotClass
from .valfield import format_fraction
from .volume import TorusFamily, motivic_volume_direct, motivic_volume_fubini, verify_vanishing

__all__ = ["main", "run", "ERROR_NAMES"]

# Stable, machine-readable names for everything that can end a run early.
ERROR_NAMES = (
    "AsymmetricPairing",
    "FiberClassMismatch",
    "MalformedInput",
    "NonInjectivePolarization",
    "NonPolyhedralFamily",
    "NonStabilized",
    "NotPositiveDefinite",
    "NotPositiveDefiniteAt",
    "SingularMatrix",
    "SymmetryViolation",
    "UnboundedUnverifiable",
    "VanishingFailed",
)


class VanishingFailed(TropvolError):
    name = "VanishingFailed"


# --- input ---------------------------------------------------------------------------

def _read_input(source):
    if source == "-":
        return sys.stdin.read()
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    if source.lstrip().startswith(("{", "[")) or "\n" in source or any(
            op in source for op in ("<", ">", "=")):
        return source
    raise MalformedInput("no such file: %s" % source)


def _load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput("invalid JSON: %s" % exc.msg, exc.lineno, exc.colno)


def _pol_of(obj, g=None):
    if obj is None:
        if g is None:
            raise MalformedInput("missing polarization type")
        return PolarizationType.identity(g)
    return PolarizationType.from_json(obj)


def _lattice_and_pol(obj):
    if not isinstance(obj, dict):
        raise MalformedInput("expected an object with 'lattice' (and optional 'pol')")
    lat = obj.get("lattice", obj if "entries" in obj else None)
    if lat is None:
        raise MalformedInput("missing 'lattice'")
    E = LatticeMatrix.from_json(lat)
    pol = _pol_of(obj.get("pol"), E.g)
    if pol.g != E.g:
        raise MalformedInput("polarization type is %dx%d but lattice is %dx%d"
                             % (pol.g, pol.g, E.g, E.g))
    return E, pol


def _int_matrix(obj):
    rows = obj.get("entries") if isinstance(obj, dict) else obj
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise MalformedInput("expected a nonempty list of integer rows")
    width = len(rows[0])
    for r in rows:
        if len(r) != width:
            raise MalformedInput("rows have different lengths")
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int):
                raise MalformedInput("entry %r is not an integer" % (x,))
    return rows


def _fr_rows(rows):
    return [[format_fraction(x) for x in r] for r in rows]


# --- subcommands ---------------------------------------------------------------------------
# Each returns (results dict, text lines).

def cmd_chi(text, args):
    formula, n = parse_formula(text, args.dim)
    S = normalize(formula, n)
    value = chi_prime(S)
    return {"chi": value, "n": n, "cells": len(S.cells)}, [str(value)]


def cmd_rank(text, args):
    pol = _pol_of(_load_json(text))
    rank = lattice.polarization_rank(pol)
    hilbert = lattice.hilbert_polynomial(pol.g, rank, args.hilbert_variant)
    res = {"rank": rank, "g": pol.g, "hilbert_variant": args.hilbert_variant,
           "hilbert_polynomial": list(hilbert)}
    return res, [str(rank)]


def cmd_smith(text, args):
    rows = _int_matrix(_load_json(text))
    sd = lattice.smith(rows)
    res = {"U": [list(r) for r in sd.U], "D": [list(r) for r in sd.D],
           "V": [list(r) for r in sd.V], "diagonal": list(sd.diagonal)}
    lines = ["diagonal: %s" % " ".join(str(d) for d in sd.diagonal)]
    for name in ("U", "D", "V"):
        lines.append("%s: %s" % (name, json.dumps(res[name])))
    return res, lines


def cmd_reduce(text, args):
    E, pol = _lattice_and_pol(_load_json(text))
    red = glnz.reduce(E, pol)
    omega = red.omega.rows()
    if args.transpose_action:
        omega = [list(r) for r in zip(*omega)]
    steps = [list(s) for s in red.steps]
    steps = [[x if not isinstance(x, tuple) else list(x) for x in s] for s in steps]
    res = {
        "E_red": red.lattice.to_json(),
        "omega": omega,
        "convention": "transpose" if args.transpose_action else "rows",
        "pol_red": red.pol.to_json()["entries"],
        "Q_red": _fr_rows(red.form()),
        "steps": steps,
    }
    lines = ["omega: %s" % json.dumps(omega),
             "Q_red: %s" % json.dumps(res["Q_red"]),
             "steps: %d" % len(steps)]
    return res, lines


def cmd_check_polarization(text, args):
    E, pol = _lattice_and_pol(_load_json(text))
    sym = lattice.symmetry_check(E, pol)
    ok = lattice.is_polarization(E, pol)
    res = {"symmetric": sym, "is_polarization": ok,
           "form": _fr_rows(glnz.form_of(E, pol))}
    if ok:
        res["in_fundamental_domain"] = glnz.in_fundamental_domain(
            lattice.tropicalize_matrix(E), pol)
    return res, ["true" if ok else "false"]


def cmd_theta_reps(text, args):
    pol = _pol_of(_load_json(text))
    m = args.m
    if m is None:
        m = 6 if args.hilbert_variant == "rigidified" else 1
    if m < 1:
        raise MalformedInput("--m must be a positive integer")
    reps = lattice.theta_coset_reps(pol, m)
    rank = lattice.polarization_rank(pol)
    res = {"m": m, "count": len(reps), "expected": m ** pol.g * rank,
           "reps": [list(r) for r in reps]}
    return res, [str(len(reps))] + [" ".join(str(x) for x in r) for r in reps]


def _family(text):
    return TorusFamily.from_json(_load_json(text))


def cmd_volume(text, args):
    f = _family(text)
    direct = motivic_volume_direct(f)
    fub, pieces = motivic_volume_fubini(f)
    res = {"direct": direct.to_json(), "fubini": fub.to_json(),
           "direct_str": str(direct), "fubini_str": str(fub),
           "agree": direct == fub, "pieces": pieces}
    return res, ["direct: %s" % direct, "fubini: %s" % fub]


def cmd_verify(text, args):
    f = _family(text)
    rep = verify_vanishing(f)
    lines = ["valid: %s" % str(rep["validation"].get("valid")).lower()]
    if rep["direct"] is not None:
        lines.append("direct: %s" % _poly_str(rep["direct"]))
    if rep["fubini"] is not None:
        lines.append("fubini: %s" % _poly_str(rep["fubini"]))
    lines.append("agree: %s" % str(rep["agree"]).lower())
    lines.append("vanishes: %s" % str(rep["vanishes"]).lower())
    return rep, lines


def _poly_str(poly):
    return str(MotClass(poly))


COMMANDS = {
    "chi": (cmd_chi, "modified Euler characteristic of a constraint formula"),
    "rank": (cmd_rank, "rank |det Lam| of a polarization type"),
    "smith": (cmd_smith, "Smith normal form U A V = D of an integer matrix"),
    "reduce": (cmd_reduce, "reduce a polarized lattice matrix to the fundamental domain"),
    "check-polarization": (cmd_check_polarization, "test symmetry and positivity of Lam Ebar"),
    "theta-reps": (cmd_theta_reps, "coset representatives indexing theta functions"),
    "volume": (cmd_volume, "motivic volume of a torus family, direct and Fubini"),
    "verify": (cmd_verify, "check that the volume of a torus family vanishes"),
}


def _common(prefix):
    # the same flags are accepted before and after the subcommand; they land in
    # separate attributes so the subparser cannot overwrite the global choice
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest=prefix + "format", choices=("json", "text"),
                        default=None, help="output format (default: text)")
    common.add_argument("--timing", dest=prefix + "timing", action="store_true",
                        default=None, help="include wall-clock timing in the report")
    return common


def _parser():
    p = argparse.ArgumentParser(prog="tropvol", parents=[_common("global_")],
                                description="Exact tropical computations for polarized tori.")
    common = _common("")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        sp.add_argument("input", help="input file, '-' for stdin, or inline text")
        if name == "chi":
            sp.add_argument("--dim", type=int, default=None, help="ambient dimension")
        if name in ("rank", "theta-reps"):
            sp.add_argument("--hilbert-variant", choices=("paper", "rigidified"),
                            default="paper",
                            help="leading coefficient d (paper) or 6^g d (rigidified)")
        if name == "theta-reps":
            sp.add_argument("--m", type=int, default=None, help="level multiplier")
        if name == "reduce":
            sp.add_argument("--transpose-action", action="store_true",
                            help="report Omega in the transposed action convention")
    return p


def _error(exc):
    out = {"name": getattr(exc, "name", type(exc).__name__), "message": str(exc)}
    if isinstance(exc, MalformedInput):
        out["line"] = exc.line
        out["col"] = exc.col
    return out


def run(argv):
    """Execute one command. Returns ``(exit code, report dict, text lines)``."""
    parser = _parser()
    args = parser.parse_args(argv)
    args.format = args.format or args.global_format or "text"
    args.timing = bool(args.timing or args.global_timing)
    func, _ = COMMANDS[args.command]
    report = {"command": args.command, "argv": list(argv), "input_sha256": None,
              "results": None, "errors": []}
    lines = []
    code = 0
    start = time.perf_counter()
    try:
        text = _read_input(args.input)
        report["input_sha256"] = hashlib.sha256(text.encode("utf-8")).hexdigest()
        results, lines = func(text, args)
        report["results"] = results
        if args.command == "verify":
            report["errors"] = list(results.get("errors", []))
            if not (results["vanishes"] and results["agree"]):
                if not report["errors"]:
                    report["errors"].append(_error(VanishingFailed(
                        "volumes do not both vanish: direct=%s fubini=%s"
                        % (results["direct"], results["fubini"]))))
                code = 1
    except MalformedInput as exc:
        report["errors"].append(_error(exc))
        code = 2
    except TropvolError as exc:
        report["errors"].append(_error(exc))
        code = 1
    except ValueError as exc:
        report["errors"].append(_error(MalformedInput(str(exc))))
        code = 2
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    report["exit_code"] = code
    report["format"] = args.format
    return code, report, lines


def render(report, lines):
    """Return ``(stdout text, stderr text)``."""
    if report["format"] == "json":
        body = dict(report)
        del body["format"]
        return json.dumps(body, sort_keys=True, indent=2) + "\n", ""
    out = list(lines)
    if "timing" in report:
        out.append("time: %.6fs" % report["timing"]["seconds"])
    err = []
    for e in report["errors"]:
        err.append("error: %s: %s" % (e["name"], e["message"]))
    return ("\n".join(out) + "\n" if out else ""), ("\n".join(err) + "\n" if err else "")


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    code, report, lines = run(list(argv))
    out, err = render(report, lines)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
