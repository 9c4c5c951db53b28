"""Command-line interface.

Exit codes for ``order``: 0 the relation holds, 1 it fails, 2 inapplicable.
Other commands exit 0 on success and 1 on a negative finding (no group
inverse, counterexample found, map not decomposable, failed property).
Every error (unreadable file, shape mismatch, unknown kind, bad flags)
exits with 3 and a message on stderr naming the offending input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import io
from .geninv import group_inverse, inner_inverse, penrose_residuals, pinv
from .matcore import Tol
from .orders import OrderKind, hasse, leq
from .preservers import decompose_preserver, preserves_diamond
from .props import SUITES, format_table, run_suites

EXIT_HOLDS, EXIT_FAILS, EXIT_INAPPLICABLE, EXIT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_seed() -> int:
    raw = os.environ.get("DIAMOND_LAB_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"DIAMOND_LAB_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol-abs", type=float, default=1e-9)
    common.add_argument("--tol-rel", type=float, default=1e-9)
    common.add_argument("--rank-rel", type=float, default=1e-12)
    common.add_argument("--seed", type=int, default=None,
                        help="default: $DIAMOND_LAB_SEED or 0")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = _Parser(prog="diamond-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("pinv", parents=[common], help="Moore-Penrose inverse")
    s.add_argument("matrix")
    s.add_argument("-o", "--output")

    s = sub.add_parser("ginv", parents=[common], help="group or inner inverse")
    s.add_argument("matrix")
    s.add_argument("--kind", default="group", help="group | inner")
    s.add_argument("--v", help="parameter matrix for the inner inverse (default 0)")
    s.add_argument("-o", "--output")

    s = sub.add_parser("order", parents=[common], help="decide a <= b")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--kind", default="diamond")

    s = sub.add_parser("hasse", parents=[common], help="Hasse diagram as DOT")
    s.add_argument("inputs", nargs="+", help="a directory of .mat files or the files")
    s.add_argument("--kind", default="diamond")
    s.add_argument("-o", "--output")

    s = sub.add_parser("preserver-check", parents=[common], help="sampled preservation test")
    s.add_argument("map")
    s.add_argument("--pairs", type=int, default=500)
    s.add_argument("--forward-only", action="store_true")

    s = sub.add_parser("preserver-decompose", parents=[common], help="canonical form of a preserver")
    s.add_argument("map")

    s = sub.add_parser("props", parents=[common], help="run the property suites")
    s.add_argument("--suite", default="all", help=f"all or comma list of {', '.join(SUITES)}")
    s.add_argument("--n", default="2,3,4", help="comma list of sizes")
    s.add_argument("--pairs", type=int, default=1000)
    return p


def _tol(args) -> Tol:
    return Tol(args.tol_abs, args.tol_rel, args.rank_rel)


def _kind(raw) -> OrderKind:
    try:
        return OrderKind(raw.replace("-", "_"))
    except ValueError:
        kinds = ", ".join(k.value for k in OrderKind)
        raise UsageError(f"unknown order kind {raw!r}; expected one of {kinds}") from None


def _emit(out, lines, doc, as_json):
    if as_json:
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def _matrix_line(name, m):
    return f"{name}: {json.dumps(io.matrix_to_doc(m))}"


def cmd_pinv(args, out, err):
    a = io.read_matrix(args.matrix)
    g = pinv(a, _tol(args))
    if args.output:
        io.write_matrix(args.output, g)
    lines, doc = [_matrix_line("pinv", g)], {"pinv": io.matrix_to_doc(g)}
    if not hasattr(a, "blocks"):
        r = penrose_residuals(a, g)
        lines += [f"residual.r{k + 1}: {v:.6e}" for k, v in enumerate(r)]
        doc["residuals"] = list(r)
    _emit(out, lines, doc, args.json)
    return 0


def cmd_ginv(args, out, err):
    a = io.read_matrix(args.matrix)
    tol = _tol(args)
    if args.kind == "group":
        g = group_inverse(a, tol)
        if g is None:
            _emit(out, ["group_inverse: none"], {"group_inverse": None}, args.json)
            return EXIT_FAILS
        name = "group_inverse"
    elif args.kind == "inner":
        v = io.read_matrix(args.v) if args.v else np.zeros(a.shape[::-1])
        g = inner_inverse(a, v, tol)
        name = "inner_inverse"
    else:
        raise UsageError(f"unknown inverse kind {args.kind!r}; expected group or inner")
    if args.output:
        io.write_matrix(args.output, g)
    _emit(out, [_matrix_line(name, g)], {name: io.matrix_to_doc(g)}, args.json)
    return 0


def cmd_order(args, out, err):
    kind = _kind(args.kind)
    a, b = io.read_matrix(args.a), io.read_matrix(args.b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {args.a} is {a.shape[0]}x{a.shape[1]}, "
                         f"{args.b} is {b.shape[0]}x{b.shape[1]}")
    rep = leq(kind, a, b, _tol(args))
    lines = rep.lines()
    wit = rep.witnesses or {}
    lines += [_matrix_line(f"witness.{k}", v) for k, v in sorted(wit.items())]
    doc = {
        "kind": kind.value,
        "applicable": rep.applicable,
        "holds": rep.holds,
        "residuals": rep.residuals,
        "thresholds": rep.thresholds,
        "witnesses": {k: io.matrix_to_doc(v) for k, v in wit.items()},
        "note": rep.note,
    }
    _emit(out, lines, doc, args.json)
    if not rep.applicable:
        return EXIT_INAPPLICABLE
    return EXIT_HOLDS if rep.holds else EXIT_FAILS


def _collect_inputs(inputs):
    paths = []
    for raw in inputs:
        p = Path(raw)
        if p.is_dir():
            paths += sorted(p.glob("*.mat"))
        elif p.exists():
            paths.append(p)
        else:
            raise FileNotFoundError(f"{raw}: no such file or directory")
    if not paths:
        raise ValueError(f"{', '.join(inputs)}: no .mat files found")
    return paths


def cmd_hasse(args, out, err):
    kind = _kind(args.kind)
    paths = _collect_inputs(args.inputs)
    elems = [io.read_matrix(p) for p in paths]
    names = [p.stem for p in paths]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        diagram = hasse(elems, kind, _tol(args))
    for w in caught:
        err.write(f"warning: {w.message}\n")
    dot = diagram.to_dot(names)
    if args.output:
        Path(args.output).write_text(dot, encoding="utf-8")
    if args.json:
        out.write(json.dumps({"edges": diagram.edges, "classes": diagram.classes,
                              "excluded": diagram.excluded, "names": names}) + "\n")
    elif not args.output:
        out.write(dot)
    else:
        out.write("\n".join(f"{names[i]} -> {names[j]}" for i, j in diagram.edges) + "\n")
    return 0


def cmd_preserver_check(args, out, err):
    T = io.read_map(args.map)
    seed = args.seed if args.seed is not None else _default_seed()
    v = preserves_diamond(T, pairs=args.pairs, seed=seed, tol=_tol(args),
                          both_directions=not args.forward_only)
    lines = [f"forward_ok: {v.forward_ok}", f"backward_ok: {v.backward_ok}",
             f"sample_count: {v.sample_count}"]
    doc = {"forward_ok": v.forward_ok, "backward_ok": v.backward_ok,
           "sample_count": v.sample_count, "counterexample": None}
    if v.counterexample is not None:
        a, b = v.counterexample
        lines += [f"direction: {v.direction}", _matrix_line("counterexample.a", a),
                  _matrix_line("counterexample.b", b)]
        doc["counterexample"] = {"direction": v.direction, "a": io.matrix_to_doc(a),
                                 "b": io.matrix_to_doc(b)}
    _emit(out, lines, doc, args.json)
    return 0 if v else EXIT_FAILS


def cmd_preserver_decompose(args, out, err):
    T = io.read_map(args.map)
    rep = decompose_preserver(T, _tol(args))
    lines = rep.lines()
    doc = {"flavor": rep.flavor, "lambda": rep.lam, "scale": rep.scale,
           "residuals": rep.residuals, "h": io.matrix_to_doc(rep.h)}
    lines.append(_matrix_line("h", rep.h))
    if rep.flavor != "neither":
        for name in ("unitary_part", "U", "V"):
            m = getattr(rep, name)
            lines.append(_matrix_line(name, m))
            doc[name] = io.matrix_to_doc(m)
    _emit(out, lines, doc, args.json)
    return 0 if rep.flavor != "neither" else EXIT_FAILS


def cmd_props(args, out, err):
    try:
        ns = [int(x) for x in args.n.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--n must be a comma list of integers, got {args.n!r}") from None
    if not ns or min(ns) < 1:
        raise UsageError("--n needs at least one positive size")
    names = "all" if args.suite == "all" else [s.strip() for s in args.suite.split(",")]
    for name in ([] if names == "all" else names):
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    seed = args.seed if args.seed is not None else _default_seed()
    results = run_suites(names, ns, args.pairs, seed, _tol(args))
    if args.json:
        out.write(json.dumps([{"suite": r.suite, "check": r.name, "trials": r.trials,
                               "violations": r.violations, "passed": r.passed,
                               "counterexample": r.counterexample, "detail": r.detail}
                              for r in results]) + "\n")
    else:
        out.write(f"seed: {seed}\nsizes: {','.join(map(str, ns))}\npairs: {args.pairs}\n")
        out.write(format_table(results))
    return 0 if all(r.passed for r in results) else EXIT_FAILS


COMMANDS = {
    "pinv": cmd_pinv,
    "ginv": cmd_ginv,
    "order": cmd_order,
    "hasse": cmd_hasse,
    "preserver-check": cmd_preserver_check,
    "preserver-decompose": cmd_preserver_decompose,
    "props": cmd_props,
}


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out, err)
    except UsageError as exc:
        err.write(f"diamond-lab: error: {exc}\n")
    except (io.FormatError, ValueError, OSError, KeyError) as exc:
        err.write(f"diamond-lab: error: {exc}\n")
    return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
