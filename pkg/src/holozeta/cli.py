"""Command-line front end.

Exit codes: 0 success or verified, 1 verification failure (with a
single-line witness record on stdout), 2 input error.  Report lines are
`key: value`; all iteration orders are fixed, so identical inputs give
byte-identical output.
"""
from __future__ import annotations

import argparse
import os
import random
import sys

from .laurent import LaurentPoly, series_det_inverse
from .freegroup import parse_word
from .presentation import (
    TietzeMove,
    parse_presentation,
    presentations_equal,
    tietze_apply,
    InvalidMove,
)
from .wgraph import (
    TransformStep,
    adjacency_matrix,
    euler_product_oracle,
    export_dot,
    parse_graph,
    parse_matrix_literal,
    verify_equivalence,
    zeta_reciprocal,
)
from .knot import Representation, parse_gauss, parse_pd, parse_rep, twisted_alexander, wirtinger_presentation
from . import quandle as qmod


class InputError(ValueError):
    pass


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc))


def _seed() -> int:
    return int(os.environ.get("HOLOZETA_SEED", "20240901"))


def _load_diagram(args):
    if getattr(args, "pd", None):
        return parse_pd(_read(args.pd))
    if getattr(args, "gauss", None):
        return parse_gauss(_read(args.gauss))
    raise InputError("need --pd or --gauss")


def _load_rep(args, presentation):
    if getattr(args, "rep", None):
        return parse_rep(_read(args.rep), presentation.name_to_index())
    return Representation.trivial([g.index for g in presentation.generators])


# -- script file parsing -------------------------------------------------

def parse_tietze_script(text: str):
    """One move per line:
    invert <i> | conjugate <i> <word> | multiply <i> <k> |
    multiply_inv <i> <k> | add_generator <name> <word> |
    remove_generator <name>
    Words are resolved against the presentation at replay time."""
    moves = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 2)
        kind = parts[0]
        if kind == "invert" and len(parts) == 2:
            moves.append(("invert", int(parts[1]), None))
        elif kind == "conjugate" and len(parts) == 3:
            moves.append(("conjugate", int(parts[1]), parts[2]))
        elif kind in ("multiply", "multiply_inv") and len(parts) == 3:
            moves.append((kind, int(parts[1]), int(parts[2])))
        elif kind == "add_generator" and len(parts) == 3:
            moves.append(("add_generator", parts[1], parts[2]))
        elif kind == "remove_generator" and len(parts) == 2:
            moves.append(("remove_generator", parts[1], None))
        else:
            raise InputError("bad script line %r" % raw)
    return moves


def replay_tietze_script(p, moves):
    for kind, a, b in moves:
        if kind == "invert":
            m = TietzeMove("invert", i=a)
        elif kind == "conjugate":
            m = TietzeMove("conjugate", i=a, w=parse_word(b, p.name_to_index()))
        elif kind in ("multiply", "multiply_inv"):
            m = TietzeMove(kind, i=a, k=b)
        elif kind == "add_generator":
            m = TietzeMove("add_generator", name=a, w=parse_word(b, p.name_to_index()))
        else:
            m = TietzeMove("remove_generator", name=a)
        p = tietze_apply(p, m)
    return p


def parse_graph_script(text: str):
    """One transform per line, matrix-graph flavor:
    change_basis <vertex> <matrix> | null_add <id> <src> <tgt> |
    null_remove <id> | merge <src> <tgt> [id] |
    split <id> <newid>=<matrix> ... | eliminate <vertex> |
    insert <vertex> <dim> [<id> <src> <tgt> <matrix> ...] |
    hub_resolve <id> |
    hub_unresolve <id> <src> <tgt> <matrix> <removed>:<out> ... |
    reverse_all"""
    steps = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "change_basis":
                steps.append(
                    TransformStep(
                        "change_basis",
                        vertex=parts[1],
                        matrix=parse_matrix_literal(" ".join(parts[2:])),
                    )
                )
            elif kind == "null_add":
                steps.append(
                    TransformStep("null_add", edge=parts[1], src=parts[2], tgt=parts[3])
                )
            elif kind == "null_remove":
                steps.append(TransformStep("null_remove", edge=parts[1]))
            elif kind == "merge":
                new_ids = (parts[3],) if len(parts) > 3 else None
                steps.append(
                    TransformStep("merge", src=parts[1], tgt=parts[2], new_ids=new_ids)
                )
            elif kind == "split":
                ids, mats = [], []
                for chunk in parts[2:]:
                    name, mat = chunk.split("=", 1)
                    ids.append(name)
                    mats.append(parse_matrix_literal(mat))
                steps.append(
                    TransformStep(
                        "split",
                        edge=parts[1],
                        summands=tuple(mats),
                        new_ids=tuple(ids),
                    )
                )
            elif kind == "eliminate":
                steps.append(TransformStep("eliminate", vertex=parts[1]))
            elif kind == "insert":
                rest = parts[3:]
                if len(rest) % 4:
                    raise InputError("insert edges come in id src tgt matrix groups")
                edges = []
                for k in range(0, len(rest), 4):
                    edges.append(
                        (
                            rest[k],
                            rest[k + 1],
                            rest[k + 2],
                            parse_matrix_literal(rest[k + 3]),
                        )
                    )
                steps.append(
                    TransformStep(
                        "insert",
                        vertex=parts[1],
                        dim=int(parts[2]),
                        edges=tuple(edges),
                    )
                )
            elif kind == "hub_resolve":
                steps.append(TransformStep("hub_resolve", edge=parts[1]))
            elif kind == "hub_unresolve":
                pairs = tuple(tuple(c.split(":", 1)) for c in parts[5:])
                steps.append(
                    TransformStep(
                        "hub_unresolve",
                        edge=parts[1],
                        src=parts[2],
                        tgt=parts[3],
                        weight=parse_matrix_literal(parts[4]),
                        pairs=pairs,
                    )
                )
            elif kind == "reverse_all":
                steps.append(TransformStep("reverse_all"))
            else:
                raise InputError("unknown transform %r" % kind)
        except (IndexError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError("bad script line %r: %s" % (raw, exc))
    return steps


# -- subcommands ---------------------------------------------------------

def _cmd_zeta(args) -> int:
    g = parse_graph(_read(args.graph))
    z = zeta_reciprocal(g)
    print("zeta-reciprocal: %s" % z)
    if args.check_euler:
        order = args.order
        lhs = euler_product_oracle(g, max_len=order)
        rhs = series_det_inverse(adjacency_matrix(g), order)
        agree = lhs == rhs
        print("euler-agrees: %s" % ("true" if agree else "false"))
        if not agree:
            print('{"witness": "euler-product mismatch at order %d"}' % order)
            return 1
    return 0


def _cmd_alexander(args) -> int:
    d = _load_diagram(args)
    pres = wirtinger_presentation(d)
    rep = _load_rep(args, pres)
    routes = ("graph", "direct") if args.route == "both" else (args.route,)
    results = [twisted_alexander(d, rep, r) for r in routes]
    r0 = results[0]
    print("numerator: %s" % r0.numerator)
    print("denominator: %s" % r0.denominator)
    if r0.denominator_vanishes:
        print("denominator-vanishes: true")
    if args.route == "both":
        agree = (
            results[0].numerator == results[1].numerator
            and results[0].denominator == results[1].denominator
        )
        print("routes-agree: %s" % ("true" if agree else "false"))
        if not agree:
            print(
                '{"witness": "route mismatch", "graph": "%s", "direct": "%s"}'
                % (results[0].numerator, results[1].numerator)
            )
            return 1
    return 0


def _cmd_tietze_verify(args) -> int:
    p = parse_presentation(_read(args.pres))
    expect = parse_presentation(_read(args.expect))
    moves = parse_tietze_script(_read(args.script))
    try:
        final = replay_tietze_script(p, moves)
    except InvalidMove as exc:
        print("verified: false")
        print('{"witness": "invalid move", "detail": "%s"}' % exc)
        return 1
    ok = presentations_equal(final, expect)
    print("verified: %s" % ("true" if ok else "false"))
    if not ok:
        names = final.names()
        got = "; ".join(r.display(names) for r in final.relations)
        print('{"witness": "final presentation differs", "got": "%s"}' % got)
        return 1
    return 0


def _cmd_graph_verify(args) -> int:
    g = parse_graph(_read(args.graph))
    h = parse_graph(_read(args.expect))
    steps = parse_graph_script(_read(args.script))
    report = verify_equivalence(g, steps, h, mode=args.mode)
    print("verified: %s" % ("true" if report.ok else "false"))
    if report.zeta_left is not None:
        print("zeta-left: %s" % report.zeta_left)
        print("zeta-right: %s" % report.zeta_right)
    if not report.ok:
        print(
            '{"witness": "%s", "failing-step": %s}'
            % (report.message, "null" if report.failing_step is None else report.failing_step)
        )
        return 1
    return 0


def _cmd_quandle_check(args) -> int:
    try:
        q = qmod.parse_quandle(_read(args.quandle))
    except qmod.QuandleError as exc:
        print("valid: false")
        print('{"witness": "%s", "at": "%s"}' % (exc, exc.witness))
        return 1
    print("valid: true")
    print("size: %d" % q.n)
    return 0


def _cmd_pair_check(args) -> int:
    q = qmod.parse_quandle(_read(args.quandle))
    try:
        qmod.parse_pair_file(_read(args.pair), q)
    except qmod.PairConditionError as exc:
        print("valid: false")
        names = ("a", "b", "c")
        at = ", ".join("%s=%d" % (n, v) for n, v in zip(names, exc.witness))
        print("witness: (cond=%s, %s)" % (exc.condition, at))
        return 1
    print("valid: true")
    return 0


def _cmd_holonomy_check(args) -> int:
    q = qmod.parse_quandle(_read(args.quandle))
    g = qmod.parse_weights_file(_read(args.weights))
    if g.n != q.n:
        raise InputError("weights size %d does not match quandle size %d" % (g.n, q.n))
    report = qmod.holonomy_check(q, g)
    print("holonomy-preserved: %s" % ("true" if report.ok else "false"))
    if args.perturb:
        rng = random.Random(_seed())
        names = ("g1_pos", "g2_pos", "g1_neg", "g2_neg")
        failed = 0
        for _ in range(args.perturb):
            which = rng.choice(names)
            a, b = rng.randrange(q.n), rng.randrange(q.n)
            bad = g.perturbed(which, a, b, LaurentPoly.one())
            if not qmod.holonomy_check(q, bad).ok:
                failed += 1
        print("perturbations-rejected: %d/%d" % (failed, args.perturb))
    if not report.ok:
        cond, witness, detail = report.failures[0]
        print(
            '{"witness": "condition %s fails", "at": "%s", "detail": "%s"}'
            % (cond, witness, detail)
        )
        return 1
    return 0


def _cmd_colorings(args) -> int:
    q = qmod.parse_quandle(_read(args.quandle))
    d = _load_diagram(args)
    cols = qmod.enumerate_colorings(q, d)
    print("count: %d" % len(cols))
    for c in cols:
        print("coloring: %s" % " ".join("%s=%d" % (a, x) for a, x in c.colors))
    return 0


def _cmd_export_dot(args) -> int:
    g = parse_graph(_read(args.graph))
    sys.stdout.write(export_dot(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="holozeta",
        description="Weighted graph zeta functions and twisted Alexander polynomials, exactly.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta", help="zeta reciprocal of a matrix-weighted graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--order", type=int, default=8, help="truncation order for the Euler oracle")
    p.add_argument("--check-euler", action="store_true")
    p.set_defaults(func=_cmd_zeta)

    p = sub.add_parser("alexander", help="twisted Alexander polynomial of a knot diagram")
    p.add_argument("--pd")
    p.add_argument("--gauss")
    p.add_argument("--rep")
    p.add_argument("--route", choices=("graph", "direct", "both"), default="graph")
    p.set_defaults(func=_cmd_alexander)

    p = sub.add_parser("tietze-verify", help="replay a move script between presentations")
    p.add_argument("--pres", required=True)
    p.add_argument("--script", required=True)
    p.add_argument("--expect", required=True)
    p.set_defaults(func=_cmd_tietze_verify)

    p = sub.add_parser("graph-verify", help="replay a transform script between graphs")
    p.add_argument("--graph", required=True)
    p.add_argument("--script", required=True)
    p.add_argument("--expect", required=True)
    p.add_argument("--mode", choices=("exact", "up_to_units"), default="exact")
    p.set_defaults(func=_cmd_graph_verify)

    p = sub.add_parser("quandle-check", help="validate a quandle table")
    p.add_argument("--quandle", required=True)
    p.set_defaults(func=_cmd_quandle_check)

    p = sub.add_parser("pair-check", help="validate an Alexander pair over a quandle")
    p.add_argument("--quandle", required=True)
    p.add_argument("--pair", required=True)
    p.set_defaults(func=_cmd_pair_check)

    p = sub.add_parser("holonomy-check", help="check crossing weights preserve holonomy")
    p.add_argument("--quandle", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--perturb", type=int, default=0, help="also try N random perturbations")
    p.set_defaults(func=_cmd_holonomy_check)

    p = sub.add_parser("colorings", help="enumerate quandle colorings of a diagram")
    p.add_argument("--quandle", required=True)
    p.add_argument("--pd")
    p.add_argument("--gauss")
    p.set_defaults(func=_cmd_colorings)

    p = sub.add_parser("export-dot", help="GraphViz export of a matrix-weighted graph")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=_cmd_export_dot)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (InputError, ValueError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
