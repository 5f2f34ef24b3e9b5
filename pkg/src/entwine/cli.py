"""Command-line front end.

Subcommands: classify, eval, check, fuzz-moves, gen-corpus.  Exit codes:
0 pass, 1 check failure, 2 input error, 3 pipeline precondition violation.
Machine output is deterministic under a fixed seed (--seed, or the
ENTWINE_SEED environment variable).
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from .category import CheckScope, ModelError, Report, check_self_dual, \
    check_sphericity_interchange, check_twine_axioms, check_twist_axioms, \
    twine_from_twist
from .diagram import Diagram, DiagramError, classify, components, \
    linking_matrix, parse_diagram, render_ascii
from .evaluator import eval_string_link, eval_turban, is_string_link, \
    oracle_eval
from .models import AlgebraData, BUILTIN_NAMES, load_model
from .moves import MoveSpec, apply_move, find_moves


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _load_diagram(path: str) -> Diagram:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_diagram(fh.read())
    except (OSError, DiagramError) as exc:
        raise CliError(f"{path}: {exc}", 2) from exc


def _load_model(spec: str):
    try:
        return load_model(spec)
    except (OSError, ModelError, ValueError) as exc:
        raise CliError(f"{spec}: {exc}", 2) from exc


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ENTWINE_SEED")
    return int(env) if env else 0


def _emit_report(rep: Report, args) -> int:
    if args.format == "machine":
        for line in rep.to_lines():
            print(line)
    else:
        fails = rep.failures()
        for r in fails[:20]:
            print(f"FAIL {r.axiom} {r.instance}")
        ok = len(rep.results) - len(fails)
        print(f"{rep.name}: {ok}/{len(rep.results)} instances pass")
    return 0 if rep.ok else 1


def cmd_classify(args) -> int:
    code = 0
    for path in args.diagrams:
        d = _load_diagram(path)
        kind = classify(d)
        lk = linking_matrix(d)
        if args.format == "machine":
            rows = ";".join(",".join(str(v) for v in row) for row in lk)
            print(f"CLASS {path} {kind} [{rows}]")
        else:
            print(f"{path}: {kind}")
            for row in lk:
                print("   ", list(row))
            print(render_ascii(d))
    return code


def _coloring(args):
    out = {}
    for item in args.color or ():
        comp, _, name = item.partition("=")
        out[int(comp)] = name
    return out


def cmd_eval(args) -> int:
    m = _load_model(args.model)
    if isinstance(m, AlgebraData):
        raise CliError("algebra blocks have no diagram evaluation", 2)
    coloring = _coloring(args)
    for path in args.diagrams:
        d = _load_diagram(path)
        pipeline = args.pipeline
        if pipeline == "auto":
            if is_string_link(d):
                pipeline = "stringlink"
            elif classify(d) != "general":
                pipeline = "turban"
            elif m.has_braiding():
                pipeline = "oracle"
            else:
                raise CliError(f"{path}: no applicable pipeline", 3)
        try:
            if pipeline == "stringlink":
                res = eval_string_link(m, d, coloring or None, default=args.default_color)
            elif pipeline == "turban":
                if getattr(m, "_sphint_ok", None) is None:
                    m._sphint_ok = check_sphericity_interchange(m).ok
                if not m._sphint_ok:
                    raise CliError(
                        f"{path}: model fails the sphericity/interchange checks", 3)
                res = eval_turban(m, d, coloring or None, default=args.default_color)
            elif pipeline == "oracle":
                res = oracle_eval(m, d, coloring or None, default=args.default_color)
            else:
                raise CliError(f"unknown pipeline {pipeline!r}", 2)
        except (DiagramError, ModelError) as exc:
            raise CliError(f"{path}: {exc}", 3) from exc
        if args.format == "machine":
            print(f"RESULT {path} {m.ring.name} {res.matrix.show()}")
        else:
            print(f"{path} [{pipeline}] -> {res.matrix.show()}")
            print(render_ascii(d))
    return 0


def cmd_check(args) -> int:
    m = _load_model(args.model)
    scope = CheckScope(pair_len=args.scope_len, quad_len=max(args.scope_len - 1, 0),
                       samples=args.samples, seed=_seed(args))
    rep = Report(f"check[{getattr(m, 'name', 'algebra')}]")
    which = args.which
    if isinstance(m, AlgebraData):
        from .models import verify_bialgebra
        rep.extend(verify_bialgebra(m))
        if which not in ("all", "bialgebra"):
            raise CliError("algebra blocks support --which all|bialgebra "
                           "(twinor data comes from the API)", 2)
        return _emit_report(rep, args)
    try:
        if which in ("twine", "all") and m.twine_fn is not None:
            rep.extend(check_twine_axioms(m, scope=scope))
        if which in ("twist", "all") and m.twist_fn is not None:
            rep.extend(check_twist_axioms(m, scope=scope))
            rep.extend(check_twine_axioms(m, twine_from_twist(m), scope=scope))
        if which in ("selfdual", "all") and m.twist_fn is not None:
            rep.extend(check_self_dual(m, scope=scope))
        if which in ("sphint", "all") and m.twist_fn is not None:
            rep.extend(check_sphericity_interchange(m, scope=scope))
    except ModelError as exc:
        raise CliError(str(exc), 2) from exc
    if not rep.results:
        raise CliError(f"model has no data for --which {which}", 2)
    return _emit_report(rep, args)


def cmd_fuzz_moves(args) -> int:
    m = _load_model(args.model)
    d = _load_diagram(args.diagram)
    coloring = _coloring(args)
    rng = random.Random(_seed(args))

    def value(dd):
        if is_string_link(dd):
            return eval_string_link(m, dd, coloring or None,
                                    default=args.default_color).matrix
        return eval_turban(m, dd, coloring or None, default=args.default_color).matrix

    base_lk = linking_matrix(d)
    base_kind = classify(d)
    base = value(d)
    cur = d
    for step in range(args.moves):
        moves = find_moves(cur, allow_growth=True, max_events=args.max_events)
        if not moves:
            print(f"STEP {step} no applicable move; stopping")
            break
        mv = rng.choice(moves)
        cur = apply_move(cur, mv)
        if args.format == "machine":
            print(f"MOVE {step} {mv}")
        ok = (linking_matrix(cur) == base_lk and classify(cur) == base_kind
              and value(cur) == base)
        if not ok:
            print(f"FAIL after move {step}: {mv}")
            return 1
    print(f"PASS {args.moves} moves, invariant stable")
    return 0


def cmd_gen_corpus(args) -> int:
    from .corpusgen import write_corpus
    manifest = write_corpus(args.root)
    print(f"wrote {len(manifest)} diagrams under {args.root}")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="entwine",
                                 description="framed-tangle invariants from "
                                             "twisted monoidal-category data")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--seed", type=int, default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="linking matrix and turban class",
                       parents=[common])
    p.add_argument("diagrams", nargs="+")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("eval", help="evaluate diagrams in a model",
                       parents=[common])
    p.add_argument("--model", required=True,
                   help=f"model file or builtin:<name>; builtins: {', '.join(BUILTIN_NAMES)}")
    p.add_argument("--pipeline", choices=("auto", "stringlink", "turban", "oracle"),
                   default="auto")
    p.add_argument("--color", action="append", metavar="COMP=NAME")
    p.add_argument("--default-color")
    p.add_argument("diagrams", nargs="+")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("check", help="run axiom suites", parents=[common])
    p.add_argument("--model", required=True)
    p.add_argument("--which", default="all",
                   choices=("twine", "twist", "selfdual", "sphint", "bialgebra", "all"))
    p.add_argument("--scope-len", type=int, default=2)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("fuzz-moves", help="apply random moves, assert invariance",
                       parents=[common])
    p.add_argument("--model", required=True)
    p.add_argument("--diagram", required=True)
    p.add_argument("--moves", type=int, default=200)
    p.add_argument("--max-events", type=int, default=46)
    p.add_argument("--color", action="append", metavar="COMP=NAME")
    p.add_argument("--default-color")
    p.set_defaults(fn=cmd_fuzz_moves)

    p = sub.add_parser("gen-corpus", help="regenerate the frozen corpus",
                       parents=[common])
    p.add_argument("root")
    p.set_defaults(fn=cmd_gen_corpus)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
