"""Command-line driver: ``wreathrep <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automaton import export_dot, matrix_csv
from .constructions import ConstructionError, RunConfig
from .lattice import as_matrix
from .similarity import enumerate_deformations, replace_pair, twist_pair
from .tree import (
    RepContext,
    act_on_vertex,
    parse_vertex,
    portrait,
    state_closure,
    vertex_text,
)
from .verify import SUITES, run_suite
from .wreath import WreathElement, element_name, eval_word, format_element, parse_element

NOT_FINITE = "not shown finite-state within bound"


def _config(args) -> RunConfig:
    if args.config:
        cfg = RunConfig.load(args.config)
    else:
        cfg = RunConfig()
    if args.construction:
        cfg.construction = args.construction
        cfg.pair_data = None
        cfg.params = {}
    for kv in args.param or []:
        key, sep, val = kv.partition("=")
        if not sep:
            raise ConstructionError(f"--param expects key=value, got {kv!r}")
        try:
            cfg.params[key] = int(val)
        except ValueError:
            cfg.params[key] = val
    if args.seed is not None:
        cfg.seed = args.seed
    return cfg


def _element(ctx: RepContext, text: str) -> WreathElement:
    """Accept a generator word (``a*x1*X2``) or any element text."""
    try:
        return eval_word(ctx.ring, text)
    except ValueError:
        return parse_element(ctx.ring, text)


def _emit(args, name: str, text: str) -> None:
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text)
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _decomposition_text(ctx: RepContext, g: WreathElement) -> str:
    children, perm = ctx.decompose(g)
    return f"{element_name(g)} = ({', '.join(element_name(c) for c in children)}) {perm}"


def cmd_build(args, cfg: RunConfig) -> int:
    pair = cfg.build()
    ctx = RepContext(pair)
    lines = [
        f"group: C_{pair.ring.p} wr Z^{pair.ring.d}",
        f"degree: {ctx.m}",
        "transversal: " + ", ".join(f"{k}:{element_name(t)}" for k, t in enumerate(ctx.transversal)),
    ]
    lines += [_decomposition_text(ctx, g) for g in ctx.generators().values()]
    _emit(args, "build.txt", "\n".join(lines))
    return 0


def _closure(args, cfg):
    ctx = RepContext(cfg.build())
    g = _element(ctx, args.element)
    return ctx, state_closure(ctx, g, args.max_states or cfg.max_states)


def cmd_states(args, cfg: RunConfig) -> int:
    ctx, aut = _closure(args, cfg)
    if aut is None:
        print(NOT_FINITE)
        return 1
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "automaton.dot").write_text(export_dot(aut))
        (out / "incidence.csv").write_text(matrix_csv(aut))
    print(f"states: {len(aut)}")
    for k in aut.default_order():
        print(f"  {element_name(aut.states[k])}  {format_element(aut.states[k])}")
    return 0


def cmd_matrix(args, cfg: RunConfig) -> int:
    _, aut = _closure(args, cfg)
    if aut is None:
        print(NOT_FINITE)
        return 1
    _emit(args, "incidence.csv", matrix_csv(aut))
    return 0


def cmd_dot(args, cfg: RunConfig) -> int:
    _, aut = _closure(args, cfg)
    if aut is None:
        print(NOT_FINITE)
        return 1
    _emit(args, "automaton.dot", export_dot(aut))
    return 0


def cmd_portrait(args, cfg: RunConfig) -> int:
    ctx = RepContext(cfg.build())
    depth = cfg.depth if args.depth is None else args.depth
    _emit(args, "portrait.txt", portrait(ctx, _element(ctx, args.element), depth).render())
    return 0


def cmd_act(args, cfg: RunConfig) -> int:
    ctx = RepContext(cfg.build())
    vertex = parse_vertex(args.vertex, ctx.m)
    print(vertex_text(act_on_vertex(ctx, _element(ctx, args.element), vertex), ctx.m))
    return 0


def cmd_verify(args, cfg: RunConfig) -> int:
    ctx = RepContext(cfg.build())
    suites = SUITES if args.suite == "all" else (args.suite,)
    opts = {
        "trials": args.trials or cfg.trials,
        "max_states": args.max_states or cfg.max_states,
        "max_word_length": args.max_word_length or cfg.max_word_length,
    }
    reports = []
    for s in suites:
        if s == "matrix" and (ctx.ring.p, ctx.ring.d) != (2, 2):
            continue
        reports.append(run_suite(ctx, s, cfg.seed, **opts))
    ok = all(r["ok"] for r in reports)
    _emit(args, "verify.json", json.dumps({"ok": ok, "seed": cfg.seed, "reports": reports}, indent=2))
    return 0 if ok else 1


def cmd_deformations(args, cfg: RunConfig) -> int:
    pair = cfg.build()
    found = enumerate_deformations(pair.ring, pair.a0, pair.y)
    payload = {"count": len(found), "deformations": [[str(v) for v in choice] for choice in found]}
    _emit(args, "deformations.json", json.dumps(payload, indent=2))
    return 0


def _parse_matrix(text: str):
    return as_matrix([[int(x) for x in row.split(",")] for row in text.split(";")])


def cmd_reduce(args, cfg: RunConfig) -> int:
    pair = replace_pair(cfg.build())
    if args.twist:
        pair = twist_pair(pair, _parse_matrix(args.twist))
    _emit(args, "pair.json", json.dumps(pair.to_json(), indent=2))
    return 0


COMMANDS = {
    "build": cmd_build,
    "states": cmd_states,
    "matrix": cmd_matrix,
    "dot": cmd_dot,
    "portrait": cmd_portrait,
    "act": cmd_act,
    "verify": cmd_verify,
    "deformations": cmd_deformations,
    "reduce": cmd_reduce,
}


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the command; SUPPRESS keeps
    # the subcommand parser from clobbering values given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON run configuration or pair file")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized suites (default 0)")
    common.add_argument("--out", default=argparse.SUPPRESS, help="directory for written artifacts")
    common.add_argument(
        "--construction", default=argparse.SUPPRESS, help="classical_lamplighter, theorem2, theorem3, theorem4 or degree_p"
    )
    common.add_argument(
        "--param", action="append", default=argparse.SUPPRESS, metavar="KEY=VALUE", help="construction parameter"
    )

    parser = argparse.ArgumentParser(prog="wreathrep", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="summarize the representation")
    for name in ("states", "matrix", "dot"):
        sp = sub.add_parser(name, parents=[common], help=f"state closure of an element ({name})")
        sp.add_argument("element", help="generator word such as x1 or a*X2, or an element")
        sp.add_argument("--max-states", type=int, default=None)
    sp = sub.add_parser("portrait", parents=[common], help="depth-truncated portrait")
    sp.add_argument("element")
    sp.add_argument("--depth", type=int, default=None)
    sp = sub.add_parser("act", parents=[common], help="image of a vertex")
    sp.add_argument("element")
    sp.add_argument("vertex", help="letters, e.g. 013 (dot-separated when the degree exceeds 10)")
    sp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    sp.add_argument("suite", choices=SUITES + ("all",))
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--max-states", type=int, default=None)
    sp.add_argument("--max-word-length", type=int, default=None)
    sub.add_parser("deformations", parents=[common], help="enumerate deformations of A0 Y")
    sp = sub.add_parser("reduce", parents=[common], help="undeformed (optionally twisted) pair as JSON")
    sp.add_argument("--twist", help="unimodular matrix, rows split by ';', e.g. '0,1;1,0'")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key in ("config", "seed", "out", "construction", "param"):
        if not hasattr(args, key):
            setattr(args, key, None)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except (ConstructionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
