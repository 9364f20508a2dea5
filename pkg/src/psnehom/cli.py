"""Command-line interface.

Every subcommand reads one document (a path, or ``-``/nothing for stdin)
and writes one document to stdout.  Diagnostics go to stderr.

Exit codes: 0 computed (the answer is in the output), 1 usage or format
error, 2 a resource cap refused the computation.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

from . import formats
from .errors import CapExceeded, PreconditionError, StructuralError
from .gadgets import (
    cycle_game,
    example15,
    hom_to_chg,
    hom_to_gg,
    hom_to_gg_direct,
    strongly_connected_game,
)
from .game2hom import decide_psne
from .games import ColoredHypergraphicalGame, GraphicalGame, brute_force_psne
from .graphs import (
    ColoredHypergraph,
    Digraph,
    induced_digraph,
    induced_hypergraph,
    primal_graph,
    scc,
    sort_vertices,
    undirected,
)
from .homomorphism import HomInstance, brute_force_hom, dp_hom
from .random_instances import random_utilities
from .reduction import reduce_digraph, reduce_game
from .treewidth import exact_treewidth, heuristic_decomposition

VARIANTS = ("graphical_TB", "chg_failure", "cycle_mod_p", "strongly_connected", "direct_xy", "example15")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str | None) -> formats.Document:
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return formats.parse(text)


def _expect(doc: formats.Document, *kinds: str):
    if doc.kind not in kinds:
        raise UsageError(f"expected a {' or '.join(kinds)} document, got {doc.kind}")
    return doc.value


def _digraph_of(value) -> Digraph:
    if isinstance(value, Digraph):
        return value
    if isinstance(value, ColoredHypergraph):
        return induced_digraph(value)
    return value.digraph


def _trace_payload(trace) -> dict:
    return {
        "removal_rounds": [sort_vertices(r) for r in trace.removal_rounds],
        "kept": list(trace.kept_vertices),
    }


def _result(command: str, **fields) -> dict:
    return {"command": command, **fields}


def cmd_reduce(args) -> dict:
    value = _expect(_read(args.input), "digraph", "hypergraph", "graphical_game", "chg")
    reduced_graph, trace = reduce_digraph(_digraph_of(value))
    if isinstance(value, (GraphicalGame, ColoredHypergraphicalGame)):
        reduced = reduce_game(value)
    elif isinstance(value, ColoredHypergraph):
        kept = set(trace.kept_vertices)
        reduced = ColoredHypergraph(trace.kept_vertices,
                                    [e for e in value.edges if all(v in kept for v in e.tuple)])
    else:
        reduced = reduced_graph
    kind = formats.kind_of(reduced)
    return _result("reduce", reduced={"kind": kind, "payload": formats.to_payload(reduced)},
                   trace=_trace_payload(trace))


def cmd_scc(args) -> dict:
    value = _expect(_read(args.input), "digraph", "hypergraph", "graphical_game", "chg")
    part = scc(_digraph_of(value))
    return _result("scc", components=[
        {"vertices": sort_vertices(c), "terminal": t} for c, t in zip(part.components, part.terminal)
    ])


def _undirected_of(value):
    if isinstance(value, HomInstance):
        return primal_graph(value.left)
    if isinstance(value, ColoredHypergraph):
        return primal_graph(value)
    if isinstance(value, ColoredHypergraphicalGame):
        return primal_graph(value.hypergraph)
    if isinstance(value, GraphicalGame):
        return primal_graph(induced_hypergraph(value.graph))
    return undirected(value)


def cmd_tw(args) -> dict:
    value = _expect(_read(args.input), "digraph", "hypergraph", "hom_instance", "graphical_game", "chg")
    graph = _undirected_of(value)
    if args.exact:
        width, decomp = exact_treewidth(graph, args.tw_cap)
    else:
        decomp = heuristic_decomposition(graph)
        width = decomp.width
    return _result("tw", method="exact" if args.exact else "heuristic", width=width,
                   decomposition=formats.decomposition_payload(decomp))


def cmd_hom(args) -> dict:
    inst = _expect(_read(args.input), "hom_instance")
    if args.backend == "brute":
        mapping = brute_force_hom(inst, args.hom_cap)
        width = None
    else:
        decomp = heuristic_decomposition(primal_graph(inst.left))
        width = decomp.width
        mapping = dp_hom(inst, decomp)
    return _result("hom", backend=args.backend, width=width, exists=mapping is not None, mapping=mapping)


def cmd_solve(args) -> dict:
    game = _expect(_read(args.input), "graphical_game", "chg")
    res = decide_psne(game, width_threshold=args.width_threshold, hom_cap=args.hom_cap, use_core=args.core)
    out = _result("solve", exists=res.exists, backend=res.backend, width=res.width,
                  trace=_trace_payload(res.trace))
    if args.witness:
        out["witness"] = res.witness
    return out


def cmd_brute(args) -> dict:
    game = _expect(_read(args.input), "graphical_game", "chg")
    profile = brute_force_psne(game, args.profile_cap)
    return _result("brute", exists=profile is not None, profile=profile)


def cmd_validate(args) -> dict:
    doc = _read(args.input)
    out = _result("validate", kind=doc.kind, valid=True)
    value = doc.value
    if isinstance(value, ColoredHypergraph):
        out["game_hypergraph"] = value.is_game_hypergraph()
    return out


def _params(text: str | None) -> dict[str, int]:
    out = {}
    if not text:
        return out
    for part in text.split(","):
        key, sep, val = part.partition("=")
        if not sep:
            raise UsageError(f"bad --params entry {part!r}; expected key=value")
        try:
            out[key.strip()] = int(val)
        except ValueError:
            raise UsageError(f"parameter {key!r} must be an integer") from None
    return out


def _need(params: dict, *names: str) -> list[int]:
    missing = [n for n in names if n not in params]
    if missing:
        raise UsageError(f"missing parameters: {', '.join(missing)}")
    return [params[n] for n in names]


def cmd_gadget(args):
    params = _params(args.params)
    v = args.variant
    if v == "cycle_mod_p":
        n, p = _need(params, "n", "p")
        return cycle_game(n, p)
    if v == "example15":
        (m,) = _need(params, "m")
        return _example15(m, params.get("actions"), args.seed)
    if v == "strongly_connected":
        return strongly_connected_game(_expect(_read(args.input), "digraph"))
    inst = _expect(_read(args.input), "hom_instance")
    if v == "graphical_TB":
        g = induced_digraph(inst.left)
        if induced_hypergraph(g) != inst.left:
            raise UsageError("graphical_TB needs a left side that is the induced hypergraph of a digraph")
        return hom_to_gg(g, inst.right)
    if v == "chg_failure":
        return hom_to_chg(inst.left, inst.right)
    return hom_to_gg_direct(inst.left, inst.right)


def _example15(m: int, actions: int | None, seed: int):
    h = example15(m)
    if actions is None:
        return h
    return random_utilities(random.Random(seed), h, actions)


def cmd_gen_example15(args):
    return _example15(args.m, args.actions, args.seed)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="psnehom", description="Pure Nash equilibria via hypergraph homomorphisms.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text, takes_input=True):
        p = sub.add_parser(name, help=help_text)
        if takes_input:
            p.add_argument("input", nargs="?", default="-", help="document path, or - for stdin")
        p.set_defaults(fn=fn)
        return p

    add("reduce", cmd_reduce, "iterated sink removal")
    add("scc", cmd_scc, "strongly connected components")
    p = add("tw", cmd_tw, "tree decomposition of the primal/undirected graph")
    p.add_argument("--exact", action="store_true")
    p.add_argument("--tw-cap", type=int, default=14)
    p = add("hom", cmd_hom, "solve a homomorphism instance")
    p.add_argument("--backend", choices=("dp", "brute"), default="dp")
    p.add_argument("--hom-cap", type=int, default=10**7)
    p = add("solve", cmd_solve, "decide PSNE existence")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--width-threshold", type=int, default=12)
    p.add_argument("--hom-cap", type=int, default=10**7)
    p.add_argument("--core", action="store_true", help="solve on the core of the left structure")
    p = add("brute", cmd_brute, "brute-force PSNE search")
    p.add_argument("--profile-cap", type=int, default=10**7)
    p = add("gadget", cmd_gadget, "build a gadget game")
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("--params", default="")
    p.add_argument("--seed", type=int, default=0)
    p = add("gen-example15", cmd_gen_example15, "emit the four-color family member", takes_input=False)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--actions", type=int, default=None, help="attach random utilities with this many actions")
    p.add_argument("--seed", type=int, default=0)
    add("validate", cmd_validate, "schema and invariant checks only")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        value = args.fn(args)
        sys.stdout.write(formats.dumps(value))
        return 0
    except CapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except (UsageError, formats.FormatError, StructuralError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
