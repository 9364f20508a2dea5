"""JSON documents for every object the toolkit reads or writes.

Every document is ``{"kind": ..., "version": "1", "payload": {...}}``.
Parsing runs three gates in order and reports the first failure:

1. syntax (:class:`MalformedDocument`)
2. shape and cross-references (:class:`SchemaViolation`, with a path such
   as ``payload.arcs[0]``)
3. domain invariants, e.g. game-hypergraph membership or table totality
   (:class:`InvariantViolation`)

Serialization is canonical: fixed key order, declaration order for
vertices, edges and tables (digraph arcs sorted), and rationals in lowest
terms (integers stay integers, everything else is ``"p/q"``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import jsonschema

from .errors import StructuralError
from .games import ColoredHypergraphicalGame, GraphicalGame
from .graphs import ColoredHypergraph, Digraph, sort_vertices
from .homomorphism import HomInstance
from .treewidth import TreeDecomposition

VERSION = "1"
KINDS = ("digraph", "hypergraph", "graphical_game", "chg", "decomposition", "hom_instance", "result")


class FormatError(ValueError):
    pass


class MalformedDocument(FormatError):
    pass


class SchemaViolation(FormatError):
    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"schema violation at {path}: {reason}")


class InvariantViolation(FormatError):
    pass


@dataclass(frozen=True)
class Document:
    kind: str
    value: Any
    version: str = VERSION


# -- schemas ---------------------------------------------------------------

_NAME = {"type": "string"}
_ACTION = {"type": ["string", "integer"]}
_RATIONAL = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+/\d+$"}]}
_DIGRAPH = {
    "type": "object",
    "required": ["vertices", "arcs"],
    "additionalProperties": False,
    "properties": {
        "vertices": {"type": "array", "items": _NAME},
        "arcs": {"type": "array", "items": {"type": "array", "items": _NAME, "minItems": 2, "maxItems": 2}},
    },
}
_HYPERGRAPH = {
    "type": "object",
    "required": ["vertices", "edges"],
    "additionalProperties": False,
    "properties": {
        "vertices": {"type": "array", "items": _NAME},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["tuple", "color"],
                "additionalProperties": False,
                "properties": {"tuple": {"type": "array", "items": _NAME}, "color": _NAME},
            },
        },
    },
}


def _table(item):
    return {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["profile", "value"],
            "additionalProperties": False,
            "properties": {"profile": {"type": "array", "items": item}, "value": _RATIONAL},
        },
    }


SCHEMAS = {
    "digraph": _DIGRAPH,
    "hypergraph": _HYPERGRAPH,
    "graphical_game": {
        "type": "object",
        "required": ["graph", "players"],
        "additionalProperties": False,
        "properties": {
            "graph": _DIGRAPH,
            "players": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["player", "actions", "utilities"],
                    "additionalProperties": False,
                    "properties": {
                        "player": _NAME,
                        "actions": {"type": "array", "items": _ACTION, "minItems": 1},
                        "utilities": _table(_ACTION),
                    },
                },
            },
        },
    },
    "chg": {
        "type": "object",
        "required": ["hypergraph", "m", "utilities"],
        "additionalProperties": False,
        "properties": {
            "hypergraph": _HYPERGRAPH,
            "m": {"type": "integer", "minimum": 1},
            "action_labels": {"type": "array", "items": _NAME},
            "utilities": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["color", "table"],
                    "additionalProperties": False,
                    "properties": {"color": _NAME, "table": _table({"type": "integer"})},
                },
            },
        },
    },
    "decomposition": {
        "type": "object",
        "required": ["bags", "tree_edges"],
        "additionalProperties": False,
        "properties": {
            "bags": {"type": "array", "items": {"type": "array", "items": _NAME}},
            "tree_edges": {
                "type": "array",
                "items": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2},
            },
        },
    },
    "hom_instance": {
        "type": "object",
        "required": ["left", "right"],
        "additionalProperties": False,
        "properties": {"left": _HYPERGRAPH, "right": _HYPERGRAPH},
    },
    "result": {"type": "object", "required": ["command"], "properties": {"command": _NAME}},
}

ENVELOPE = {
    "type": "object",
    "required": ["kind", "version", "payload"],
    "additionalProperties": False,
    "properties": {"kind": {"enum": list(KINDS)}, "version": {"const": VERSION}, "payload": {}},
}


def _path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<root>"


def _schema_check(data, schema, prefix=()):
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        err = errors[0]
        raise SchemaViolation(_path(prefix + tuple(err.absolute_path)), err.message)


# -- rationals --------------------------------------------------------------

_RAT = re.compile(r"^(-?\d+)/(\d+)$")


def parse_rational(x, path: str = "value") -> Fraction:
    if isinstance(x, bool):
        raise SchemaViolation(path, "booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _RAT.match(x)
        if m and int(m.group(2)) > 0:
            return Fraction(int(m.group(1)), int(m.group(2)))
    raise SchemaViolation(path, f"{x!r} is not an integer or a 'p/q' string with q > 0")


def format_rational(q) -> int | str:
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- payload builders ---------------------------------------------------------


def digraph_payload(g: Digraph) -> dict:
    return {"vertices": list(g.vertices), "arcs": [list(a) for a in g.sorted_arcs()]}


def hypergraph_payload(h: ColoredHypergraph) -> dict:
    return {"vertices": list(h.vertices), "edges": [{"tuple": list(e.tuple), "color": e.color} for e in h.edges]}


def decomposition_payload(d: TreeDecomposition) -> dict:
    return {"bags": [sort_vertices(b) for b in d.bags], "tree_edges": [list(e) for e in d.tree_edges]}


def graphical_game_payload(game: GraphicalGame) -> dict:
    return {
        "graph": digraph_payload(game.graph),
        "players": [
            {
                "player": v,
                "actions": list(game.actions(v)),
                "utilities": [
                    {"profile": list(k), "value": format_rational(u)}
                    for k, u in game.local_utilities[v].items()
                ],
            }
            for v in game.players
        ],
    }


def chg_payload(game: ColoredHypergraphicalGame) -> dict:
    out = {"hypergraph": hypergraph_payload(game.hypergraph), "m": game.m}
    if game.action_labels is not None:
        out["action_labels"] = list(game.action_labels)
    out["utilities"] = [
        {"color": c, "table": [{"profile": list(k), "value": format_rational(u)} for k, u in t.items()]}
        for c, t in game.color_utilities.items()
    ]
    return out


def hom_instance_payload(inst: HomInstance) -> dict:
    return {"left": hypergraph_payload(inst.left), "right": hypergraph_payload(inst.right)}


def kind_of(value) -> str:
    if isinstance(value, Digraph):
        return "digraph"
    if isinstance(value, ColoredHypergraph):
        return "hypergraph"
    if isinstance(value, GraphicalGame):
        return "graphical_game"
    if isinstance(value, ColoredHypergraphicalGame):
        return "chg"
    if isinstance(value, TreeDecomposition):
        return "decomposition"
    if isinstance(value, HomInstance):
        return "hom_instance"
    if isinstance(value, dict):
        return "result"
    raise TypeError(f"no document kind for {type(value).__name__}")


def to_payload(value) -> dict:
    kind = kind_of(value)
    return {
        "digraph": digraph_payload,
        "hypergraph": hypergraph_payload,
        "graphical_game": graphical_game_payload,
        "chg": chg_payload,
        "decomposition": decomposition_payload,
        "hom_instance": hom_instance_payload,
        "result": lambda r: r,
    }[kind](value)


def document(value) -> Document:
    return Document(kind_of(value), value)


def serialize(doc: Document | Any) -> str:
    if not isinstance(doc, Document):
        doc = document(doc)
    body = {"kind": doc.kind, "version": doc.version, "payload": to_payload(doc.value)}
    return json.dumps(body, indent=2, ensure_ascii=False) + "\n"


# -- payload readers ------------------------------------------------------------


def _declared(items, known, path):
    for k, v in enumerate(items):
        if v not in known:
            raise SchemaViolation(f"{path}[{k}]", f"undeclared vertex {v!r}")


def _read_digraph(p, path):
    known = set(p["vertices"])
    for k, (u, v) in enumerate(p["arcs"]):
        if u not in known or v not in known:
            raise SchemaViolation(f"{path}.arcs[{k}]", f"arc ({u!r}, {v!r}) uses an undeclared vertex")
    return Digraph(p["vertices"], [tuple(a) for a in p["arcs"]])


def _read_hypergraph(p, path):
    known = set(p["vertices"])
    for k, e in enumerate(p["edges"]):
        _declared(e["tuple"], known, f"{path}.edges[{k}].tuple")
    return ColoredHypergraph(p["vertices"], [(tuple(e["tuple"]), e["color"]) for e in p["edges"]])


def _read_table(entries, path):
    table = {}
    for k, entry in enumerate(entries):
        key = tuple(entry["profile"])
        if key in table:
            raise SchemaViolation(f"{path}[{k}].profile", f"duplicate profile {list(key)!r}")
        table[key] = parse_rational(entry["value"], f"{path}[{k}].value")
    return table


def _read_graphical_game(p, path):
    graph = _read_digraph(p["graph"], f"{path}.graph")
    seen = [e["player"] for e in p["players"]]
    if seen != list(graph.vertices):
        raise SchemaViolation(f"{path}.players", "players must list every graph vertex once, in vertex order")
    actions, tables = {}, {}
    for k, entry in enumerate(p["players"]):
        v = entry["player"]
        actions[v] = tuple(entry["actions"])
        tables[v] = _read_table(entry["utilities"], f"{path}.players[{k}].utilities")
    return GraphicalGame(graph, actions, tables)


def _read_chg(p, path):
    h = _read_hypergraph(p["hypergraph"], f"{path}.hypergraph")
    tables = {}
    for k, entry in enumerate(p["utilities"]):
        c = entry["color"]
        if c in tables:
            raise SchemaViolation(f"{path}.utilities[{k}].color", f"duplicate table for color {c!r}")
        tables[c] = _read_table(entry["table"], f"{path}.utilities[{k}].table")
    labels = p.get("action_labels")
    return ColoredHypergraphicalGame(h, p["m"], tables, tuple(labels) if labels is not None else None)


def _read_decomposition(p, path):
    for k, bag in enumerate(p["bags"]):
        if len(set(bag)) != len(bag):
            raise SchemaViolation(f"{path}.bags[{k}]", "bag repeats a vertex")
    return TreeDecomposition(p["bags"], [tuple(e) for e in p["tree_edges"]])


def _read_hom_instance(p, path):
    return HomInstance(_read_hypergraph(p["left"], f"{path}.left"), _read_hypergraph(p["right"], f"{path}.right"))


_READERS = {
    "digraph": _read_digraph,
    "hypergraph": _read_hypergraph,
    "graphical_game": _read_graphical_game,
    "chg": _read_chg,
    "decomposition": _read_decomposition,
    "hom_instance": _read_hom_instance,
    "result": lambda p, path: p,
}


def parse(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"malformed JSON: {exc}") from None
    _schema_check(data, ENVELOPE)
    kind = data["kind"]
    _schema_check(data["payload"], SCHEMAS[kind], ("payload",))
    try:
        value = _READERS[kind](data["payload"], "payload")
    except StructuralError as exc:
        raise InvariantViolation(f"{kind} invariant violated: {exc}") from None
    return Document(kind, value, data["version"])


def dumps(value) -> str:
    return serialize(document(value))


def loads(text: str):
    return parse(text).value
