"""Digraphs, colored hypergraphs and the constructions linking them.

Vertex identifiers are strings.  Wherever the toolkit needs "ascending
vertex order" it sorts with :func:`vertex_key`, a natural ordering in which
digit runs compare numerically ("p2" < "p10") and ties fall back to the raw
string, so the order is total.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import StructuralError

_DIGITS = re.compile(r"(\d+)")


def vertex_key(v: str) -> tuple:
    parts = _DIGITS.split(v)
    chunks = tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts if p)
    return (chunks, v)


def sort_vertices(vs: Iterable[str]) -> list[str]:
    return sorted(vs, key=vertex_key)


def _check_vertices(vertices: Sequence[str]) -> tuple[str, ...]:
    vertices = tuple(vertices)
    for v in vertices:
        if not isinstance(v, str):
            raise StructuralError(f"vertex identifiers must be strings, got {v!r}")
    if len(set(vertices)) != len(vertices):
        raise StructuralError("duplicate vertex identifiers")
    return vertices


@dataclass(frozen=True)
class Digraph:
    """Directed graph; an arc ``(u, v)`` points from ``u`` to ``v``."""

    vertices: tuple[str, ...]
    arcs: frozenset[tuple[str, str]]
    _succ: dict = field(init=False, repr=False, compare=False)
    _pred: dict = field(init=False, repr=False, compare=False)

    def __init__(self, vertices: Iterable[str], arcs: Iterable[tuple[str, str]] = ()):
        vertices = _check_vertices(tuple(vertices))
        arc_list = [tuple(a) for a in arcs]
        known = set(vertices)
        for u, v in arc_list:
            if u not in known or v not in known:
                raise StructuralError(f"arc ({u!r}, {v!r}) uses an undeclared vertex")
            if u == v:
                raise StructuralError(f"self-loop on {u!r}")
        arc_set = frozenset(arc_list)
        if len(arc_set) != len(arc_list):
            raise StructuralError("duplicate arcs")
        succ: dict[str, set[str]] = {v: set() for v in vertices}
        pred: dict[str, set[str]] = {v: set() for v in vertices}
        for u, v in arc_set:
            succ[u].add(v)
            pred[v].add(u)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arcs", arc_set)
        object.__setattr__(self, "_succ", {v: tuple(sort_vertices(s)) for v, s in succ.items()})
        object.__setattr__(self, "_pred", {v: tuple(sort_vertices(s)) for v, s in pred.items()})

    def successors(self, v: str) -> tuple[str, ...]:
        return self._succ[v]

    def in_neighbors(self, v: str) -> tuple[str, ...]:
        """In-neighbors of ``v`` in ascending vertex order."""
        return self._pred[v]

    def out_degree(self, v: str) -> int:
        return len(self._succ[v])

    def subgraph(self, keep: Iterable[str]) -> "Digraph":
        keep = set(keep)
        return Digraph(
            [v for v in self.vertices if v in keep],
            [(u, v) for u, v in self.arcs if u in keep and v in keep],
        )

    def sorted_arcs(self) -> list[tuple[str, str]]:
        return sorted(self.arcs, key=lambda a: (vertex_key(a[0]), vertex_key(a[1])))

    def __len__(self) -> int:
        return len(self.vertices)


class Edge(NamedTuple):
    tuple: tuple[str, ...]
    color: str


@dataclass(frozen=True)
class ColoredHypergraph:
    """Vertices plus ordered, colored edges; equal colors imply equal arity.

    An edge may repeat a vertex (right-hand structures built from best
    responses do), except in game hypergraphs.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __init__(self, vertices: Iterable[str], edges: Iterable = ()):
        vertices = _check_vertices(tuple(vertices))
        known = set(vertices)
        edge_list: list[Edge] = []
        arity: dict[str, int] = {}
        for item in edges:
            tup, color = item
            tup = tuple(tup)
            if not isinstance(color, str):
                raise StructuralError(f"colors must be strings, got {color!r}")
            for v in tup:
                if v not in known:
                    raise StructuralError(f"edge {tup!r} uses undeclared vertex {v!r}")
            if arity.setdefault(color, len(tup)) != len(tup):
                raise StructuralError(f"color {color!r} used with arities {arity[color]} and {len(tup)}")
            edge_list.append(Edge(tup, color))
        if len(set(edge_list)) != len(edge_list):
            raise StructuralError("duplicate hyperedges")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(edge_list))

    @property
    def colors(self) -> tuple[str, ...]:
        """Colors in order of first use."""
        return tuple(dict.fromkeys(e.color for e in self.edges))

    def arity(self, color: str) -> int:
        for e in self.edges:
            if e.color == color:
                return len(e.tuple)
        raise KeyError(color)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def induced(self, keep: Iterable[str]) -> "ColoredHypergraph":
        """Induced substructure: kept vertices and the edges lying inside them."""
        keep = set(keep)
        return ColoredHypergraph(
            [v for v in self.vertices if v in keep],
            [e for e in self.edges if all(v in keep for v in e.tuple)],
        )

    # -- the class of game hypergraphs -------------------------------------

    def game_violation(self) -> str | None:
        """Why this hypergraph cannot carry a colored hypergraphical game, or None."""
        heads: dict[str, int] = {}
        for e in self.edges:
            if not e.tuple:
                return "empty edge has no first element"
            if len(set(e.tuple)) != len(e.tuple):
                return f"edge {e.tuple!r} repeats a vertex"
            heads[e.tuple[0]] = heads.get(e.tuple[0], 0) + 1
        for v in self.vertices:
            count = heads.get(v, 0)
            if count != 1:
                return f"vertex {v!r} is the first element of {count} edges"
        return None

    def is_game_hypergraph(self) -> bool:
        return self.game_violation() is None

    def check_game_hypergraph(self) -> None:
        reason = self.game_violation()
        if reason is not None:
            raise StructuralError(f"not a game hypergraph: {reason}")

    def head_edges(self) -> dict[str, Edge]:
        """Map each vertex to the edge it heads (game hypergraphs only)."""
        return {e.tuple[0]: e for e in self.edges if e.tuple}


@dataclass(frozen=True)
class UndirectedGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __init__(self, vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()):
        vertices = _check_vertices(tuple(vertices))
        known = set(vertices)
        edge_set = set()
        for e in edges:
            e = frozenset(e)
            if len(e) != 2 or not e <= known:
                raise StructuralError(f"bad undirected edge {sorted(e)!r}")
            edge_set.add(e)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", frozenset(edge_set))

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            u, w = tuple(e)
            adj[u].add(w)
            adj[w].add(u)
        return adj

    def is_subgraph_of(self, other: "UndirectedGraph") -> bool:
        return set(self.vertices) <= set(other.vertices) and self.edges <= other.edges


def induced_digraph(h: ColoredHypergraph) -> Digraph:
    """Arcs from every non-head member of an edge to the edge's head."""
    h.check_game_hypergraph()
    arcs = set()
    for e in h.edges:
        head = e.tuple[0]
        for u in e.tuple[1:]:
            arcs.add((u, head))
    return Digraph(h.vertices, arcs)


def induced_hypergraph(g: Digraph) -> ColoredHypergraph:
    """One edge per vertex ``v``, colored ``v``: ``(v, *in_neighbors(v))``."""
    return ColoredHypergraph(g.vertices, [((v,) + g.in_neighbors(v), v) for v in g.vertices])


def primal_graph(h: ColoredHypergraph) -> UndirectedGraph:
    edges = set()
    for e in h.edges:
        t = e.tuple
        for i in range(len(t)):
            for j in range(i + 1, len(t)):
                if t[i] != t[j]:
                    edges.add(frozenset((t[i], t[j])))
    return UndirectedGraph(h.vertices, edges)


def undirected(g: Digraph) -> UndirectedGraph:
    return UndirectedGraph(g.vertices, [frozenset(a) for a in g.arcs])


@dataclass(frozen=True)
class SccPartition:
    """Strongly connected components in topological order.

    Components are listed so that every arc between two different
    components goes from an earlier component to a later one.  Terminal
    components (no leaving arc) therefore never precede a component they
    could reach.
    """

    components: tuple[frozenset[str], ...]
    terminal: tuple[bool, ...]

    def component_of(self, v: str) -> int:
        for i, c in enumerate(self.components):
            if v in c:
                return i
        raise KeyError(v)

    def terminal_components(self) -> list[frozenset[str]]:
        return [c for c, t in zip(self.components, self.terminal) if t]


def scc(g: Digraph) -> SccPartition:
    """Tarjan's algorithm, iterative."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    found: list[frozenset[str]] = []
    counter = 0

    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(g.successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                found.append(frozenset(comp))

    # Tarjan emits components in reverse topological order.
    found.reverse()
    where = {v: i for i, c in enumerate(found) for v in c}
    terminal = [True] * len(found)
    for u, v in g.arcs:
        if where[u] != where[v]:
            terminal[where[u]] = False
    return SccPartition(tuple(found), tuple(terminal))


def is_irreducible(g: Digraph) -> bool:
    """True iff no vertex is a sink (vacuously true for the empty graph)."""
    return all(g.out_degree(v) > 0 for v in g.vertices)


def is_strongly_connected(g: Digraph) -> bool:
    return len(g.vertices) > 0 and len(scc(g).components) == 1
