"""Games built from homomorphism instances, no-PSNE primitives, and the
four-color family with small core.

Each ``hom_to_*`` constructor returns a game that has a pure equilibrium
exactly when the given homomorphism instance has a solution.
"""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction

from .errors import PreconditionError
from .homomorphism import HomInstance
from .games import ColoredHypergraphicalGame, GraphicalGame, graphical_game
from .graphs import (
    ColoredHypergraph,
    Digraph,
    induced_digraph,
    induced_hypergraph,
    is_irreducible,
    is_strongly_connected,
    scc,
    sort_vertices,
)

HIT = Fraction(100)
MISS = Fraction(-100)


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    return name


def _edge_index(h: ColoredHypergraph) -> set[tuple]:
    return {(e.color, e.tuple) for e in h.edges}


def terminal_cycles(g: Digraph) -> list[list[str]]:
    """One cycle per terminal component.

    Each is the shortest cycle through the component's smallest vertex,
    listed from that vertex along the arcs.
    """
    cycles = []
    for comp in scc(g).terminal_components():
        start = sort_vertices(comp)[0]
        prev = {start: None}
        queue = deque([start])
        closing = None
        while queue and closing is None:
            u = queue.popleft()
            for w in g.successors(u):
                if w == start:
                    closing = u
                    break
                if w in comp and w not in prev:
                    prev[w] = u
                    queue.append(w)
        if closing is None:
            raise PreconditionError(f"terminal component {sorted(comp)!r} has no cycle")
        path = []
        node = closing
        while node is not None:
            path.append(node)
            node = prev[node]
        cycles.append(path[::-1])
    return cycles


def hom_to_gg(g: Digraph, h: ColoredHypergraph) -> GraphicalGame:
    """Graphical game on ``g`` with a PSNE iff the induced hypergraph of ``g``
    maps homomorphically to ``h``.

    Actions are the vertices of ``h`` plus two failure actions T and B.
    Utility of player ``i`` on its local tuple, first matching rule wins:

    1. the tuple is an edge of ``h`` colored ``i``: 100
    2. ``i`` plays a vertex of ``h``: -100
    3. ``i`` is position ``k`` of a fixed terminal cycle and its cycle
       predecessor plays a failure action: for ``k > 0`` +1 on matching the
       predecessor and -1 otherwise; for ``k = 0`` the reverse
    4. otherwise 0
    """
    if not g.vertices:
        raise PreconditionError("hom_to_gg needs a nonempty digraph")
    if not is_irreducible(g):
        raise PreconditionError("hom_to_gg needs an irreducible digraph (no sinks)")
    taken = set(h.vertices)
    top = _fresh("T", taken)
    bottom = _fresh("B", taken | {top})
    failures = (top, bottom)
    actions = tuple(h.vertices) + failures
    index = _edge_index(h)

    role = {}
    for cycle in terminal_cycles(g):
        for k, v in enumerate(cycle):
            role[v] = (k, cycle[k - 1])

    def payoff(i: str, local: tuple) -> Fraction:
        if (i, local) in index:
            return HIT
        own = local[0]
        if own not in failures:
            return MISS
        if i in role:
            k, pred = role[i]
            pred_action = local[1 + g.in_neighbors(i).index(pred)]
            if pred_action not in failures:
                return Fraction(0)
            same = own == pred_action
            if k > 0:
                return Fraction(1 if same else -1)
            return Fraction(-1 if same else 1)
        return Fraction(0)

    return graphical_game(g, {v: actions for v in g.vertices}, payoff)


def cycle_game(n: int, p: int) -> ColoredHypergraphicalGame:
    """``n`` players on a directed cycle, one color, best response ``a + 1 mod p``.

    Players are ``v0..v{n-1}`` with arcs ``v{k-1} -> v{k}``.  Natural
    actions ``0..p-1`` are encoded as ``1..p`` and labelled ``"0".."p-1"``.
    No PSNE exists once ``p >= n + 1``.
    """
    if n < 2 or p < 2:
        raise PreconditionError("cycle_game needs n >= 2 and p >= 2")
    names = [f"v{k}" for k in range(n)]
    edges = [((names[k], names[k - 1]), "c") for k in range(n)]
    table = {
        (a + 1, b + 1): Fraction(1 if a == (b + 1) % p else 0)
        for a in range(p)
        for b in range(p)
    }
    return ColoredHypergraphicalGame(
        ColoredHypergraph(names, edges), p, {"c": table}, tuple(str(a) for a in range(p))
    )


def strongly_connected_game(g: Digraph) -> ColoredHypergraphicalGame:
    """Best response ``(max of in-neighbors + 1) mod (n + 1)`` on actions ``0..n``.

    Edges are ``(v, *in_neighbors(v))`` colored by in-degree, so equal
    colors share arity.  Actions ``0..n`` are encoded as ``1..n+1``.
    """
    if not is_strongly_connected(g) or len(g.vertices) < 2:
        raise PreconditionError("strongly_connected_game needs a strongly connected digraph with n >= 2")
    n = len(g.vertices)
    span = n + 1
    edges = []
    tables = {}
    for v in g.vertices:
        nbrs = g.in_neighbors(v)
        color = f"indeg{len(nbrs)}"
        edges.append(((v,) + nbrs, color))
        if color not in tables:
            tables[color] = {
                # key holds encoded actions; the natural action is key - 1
                key: Fraction(1 if key[0] - 1 == max(key[1:]) % span else 0)
                for key in itertools.product(range(1, span + 1), repeat=len(nbrs) + 1)
            }
    return ColoredHypergraphicalGame(
        ColoredHypergraph(g.vertices, edges), span, tables, tuple(str(a) for a in range(span))
    )


def active_arcs(game: ColoredHypergraphicalGame, profile) -> set[tuple[str, str]]:
    """Arcs ``(u, v)`` where ``u`` plays a maximal action among ``v``'s in-neighbors."""
    out = set()
    for v in game.players:
        nbrs = game.neighborhood(v)[1:]
        if not nbrs:
            continue
        top = max(profile[u] for u in nbrs)
        out.update((u, v) for u in nbrs if profile[u] == top)
    return out


def hom_to_chg(g: ColoredHypergraph, h: ColoredHypergraph) -> ColoredHypergraphicalGame:
    """Colored hypergraphical game on ``g`` with a PSNE iff ``g`` maps to ``h``.

    Actions ``1..|V(h)|`` are the vertices of ``h`` in declaration order;
    the next ``2n + 1`` actions (``n = |V(g)|``) are failure actions
    ``F1..F{2n+1}``.  Per color ``c``, on a tuple that is not a ``c``-edge
    of ``h``: with no neighbor failing, F1 pays +1 and every other action
    -100; otherwise the best response to the largest neighbor failure
    ``Ff`` is ``F{f+1}``, wrapping from ``F{2n+1}`` to ``F{n+1}`` (payoff 1,
    all else 0).  Tuples that are ``c``-edges of ``h`` pay 100.
    """
    g.check_game_hypergraph()
    if not is_irreducible(induced_digraph(g)):
        raise PreconditionError("hom_to_chg needs an irreducible game hypergraph")
    n = len(g.vertices)
    k = len(h.vertices)
    nf = 2 * n + 1
    m = k + nf
    labels = list(h.vertices)
    for f in range(1, nf + 1):
        labels.append(_fresh(f"F{f}", set(labels)))
    index = _edge_index(h)

    def failure(a: int) -> int:
        return a - k if a > k else 0

    tables = {}
    for c in g.colors:
        table = {}
        for key in itertools.product(range(1, m + 1), repeat=g.arity(c)):
            if all(a <= k for a in key) and (c, tuple(h.vertices[a - 1] for a in key)) in index:
                table[key] = HIT
                continue
            own = failure(key[0])
            fmax = max((failure(a) for a in key[1:]), default=0)
            if fmax == 0:
                table[key] = Fraction(1) if own == 1 else MISS
            else:
                br = fmax + 1 if fmax < nf else n + 1
                table[key] = Fraction(1 if own == br else 0)
        tables[c] = table
    return ColoredHypergraphicalGame(g, m, tables, tuple(labels))


def hom_to_gg_direct(g: ColoredHypergraph, h: ColoredHypergraph) -> GraphicalGame:
    """Graphical game with a PSNE iff ``g`` maps to ``h``; any ``g`` allowed.

    Vertex players pick a vertex of ``h`` and always earn 1.  For the
    ``k``-th edge ``e`` two referees ``x{k}`` and ``y{k}`` watch ``e`` and
    each other with actions ``g``/``b``.  When ``e``'s image is a
    same-colored edge of ``h`` both earn 1 exactly at ``(g, g)``; otherwise
    ``x`` wants to match ``y`` and ``y`` wants to mismatch ``x``.
    """
    taken = set(g.vertices)
    referees = []
    for k in range(len(g.edges)):
        x = _fresh(f"x{k}", taken)
        taken.add(x)
        y = _fresh(f"y{k}", taken)
        taken.add(y)
        referees.append((x, y))
    arcs = set()
    for e, (x, y) in zip(g.edges, referees):
        arcs.update({(x, y), (y, x)})
        for v in e.tuple:
            arcs.update({(v, x), (v, y)})
    players = list(g.vertices) + [p for pair in referees for p in pair]
    graph = Digraph(players, arcs)
    actions = {v: tuple(h.vertices) for v in g.vertices}
    watch = {}
    for e, (x, y) in zip(g.edges, referees):
        actions[x] = actions[y] = ("g", "b")
        watch[x] = (e, x, y, "x")
        watch[y] = (e, x, y, "y")
    index = _edge_index(h)

    def payoff(i: str, local: tuple) -> Fraction:
        if i not in watch:
            return Fraction(1)
        e, x, y, side = watch[i]
        seen = dict(zip((i,) + graph.in_neighbors(i), local))
        correct = (e.color, tuple(seen[v] for v in e.tuple)) in index
        triple = (seen[x], seen[y])
        if side == "x":
            wins = {("g", "g")} if correct else {("g", "g"), ("b", "b")}
        else:
            wins = {("g", "g")} if correct else {("b", "g"), ("g", "b")}
        return Fraction(1 if triple in wins else 0)

    return graphical_game(graph, actions, payoff)


def example15(m: int) -> ColoredHypergraph:
    """Four-color hypergraph on ``l_i, r_j, x_ij, y_ij`` (``2m^2 + 2m`` vertices).

    Edges: ``(x_ij, y_ij, l_i, r_j)`` colored X, ``(y_ij, x_ij, l_i, r_j)``
    colored Y, ``(l_i)`` colored L and ``(r_j)`` colored R.  It is
    homomorphically equivalent to the fragment on ``l1, r1, x1_1, y1_1``.
    """
    if m < 1:
        raise PreconditionError("example15 needs m >= 1")
    ls = [f"l{i}" for i in range(1, m + 1)]
    rs = [f"r{j}" for j in range(1, m + 1)]
    vertices = ls + rs
    edges = [((v,), "L") for v in ls] + [((v,), "R") for v in rs]
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            x, y = f"x{i}_{j}", f"y{i}_{j}"
            vertices += [x, y]
            edges.append(((x, y, f"l{i}", f"r{j}"), "X"))
            edges.append(((y, x, f"l{i}", f"r{j}"), "Y"))
    return ColoredHypergraph(vertices, edges)


def example15_fragment(m: int = 1) -> ColoredHypergraph:
    return example15(m).induced(["l1", "r1", "x1_1", "y1_1"])


def induced_instance(g: Digraph, h: ColoredHypergraph) -> HomInstance:
    """The homomorphism instance ``(H(g), h)`` that :func:`hom_to_gg` encodes."""
    return HomInstance(induced_hypergraph(g), h)
