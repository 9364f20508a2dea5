"""Independent oracles and small fixtures shared by the test modules.

The oracles are deliberately naive: plain enumeration with no pruning and
no reuse of the package's own search code.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from psnehom.games import GraphicalGame, graphical_game
from psnehom.graphs import Digraph, UndirectedGraph
from psnehom.treewidth import (
    TreeDecomposition,
    decomposition_from_ordering,
    heuristic_decomposition,
    single_bag_decomposition,
)


# -- games ------------------------------------------------------------------

def matching_pennies() -> GraphicalGame:
    g = Digraph(["row", "col"], [("row", "col"), ("col", "row")])

    def u(v, key):
        match = key[0] == key[1]
        if v == "row":
            return 1 if match else -1
        return -1 if match else 1

    return graphical_game(g, {"row": ("H", "T"), "col": ("H", "T")}, u)


def coordination() -> GraphicalGame:
    g = Digraph(["1", "2"], [("1", "2"), ("2", "1")])
    return graphical_game(g, {"1": ("a", "b"), "2": ("a", "b")}, lambda _v, k: int(k[0] == k[1]))


def spectator_pennies() -> GraphicalGame:
    """Matching pennies plus a player who watches both and is watched by nobody."""
    mp = matching_pennies()
    g = Digraph(["row", "col", "spec"], set(mp.graph.arcs) | {("row", "spec"), ("col", "spec")})
    acts = {"row": ("H", "T"), "col": ("H", "T"), "spec": ("x", "y")}

    def u(v, key):
        if v == "spec":
            return 1 if key[0] == "x" else 0
        return mp.local_utility(v, key)

    return graphical_game(g, acts, u)


def dag_game() -> GraphicalGame:
    g = Digraph(["1", "2", "3"], [("1", "2"), ("2", "3"), ("1", "3")])
    # each player wants to differ from the sum parity of its in-neighbors' indices
    acts = {v: (0, 1, 2) for v in g.vertices}
    return graphical_game(g, acts, lambda _v, k: Fraction(int(k[0] == (sum(k[1:]) + 1) % 3), 1))


def naive_psne_set(game) -> list[dict]:
    """All PSNE by full enumeration with an explicit deviation check."""
    players = list(game.players)
    found = []
    for combo in itertools.product(*(game.actions(v) for v in players)):
        prof = dict(zip(players, combo))
        stable = True
        for v in players:
            nb = game.neighborhood(v)
            cur = game.local_utility(v, tuple(prof[u] for u in nb))
            for a in game.actions(v):
                alt = dict(prof, **{v: a})
                if game.local_utility(v, tuple(alt[u] for u in nb)) > cur:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            found.append(prof)
    return found


# -- homomorphisms -----------------------------------------------------------

def naive_homs(left, right) -> list[dict]:
    index = {(e.color, e.tuple) for e in right.edges}
    out = []
    for combo in itertools.product(right.vertices, repeat=len(left.vertices)):
        h = dict(zip(left.vertices, combo))
        if all((e.color, tuple(h[v] for v in e.tuple)) in index for e in left.edges):
            out.append(h)
    return out


def naive_hom_exists(left, right) -> bool:
    index = {(e.color, e.tuple) for e in right.edges}
    for combo in itertools.product(right.vertices, repeat=len(left.vertices)):
        h = dict(zip(left.vertices, combo))
        if all((e.color, tuple(h[v] for v in e.tuple)) in index for e in left.edges):
            return True
    return False


# -- graphs ------------------------------------------------------------------

def reachability(g: Digraph) -> dict[str, set[str]]:
    """Reflexive-transitive closure by repeated boolean matrix squaring."""
    vs = list(g.vertices)
    n = len(vs)
    idx = {v: i for i, v in enumerate(vs)}
    m = [[i == j for j in range(n)] for i in range(n)]
    for u, v in g.arcs:
        m[idx[u]][idx[v]] = True
    steps = 1
    while steps < n:
        m = [[any(m[i][k] and m[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        steps *= 2
    return {vs[i]: {vs[j] for j in range(n) if m[i][j]} for i in range(n)}


def elimination_width(graph: UndirectedGraph, order) -> int:
    adj = {v: set(ns) for v, ns in graph.adjacency().items()}
    width = -1
    for v in order:
        nbrs = adj.pop(v)
        width = max(width, len(nbrs))
        for a in nbrs:
            adj[a].discard(v)
            adj[a] |= nbrs - {a}
    return width


def naive_treewidth(graph: UndirectedGraph) -> int:
    """Minimum elimination width over all orderings (n <= 8)."""
    if not graph.vertices:
        return -1
    return min(elimination_width(graph, p) for p in itertools.permutations(graph.vertices))


def path_graph(n: int) -> UndirectedGraph:
    vs = [str(i) for i in range(1, n + 1)]
    return UndirectedGraph(vs, [(vs[i], vs[i + 1]) for i in range(n - 1)])


def cycle_graph(n: int) -> UndirectedGraph:
    vs = [str(i) for i in range(1, n + 1)]
    return UndirectedGraph(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def complete_graph(k: int) -> UndirectedGraph:
    vs = [str(i) for i in range(1, k + 1)]
    return UndirectedGraph(vs, itertools.combinations(vs, 2))


def random_tree(rng, n: int) -> UndirectedGraph:
    vs = [str(i) for i in range(1, n + 1)]
    return UndirectedGraph(vs, [(vs[i], vs[rng.randrange(i)]) for i in range(1, n)])


def random_graph(rng, n: int, p: float = 0.4) -> UndirectedGraph:
    vs = [str(i) for i in range(1, n + 1)]
    return UndirectedGraph(vs, [e for e in itertools.combinations(vs, 2) if rng.random() < p])


def assorted_decompositions(graph: UndirectedGraph, rng) -> list:
    """Several structurally different valid decompositions of ``graph``."""
    heur = heuristic_decomposition(graph)
    order = list(graph.vertices)
    rng.shuffle(order)
    unmerged = decomposition_from_ordering(graph, order, merge=False)
    # hang copies of existing bags off random nodes; still a valid decomposition
    bags = list(heur.bags)
    edges = list(heur.tree_edges)
    for _ in range(2):
        at = rng.randrange(len(bags))
        bags.append(bags[at])
        edges.append((at, len(bags) - 1))
    padded = TreeDecomposition(bags, edges)
    # reverse bag order so a different node acts as the root
    k = len(bags)
    flipped = TreeDecomposition(bags[::-1], [(k - 1 - i, k - 1 - j) for i, j in edges])
    return [heur, single_bag_decomposition(graph), unmerged, padded, flipped]
