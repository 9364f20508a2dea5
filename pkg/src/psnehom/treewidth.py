"""Tree decompositions: construction, exact width and validation.

Width is the largest bag size minus one.  Decompositions are built from
elimination orderings: eliminating ``v`` produces the bag ``{v} | N(v)``
(neighbors still present, after fill-in), attached to the bag of the
earliest-eliminated member of ``N(v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import CapExceeded, StructuralError
from .graphs import UndirectedGraph

DEFAULT_EXACT_CAP = 14


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[str], ...]
    tree_edges: tuple[tuple[int, int], ...]

    def __init__(self, bags: Iterable[Iterable[str]], tree_edges: Iterable[tuple[int, int]] = ()):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))
        object.__setattr__(self, "tree_edges", tuple((int(i), int(j)) for i, j in tree_edges))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for i, j in self.tree_edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def validate_decomposition(graph: UndirectedGraph, decomp: TreeDecomposition) -> Validation:
    """Check tree shape, vertex cover, edge cover and running intersection.

    Returns the first violated condition together with a witness.
    """
    k = len(decomp.bags)
    if k == 0:
        return Validation(False, "no bags")
    seen = set()
    for i, j in decomp.tree_edges:
        if not (0 <= i < k and 0 <= j < k) or i == j:
            return Validation(False, "tree edge with bad endpoint", (i, j))
        key = (min(i, j), max(i, j))
        if key in seen:
            return Validation(False, "duplicate tree edge", (i, j))
        seen.add(key)
    if len(decomp.tree_edges) != k - 1:
        return Validation(False, "not a tree: wrong number of edges", (len(decomp.tree_edges), k - 1))
    adj = decomp.neighbors()
    reached = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in reached:
                reached.add(j)
                stack.append(j)
    if len(reached) != k:
        return Validation(False, "not a tree: disconnected", (min(set(range(k)) - reached),))

    known = set(graph.vertices)
    for i, b in enumerate(decomp.bags):
        stray = b - known
        if stray:
            return Validation(False, "bag holds a vertex outside the graph", (i, min(stray)))
    covered = frozenset().union(*decomp.bags)
    for v in graph.vertices:
        if v not in covered:
            return Validation(False, "vertex not covered", (v,))
    for e in sorted(graph.edges, key=sorted):
        if not any(e <= b for b in decomp.bags):
            return Validation(False, "edge not covered", tuple(sorted(e)))
    for v in graph.vertices:
        holders = {i for i, b in enumerate(decomp.bags) if v in b}
        start = min(holders)
        comp = {start}
        stack = [start]
        while stack:
            for j in adj[stack.pop()]:
                if j in holders and j not in comp:
                    comp.add(j)
                    stack.append(j)
        if comp != holders:
            return Validation(False, "running intersection violated", (v, start, min(holders - comp)))
    return Validation(True)


def single_bag_decomposition(graph: UndirectedGraph) -> TreeDecomposition:
    return TreeDecomposition([graph.vertices], [])


def decomposition_from_ordering(
    graph: UndirectedGraph, order: Sequence[str], merge: bool = True
) -> TreeDecomposition:
    if sorted(order) != sorted(graph.vertices):
        raise StructuralError("elimination order must list every vertex exactly once")
    if not order:
        return TreeDecomposition([frozenset()], [])
    position = {v: i for i, v in enumerate(order)}
    adj = graph.adjacency()
    bags: list[set[str]] = []
    parent: list[int | None] = []
    for v in order:
        later = adj[v]
        bags.append({v} | later)
        parent.append(min((position[u] for u in later), default=None))
        for u in later:
            adj[u] |= later - {u}
            adj[u].discard(v)
    roots = [i for i, p in enumerate(parent) if p is None]
    edges = [(i, p) for i, p in enumerate(parent) if p is not None]
    edges += [(roots[t], roots[t + 1]) for t in range(len(roots) - 1)]
    if merge:
        bags, edges = _merge_subset_bags(bags, edges)
    return TreeDecomposition(bags, edges)


def _merge_subset_bags(bags, edges):
    bags = [set(b) for b in bags]
    alive = [True] * len(bags)
    nbrs = [set() for _ in bags]
    for i, j in edges:
        nbrs[i].add(j)
        nbrs[j].add(i)
    changed = True
    while changed:
        changed = False
        for i in range(len(bags)):
            if not alive[i]:
                continue
            for j in sorted(nbrs[i]):
                if bags[i] <= bags[j]:
                    # contract i into j
                    for t in nbrs[i] - {j}:
                        nbrs[t].discard(i)
                        nbrs[t].add(j)
                        nbrs[j].add(t)
                    nbrs[j].discard(i)
                    nbrs[i] = set()
                    alive[i] = False
                    changed = True
                    break
    index = {}
    out_bags = []
    for i, b in enumerate(bags):
        if alive[i]:
            index[i] = len(out_bags)
            out_bags.append(b)
    out_edges = sorted({(min(index[i], index[j]), max(index[i], index[j]))
                        for i in index for j in nbrs[i]})
    return out_bags, out_edges


def min_fill_ordering(graph: UndirectedGraph) -> list[str]:
    """Greedy min-fill; ties go to the earliest vertex in declaration order."""
    adj = graph.adjacency()
    remaining = list(graph.vertices)
    order = []
    while remaining:
        best, best_fill = None, None
        for v in remaining:
            nb = sorted(adj[v])
            fill = sum(1 for a in range(len(nb)) for b in range(a + 1, len(nb))
                       if nb[b] not in adj[nb[a]])
            if best_fill is None or fill < best_fill:
                best, best_fill = v, fill
        nb = adj[best]
        for u in nb:
            adj[u] |= nb - {u}
            adj[u].discard(best)
        del adj[best]
        remaining.remove(best)
        order.append(best)
    return order


def heuristic_decomposition(graph: UndirectedGraph) -> TreeDecomposition:
    return decomposition_from_ordering(graph, min_fill_ordering(graph))


def exact_treewidth(graph: UndirectedGraph, cap: int = DEFAULT_EXACT_CAP) -> tuple[int, TreeDecomposition]:
    """Exact treewidth with an optimal decomposition as witness.

    Dynamic programming over vertex subsets: the best width for eliminating
    a set ``S`` first is the minimum over its last vertex ``v`` of the
    width for ``S - v`` and the number of vertices outside ``S`` reachable
    from ``v`` through ``S - v``.  Exponential in the vertex count, hence
    the cap.
    """
    n = len(graph.vertices)
    if n > cap:
        raise CapExceeded("exact_treewidth", n, cap)
    if n == 0:
        return -1, TreeDecomposition([frozenset()], [])
    verts = graph.vertices
    idx = {v: i for i, v in enumerate(verts)}
    nbr = [0] * n
    for e in graph.edges:
        a, b = (idx[x] for x in e)
        nbr[a] |= 1 << b
        nbr[b] |= 1 << a
    full = (1 << n) - 1

    def q_size(s: int, v: int) -> int:
        # vertices outside s | {v} reachable from v via paths inside s
        seen = 1 << v
        frontier = 1 << v
        out = 0
        while frontier:
            lowbit = frontier & -frontier
            u = lowbit.bit_length() - 1
            frontier ^= lowbit
            reach = nbr[u] & ~seen
            seen |= reach
            out |= reach & ~s
            frontier |= reach & s
        return bin(out).count("1")

    @lru_cache(maxsize=None)
    def best(s: int) -> int:
        if s == 0:
            return -1
        result = n
        rest = s
        while rest:
            lowbit = rest & -rest
            v = lowbit.bit_length() - 1
            rest ^= lowbit
            q = q_size(s ^ lowbit, v)
            if q >= result:
                continue
            sub = best(s ^ lowbit)
            result = min(result, max(sub, q))
        return result

    width = best(full)
    # reconstruct: peel the last-eliminated vertex of each prefix set
    order = []
    s = full
    while s:
        target = best(s)
        for v in range(n):
            bit = 1 << v
            if s & bit and max(best(s ^ bit), q_size(s ^ bit, v)) == target:
                order.append(v)
                s ^= bit
                break
    order.reverse()
    best.cache_clear()
    decomp = decomposition_from_ordering(graph, [verts[i] for i in order])
    assert decomp.width == width, (decomp.width, width)
    return width, decomp


def clique_in_some_bag(decomp: TreeDecomposition, clique: Iterable[str]) -> int:
    """Index of the first bag containing every vertex of ``clique``."""
    clique = frozenset(clique)
    for i, b in enumerate(decomp.bags):
        if clique <= b:
            return i
    raise StructuralError(f"no bag contains {sorted(clique)!r}; decomposition is invalid for this graph")
