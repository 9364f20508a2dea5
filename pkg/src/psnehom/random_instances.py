"""Seeded random instances for tests and fixture emission."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .games import ColoredHypergraphicalGame, GraphicalGame, graphical_game
from .graphs import ColoredHypergraph, Digraph, is_irreducible, is_strongly_connected
from .homomorphism import HomInstance


def random_rational(rng: random.Random, span: int = 4, denominators=(1, 2, 3)) -> Fraction:
    # small range on purpose: ties in argmax sets must actually occur
    return Fraction(rng.randint(-span, span), rng.choice(denominators))


def random_digraph(rng: random.Random, n: int, p: float = 0.4) -> Digraph:
    names = [str(i) for i in range(1, n + 1)]
    arcs = [(u, v) for u in names for v in names if u != v and rng.random() < p]
    return Digraph(names, arcs)


def random_irreducible_digraph(rng: random.Random, n: int, p: float = 0.4) -> Digraph:
    while True:
        g = random_digraph(rng, n, p)
        if g.vertices and is_irreducible(g):
            return g


def random_strongly_connected(rng: random.Random, n: int, p: float = 0.4) -> Digraph:
    while True:
        g = random_digraph(rng, n, p)
        if is_strongly_connected(g):
            return g


def random_graphical_game(rng: random.Random, n: int, m: int | list[int], p: float = 0.4,
                          max_indegree: int | None = None) -> GraphicalGame:
    g = random_digraph(rng, n, p)
    if max_indegree is not None:
        arcs = set()
        for v in g.vertices:
            keep = g.in_neighbors(v)
            if len(keep) > max_indegree:
                keep = rng.sample(keep, max_indegree)
            arcs.update((u, v) for u in keep)
        g = Digraph(g.vertices, arcs)
    sizes = m if isinstance(m, list) else [m] * n
    actions = {v: tuple(f"a{k}" for k in range(sizes[i])) for i, v in enumerate(g.vertices)}
    return graphical_game(g, actions, lambda _v, _key: random_rational(rng))


def random_game_hypergraph(rng: random.Random, n: int, max_arity: int = 3,
                           n_colors: int = 3) -> ColoredHypergraph:
    """A hypergraph in which every vertex heads exactly one edge.

    Colors are drawn per arity so that equal colors share arity.
    """
    names = [str(i) for i in range(1, n + 1)]
    edges = []
    for v in names:
        k = rng.randint(0, min(max_arity - 1, n - 1))
        others = rng.sample([u for u in names if u != v], k)
        color = f"c{k + 1}.{rng.randrange(n_colors)}"
        edges.append(((v, *others), color))
    return ColoredHypergraph(names, edges)


def random_chg(rng: random.Random, n: int, m: int, max_arity: int = 3,
               n_colors: int = 3) -> ColoredHypergraphicalGame:
    h = random_game_hypergraph(rng, n, max_arity, n_colors)
    return random_utilities(rng, h, m)


def random_utilities(rng: random.Random, h: ColoredHypergraph, m: int) -> ColoredHypergraphicalGame:
    tables = {
        c: {key: random_rational(rng) for key in itertools.product(range(1, m + 1), repeat=h.arity(c))}
        for c in h.colors
    }
    return ColoredHypergraphicalGame(h, m, tables)


def random_hypergraph(rng: random.Random, n: int, n_edges: int, colors: dict[str, int],
                      prefix: str = "", repeats: bool = False) -> ColoredHypergraph:
    """Random colored hypergraph; ``colors`` maps each color to its arity.

    With ``repeats`` an edge may list a vertex more than once.
    """
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    edges = set()
    usable = [c for c, k in colors.items() if repeats or k <= n]
    for _ in range(n_edges):
        if not usable:
            break
        c = rng.choice(usable)
        pick = rng.choices(names, k=colors[c]) if repeats else rng.sample(names, colors[c])
        edges.add((tuple(pick), c))
    return ColoredHypergraph(names, sorted(edges))


def random_hom_instance(rng: random.Random, n_left: int, n_right: int,
                        max_arity: int = 3) -> HomInstance:
    colors = {f"c{k}": rng.randint(1, max_arity) for k in range(rng.randint(1, 3))}
    left = random_hypergraph(rng, n_left, rng.randint(0, n_left + 2), colors, "g")
    right = random_hypergraph(rng, n_right, rng.randint(0, 3 * n_right + 3), colors, "h", repeats=True)
    return HomInstance(left, right)


def planted_target(rng: random.Random, left: ColoredHypergraph, n_right: int,
                   noise: int = 2, prefix: str = "h") -> ColoredHypergraph:
    """A right-hand structure that ``left`` maps to (image of a random map plus noise)."""
    names = [f"{prefix}{i}" for i in range(1, n_right + 1)]
    image = {v: rng.choice(names) for v in left.vertices}
    edges = {(tuple(image[v] for v in e.tuple), e.color) for e in left.edges}
    colors = {e.color: len(e.tuple) for e in left.edges}
    if colors:
        for _ in range(noise):
            c = rng.choice(sorted(colors))
            edges.add((tuple(rng.choices(names, k=colors[c])), c))
    return ColoredHypergraph(names, sorted(edges))
